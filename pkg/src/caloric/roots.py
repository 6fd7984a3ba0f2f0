"""Simultaneous polynomial root finding (Aberth-Ehrlich with Newton polish)."""

import numpy as np

from .errors import ConvergenceError

_EPS = np.finfo(float).eps


def _horner(coeffs, z):
    """Return p(z), p'(z) and sum |a_k||z|^k for highest-first ``coeffs``."""
    p = np.zeros_like(z) + coeffs[0]
    dp = np.zeros_like(z)
    absz = np.abs(z)
    scale = np.zeros(z.shape) + abs(coeffs[0])
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
        scale = scale * absz + abs(c)
    return p, dp, scale


def _initial_guesses(coeffs):
    n = len(coeffs) - 1
    center = -coeffs[1] / (n * coeffs[0])
    # radius from the geometric mean of the roots about the origin
    radius = abs(coeffs[-1] / coeffs[0]) ** (1.0 / n)
    radius = max(radius, abs(center), 1e-3)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return center + radius * np.exp(1j * angles)


def polynomial_roots(coeffs, tol=1e-12, max_iter=500, polish=3):
    """All roots of the polynomial with highest-degree-first ``coeffs``.

    Exact zero roots (trailing zero coefficients) are split off first so that
    ``z**m`` returns an m-fold zero without iterating.  Remaining roots are
    found by Aberth-Ehrlich iteration and polished with Newton steps; each is
    checked against ``|p(r)| <= tol * sum_k |a_k| |r|^k``.
    """
    a = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if a.ndim != 1 or a.size == 0:
        raise ValueError("coefficient list must be one-dimensional and non-empty")
    if a[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    if not np.all(np.isfinite(a)):
        raise ValueError("coefficients must be finite")
    nz = 0
    while a.size > 1 and a[-1] == 0:
        a = a[:-1]
        nz += 1
    zeros = np.zeros(nz, dtype=complex)
    n = a.size - 1
    if n == 0:
        return zeros
    if n == 1:
        return np.concatenate([zeros, [-a[1] / a[0]]])

    a = a / a[0]
    z = _initial_guesses(a)
    converged = np.zeros(n, dtype=bool)
    for _ in range(max_iter):
        p, dp, scale = _horner(a, z)
        ratio = np.where(dp != 0, p / np.where(dp != 0, dp, 1), 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        denom = 1.0 - ratio * s
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1), ratio)
        step = np.where(converged, 0, step)
        z = z - step
        small = np.abs(step) <= 4 * _EPS * np.maximum(np.abs(z), 1e-300)
        at_noise = np.abs(p) <= 16 * n * _EPS * scale
        converged |= small | at_noise
        if converged.all():
            break
    else:
        raise ConvergenceError(f"Aberth iteration did not converge for degree {n}")

    for _ in range(polish):
        p, dp, _scale = _horner(a, z)
        ok = dp != 0
        z = np.where(ok, z - p / np.where(ok, dp, 1), z)
    p, _dp, scale = _horner(a, z)
    bad = np.abs(p) > tol * scale
    if np.any(bad):
        raise ConvergenceError(
            f"root residual {np.max(np.abs(p[bad]) / scale[bad]):.2e} above {tol:g}"
        )
    return np.concatenate([zeros, z])
