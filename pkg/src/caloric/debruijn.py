"""The de Bruijn function H(t, z) and the motion of its zeros.

    Phi(x)  = sum_n (2 pi^2 n^4 e^{9x} - 3 pi n^2 e^{5x}) exp(-pi n^2 e^{4x})
    H(t, z) = int_0^inf e^{t x^2} Phi(x) cos(z x) dx

H(0, z) equals xi(1/2 + iz/2) / 8 and H solves the backward heat equation
dH/dt = -d^2H/dz^2.  Because Phi is even and analytic in the strip
|Im x| < pi/8, the integral is taken as (1/2) int over the shifted line
Im x = +-theta, which removes the oscillation blow-up of cos(zx) for large
real z.  The integrand decays like exp(-pi e^{4x}) in both directions, so
a finite window [-x_max, x_max] is enough.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import warnings

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, TruncationError

#: distance kept from the edge of the analyticity strip of Phi
STRIP_MARGIN = 0.05
CONTOUR_SHIFT = np.pi / 8 - STRIP_MARGIN
#: below this real part Phi(w) is evaluated as Phi(-w)
_EVEN_SWITCH = -0.25


@dataclass(frozen=True)
class PhiConfig:
    """Truncation controls for the series defining Phi."""

    n_terms: int = 40
    term_floor: float = 1e-30

    def __post_init__(self):
        if self.n_terms < 1:
            raise ValueError("n_terms must be >= 1")
        if not self.term_floor > 0:
            raise ValueError("term_floor must be positive")


@dataclass(frozen=True)
class HQuadConfig:
    """Composite Gauss-Legendre rule on [-x_max, x_max] along the shifted line."""

    x_max: float = 6.0
    panels: int = 240
    nodes_per_panel: int = 24
    tol: float = 1e-12
    phi: PhiConfig = field(default_factory=PhiConfig)

    def __post_init__(self):
        if not self.x_max > 0:
            raise ValueError("x_max must be positive")
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ValueError("panels and nodes_per_panel must be >= 1")


def _phi_series(w, cfg):
    w = np.asarray(w, dtype=complex)
    e4, e5, e9 = np.exp(4 * w), np.exp(5 * w), np.exp(9 * w)
    total = np.zeros_like(w)
    prev = np.full(w.shape, np.inf)
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        for n in range(1, cfg.n_terms + 1):
            n2 = n * n
            term = (2 * np.pi**2 * n2 * n2 * e9 - 3 * np.pi * n2 * e5) * np.exp(-np.pi * n2 * e4)
            term = np.where(np.isfinite(term), term, 0.0)
            total = total + term
            mag = np.abs(term)
            done = (mag < cfg.term_floor * np.abs(total)) & (mag < prev)
            if n > 1 and np.all(done | (total == 0)):
                break
            prev = mag
    return total


def phi_complex(w, cfg=None):
    """Phi at complex points with |Im w| < pi/8, using evenness far left."""
    cfg = cfg or PhiConfig()
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w.imag) >= np.pi / 8):
        raise ValueError("Phi series only converges for |Im w| < pi/8")
    ww = np.where(w.real < _EVEN_SWITCH, -w, w)
    out = _phi_series(ww, cfg)
    return out[()] if out.ndim == 0 else out


def phi(x, cfg=None):
    """Phi(x) for real ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    out = np.real(phi_complex(x, cfg))
    return out[()] if out.ndim == 0 else out


@lru_cache(maxsize=16)
def _contour(cfg, sign):
    xg, wg = np.polynomial.legendre.leggauss(cfg.nodes_per_panel)
    edges = np.linspace(-cfg.x_max, cfg.x_max, cfg.panels + 1)
    a, b = edges[:-1, None], edges[1:, None]
    x = ((b - a) / 2 * xg + (a + b) / 2).ravel()
    wts = ((b - a) / 2 * wg).ravel()
    w = x + 1j * sign * CONTOUR_SHIFT
    return w, wts * phi_complex(w, cfg.phi)


def tail_bound(t, z, cfg=None):
    """Size of the integrand at the cutoff times the cutoff length (vectorized in z)."""
    cfg = cfg or HQuadConfig()
    z = np.asarray(z, dtype=complex)
    sign = np.where(z.real >= 0, 1.0, -1.0)
    worst = np.zeros(z.shape)
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        for end in (cfg.x_max, -cfg.x_max):
            w = end + 1j * sign * CONTOUR_SHIFT
            val = np.abs(phi_complex(w, cfg.phi)) * np.exp(abs(t) * cfg.x_max**2) * np.abs(np.exp(1j * z * w))
            worst = np.maximum(worst, np.where(np.isnan(val), np.inf, val))
    out = worst * cfg.x_max
    return float(out) if out.ndim == 0 else out


def h_eval(t, z, cfg=None, deriv_z=0, deriv_t=0):
    """H(t, z) for real ``t`` and scalar or array ``z``.

    ``deriv_z``/``deriv_t`` return partial derivatives computed under the
    integral sign.  Raises ``TruncationError`` if the cutoff tail exceeds
    ``cfg.tol`` relative to the result.
    """
    cfg = cfg or HQuadConfig()
    if np.iscomplexobj(t) and np.imag(t) != 0:
        warnings.warn("complex t is outside the validated range of h_eval", RuntimeWarning)
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    for sign in (1.0, -1.0):
        mask = flat.real >= 0 if sign > 0 else flat.real < 0
        if not np.any(mask):
            continue
        w, wphi = _contour(cfg, sign)
        base = wphi * np.exp(t * w * w) * (1j * w) ** deriv_z * (w * w) ** deriv_t
        # chunk so the node x point matrix stays small
        idx = np.flatnonzero(mask)
        for lo in range(0, idx.size, 256):
            sel = idx[lo:lo + 256]
            out[sel] = 0.5 * (np.exp(1j * np.outer(flat[sel], w)) @ base)
    tb = tail_bound(t, flat, cfg)
    bad = (tb > cfg.tol * np.maximum(np.abs(out), 1e-300)) & (tb > 1e-300)
    if bad.any():
        i = int(np.argmax(bad))
        raise TruncationError(f"H cutoff tail {tb[i]:.3g} too large at z={flat[i]}", bound=float(tb[i]))
    out = out.reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def _real_h(t, cfg):
    return lambda x: float(np.real(h_eval(t, x, cfg)))


def h_zeros(t, interval, cfg=None, step=0.25, xtol=1e-13):
    """Real zeros of H(t, .) in ``interval`` by sign changes and Brent's method.

    Zeros closer together than ``step`` can be missed; the returned list is
    sorted ascending and may be empty.
    """
    cfg = cfg or HQuadConfig()
    lo, hi = float(interval[0]), float(interval[1])
    if hi <= lo:
        raise ValueError("interval must have hi > lo")
    n = max(2, int(np.ceil((hi - lo) / step)) + 1)
    grid = np.linspace(lo, hi, n)
    vals = np.real(h_eval(t, grid, cfg))
    f = _real_h(t, cfg)
    zeros = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0:
            zeros.append(float(a))
        elif fa * fb < 0:
            zeros.append(brentq(f, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps))
    if vals[-1] == 0:
        zeros.append(float(grid[-1]))
    return sorted(zeros)


def innermost_zeros(t, count, cfg=None, start=40.0):
    """The ``count`` positive zeros of H(t, .) closest to the origin."""
    hi = start
    while True:
        zs = h_zeros(t, (0.0, hi), cfg)
        if len(zs) >= count + 1:
            return zs[:count]
        if hi > 4000:
            raise ConvergenceError(f"could not find {count} zeros of H below {hi}")
        hi *= 1.5


def _follow(t, z0, half_width, cfg):
    f = _real_h(t, cfg)
    a, b = z0 - half_width, z0 + half_width
    fa, fb = f(a), f(b)
    if fa * fb > 0:
        raise ConvergenceError(f"lost the zero near {z0} at t={t}")
    return brentq(f, a, b, xtol=1e-13, rtol=4 * np.finfo(float).eps)


def velocity_window_check(t0, window, dt=1e-3, cfg=None):
    """Compare finite-difference zero velocities with the truncated pair sum.

    The window holds the ``window`` zeros of H(t0, .) smallest in modulus,
    taken as +-z_1, +-z_2, ... (positive first).  The predicted velocity of
    z_k is +2 sum_{j != k} 1/(z_k - z_j) over the window only; zeros outside
    the window contribute an unmodelled tail, so the mismatch is a trend
    diagnostic rather than an error bound.  The summary mismatch is the
    relative mismatch at the innermost positive zero.
    """
    if not t0 > 0:
        raise ValueError("t0 must be positive")
    if window < 1:
        raise ValueError("window must be >= 1")
    if not 0 < dt < t0:
        raise ValueError("dt must lie in (0, t0)")
    cfg = cfg or HQuadConfig()
    pos = innermost_zeros(t0, (window + 1) // 2, cfg)
    half = 0.25 * float(np.min(np.abs(np.diff(pos)))) if len(pos) > 1 else 0.25 * pos[0]
    speed = {}
    for z in pos:
        zp = _follow(t0 + dt, z, half, cfg)
        zm = _follow(t0 - dt, z, half, cfg)
        speed[z] = (zp - zm) / (2 * dt)
    members = []
    for z in pos:
        members.append((z, speed[z]))
        members.append((-z, -speed[z]))
    members = members[:window]
    zs = np.array([m[0] for m in members])
    rows = []
    for k, (zk, vk) in enumerate(members):
        others = np.delete(zs, k)
        pred = 2.0 * float(np.sum(1.0 / (zk - others))) if others.size else 0.0
        diff = abs(vk - pred)
        rows.append({
            "z": float(zk),
            "velocity_fd": float(vk),
            "velocity_sum": pred,
            "abs_mismatch": diff,
            "rel_mismatch": diff / abs(vk) if vk != 0 else float("inf"),
        })
    return {
        "header": "dz_k/dt = +2 sum_{j!=k} 1/(z_k - z_j) (backward heat), window-truncated; "
                  "the tail over untracked zeros is not modelled",
        "t0": float(t0),
        "dt": float(dt),
        "window": int(window),
        "zeros": rows,
        "summary_rel_mismatch": rows[0]["rel_mismatch"],
    }


def zeros_table(ts, interval, cfg=None):
    """Rows (t, index, z) of real zeros in ``interval`` for every ``t``."""
    out = []
    for t in ts:
        for i, z in enumerate(h_zeros(t, interval, cfg)):
            out.append((float(t), i, z))
    return out
