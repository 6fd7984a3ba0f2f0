"""Caloric polynomials P_m(t, z): exact coefficients, evaluation, zero spectra.

P_m is the polynomial solution of the heat equation dF/dt = d^2F/dz^2 with
P_m(0, z) = z**m::

    P_m(t, z) = sum_{j=0}^{m//2} m! / (j! (m-2j)!) * t**j * z**(m-2j)

Coefficients are kept as Python integers so that derivative and interlacing
checks are exact for any degree.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, floor, isqrt, log

import numpy as np

from .errors import ConvergenceError, NoDerivativeError
from .roots import polynomial_roots

#: degree above which evaluation goes through the Hermite representation
HERMITE_THRESHOLD = 60


@dataclass(frozen=True)
class CaloricPolynomial:
    """Exact coefficient table of P_m; ``coeffs[j]`` multiplies t**j z**(m-2j)."""

    degree: int
    coeffs: tuple

    def __call__(self, t, z):
        return evaluate(self, t, z)

    @property
    def parity(self):
        return "even" if self.degree % 2 == 0 else "odd"


@dataclass(frozen=True)
class RhoSpectrum:
    """Values rho_{m,j} with P_m = z^(m%2) * prod_j (z^2 + rho_{m,j} t)."""

    degree: int
    values: tuple
    parity: str


@lru_cache(maxsize=512)
def build(m):
    """Return the caloric polynomial of degree ``m`` with exact integer coefficients."""
    m = int(m)
    if m < 0:
        raise ValueError("degree must be nonnegative")
    fm = factorial(m)
    coeffs = tuple(fm // (factorial(j) * factorial(m - 2 * j)) for j in range(m // 2 + 1))
    return CaloricPolynomial(m, coeffs)


def bivariate_coefficients(m):
    """Dense array C with P_m(t, z) = sum C[j, k] t^j z^k (float)."""
    P = build(m)
    C = np.zeros((m // 2 + 1, m + 1))
    for j, c in enumerate(P.coeffs):
        C[j, m - 2 * j] = float(c)
    return C


def _direct(P, t, z):
    m = P.degree
    w = z * z
    s = np.zeros(np.broadcast(t, z).shape, dtype=complex) + float(P.coeffs[0])
    tj = np.ones_like(s)
    # homogeneous Horner in (z^2, t)
    for c in P.coeffs[1:]:
        tj = tj * t
        s = s * w + float(c) * tj
    if m % 2:
        s = s * z
    return s


def _via_hermite(P, t, z, sign=1):
    m = P.degree
    t = np.asarray(t, dtype=complex)
    z = np.asarray(z, dtype=complex)
    root = sign * np.sqrt(t)
    safe = np.where(root == 0, 1.0, root)
    val = (1j * safe) ** m * hermite_value(m, z / (2j * safe))
    # t = 0 is the monomial z^m
    return np.where(root == 0, z**m, val)


def evaluate(P, t, z, hermite_threshold=HERMITE_THRESHOLD):
    """Value of P_m(t, z) for scalar or array ``t``, ``z``.

    Degrees up to ``hermite_threshold`` use Horner's rule in z^2; larger
    degrees use P_m(t, z) = (i sqrt t)^m H_m(z / (2 i sqrt t)) with the
    principal square root.  Raises ``OverflowError`` if the result is not
    representable.
    """
    if not isinstance(P, CaloricPolynomial):
        P = build(P)
    t = np.asarray(t, dtype=complex)
    z = np.asarray(z, dtype=complex)
    with np.errstate(over="ignore", invalid="ignore"):
        if P.degree > hermite_threshold:
            out = _via_hermite(P, t, z)
        else:
            out = _direct(P, t, z)
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"P_{P.degree} overflows at the requested point")
    return out[()] if out.ndim == 0 else out


def dz(P):
    """Coefficient table of dP_m/dz, checked against m * P_{m-1}.

    Returns the exact integer tuple of the derivative (indexed like
    ``CaloricPolynomial.coeffs`` for degree m-1).
    """
    if not isinstance(P, CaloricPolynomial):
        P = build(P)
    m = P.degree
    if m == 0:
        raise NoDerivativeError("P_0 is constant")
    deriv = tuple((m - 2 * j) * c for j, c in enumerate(P.coeffs) if m - 2 * j > 0)
    expected = tuple(m * c for c in build(m - 1).coeffs)
    if deriv != expected:
        raise ArithmeticError(f"derivative ladder broken at m={m}")
    return deriv


def hermite_value(m, x):
    """Physicists' Hermite polynomial H_m(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=complex)
    h0 = np.ones_like(x)
    if m == 0:
        return h0[()] if h0.ndim == 0 else h0
    h1 = 2 * x
    for n in range(1, m):
        h0, h1 = h1, 2 * x * h1 - 2 * n * h0
    return h1[()] if h1.ndim == 0 else h1


def hermite_coefficients(m):
    """Exact integer coefficients of H_m, highest degree first."""
    P = build(m)
    out = [0] * (m + 1)
    for j, c in enumerate(P.coeffs):
        out[2 * j] = (-1) ** j * c * 2 ** (m - 2 * j)
    return out


def _polish_hermite_zero(m, h, tol=1e-13, max_iter=50):
    for _ in range(max_iter):
        val = hermite_value(m, h).real
        der = 2 * m * hermite_value(m - 1, h).real
        step = val / der
        h -= step
        if abs(step) <= tol * max(1.0, abs(h)):
            break
    else:
        raise ConvergenceError(f"Newton polish failed for H_{m} zero near {h}")
    return h


@lru_cache(maxsize=256)
def rho_spectrum(m):
    """Spectrum rho_{m,1} < ... < rho_{m,l} of P_m, l = m // 2.

    rho_{m,j} = 4 h_j^2 for the positive zeros h_j of H_m.  Zeros come from
    the shared polynomial root finder and are Newton-polished on the Hermite
    recurrence.
    """
    m = int(m)
    if m < 2:
        raise ValueError("rho spectrum needs m >= 2")
    coeffs = [float(c) for c in hermite_coefficients(m)]
    roots = polynomial_roots(coeffs, tol=1e-10)
    if np.max(np.abs(roots.imag)) > 1e-6 * max(1.0, np.max(np.abs(roots))):
        raise ConvergenceError(f"non-real Hermite zeros found for m={m}")
    pos = np.sort(roots.real[roots.real > 1e-8])
    l = m // 2
    if pos.size != l:
        raise ConvergenceError(f"expected {l} positive zeros of H_{m}, found {pos.size}")
    pos = np.array([_polish_hermite_zero(m, float(h)) for h in pos])
    pos.sort()
    if l > 1 and np.min(np.diff(pos)) <= 1e-10:
        raise ConvergenceError(f"coincident Hermite zeros for m={m}")
    values = tuple(float(v) for v in 4 * pos**2)
    return RhoSpectrum(m, values, "even" if m % 2 == 0 else "odd")


def interlacing_check(m):
    """True iff the spectra of P_m and P_{m-1} strictly alternate as required.

    For m = 2l: rho_{m,1} < rho_{m-1,1} < rho_{m,2} < ... < rho_{m,l}.
    For m = 2l+1: rho_{m-1,1} < rho_{m,1} < rho_{m-1,2} < ... < rho_{m,l}.
    """
    if m < 3:
        raise ValueError("interlacing needs m >= 3")
    cur = rho_spectrum(m).values
    prev = rho_spectrum(m - 1).values
    if m % 2 == 0:
        seq = [v for pair in zip(cur, prev) for v in pair] + [cur[-1]]
    else:
        seq = [v for pair in zip(prev, cur) for v in pair]
    seq = np.array(seq)
    return bool(seq[0] > 0 and np.all(np.diff(seq) > 0))


def kappa(m):
    """Index of the largest coefficient used by the crude bound."""
    # exact floor of (4m - 1 - sqrt(8m + 17)) / 8 using integer sqrt
    d = 8 * m + 17
    r = isqrt(d)
    if r * r == d:
        return (4 * m - 1 - r) // 8 + 1
    return floor((4 * m - 1 - d**0.5) / 8) + 1


def crude_bound(m, t, z):
    """Upper bound for |P_m(t, z)| from the largest coefficient.

    m! (m//2 + 1) / (k! (m-2k)!) * max_j |t|^j |z|^(m-2j), k = kappa(m).
    """
    l = m // 2
    k = kappa(m)
    lead = factorial(m) * (l + 1) // (factorial(k) * factorial(m - 2 * k))
    at, az = abs(complex(t)), abs(complex(z))
    # largest monomial in log space so that tiny |t|, |z| do not underflow early
    with np.errstate(divide="ignore"):
        lt, lz = np.log(at), np.log(az)
    j = np.arange(l + 1)
    with np.errstate(invalid="ignore"):
        logs = np.where(j == 0, 0.0, j * lt) + np.where(m - 2 * j == 0, 0.0, (m - 2 * j) * lz)
    logs = np.where(np.isnan(logs), -np.inf, logs)
    with np.errstate(over="ignore"):
        return float(np.exp(log(lead) + np.max(logs)))


def generating_partial_sum(lam, t, z, M):
    """sum_{m <= M} lam^m / m! * P_m(t, z); tends to exp(lam^2 t + lam z)."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    total = 0j
    term_scale = 1.0 + 0j
    for m in range(M + 1):
        if m:
            term_scale *= lam / m
        total += term_scale * complex(evaluate(build(m), t, z))
    return total


def kernel_moment(m, t, z, nodes=None):
    """P_m(t, z) from Gauss-Hermite quadrature of the heat-kernel integral.

    Uses xi = z + 2 u sqrt(t) so that the integral becomes
    pi^{-1/2} int exp(-u^2) (z + 2 u sqrt t)^m du, exact once
    ``nodes > m / 2``.
    """
    if nodes is None:
        nodes = m // 2 + 2
    u, w = np.polynomial.hermite.hermgauss(nodes)
    st = np.sqrt(complex(t))
    return complex(np.sum(w * (z + 2 * u * st) ** m) / np.sqrt(np.pi))
