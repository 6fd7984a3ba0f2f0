"""Entire functions represented by Taylor coefficients.

Coefficients are stored in split form: ``log|a_n|`` (``-inf`` for an exact
zero) and a unit phase.  Growth analysis needs a_n far below the smallest
double (1/500! is about 1e-1134), so working in log space is not optional.
"""

import cmath
import json
from dataclasses import dataclass, field
from math import floor

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import TruncationError

_EPS = np.finfo(float).eps
# sums whose magnitude is within this many ulps of the sum of |terms| are
# treated as exact cancellation (no significant digits survive)
CANCELLATION_ULPS = 64.0


def _log_binom(k, n):
    return gammaln(k + 1.0) - gammaln(n + 1.0) - gammaln(k - n + 1.0)


@dataclass(frozen=True)
class CoefficientSeries:
    """Taylor coefficients a_0..a_{n_max} of an entire function about ``center``.

    ``rule(n)`` maps an integer array to ``(log_abs, phase)``.  ``degree`` is
    set when the function is known to be a polynomial.  ``truncation_bound``
    carries the relative tail estimate of a recentred series.
    """

    rule: object
    n_max: int
    center: complex = 0j
    name: str = "series"
    params: dict = field(default_factory=dict)
    degree: int = None
    truncation_bound: float = 0.0

    def log_table(self, N=None):
        """Return ``(log_abs, phase)`` arrays for n = 0..N (default n_max)."""
        N = self.n_max if N is None else int(N)
        if N > self.n_max:
            raise ValueError(f"requested {N} coefficients beyond n_max={self.n_max}")
        n = np.arange(N + 1)
        la, ph = self.rule(n)
        la = np.asarray(la, dtype=float) + np.zeros(N + 1)
        ph = np.asarray(ph, dtype=complex) + np.zeros(N + 1)
        ph = np.where(np.isneginf(la), 0, ph)
        return la, ph

    def coeffs(self, N=None):
        """Complex coefficients; entries below the double range become 0."""
        la, ph = self.log_table(N)
        with np.errstate(under="ignore"):
            return np.where(np.isneginf(la), 0, np.exp(la) * ph)

    def evaluate(self, z):
        """Partial sum at ``z`` (relative to ``center``), vectorized over z."""
        la, ph = self.log_table()
        z = np.asarray(z, dtype=complex) - self.center
        n = np.arange(la.size)
        keep = ~np.isneginf(la)
        # log-scaled Horner is unnecessary here: terms are summed directly with
        # a common exponent so that tiny coefficients still contribute
        with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
            logz = np.log(np.abs(z))[..., None]
            lt = la[keep] + np.where(n[keep] == 0, 0.0, n[keep] * logz)
            lt = np.where(np.isnan(lt), -np.inf, lt)
            pz = np.exp(1j * np.angle(z))[..., None] ** n[keep]
            mx = np.max(lt, axis=-1, keepdims=True)
            mx = np.where(np.isfinite(mx), mx, 0.0)
            out = np.exp(mx[..., 0]) * np.sum(np.exp(lt - mx) * ph[keep] * pz, axis=-1)
        return out[()] if np.ndim(out) == 0 else out

    def derivative(self):
        """Series of g'(z); loses one coefficient of depth."""
        la, ph = self.log_table()
        n = np.arange(1, la.size)
        dla = np.log(n) + la[1:]
        dph = ph[1:]
        deg = None if self.degree is None else max(self.degree - 1, 0)
        return from_table(dla, dph, center=self.center, name=f"d({self.name})", degree=deg)

    def to_json(self):
        return dump_json(self)


def from_table(log_abs, phase, center=0j, name="table", degree=None, bound=0.0):
    """Series backed by stored ``(log_abs, phase)`` arrays."""
    la = np.array(log_abs, dtype=float)
    ph = np.array(phase, dtype=complex)
    la.setflags(write=False)
    ph.setflags(write=False)

    def rule(n):
        return la[n], ph[n]

    return CoefficientSeries(rule, la.size - 1, complex(center), name, {}, degree, float(bound))


def from_coeffs(coeffs, center=0j, name="list"):
    """Series from an explicit finite list (treated as a polynomial)."""
    a = np.asarray(coeffs, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("empty coefficient list")
    with np.errstate(divide="ignore"):
        la = np.log(np.abs(a))
    ph = np.where(a != 0, np.exp(1j * np.angle(a)), 0)
    nz = np.nonzero(a)[0]
    deg = int(nz[-1]) if nz.size else 0
    s = from_table(la, ph, center, name, degree=deg)
    return _with_meta(s, name="list", params={"coeffs": a.tolist()})


def _with_meta(s, name, params):
    return CoefficientSeries(s.rule, s.n_max, s.center, name, params, s.degree, s.truncation_bound)


def _unit(c):
    c = complex(c)
    return cmath.exp(1j * cmath.phase(c)) if c != 0 else 1.0


def _closed(name, params, n_max, rule, degree=None):
    return CoefficientSeries(rule, int(n_max), 0j, name, dict(params), degree)


def exp_series(rate=1.0, n_max=500):
    """e^{rate z}: a_n = rate^n / n!."""
    r = complex(rate)
    if r == 0:
        return _with_meta(from_coeffs([1.0]), "exp", {"rate": 0.0})
    lr, u = np.log(abs(r)), _unit(r)

    def rule(n):
        return n * lr - gammaln(n + 1.0), u**n

    return _closed("exp", {"rate": rate}, n_max, rule)


def sin_series(lam=1.0, n_max=500):
    """sin(lam z): odd coefficients (-1)^k lam^(2k+1) / (2k+1)!."""
    lam = complex(lam)
    ll, u = np.log(abs(lam)), _unit(lam)

    def rule(n):
        odd = n % 2 == 1
        la = np.where(odd, n * ll - gammaln(n + 1.0), -np.inf)
        return la, np.where(odd, (-1.0) ** ((n - 1) // 2) * u**n, 0)

    return _closed("sin", {"lam": lam}, n_max, rule)


def cos_series(lam=1.0, n_max=500):
    """cos(lam z): even coefficients (-1)^k lam^(2k) / (2k)!."""
    lam = complex(lam)
    ll, u = np.log(abs(lam)), _unit(lam)

    def rule(n):
        even = n % 2 == 0
        la = np.where(even, n * ll - gammaln(n + 1.0), -np.inf)
        return la, np.where(even, (-1.0) ** (n // 2) * u**n, 0)

    return _closed("cos", {"lam": lam}, n_max, rule)


def gaussian_series(a=1.0, n_max=500):
    """e^{a z^2}: c_{2j} = a^j / j!."""
    a = complex(a)
    la_, u = np.log(abs(a)), _unit(a)

    def rule(n):
        even = n % 2 == 0
        j = n // 2
        return np.where(even, j * la_ - gammaln(j + 1.0), -np.inf), np.where(even, u**j, 0)

    return _closed("gaussian", {"a": a}, n_max, rule)


def cos_sq_series(a=1.0, n_max=500):
    """cos(a z^2): c_{4k} = (-1)^k a^(2k) / (2k)!."""
    a = complex(a)
    la_, u = np.log(abs(a)), _unit(a)

    def rule(n):
        hit = n % 4 == 0
        k = n // 4
        la = np.where(hit, 2 * k * la_ - gammaln(2 * k + 1.0), -np.inf)
        return la, np.where(hit, (-1.0) ** k * u ** (2 * k), 0)

    return _closed("cos_sq", {"a": a}, n_max, rule)


def factorial_power(power, n_max=500):
    """c_n = (n!)^(-power); order 1/power."""
    p = float(power)
    if p <= 0:
        raise ValueError("power must be positive for an entire function")

    def rule(n):
        return -p * gammaln(n + 1.0), np.ones(np.shape(n))

    return _closed("factorial_power", {"power": p}, n_max, rule)


def monomial(m, n_max=None):
    """z^m."""
    m = int(m)
    if m < 0:
        raise ValueError("monomial degree must be nonnegative")
    a = np.zeros(m + 1 if n_max is None else max(n_max, m) + 1)
    a[m] = 1.0
    s = from_coeffs(a)
    return _with_meta(s, "monomial", {"m": m})


def polynomial(coeffs):
    """Polynomial with ascending coefficients a_0, a_1, ...."""
    return from_coeffs(coeffs)


RULES = {
    "exp": exp_series,
    "sin": sin_series,
    "cos": cos_series,
    "gaussian": gaussian_series,
    "cos_sq": cos_sq_series,
    "factorial_power": factorial_power,
    "monomial": monomial,
}


def _jsonable(v):
    if isinstance(v, complex):
        return v.real if v.imag == 0 else [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _parse_num(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return v


def load_json(obj):
    """Build a series from a JSON description (dict or JSON string).

    ``{"kind": "closed_form", "rule": {"name": ..., "params": {...}}, "n_max": N}``
    or ``{"kind": "list", "coeffs": [...]}``; complex numbers are ``[re, im]``
    pairs or strings such as ``"1+2j"``.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValueError("series description must be a JSON object")
    kind = obj.get("kind")
    allowed = {"kind", "rule", "coeffs", "n_max"}
    extra = set(obj) - allowed
    if extra:
        raise ValueError(f"unknown keys in series description: {sorted(extra)}")
    if kind == "list":
        coeffs = obj.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise ValueError("list series needs a non-empty 'coeffs' array")
        return from_coeffs([complex(_parse_num(c)) for c in coeffs])
    if kind == "closed_form":
        rule = obj.get("rule") or {}
        name = rule.get("name")
        if name not in RULES:
            raise ValueError(f"unknown rule {name!r}; known: {sorted(RULES)}")
        params = {k: _parse_num(v) for k, v in (rule.get("params") or {}).items()}
        if "n_max" in obj and name != "monomial":
            params["n_max"] = int(obj["n_max"])
        try:
            return RULES[name](**params)
        except TypeError as exc:
            raise ValueError(f"bad parameters for rule {name!r}: {exc}") from None
    raise ValueError(f"unknown series kind {kind!r}")


def dump_json(s):
    """JSON-ready dict for a series (closed-form rules keep their parameters)."""
    if s.name in RULES:
        params = {k: _jsonable(v) for k, v in s.params.items()}
        return {"kind": "closed_form", "rule": {"name": s.name, "params": params}, "n_max": s.n_max}
    c = s.coeffs()
    return {"kind": "list", "coeffs": [_jsonable(complex(x)) for x in c]}


def sharp(s):
    """Coefficientwise modulus |a_k|."""
    la, _ph = s.log_table()
    ph = np.where(np.isneginf(la), 0, 1.0 + 0j)
    out = from_table(la, ph, s.center, f"sharp({s.name})", s.degree, s.truncation_bound)
    return out


def _shift_rows(la, ph, z0, rows, chunk_elems=2_000_000):
    """Log-space recentring of one coefficient table at many points.

    ``rows`` lists the output indices n.  Returns ``(log_abs, phase,
    rel_bound)`` with shapes ``(M, len(rows))``, ``(M, len(rows))``, ``(M,)``.
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=complex))
    keep = ~np.isneginf(la)
    k = np.arange(la.size)[keep]
    lak, argk = la[keep], np.angle(ph[keep])
    n = np.asarray(rows)
    d = k[None, :] - n[:, None]
    valid = d >= 0
    lb = np.where(valid, _log_binom(np.maximum(k[None, :], n[:, None]), n[:, None]), -np.inf)
    base = np.where(valid, lak[None, :] + lb, -np.inf)
    dpos = np.maximum(d, 0).astype(float)
    at_n = d == 0

    M, R, K = z0.size, n.size, k.size
    out_la = np.full((M, R), -np.inf)
    out_ph = np.zeros((M, R), dtype=complex)
    bound = np.zeros(M)
    if K == 0:
        return out_la, out_ph, bound
    step = max(1, chunk_elems // max(1, R * K))
    for s0 in range(0, M, step):
        zz = z0[s0 : s0 + step]
        with np.errstate(divide="ignore", invalid="ignore", under="ignore", over="ignore"):
            lz = np.log(np.abs(zz))[:, None, None]
            lt = base[None] + np.where(at_n[None], 0.0, dpos[None] * lz)
            lt = np.where(np.isnan(lt), -np.inf, lt)
            mx = np.max(lt, axis=2, keepdims=True)
            finite = np.isfinite(mx)
            mx0 = np.where(finite, mx, 0.0)
            ang = argk[None, None, :] + dpos[None] * np.angle(zz)[:, None, None]
            w = np.exp(lt - mx0)
            ssum = np.sum(w * np.exp(1j * ang), axis=2)
            sabs = np.sum(w, axis=2)
            mag = np.abs(ssum)
            dead = (~finite[..., 0]) | (mag <= CANCELLATION_ULPS * _EPS * sabs)
            out_la[s0 : s0 + step] = np.where(dead, -np.inf, mx0[..., 0] + np.log(mag))
            out_ph[s0 : s0 + step] = np.where(dead, 0, ssum / np.where(dead, 1, mag))
            tb = np.max(_tail_bound(lt, mx0[..., 0]), axis=1)
            # recentring at the origin is the identity
            bound[s0 : s0 + step] = np.where(zz == 0, 0.0, tb)
    return out_la, out_ph, bound


def _tail_bound(lt, mx, npts=10):
    """Relative tail estimate per row from the last ``npts`` finite terms.

    The terms beyond the stored table are continued geometrically with the
    average log-ratio of the observed finite terms (parity gaps allowed).
    Rows with fewer than two finite terms get ``inf`` unless empty.
    """
    fin = np.isfinite(lt)
    cnt = np.cumsum(fin, axis=-1)
    total = cnt[..., -1]
    target = np.maximum(total - (npts - 1), 1)
    i_first = np.argmax(cnt >= target[..., None], axis=-1)
    i_last = np.argmax(cnt >= np.maximum(total, 1)[..., None], axis=-1)
    v_first = np.take_along_axis(lt, i_first[..., None], axis=-1)[..., 0]
    v_last = np.take_along_axis(lt, i_last[..., None], axis=-1)[..., 0]
    used = np.minimum(total, npts)
    span = (i_last - i_first).astype(float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        slope = (v_last - v_first) / span
        gap = np.maximum(1.0, span / np.maximum(used - 1, 1))
        ratio = slope * gap
        geo = np.exp(v_last - mx + ratio - np.log1p(-np.exp(np.minimum(ratio, -1e-300))))
    out = np.where((used >= 2) & (slope < 0), geo, np.inf)
    return np.where(total == 0, 0.0, out)


def _polynomial_exact(s, N):
    """Tail bound is exactly zero when the table covers the whole polynomial."""
    return s.degree is not None and s.degree <= s.n_max


def taylor_shift_batch(s, z0, N=None, tol=1e-10, check=True, rows=None):
    """Recentred log tables ``a_n(z0)`` for many centres at once.

    Returns ``(log_abs, phase, bound)`` of shapes ``(M, R)``, ``(M, R)`` and
    ``(M,)`` where the R rows are n = 0..N, or the indices in ``rows``.
    ``bound`` is the relative truncation estimate per centre.
    """
    N = s.n_max if N is None else int(N)
    if N > s.n_max:
        raise ValueError(f"N={N} exceeds n_max={s.n_max}")
    rows = np.arange(N + 1) if rows is None else np.asarray(rows, dtype=int)
    if rows.size and (rows.min() < 0 or rows.max() > N):
        raise ValueError("rows must lie in [0, N]")
    la, ph = s.log_table()
    ola, oph, bound = _shift_rows(la, ph, z0, rows)
    if _polynomial_exact(s, N):
        bound = np.zeros_like(bound)
    if check and np.any(bound > tol):
        raise TruncationError(
            f"recentred series truncation bound {np.max(bound):.3e} above {tol:g}; raise n_max",
            bound=float(np.max(bound)),
        )
    return ola, oph, bound


def taylor_shift(s, z0, N=None, tol=1e-10):
    """Series of a_n(z0) = g^(n)(z0)/n! for n <= N.

    Computed by the convolution sum_k a_k C(k, n) z0^(k-n) over the stored
    table.  The relative truncation estimate is kept on
    ``result.truncation_bound``; a bound above ``tol`` raises
    :class:`TruncationError`.
    """
    z0 = complex(z0)
    N = s.n_max if N is None else int(N)
    if N > s.n_max:
        raise ValueError(f"N={N} exceeds n_max={s.n_max}")
    if z0 == 0:
        la, ph = s.log_table(N)
        return from_table(la, ph, s.center, s.name, s.degree, s.truncation_bound)
    ola, oph, bound = taylor_shift_batch(s, [z0], N, tol)
    return from_table(
        ola[0], oph[0], s.center + z0, f"shift({s.name})", s.degree, max(bound[0], s.truncation_bound)
    )


def genus_select(sigma, sigma_is_integer, sum_at_sigma_converges):
    """Genus p of the canonical product for convergence exponent ``sigma``."""
    if sigma < 0:
        raise ValueError("convergence exponent must be nonnegative")
    if not sigma_is_integer:
        return int(floor(sigma))
    s = int(round(sigma))
    if sum_at_sigma_converges:
        return max(s - 1, 0)
    return s


@dataclass(frozen=True)
class CanonicalProduct:
    """Weierstrass product over finitely many nonzero zeros with genus p."""

    zeros: tuple
    genus: int
    sigma: float = 0.0

    def __post_init__(self):
        zs = tuple(complex(z) for z in self.zeros)
        if any(z == 0 for z in zs):
            raise ValueError("canonical product zeros must be nonzero")
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        object.__setattr__(self, "zeros", zs)

    def __call__(self, z):
        return canonical_eval(self, z)


def canonical_eval(cp, z):
    """Value of prod_k (1 - z/z_k) exp(sum_{q<=p} (z/z_k)^q / q)."""
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for zk in cp.zeros:
        u = z / zk
        expo = sum(u**q / q for q in range(1, cp.genus + 1)) if cp.genus else 0
        out = out * (1 - u) * np.exp(expo)
    return out[()] if out.ndim == 0 else out


def estimate_convergence_exponent(zeros, declared=None):
    """Convergence exponent from a finite zero list.

    Least-squares slope of log n(r) against log r over the outer half of the
    sorted moduli; ``declared`` always wins.
    """
    if declared is not None:
        return float(declared)
    r = np.sort(np.abs(np.asarray(zeros, dtype=complex)))
    if r.size < 4:
        return 0.0
    cnt = np.arange(1, r.size + 1)
    half = slice(r.size // 2, None)
    x, y = np.log(r[half]), np.log(cnt[half])
    if np.ptp(x) == 0:
        return 0.0
    slope = np.polyfit(x, y, 1)[0]
    return float(max(slope, 0.0))


def exp_poly_times_product(A, cp):
    """g(z) = exp(A_1 z + ... + A_m z^m) * Pi(z) as a callable."""
    A = [complex(a) for a in A]

    def g(z):
        z = np.asarray(z, dtype=complex)
        e = sum(a * z ** (q + 1) for q, a in enumerate(A))
        return np.exp(e) * canonical_eval(cp, z)

    return g


def decay_report(s):
    """Check that |a_n|^(1/n) trends to zero over the window (heuristic).

    Returns a dict with the sampled sequence and a ``decreasing`` flag; the
    flag is informational and never raises.
    """
    la, _ = s.log_table()
    n = np.arange(la.size)
    keep = (n > 0) & np.isfinite(la)
    root = np.exp(la[keep] / n[keep])
    half = root[root.size // 2 :]
    decreasing = bool(half.size < 2 or half[-1] < half[0])
    return {"n": n[keep].tolist(), "root": root.tolist(), "decreasing": decreasing}


def log_sum(values):
    """log of sum of exp(values) ignoring -inf entries."""
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    return -np.inf if v.size == 0 else float(logsumexp(v))
