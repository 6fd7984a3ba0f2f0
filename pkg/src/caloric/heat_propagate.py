"""Solutions of the heat equation dF/dt = d^2F/dz^2 in two complex variables.

A :class:`HeatSolution` bundles evaluators for F, dF/dz, d^2F/dz^2 and
dF/dt.  Constructors cover polynomial initial data (exact combinations of
caloric polynomials), series and Gauss-Hermite propagation of entire initial
data, and closed-form special solutions.
"""

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erf, gammaln, rgamma

from .caloric_poly import bivariate_coefficients
from .entire_series import from_coeffs, taylor_shift_batch
from .errors import ConvergenceError, SingularTimeError, TruncationError, WrongSheetError


def _scalar(x):
    x = np.asarray(x)
    return x[()] if x.ndim == 0 else x


@dataclass(frozen=True)
class HeatSolution:
    """Evaluatable caloric function.

    ``backing`` is one of ``"polynomial"``, ``"series"``, ``"quadrature"`` or
    ``"closed_form"``; ``label`` names the closed form or construction.
    ``dz3`` is optional; callers fall back to finite differences of ``dz2``.
    """

    backing: str
    f: object
    dz: object
    dz2: object
    dt: object
    dz3: object = None
    label: str = ""
    admissibility: dict = field(default_factory=dict)

    def __call__(self, t, z):
        return self.f(t, z)

    def third(self, t, z, h=1e-4):
        if self.dz3 is not None:
            return self.dz3(t, z)
        return (self.dz2(t, z + h) - self.dz2(t, z - h)) / (2 * h)

    def residual(self, t, z):
        """|dF/dt - d^2F/dz^2| from the analytic evaluators."""
        return np.abs(self.dt(t, z) - self.dz2(t, z))

    def residual_fd(self, t, z, h=1e-3, method="cauchy", points=32, radius=0.05):
        """Heat residual |dF/dt - d^2F/dz^2| computed from values of F alone.

        ``method="central"`` uses fourth-order central differences with step
        ``h``.  ``method="cauchy"`` applies the trapezoid rule to the Cauchy
        integral on circles of ``radius`` around t and z: a symmetric
        difference stencil with ``points`` nodes whose error decays
        geometrically for analytic F.
        """
        f = self.f
        if method == "cauchy":
            w = np.exp(2j * np.pi * np.arange(points) / points)
            t = np.asarray(t, dtype=complex)[..., None]
            z = np.asarray(z, dtype=complex)[..., None]
            ft = np.mean(f(t + radius * w, z) / w, axis=-1) / radius
            fzz = 2 * np.mean(f(t, z + radius * w) / w**2, axis=-1) / radius**2
            return _scalar(np.abs(ft - fzz))
        if method != "central":
            raise ValueError(f"unknown method {method!r}")
        ft = (-f(t + 2 * h, z) + 8 * f(t + h, z) - 8 * f(t - h, z) + f(t - 2 * h, z)) / (12 * h)
        fzz = (
            -f(t, z + 2 * h) + 16 * f(t, z + h) - 30 * f(t, z) + 16 * f(t, z - h) - f(t, z - 2 * h)
        ) / (12 * h * h)
        return np.abs(ft - fzz)

    def records(self, ts, zs):
        """JSON-ready records {t, z, F, dFdz, residual} at paired points."""
        out = []
        for t, z in zip(np.atleast_1d(ts), np.atleast_1d(zs)):
            t, z = complex(t), complex(z)
            out.append(
                {
                    "t": _cjson(t),
                    "z": _cjson(z),
                    "F": _cjson(complex(self.f(t, z))),
                    "dFdz": _cjson(complex(self.dz(t, z))),
                    "residual": float(self.residual(t, z)),
                }
            )
        return out


def _cjson(c):
    return [c.real, c.imag]


def records_to_json(records):
    return json.dumps(records, indent=2)


# ---------------------------------------------------------------- polynomial


class _Bivariate:
    """Evaluator of sum_{j,k} C[j,k] t^j z^k with exact derivative tables."""

    def __init__(self, C):
        self.C = np.asarray(C, dtype=complex)

    def deriv(self, dt=0, dz=0):
        C = self.C
        for _ in range(dz):
            k = np.arange(1, C.shape[1])
            C = C[:, 1:] * k[None, :] if C.shape[1] > 1 else np.zeros((C.shape[0], 1))
        for _ in range(dt):
            j = np.arange(1, C.shape[0])
            C = C[1:, :] * j[:, None] if C.shape[0] > 1 else np.zeros((1, C.shape[1]))
        return _Bivariate(C)

    def __call__(self, t, z):
        t = np.asarray(t, dtype=complex)
        z = np.asarray(z, dtype=complex)
        rows = np.zeros((self.C.shape[0],) + np.broadcast(t, z).shape, dtype=complex)
        for j in range(self.C.shape[0]):
            acc = np.zeros(np.broadcast(t, z).shape, dtype=complex)
            for c in self.C[j, ::-1]:
                acc = acc * z + c
            rows[j] = acc
        out = np.zeros(np.broadcast(t, z).shape, dtype=complex)
        for j in range(self.C.shape[0] - 1, -1, -1):
            out = out * t + rows[j]
        return _scalar(out)


def polynomial_solution(coeffs, label="polynomial"):
    """F = sum_m a_m P_m(t, z) for initial data f(z) = sum_m a_m z^m (ascending)."""
    a = np.asarray(coeffs, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("empty coefficient list")
    M = a.size - 1
    C = np.zeros((M // 2 + 1, M + 1), dtype=complex)
    for m, am in enumerate(a):
        if am != 0:
            B = bivariate_coefficients(m)
            C[: B.shape[0], : B.shape[1]] += am * B
    F = _Bivariate(C)
    return HeatSolution(
        "polynomial",
        F,
        F.deriv(dz=1),
        F.deriv(dz=2),
        F.deriv(dt=1),
        F.deriv(dz=3),
        label,
        {"verdict": "admissible", "reason": "polynomial initial data"},
    )


def caloric_polynomial_solution(m):
    """HeatSolution for P_m itself."""
    a = np.zeros(m + 1)
    a[m] = 1
    return polynomial_solution(a, label=f"P_{m}")


def roots_to_coeffs(a):
    """Ascending coefficients of prod_k (1 - z / a_k)."""
    c = np.array([1.0 + 0j])
    for ak in a:
        c = np.convolve(c, [1.0, -1.0 / ak])
    return c


def _validate_roots(a, min_gap=1e-12):
    a = np.asarray(a, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("need at least one root")
    if not np.all(np.isfinite(a)):
        raise ValueError("roots must be finite")
    if np.any(a == 0):
        raise ValueError("roots must be nonzero")
    d = np.abs(a[:, None] - a[None, :])
    np.fill_diagonal(d, np.inf)
    if d.min() <= min_gap * max(1.0, np.abs(a).max()):
        raise ValueError("roots must be distinct")
    return a


def propagate_from_roots(a):
    """Caloric function 1 + sum_k A_k P_k(t, z) with f(z) = prod (1 - z/a_k)."""
    a = _validate_roots(a)
    return polynomial_solution(roots_to_coeffs(a), label="from_roots")


# -------------------------------------------------------------------- series


def _t_terms(f, z, J, deriv_t=False):
    """Log magnitudes and phases of f^(2j)(z)/j! t^j coefficients, j <= J."""
    j = np.arange(J + 1)
    n = 2 * j
    la, ph, bound = taylor_shift_batch(f, [z], N=2 * J, rows=n)
    lb = gammaln(n + 1.0) + la[0] - gammaln(j + 1.0)
    return lb, ph[0], float(bound[0])


def _sum_t(lb, ph, t, deriv_t=False):
    t = complex(t)
    j = np.arange(lb.size)
    if deriv_t:
        lb = lb[1:] + np.log(j[1:])
        ph = ph[1:]
        j = j[:-1]
    if lb.size == 0:
        return 0j, np.array([])
    with np.errstate(divide="ignore", invalid="ignore"):
        lt = lb + np.where(j == 0, 0.0, j * math.log(abs(t)) if t != 0 else -np.inf)
    lt = np.where(np.isnan(lt), -np.inf, lt)
    rot = np.exp(1j * j * cmath.phase(t)) if t != 0 else (j == 0).astype(complex)
    fin = np.isfinite(lt)
    if not fin.any():
        return 0j, np.zeros(lt.shape)
    mx = lt[fin].max()
    terms = np.where(fin, np.exp(np.where(fin, lt - mx, 0)) * ph * rot, 0)
    return complex(math.exp(mx) * terms.sum()), np.where(fin, np.exp(np.where(fin, lt, 0)), 0)


#: coefficients kept beyond the deepest row so recentring has a tail to sum
SHIFT_MARGIN = 64


def _max_depth(f):
    return max(1, (f.n_max - SHIFT_MARGIN) // 2)


def propagate_series(f, t, z, J=None, tol=1e-10, deriv_t=False, return_info=False):
    """F(t, z) = sum_{j<=J} f^(2j)(z) / j! * t^j.

    With ``J=None`` the depth doubles from 8 until two successive sums differ
    by less than 0.1 * tol (relative), capped at the coefficient depth; a
    fixed ``J`` is used as given.  The tail estimate is the size of the last
    two terms; above ``tol`` (relative) it raises :class:`TruncationError`.
    ``deriv_t=True`` returns dF/dt of the same partial sum.
    """
    t, z = complex(t), complex(z)
    cap = _max_depth(f)
    if f.degree is not None:
        J_exact = f.degree // 2
        if J is None or J >= J_exact:
            lb, ph, _ = _t_terms(f, z, J_exact)
            val, _ = _sum_t(lb, ph, t, deriv_t)
            info = {"J": J_exact, "tail": 0.0, "shift_bound": 0.0}
            return (val, info) if return_info else val
    if J is not None:
        if J > cap:
            raise ValueError(f"J={J} exceeds the available derivative depth {cap}")
        lb, ph, sb = _t_terms(f, z, J)
        val, mags = _sum_t(lb, ph, t, deriv_t)
        tail = float(mags[-2:].sum()) if mags.size else 0.0
        scale = max(1.0, abs(val))
        if tail > tol * scale:
            raise TruncationError(f"t-series tail {tail:.3e} above tolerance at J={J}", bound=tail)
        info = {"J": J, "tail": tail, "shift_bound": sb}
        return (val, info) if return_info else val
    lb, ph, sb = _t_terms(f, z, cap)
    prev = None
    Jc = min(8, cap)
    while True:
        val, mags = _sum_t(lb[: Jc + 1], ph[: Jc + 1], t, deriv_t)
        if prev is not None and abs(val - prev) < 0.1 * tol * max(1.0, abs(val)):
            tail = float(mags[-2:].sum()) if mags.size else 0.0
            info = {"J": Jc, "tail": tail, "shift_bound": sb}
            return (val, info) if return_info else val
        if Jc == cap:
            raise TruncationError(f"t-series did not settle within depth {cap}", bound=abs(val - prev))
        prev = val
        Jc = min(2 * Jc, cap)


def series_solution(f, tol=1e-10):
    """HeatSolution whose evaluators use :func:`propagate_series`."""
    d1 = f.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()

    def wrap(s, deriv_t=False):
        def ev(t, z):
            return _scalar(
                np.vectorize(lambda tt, zz: propagate_series(s, tt, zz, tol=tol, deriv_t=deriv_t), otypes=[complex])(t, z)
            )

        return ev

    return HeatSolution(
        "series", wrap(f), wrap(d1), wrap(d2), wrap(f, True), wrap(d3), f"series({f.name})", admissibility_check(f)
    )


# ----------------------------------------------------------------- quadrature


def _gh(nodes):
    u, w = np.polynomial.hermite.hermgauss(int(nodes))
    return u, w / math.sqrt(math.pi)


def _kernel_once(f, t, z, nodes, weight_u=False):
    u, w = _gh(nodes)
    st = cmath.sqrt(complex(t))
    vals = np.asarray(f.evaluate(complex(z) + 2 * u * st))
    if weight_u:
        vals = vals * u
    return complex(np.sum(w * vals))


def propagate_kernel(f, t, z, nodes=None, tol=1e-10, max_nodes=512):
    """Gauss-Hermite evaluation of pi^(-1/2) int exp(-u^2) f(z + 2 u sqrt(t)) du.

    This is the heat-kernel integral written in the scaled variable
    eta = 2u; the principal square root of t is used.  For polynomial data
    the rule with deg//2 + 1 nodes is exact.  Otherwise the node count
    doubles until successive values agree within ``tol`` (relative), else
    :class:`ConvergenceError`.
    """
    if f.degree is not None and nodes is None:
        return _kernel_once(f, t, z, f.degree // 2 + 1)
    n = 32 if nodes is None else int(nodes)
    prev = _kernel_once(f, t, z, n)
    while n < max_nodes:
        n *= 2
        cur = _kernel_once(f, t, z, n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError(f"kernel quadrature unsettled at {max_nodes} nodes")


def _kernel_dt(f1, t, z, nodes=None, tol=1e-10):
    """dF/dt = pi^(-1/2) int exp(-u^2) f'(z + 2u sqrt t) u / sqrt(t) du."""
    st = cmath.sqrt(complex(t))
    if st == 0:
        raise ValueError("kernel t-derivative needs t != 0")
    n = (f1.degree // 2 + 2) if f1.degree is not None else (64 if nodes is None else nodes)
    return _kernel_once(f1, t, z, n, weight_u=True) / st


def kernel_solution(f, tol=1e-10):
    """HeatSolution evaluated by Gauss-Hermite quadrature."""
    d1 = f.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()

    def wrap(s):
        def ev(t, z):
            return _scalar(np.vectorize(lambda tt, zz: propagate_kernel(s, tt, zz, tol=tol), otypes=[complex])(t, z))

        return ev

    def dt(t, z):
        return _scalar(np.vectorize(lambda tt, zz: _kernel_dt(d1, tt, zz), otypes=[complex])(t, z))

    return HeatSolution(
        "quadrature", wrap(f), wrap(d1), wrap(d2), dt, wrap(d3), f"kernel({f.name})", admissibility_check(f)
    )


# ------------------------------------------------------------- admissibility


def _decay_sequence(la, off):
    j = np.arange(1, (la.size - 1 - off) // 2 + 1)
    v = la[2 * j + off]
    keep = np.isfinite(v)
    j = j[keep]
    return j, j * np.exp(v[keep] / j)


def admissibility_check(f, N=None):
    """Heuristic check that j |c_{2j}|^(1/j) and j |c_{2j+1}|^(1/j) tend to 0.

    Over the second half of the window the log of each sequence is fitted
    against log j.  A clearly negative slope means decay (admissible); a
    flat or growing sequence bounded away from zero means rejection; any
    other trend is inconclusive.  Returns a dict with the verdict and the
    sampled sequences.
    """
    if f.degree is not None:
        return {"verdict": "admissible", "reason": "polynomial initial data"}
    N = f.n_max if N is None else min(int(N), f.n_max)
    if N < 50:
        raise ValueError("admissibility check needs N >= 50")
    la, _ = f.log_table(N)
    report = {"N": N}
    verdicts = []
    for name, off in (("even", 0), ("odd", 1)):
        j, s = _decay_sequence(la, off)
        report[name] = {"j": j.tolist(), "value": s.tolist()}
        if j.size < 4:
            verdicts.append("empty")
            continue
        half = j >= j.max() / 2
        jj, ss = j[half], s[half]
        slope = float(np.polyfit(np.log(jj), np.log(ss), 1)[0]) if jj.size >= 3 else 0.0
        report[name]["slope"] = slope
        monotone = bool(np.all(np.diff(ss) <= 0))
        if slope < -0.05 and monotone:
            verdicts.append("admissible")
        elif slope >= -0.05 and ss[-1] > 1e-3 and ss[-1] >= ss[0] * 0.999:
            verdicts.append("rejected")
        else:
            verdicts.append("inconclusive")
    real = [v for v in verdicts if v != "empty"]
    if not real:
        verdict = "admissible"
    elif "rejected" in real:
        verdict = "rejected"
    elif all(v == "admissible" for v in real):
        verdict = "admissible"
    else:
        verdict = "inconclusive"
    report["verdict"] = verdict
    return report


# ------------------------------------------------------------ even/odd parts


def even_odd_split(F):
    """Return (F_e, F_o) with F_e(t,z) = (F(t,z) + F(t,-z))/2 and F_o = F - F_e."""

    def part(sign):
        def comb(ev, flip):
            # derivatives of odd order in z pick up an extra sign under z -> -z
            s = sign * flip

            def g(t, z):
                return (ev(t, z) + s * ev(t, -np.asarray(z))) / 2

            return g

        dz3 = comb(F.third, -1)
        return HeatSolution(
            F.backing,
            comb(F.f, 1),
            comb(F.dz, -1),
            comb(F.dz2, 1),
            comb(F.dt, 1),
            dz3,
            f"{'even' if sign > 0 else 'odd'}({F.label})",
            F.admissibility,
        )

    return part(1), part(-1)


def phi_psi_expand(phi, psi, t, z, K, tol=1e-10):
    """sum_{k<=K} phi^(k)(t) z^(2k)/(2k)! + psi^(k)(t) z^(2k+1)/(2k+1)!.

    ``phi`` and ``psi`` are series in t.  The last two terms of each sum
    serve as the tail estimate (relative to the value); above ``tol`` the
    function raises :class:`TruncationError`.
    """
    t, z = complex(t), complex(z)
    total = 0j
    tail = 0.0
    for s, off in ((phi, 0), (psi, 1)):
        Ku = K if s.degree is None else min(K, s.degree)
        if Ku > s.n_max:
            raise ValueError(f"K={K} exceeds the coefficient depth {s.n_max}")
        k = np.arange(Ku + 1)
        la, ph, _ = taylor_shift_batch(s, [t], N=Ku, rows=k)
        n = 2 * k + off
        with np.errstate(divide="ignore", invalid="ignore"):
            lz = n * math.log(abs(z)) if z != 0 else np.where(n == 0, 0.0, -np.inf)
        lt = gammaln(k + 1.0) + la[0] - gammaln(n + 1.0) + lz
        lt = np.where(np.isnan(lt), -np.inf, lt)
        rot = np.exp(1j * n * cmath.phase(z))
        mags = np.where(np.isfinite(lt), np.exp(np.where(np.isfinite(lt), lt, 0)), 0)
        total += complex(np.sum(mags * ph[0] * rot))
        if s.degree is None or s.degree > K:
            tail += float(mags[-2:].sum())
    if tail > tol * max(1.0, abs(total)):
        raise TruncationError(f"phi/psi expansion tail {tail:.3e} above tolerance", bound=tail)
    return total


# ------------------------------------------------------------- closed forms


def _gauss_parts(a, t, z):
    a = complex(a)
    t = np.asarray(t, dtype=complex)
    z = np.asarray(z, dtype=complex)
    D = 1 - 4 * a * t
    if np.any(np.abs(D) <= 1e-14):
        raise SingularTimeError(f"t = 1/(4a) = {1 / (4 * a)} is a singular time")
    F = np.exp(a * z**2 / D) / np.sqrt(D)
    g = 2 * a * z / D
    h = 2 * a / D
    return F, g, h, D


def gaussian_solution(a, t, z):
    """(1 - 4at)^(-1/2) exp(a z^2 / (1 - 4at)), principal square root."""
    return _scalar(_gauss_parts(a, t, z)[0])


def gaussian_heat(a):
    """HeatSolution of the Gaussian closed form (never zero)."""

    def f(t, z):
        return _scalar(_gauss_parts(a, t, z)[0])

    def dz(t, z):
        F, g, h, _ = _gauss_parts(a, t, z)
        return _scalar(F * g)

    def dz2(t, z):
        F, g, h, _ = _gauss_parts(a, t, z)
        return _scalar(F * (g * g + h))

    def dz3(t, z):
        F, g, h, _ = _gauss_parts(a, t, z)
        return _scalar(F * (g**3 + 3 * g * h))

    def dt(t, z):
        F, _, _, D = _gauss_parts(a, t, z)
        z = np.asarray(z, dtype=complex)
        return _scalar(F * (2 * a / D + 4 * a * a * z * z / D**2))

    return HeatSolution("closed_form", f, dz, dz2, dt, dz3, f"gaussian(a={a})")


def _sum_heat(parts, weights, label):
    def lin(attr):
        def g(t, z):
            return sum(w * getattr(p, attr)(t, z) for p, w in zip(parts, weights))

        return g

    return HeatSolution("closed_form", lin("f"), lin("dz"), lin("dz2"), lin("dt"), lin("dz3"), label)


def cos_sq_heat(a):
    """HeatSolution evolving cos(a z^2)."""
    a = complex(a)
    return _sum_heat([gaussian_heat(1j * a), gaussian_heat(-1j * a)], [0.5, 0.5], f"cos_sq(a={a})")


def cos_sq_solution(a, t, z):
    """Caloric function with initial data cos(a z^2)."""
    return cos_sq_heat(a)(t, z)


def zero_locus(a, t, branch=0, check_tol=1e-8):
    """A zero z of the cos(a z^2) solution at time t for the given log branch.

    z^2 = (1 + 16 a^2 t^2) [ (Ln((1 - 4iat)/(1 + 4iat)) + 2 pi i branch) / (4ia) + pi / (2a) ]
    with the principal square root.  Branches that land on the other sheet
    of the square roots fail the |F| check and raise :class:`WrongSheetError`.
    """
    a, t = complex(a), complex(t)
    D1, D2 = 1 - 4j * a * t, 1 + 4j * a * t
    if abs(D1) <= 1e-14 or abs(D2) <= 1e-14:
        raise SingularTimeError("t = +-1/(4ia) is a singular time")
    L = cmath.log(D1 / D2) + 2j * math.pi * branch
    z2 = (1 + 16 * a * a * t * t) * (L / (4j * a) + math.pi / (2 * a))
    z = cmath.sqrt(z2)
    val = abs(cos_sq_solution(a, t, z))
    if val > check_tol:
        raise WrongSheetError(f"branch {branch} gives |F| = {val:.3e}; the square roots sit on the other sheet")
    return z


def _hermite_series(alpha, x, K=None, tol=1e-17, max_terms=4000):
    """u_e, u_o and their first two derivatives at x (recursion on a_n)."""
    alpha = complex(alpha)
    x = complex(x)
    out = {}
    for name, start in (("e", 0), ("o", 1)):
        a = 1.0 + 0j
        n = start
        u = du = d2u = 0j
        biggest = 0.0
        count = 0
        limit = max_terms if K is None else int(K)
        settled = False
        while count < limit:
            xn = x**n if n else 1.0
            term = a * xn
            u += term
            if n >= 1:
                du += a * n * (x ** (n - 1))
            if n >= 2:
                d2u += a * n * (n - 1) * (x ** (n - 2))
            biggest = max(biggest, abs(term), abs(u))
            a = a * 2 * (n - alpha) / ((n + 1) * (n + 2))
            n += 2
            count += 1
            if a == 0:
                settled = True
                break
            nxt = abs(a) * abs(x) ** n * max(1.0, n * n / max(abs(x), 1e-300) ** 2)
            if nxt <= tol * max(biggest, 1e-300) and count > 2:
                settled = True
                break
        if not settled and K is None:
            raise TruncationError("Hermite-equation series did not settle")
        out[name] = (u, du, d2u)
    return out


def _alpha_setup(alpha, t, sheet):
    alpha, t = complex(alpha), complex(t)
    if t == 0:
        raise SingularTimeError("t = 0 is an essential singularity of the alpha-solution")
    if sheet not in (1, -1):
        raise ValueError("sheet must be +1 or -1")
    rt = cmath.sqrt(t) * sheet
    # t^(alpha/2) continued along the chosen sheet of sqrt(t)
    tpow = cmath.exp(alpha * cmath.log(cmath.sqrt(t))) * (cmath.exp(1j * math.pi * alpha) if sheet < 0 else 1)
    pref = math.sqrt(math.pi) * cmath.exp(alpha * cmath.log(2j)) * tpow
    ce = complex(rgamma((1 - alpha) / 2))
    co = 2 * complex(rgamma(-alpha / 2))
    return alpha, rt, pref, ce, co


def hermite_alpha_solution(alpha, t, z, K=None, sheet=1):
    """Caloric function with 'initial value' z^alpha via the Hermite equation.

    F = sqrt(pi) (2i)^alpha t^(alpha/2) [u_e(x)/Gamma((1-alpha)/2) + 2 u_o(x)/Gamma(-alpha/2)]
    with x = i z / (2 sqrt t).  Reciprocal Gamma values are entire, so no
    poles arise.  ``sheet=-1`` continues sqrt(t) to its negative, which
    changes the function for non-integer alpha; for alpha = m both sheets
    give P_m.
    """
    alpha, rt, pref, ce, co = _alpha_setup(alpha, t, sheet)
    x = 1j * complex(z) / (2 * rt)
    u = _hermite_series(alpha, x, K)
    return pref * (ce * u["e"][0] + co * u["o"][0])


def hermite_alpha_heat(alpha, K=None, sheet=1):
    """HeatSolution for :func:`hermite_alpha_solution` with analytic z-derivatives."""

    def parts(t, z, order):
        a, rt, pref, ce, co = _alpha_setup(alpha, t, sheet)
        dx = 1j / (2 * rt)
        u = _hermite_series(a, complex(z) * dx, K)
        return pref * dx**order * (ce * u["e"][order] + co * u["o"][order])

    def vec(order):
        def g(t, z):
            return _scalar(np.vectorize(lambda tt, zz: parts(tt, zz, order), otypes=[complex])(t, z))

        return g

    def dt(t, z):
        # dF/dt from the prefactor and the chain rule through x = i z / (2 sqrt t)
        def one(tt, zz):
            a, rt, pref, ce, co = _alpha_setup(alpha, tt, sheet)
            tt = complex(tt)
            x = 1j * complex(zz) / (2 * rt)
            u = _hermite_series(a, x, K)
            v = ce * u["e"][0] + co * u["o"][0]
            dv = ce * u["e"][1] + co * u["o"][1]
            return pref * (a / (2 * tt) * v - x / (2 * tt) * dv)

        return _scalar(np.vectorize(one, otypes=[complex])(t, z))

    return HeatSolution("closed_form", vec(0), vec(1), vec(2), dt, None, f"alpha({alpha})")


def erf_form_solution(t, z):
    """(i/sqrt t) exp(-z^2/(4t)) (sqrt(pi)/2) (1 + erf(-i z / (2 sqrt t)))."""
    t, z = complex(t), complex(z)
    if t == 0:
        raise SingularTimeError("t = 0 is singular for the erf-form solution")
    rt = cmath.sqrt(t)
    return 1j / rt * cmath.exp(-z * z / (4 * t)) * math.sqrt(math.pi) / 2 * (1 + complex(erf(-1j * z / (2 * rt))))


def exp_heat(lam):
    """E_lambda(t, z) = exp(lambda^2 t + lambda z)."""
    lam = complex(lam)

    def f(t, z):
        return _scalar(np.exp(lam * lam * np.asarray(t, dtype=complex) + lam * np.asarray(z, dtype=complex)))

    def scaled(p):
        return lambda t, z: lam**p * f(t, z)

    return HeatSolution("closed_form", f, scaled(1), scaled(2), scaled(2), scaled(3), f"E({lam})")


def tilt(F, lam):
    """G(t, z) = F(t, z + 2 lam t) exp(lam^2 t + lam z)."""
    lam = complex(lam)

    def E(t, z):
        return np.exp(lam * lam * np.asarray(t, dtype=complex) + lam * np.asarray(z, dtype=complex))

    def w(t, z):
        return np.asarray(z, dtype=complex) + 2 * lam * np.asarray(t, dtype=complex)

    def g(t, z):
        return _scalar(F.f(t, w(t, z)) * E(t, z))

    def gz(t, z):
        ww = w(t, z)
        return _scalar((F.dz(t, ww) + lam * F.f(t, ww)) * E(t, z))

    def gzz(t, z):
        ww = w(t, z)
        return _scalar((F.dz2(t, ww) + 2 * lam * F.dz(t, ww) + lam * lam * F.f(t, ww)) * E(t, z))

    def gzzz(t, z):
        ww = w(t, z)
        return _scalar(
            (F.third(t, ww) + 3 * lam * F.dz2(t, ww) + 3 * lam**2 * F.dz(t, ww) + lam**3 * F.f(t, ww)) * E(t, z)
        )

    def gt(t, z):
        ww = w(t, z)
        return _scalar((F.dt(t, ww) + 2 * lam * F.dz(t, ww) + lam * lam * F.f(t, ww)) * E(t, z))

    return HeatSolution(F.backing, g, gz, gzz, gt, gzzz, f"tilt({F.label},{lam})", F.admissibility)


def constant_heat(c=1.0):
    c = complex(c)

    def zero(t, z):
        return _scalar(np.zeros(np.broadcast(np.asarray(t), np.asarray(z)).shape, dtype=complex))

    def const(t, z):
        return zero(t, z) + c

    return HeatSolution("polynomial", const, zero, zero, zero, zero, "constant")


def series_from_roots(a):
    """Initial data prod (1 - z/a_k) as a coefficient series."""
    return from_coeffs(roots_to_coeffs(_validate_roots(a)))
