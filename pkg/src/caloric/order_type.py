"""Order and type of entire functions from their Taylor coefficients.

Also the subsequence growth quantities theta0/theta1 sampled on grids, and
the transfer laws from the z-order of initial data to the t-order and
t-type of the caloric function it generates.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .entire_series import from_table, taylor_shift_batch

#: tau_hat below this is classified as minimal type
MINIMAL_TYPE = 1e-3
#: tau_hat above this is classified as maximal type
MAXIMAL_TYPE = 1e3
#: relative agreement required between nested windows
STABILITY_TOL = 0.05
#: coefficients kept beyond the deepest recentred row
SHIFT_SPARE = 64


@dataclass(frozen=True)
class OrderTypeEstimate:
    """Estimated order, type and exact-order class of an entire function."""

    rho_hat: float
    tau_hat: float
    exact_order_class: str
    window: tuple
    stable: bool = True
    diagnostic: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "rho_hat": self.rho_hat,
            "tau_hat": self.tau_hat,
            "exact_order_class": self.exact_order_class,
            "window": list(self.window),
            "stable": self.stable,
            "diagnostic": self.diagnostic,
        }


@dataclass(frozen=True)
class ThetaSample:
    z: complex
    theta0: float
    theta1: float
    K: int


def _window(s, window):
    if window is None:
        return (max(2, s.n_max // 2), s.n_max)
    lo, hi = int(window[0]), int(window[1])
    if lo < 0 or hi < lo:
        raise ValueError(f"bad window {window}")
    if hi > s.n_max:
        raise ValueError(f"window upper end {hi} exceeds n_max={s.n_max}")
    return (max(lo, 2), hi)


def _window_data(s, window):
    lo, hi = window
    la, _ = s.log_table(hi)
    n = np.arange(lo, hi + 1)
    v = la[lo:]
    keep = np.isfinite(v)
    return n[keep], v[keep]


def _limsup_order(n, la):
    good = la < 0
    if not good.any():
        return math.inf
    return float(np.max(n[good] * np.log(n[good]) / -la[good]))


def _envelope(n, y, block=4):
    """Per-block minimum of y (the limsup side of the order formula)."""
    keys = n // block
    out_n, out_y = [], []
    for key in np.unique(keys):
        sel = keys == key
        i = np.argmin(y[sel])
        out_n.append(n[sel][i])
        out_y.append(y[sel][i])
    return np.array(out_n, dtype=float), np.array(out_y)


def _regression(n, la):
    """Fit -ln|a_n|/n = A ln n + B + C ln n / n + D / n on the envelope.

    For |a_n| ~ (e rho tau / n)^(n/rho) this gives rho = 1/A and
    tau = exp(-rho B) / (e rho); the 1/n terms absorb Stirling corrections.
    """
    y = -la / n
    en, ey = _envelope(n, y)
    if en.size < 6:
        raise ValueError("too few nonzero coefficients in the window for a regression")
    x = np.log(en)
    X = np.column_stack([x, np.ones_like(x), x / en, 1.0 / en])
    coef, *_ = np.linalg.lstsq(X, ey, rcond=None)
    A, B = coef[0], coef[1]
    if A <= 0:
        return math.inf, math.inf
    rho = 1.0 / A
    with np.errstate(over="ignore"):
        tau = float(np.exp(-rho * B) / (np.e * rho))
    return float(rho), tau


def _classify(rho, tau):
    if rho == 0:
        return "rho-"
    if not math.isfinite(rho) or not math.isfinite(tau) or tau > MAXIMAL_TYPE:
        return "rho+"
    if tau < MINIMAL_TYPE:
        return "rho-"
    return "rho"


def estimate_order(s, window=None, method="regression"):
    """Estimate order (and type) from the coefficients in ``window``.

    ``method="limsup"`` is the direct tail maximum of n ln n / (-ln|a_n|),
    which converges slowly (about 1.23 for exp at n in [200, 500]).
    The default ``"regression"`` fits the asymptotic form of ln|a_n| with
    its 1/n corrections on the lower envelope of -ln|a_n|/n.  Both skip
    zero coefficients.  A nested tail-half window must agree within 5% or
    ``stable`` is False.
    """
    if s.degree is not None:
        return OrderTypeEstimate(0.0, math.nan, "rho-", (0, s.n_max), True, {"polynomial_degree": s.degree})
    win = _window(s, window)
    n, la = _window_data(s, win)
    if n.size == 0:
        raise ValueError(f"all coefficients vanish in window {win}")
    tail = (n[-8:] * np.log(n[-8:]) / np.where(la[-8:] < 0, -la[-8:], np.nan)).tolist()

    def one(nn, ll):
        if method == "limsup":
            r = _limsup_order(nn, ll)
            t = estimate_type_from(nn, ll, r) if 0 < r < math.inf else math.nan
            return r, t
        if method == "regression":
            return _regression(nn, ll)
        raise ValueError(f"unknown method {method!r}")

    rho, tau = one(n, la)
    half = n >= (win[0] + win[1]) / 2
    stable = True
    rho2 = math.nan
    if half.sum() >= 6:
        rho2, _ = one(n[half], la[half])
        if math.isfinite(rho) and math.isfinite(rho2) and rho > 0:
            stable = abs(rho2 - rho) <= STABILITY_TOL * rho
        else:
            stable = rho == rho2
    if not (0 < rho < math.inf):
        tau = math.nan if rho == 0 else math.inf
    diag = {"method": method, "tail_estimand": tail, "rho_tail_half": rho2, "points": int(n.size)}
    return OrderTypeEstimate(float(rho), float(tau), _classify(rho, tau), win, bool(stable), diag)


def estimate_type_from(n, la, rho):
    """(1/(e rho)) max_n n |a_n|^(rho/n) on given log data."""
    return float(np.exp(np.max(np.log(n) + rho * la / n)) / (np.e * rho))


def estimate_type(s, rho, window=None):
    """Type for a known order: (1/(e rho)) * max over the window of n |a_n|^(rho/n)."""
    if not (0 < rho < math.inf):
        raise ValueError("type needs 0 < rho < inf")
    n, la = _window_data(s, _window(s, window))
    if n.size == 0:
        return 0.0
    return estimate_type_from(n, la, rho)


def _theta_rows(K, parity):
    if K < 4:
        raise ValueError("theta estimates need K >= 4")
    k = np.arange(max(2, K // 2), K + 1)
    n = 2 * k if parity == "even" else 2 * k + 1
    return k, n


def _theta_from_logs(la, k, n):
    # |g^(n)| = n! |a_n(z)|; exponent 1 / (2 k ln k)
    with np.errstate(invalid="ignore"):
        expo = (gammaln(n + 1.0) + la) / (2 * k * np.log(k))
    return np.exp(np.max(expo, axis=-1))


def _shift_depth(s, K, n_shift):
    need = 2 * K + 1
    if n_shift is None:
        n_shift = min(s.n_max, need + 100)
    if n_shift < need:
        raise ValueError(f"need at least {need} coefficients, have {n_shift}")
    la, ph = s.log_table(n_shift)
    return from_table(la, ph, s.center, s.name, s.degree)


def theta_grid(s, zs, K=40, n_shift=None, tol=1e-10):
    """theta0 and theta1 at every point of ``zs`` (vectorized)."""
    zs = np.asarray(zs, dtype=complex)
    base = _shift_depth(s, K, n_shift)
    k0, n0 = _theta_rows(K, "even")
    k1, n1 = _theta_rows(K, "odd")
    rows = np.concatenate([n0, n1])
    la, _ph, _b = taylor_shift_batch(base, zs.ravel(), N=2 * K + 1, tol=tol, rows=rows)
    t0 = _theta_from_logs(la[:, : n0.size], k0, n0)
    t1 = _theta_from_logs(la[:, n0.size :], k1, n1)
    return t0.reshape(zs.shape), t1.reshape(zs.shape)


def theta_subseq(s, z, parity, K=40, n_shift=None, tol=1e-10):
    """theta0 (``parity="even"``) or theta1 (``"odd"``) at one point."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    base = _shift_depth(s, K, n_shift)
    k, n = _theta_rows(K, parity)
    la, _ph, _b = taylor_shift_batch(base, [z], N=2 * K + 1, tol=tol, rows=n)
    return float(_theta_from_logs(la, k, n)[0])


def theta_sample(s, z, K=40, n_shift=None):
    t0, t1 = theta_grid(s, [z], K, n_shift)
    return ThetaSample(complex(z), float(t0[0]), float(t1[0]), K)


def theta_match_summary(s, grid, K=40, tol=0.05, n_shift=None, rho=None):
    """Compare theta0/theta1 on ``grid`` to the global theta = e^(1 - 1/rho).

    Returns match fractions and the points where each quantity misses
    theta by more than ``tol``.
    """
    grid = np.asarray(grid, dtype=complex).ravel()
    if rho is None:
        rho = estimate_order(s).rho_hat
    theta = math.exp(1 - 1 / rho) if rho > 0 else 0.0
    t0, t1 = theta_grid(s, grid, K, n_shift)
    ok0 = np.abs(t0 - theta) <= tol
    ok1 = np.abs(t1 - theta) <= tol
    return {
        "theta": theta,
        "rho_hat": rho,
        "K": K,
        "points": int(grid.size),
        "fraction_matching_theta0": float(ok0.mean()),
        "fraction_matching_theta1": float(ok1.mean()),
        "fraction_matching_theta": float((ok0 & ok1).mean()),
        "exceptional_theta0": grid[~ok0].tolist(),
        "exceptional_theta1": grid[~ok1].tolist(),
        "max_theta": float(max(t0.max(), t1.max())),
        "theta0": t0,
        "theta1": t1,
    }


def write_theta_csv(path, zs, theta0, theta1):
    """Write a theta grid as CSV with columns re(z), im(z), theta0, theta1."""
    zs = np.asarray(zs, dtype=complex).ravel()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re(z)", "im(z)", "theta0", "theta1"])
        for z, a, b in zip(zs, np.ravel(theta0), np.ravel(theta1)):
            w.writerow([f"{z.real:.17g}", f"{z.imag:.17g}", f"{a:.17g}", f"{b:.17g}"])


def caloric_t_order(rho):
    """t-order rho / (2 - rho) of the caloric function with z-order rho."""
    if rho < 0 or rho > 2:
        raise ValueError("z-order of admissible initial data lies in [0, 2]")
    if rho == 2:
        return math.inf
    return rho / (2 - rho)


def caloric_t_type(rho, tau):
    """t-type (1 - rho/2) (2 rho)^(rho/(2-rho)) tau^(2/(2-rho)), 0 < rho < 2."""
    if not 0 < rho < 2:
        raise ValueError("t-type formula needs 0 < rho < 2")
    if tau < 0:
        raise ValueError("type must be nonnegative")
    return (1 - rho / 2) * (2 * rho) ** (rho / (2 - rho)) * tau ** (2 / (2 - rho))


def t_series_coeffs(f, z, parity, J=None, tol=1e-10):
    """Coefficients b_j of the t-expansion of the even or odd part at ``z``.

    even: b_j = (2j)! c_{2j}(z) / j!, odd: b_j = (2j+1)! c_{2j+1}(z) / j!,
    where c_n(z) are the Taylor coefficients of f recentred at z.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    off = 0 if parity == "even" else 1
    if J is None:
        # recentring needs spare coefficients beyond the last row for its tail bound
        spare = 0 if complex(z) == 0 or f.degree is not None else SHIFT_SPARE
        J = (f.n_max - off - spare) // 2
    N = 2 * J + off
    if N > f.n_max:
        raise ValueError(f"J={J} needs {N} coefficients, have {f.n_max}")
    j = np.arange(J + 1)
    n = 2 * j + off
    if complex(z) == 0:
        la, ph = f.log_table(N)
        la, ph = la[n], ph[n]
    else:
        la, ph, _ = taylor_shift_batch(f, [z], N=N, tol=tol, rows=n)
        la, ph = la[0], ph[0]
    lb = gammaln(n + 1.0) + la - gammaln(j + 1.0)
    deg = None
    if f.degree is not None:
        deg = max(0, (f.degree - off) // 2)
    return from_table(lb, ph, 0j, f"t_{parity}({f.name})", deg)
