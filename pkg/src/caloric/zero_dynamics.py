"""Motion of the zeros of caloric functions in complex time.

Two independent routes are provided: continuation of the zeros of a given
:class:`~caloric.heat_propagate.HeatSolution` (Euler predictor with Newton
corrector), and direct integration of the interacting-particle ODE satisfied
by the zeros.  Multiple zeros (F = dF/dz = 0) are located by a
two-variable Newton scan.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import CaloricError, ConvergenceError, PairingError, RamificationError
from .heat_propagate import propagate_from_roots
from .roots import polynomial_roots

__all__ = [
    "ODEPathConfig",
    "RamificationPoint",
    "ZeroTrajectory",
    "closed_form_verify",
    "collision_scan",
    "log_deriv_velocity",
    "never_zero_check",
    "ode_evolve",
    "polynomial_roots",
    "track_roots",
]

ESCAPE_RADIUS = 1e6
VARIANTS = ("genus0", "genus1", "even", "odd", "tilt")


@dataclass(frozen=True)
class ODEPathConfig:
    """Complex-time polyline and integration controls.

    Samples are recorded at ``samples_per_segment`` equally spaced points of
    every segment (plus the start).  ``max_step`` limits the step measured
    in arclength of t.
    """

    t_path: tuple = (0.0, 1.0)
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    min_separation: float = 1e-6
    max_step: float = math.inf
    samples_per_segment: int = 20
    escape_radius: float = ESCAPE_RADIUS

    def __post_init__(self):
        path = tuple(complex(t) for t in self.t_path)
        if len(path) < 2:
            raise ValueError("t_path needs at least two waypoints")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.min_separation <= 0:
            raise ValueError("min_separation must be positive")
        if self.max_step <= 0:
            raise ValueError("max_step must be positive")
        if self.samples_per_segment < 1:
            raise ValueError("samples_per_segment must be >= 1")
        object.__setattr__(self, "t_path", path)

    def segments(self):
        for ta, tb in zip(self.t_path[:-1], self.t_path[1:]):
            if tb != ta:
                yield ta, tb

    def sample_times(self):
        out = [self.t_path[0]]
        for ta, tb in self.segments():
            s = np.linspace(0, 1, self.samples_per_segment + 1)[1:]
            out.extend(ta + s * (tb - ta))
        return np.array(out)


@dataclass
class ZeroTrajectory:
    """Sampled path of one zero; ``status`` is ok, collision, escaped or stalled."""

    k: int
    samples: list = field(default_factory=list)
    status: str = "ok"
    t_star: complex = None

    @property
    def t(self):
        return np.array([s[0] for s in self.samples])

    @property
    def z(self):
        return np.array([s[1] for s in self.samples])


@dataclass(frozen=True)
class RamificationPoint:
    t: complex
    z: complex
    residual_F: float
    residual_dz: float


def _eval(fn, t, z):
    """Vectorized evaluation; points where the solution is singular give nan."""
    try:
        with np.errstate(all="ignore"):
            return np.asarray(fn(t, z), dtype=complex)
    except (CaloricError, ValueError, ZeroDivisionError, OverflowError):
        t, z = np.broadcast_arrays(np.asarray(t, dtype=complex), np.asarray(z, dtype=complex))
        out = np.full(t.shape, np.nan + 0j)
        for idx in np.ndindex(t.shape):
            try:
                out[idx] = complex(fn(t[idx], z[idx]))
            except (CaloricError, ValueError, ZeroDivisionError, OverflowError):
                pass
        return out


def log_deriv_velocity(F, t, z, rel=1e-12):
    """Zero velocity -F_zz / F_z at (t, z).

    Raises :class:`RamificationError` when |F_z| <= rel * max(1, |F_zz|).
    """
    fz = _eval(F.dz, t, z)
    fzz = _eval(F.dz2, t, z)
    scale = np.maximum(1.0, np.abs(fzz))
    if np.any(np.abs(fz) <= rel * scale):
        raise RamificationError(f"dF/dz vanishes near t={t}, z={z}")
    out = -fzz / fz
    return out[()] if out.ndim == 0 else out


def _newton(F, t, z, tol=1e-13, max_iter=12):
    z = np.array(z, dtype=complex)
    done = np.zeros(z.shape, dtype=bool)
    for _ in range(max_iter):
        f = _eval(F.f, t, z)
        fz = _eval(F.dz, t, z)
        ok = np.isfinite(f) & np.isfinite(fz) & (fz != 0)
        step = np.where(ok, f / np.where(ok, fz, 1), np.nan)
        step = np.where(done, 0, step)
        z = z - np.where(np.isfinite(step), step, 0)
        small = np.abs(step) <= tol * (1 + np.abs(z))
        done |= small
        if not np.all(np.isfinite(step) | done):
            return z, np.zeros(z.shape, bool)
        if done.all():
            break
    return z, done


def _nearest_gap(z):
    if z.size < 2:
        return np.full(z.shape, np.inf)
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def track_roots(F, initial_zeros, cfg, residual_tol=1e-8):
    """Continue the zeros of F(t, .) along ``cfg.t_path``.

    Each step takes an Euler predictor with the velocity -F_zz/F_z and a
    Newton corrector at the new time, accepted only if the correction is
    small against both the step and the distance to the nearest other zero;
    otherwise the step is halved.  Zeros closer than ``min_separation`` or
    with vanishing F_z get status ``collision``.
    """
    given = np.array(initial_zeros, dtype=complex).ravel()
    t0 = cfg.t_path[0]
    z, conv = _newton(F, t0, given)
    res = np.abs(_eval(F.f, t0, z))
    # polishing may only refine the given points, not move them to other zeros
    moved = np.abs(z - given) > 1e-6 * (1 + np.abs(given))
    if not conv.all() or np.any(~(res <= residual_tol)) or moved.any():
        raise ConvergenceError("initial zeros do not satisfy F(t0, z) = 0")
    trajs = [ZeroTrajectory(k, [(t0, complex(zk))]) for k, zk in enumerate(z)]
    active = np.ones(z.size, dtype=bool)

    def halt(idx, status, t):
        for i in idx:
            if active[i]:
                active[i] = False
                trajs[i].status = status
                if status == "collision":
                    trajs[i].t_star = complex(t)
                trajs[i].samples.append((complex(t), complex(z[i])))

    gap0 = _nearest_gap(z)
    if np.any(gap0 < cfg.min_separation):
        halt(np.nonzero(gap0 < cfg.min_separation)[0], "collision", t0)

    for ta, tb in cfg.segments():
        L = abs(tb - ta)
        u = (tb - ta) / L
        h_base = min(cfg.max_step, L / cfg.samples_per_segment)
        h = h_base
        s = 0.0
        for s_target in np.linspace(0, L, cfg.samples_per_segment + 1)[1:]:
            while active.any() and s < s_target - 1e-14 * L:
                idx = np.nonzero(active)[0]
                hh = min(h, s_target - s)
                t_cur = ta + s * u
                t_new = ta + (s + hh) * u
                fz = _eval(F.dz, t_cur, z[idx])
                fzz = _eval(F.dz2, t_cur, z[idx])
                flat = np.abs(fz) <= 1e-12 * np.maximum(1.0, np.abs(fzz))
                if flat.any():
                    halt(idx[flat], "collision", t_cur)
                    continue
                v = -fzz / fz
                pred = z[idx] + hh * u * v
                corr, conv = _newton(F, t_new, pred)
                move = np.abs(corr - pred)
                gaps = _nearest_gap(pred)
                ok = (
                    conv
                    & (move <= 0.1 * gaps)
                    & (move <= 0.5 * np.abs(hh * v) + 1e-9 * (1 + np.abs(pred)))
                )
                if not ok.all():
                    h = hh / 2
                    if h < 1e-13 * max(1.0, L):
                        halt(idx[~ok], "stalled", t_cur)
                        h = h_base
                    continue
                z[idx] = corr
                s += hh
                h = min(2 * hh, h_base)
                gaps = _nearest_gap(z[idx])
                close = gaps < cfg.min_separation
                if close.any():
                    halt(idx[close], "collision", t_new)
                far = np.abs(z[idx]) > cfg.escape_radius
                if far.any():
                    halt(idx[far & active[idx]], "escaped", t_new)
            t_s = ta + s_target * u
            for i in np.nonzero(active)[0]:
                trajs[i].samples.append((complex(t_s), complex(z[i])))
            s = s_target
    return trajs


def _pair_sum(z):
    d = z[:, None] - z[None, :]
    np.fill_diagonal(d, np.inf)
    return (1.0 / d).sum(axis=1)


def ode_velocity(z, variant="genus0", lam=0.0):
    """Right-hand side of the zero-dynamics system for ``variant``.

    genus0: -2 sum 1/(z_k - z_j); tilt: -2 lam + genus0;
    genus1: -2 lam - 2 sum [1/(z_k - z_j) + 1/z_j];
    even: -2 - 8 mu_k sum 1/(mu_k - mu_j); odd: -6 - 8 mu_k sum 1/(mu_k - mu_j).
    """
    z = np.asarray(z, dtype=complex)
    S = _pair_sum(z)
    if variant == "genus0":
        return -2 * S
    if variant == "tilt":
        return -2 * lam - 2 * S
    if variant == "genus1":
        inv = 1.0 / z
        return -2 * lam - 2 * (S + inv.sum() - inv)
    if variant == "even":
        return -2 - 8 * z * S
    if variant == "odd":
        return -6 - 8 * z * S
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def ode_evolve(initial, cfg, variant="genus0", lam=0.0):
    """Integrate the zero-dynamics ODE along the complex-time polyline.

    Each segment t = t_a + s u (|u| = 1, s real) is integrated in s with the
    DOP853 embedded Runge-Kutta pair.  Integration stops with status
    ``collision`` when two particles come within ``min_separation``; the
    collision time is extrapolated from the rate of change of the squared
    separation.  ``escaped`` marks |z| above the escape radius.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    y = np.array(initial, dtype=complex).ravel()
    if y.size == 0:
        raise ValueError("need at least one initial point")
    if np.any(_nearest_gap(y) <= cfg.min_separation):
        raise ValueError("initial points must be separated by more than min_separation")
    if variant == "genus1" and np.any(y == 0):
        raise ValueError("genus1 dynamics needs nonzero points")
    t0 = cfg.t_path[0]
    trajs = [ZeroTrajectory(k, [(t0, complex(v))]) for k, v in enumerate(y)]

    def sep_event(s, yy):
        return float(_nearest_gap(yy).min() - cfg.min_separation) if yy.size > 1 else 1.0

    def esc_event(s, yy):
        return float(cfg.escape_radius - np.abs(yy).max())

    sep_event.terminal = True
    sep_event.direction = -1
    esc_event.terminal = True
    esc_event.direction = -1

    for ta, tb in cfg.segments():
        L = abs(tb - ta)
        u = (tb - ta) / L

        def rhs(s, yy, u=u):
            return u * ode_velocity(yy, variant, lam)

        s_eval = np.linspace(0, L, cfg.samples_per_segment + 1)[1:]
        sol = solve_ivp(
            rhs,
            (0.0, L),
            y,
            method="DOP853",
            t_eval=s_eval,
            events=[sep_event, esc_event],
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
            max_step=cfg.max_step,
        )
        if sol.status == -1:
            raise ConvergenceError(f"ODE integration failed: {sol.message}")
        for j, s in enumerate(sol.t):
            for k in range(y.size):
                trajs[k].samples.append((complex(ta + s * u), complex(sol.y[k, j])))
        if sol.status == 1:
            if sol.t_events[0].size:
                s_e = float(sol.t_events[0][0])
                ye = sol.y_events[0][0]
                d = ye[:, None] - ye[None, :]
                np.fill_diagonal(d, np.inf)
                i, j = np.unravel_index(np.argmin(np.abs(d)), d.shape)
                vel = rhs(s_e, ye)
                dd = ye[i] - ye[j]
                ddot = vel[i] - vel[j]
                # the squared separation is close to linear in t near a collision
                s_star = s_e - (dd * dd / (2 * dd * ddot)).real if ddot != 0 else s_e
                t_star = ta + s_star * u
                for k in range(y.size):
                    trajs[k].samples.append((complex(ta + s_e * u), complex(ye[k])))
                for k in (i, j):
                    trajs[k].status = "collision"
                    trajs[k].t_star = complex(t_star)
                for k in range(y.size):
                    if trajs[k].status == "ok":
                        trajs[k].status = "stalled"
            else:
                ye = sol.y_events[1][0]
                for k in range(y.size):
                    trajs[k].samples.append((complex(ta + sol.t_events[1][0] * u), complex(ye[k])))
                    trajs[k].status = "escaped" if abs(ye[k]) >= cfg.escape_radius * (1 - 1e-9) else "stalled"
            return trajs
        y = sol.y[:, -1] if sol.y.shape[1] else y
    return trajs


def _z_coefficients(F, t):
    """Highest-first z-coefficients of a polynomial-backed F at time t."""
    C = getattr(F.f, "C", None)
    if C is None:
        raise ValueError("endpoint root check needs a polynomial-backed solution")
    tp = complex(t) ** np.arange(C.shape[0])
    c = (tp[:, None] * C).sum(axis=0)
    nz = np.nonzero(np.abs(c) > 0)[0]
    return c[: nz[-1] + 1][::-1]


def _pair(a, b, radius):
    """Nearest-neighbour matching of b onto a; ambiguity raises PairingError."""
    d = np.abs(a[:, None] - b[None, :])
    j = np.argmin(d, axis=1)
    if len(set(j.tolist())) != a.size:
        raise PairingError("nearest-neighbour matching is not one-to-one")
    if b.size > 1:
        gb = _nearest_gap(b)
        if np.any(gb < 2 * radius):
            raise PairingError("two roots are closer than twice the matching radius")
    return j, d[np.arange(a.size), j]


def closed_form_verify(a, cfg):
    """Compare the ODE flow of the points ``a`` with the zeros of the caloric
    function whose initial data is prod (1 - z/a_k).

    Returns a report with the maximum deviation, a per-sample table and an
    endpoint check of the tracked zeros against a fresh polynomial solve.
    """
    a = np.array(a, dtype=complex).ravel()
    F = propagate_from_roots(a)
    tracked = track_roots(F, a, cfg)
    flow = ode_evolve(a, cfg, "genus0")
    radius = cfg.min_separation / 2
    n_common = min(min(len(tr.samples) for tr in tracked), min(len(tr.samples) for tr in flow))
    table = []
    max_dev = 0.0
    for i in range(n_common):
        t = flow[0].samples[i][0]
        zo = np.array([tr.samples[i][1] for tr in flow])
        zt = np.array([tr.samples[i][1] for tr in tracked])
        tt = tracked[0].samples[i][0]
        if abs(tt - t) > 1e-12 * max(1.0, abs(t)):
            raise PairingError("trajectory sample times differ")
        j, dev = _pair(zo, zt, radius)
        max_dev = max(max_dev, float(dev.max()))
        for k in range(a.size):
            table.append({"t": [t.real, t.imag], "k": k, "ode": [zo[k].real, zo[k].imag],
                          "tracked": [zt[j[k]].real, zt[j[k]].imag], "deviation": float(dev[k])})
    t_end = flow[0].samples[n_common - 1][0]
    z_end = np.array([tr.samples[n_common - 1][1] for tr in tracked])
    roots = polynomial_roots(_z_coefficients(F, t_end))
    _, dev_end = _pair(z_end, roots, radius)
    return {
        "max_deviation": max_dev,
        "endpoint_root_deviation": float(dev_end.max()),
        "samples": n_common,
        "status": {"ode": [tr.status for tr in flow], "tracked": [tr.status for tr in tracked]},
        "table": table,
    }


def _box(rect):
    lo_re, hi_re, lo_im, hi_im = (float(v) for v in rect)
    return lo_re, hi_re, lo_im, hi_im


def _inside(x, rect, slack=1e-9):
    lo_re, hi_re, lo_im, hi_im = rect
    return (
        (x.real >= lo_re - slack) & (x.real <= hi_re + slack) & (x.imag >= lo_im - slack) & (x.imag <= hi_im + slack)
    )


def _grid(rect, n):
    lo_re, hi_re, lo_im, hi_im = rect
    re = np.linspace(lo_re, hi_re, n)
    im = np.linspace(lo_im, hi_im, n) if hi_im > lo_im else np.array([lo_im])
    return (re[:, None] + 1j * im[None, :]).ravel()


def collision_scan(F, t_rect, z_rect, grid=5, max_iter=300, res_tol=1e-9, dedup=1e-6):
    """Points (t*, z*) in the region with F = dF/dz = 0.

    ``t_rect`` and ``z_rect`` are ``(re_lo, re_hi, im_lo, im_hi)``; seeds are
    the product of ``grid`` x ``grid`` points in each.  Newton is run on the
    map (t, z) -> (F, F_z) with Jacobian [[F_zz, F_z], [F_zzz, F_zz]] (using
    F_t = F_zz).  Converged points with both residuals below ``res_tol``
    are deduplicated at radius ``dedup``.
    """
    t_rect, z_rect = _box(t_rect), _box(z_rect)
    ts, zs = _grid(t_rect, grid), _grid(z_rect, grid)
    T = np.repeat(ts, zs.size)
    Z = np.tile(zs, ts.size)
    alive = np.ones(T.size, dtype=bool)
    conv = np.zeros(T.size, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(alive & ~conv)[0]
        if idx.size == 0:
            break
        t, z = T[idx], Z[idx]
        f = _eval(F.f, t, z)
        fz = _eval(F.dz, t, z)
        fzz = _eval(F.dz2, t, z)
        fzzz = _eval(F.third, t, z)
        exact = (f == 0) & (fz == 0)
        det = fzz * fzz - fz * fzzz
        good = np.isfinite(det) & (det != 0) & np.isfinite(f) & np.isfinite(fz)
        dt = np.where(good, (fzz * f - fz * fz) / np.where(good, det, 1), 0)
        dz = np.where(good, (fzz * fz - fzzz * f) / np.where(good, det, 1), 0)
        T[idx] = t - dt
        Z[idx] = z - dz
        size = np.abs(dt) + np.abs(dz)
        conv[idx] = exact | (good & (size <= 1e-12 * (1 + np.abs(t) + np.abs(z))))
        dead = ~good & ~exact
        runaway = (np.abs(T[idx]) > 1e3 * (1 + np.abs(t_rect).max())) | (np.abs(Z[idx]) > 1e3 * (1 + np.abs(z_rect).max()))
        alive[idx] = ~(dead | runaway)
    cand = np.nonzero(conv & alive & _inside(T, t_rect) & _inside(Z, z_rect))[0]
    rF = np.abs(_eval(F.f, T[cand], Z[cand]))
    rZ = np.abs(_eval(F.dz, T[cand], Z[cand]))
    keep = (rF <= res_tol) & (rZ <= res_tol)
    cand, rF, rZ = cand[keep], rF[keep], rZ[keep]
    order = np.argsort(rF + rZ)
    points = []
    for i in order:
        t, z = T[cand[i]], Z[cand[i]]
        if any(abs(p.t - t) + abs(p.z - z) <= dedup for p in points):
            continue
        points.append(RamificationPoint(complex(t), complex(z), float(rF[i]), float(rZ[i])))
    return points


def never_zero_check(F, t_rect, z_rect, grid=7, max_iter=100, res_tol=1e-9):
    """True when no grid-seeded Newton run on F(t, .) finds a zero in the region."""
    t_rect, z_rect = _box(t_rect), _box(z_rect)
    ts, zs = _grid(t_rect, grid), _grid(z_rect, grid)
    T = np.repeat(ts, zs.size)
    Z = np.tile(zs, ts.size)
    done = np.zeros(T.size, dtype=bool)
    alive = np.ones(T.size, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(alive & ~done)[0]
        if idx.size == 0:
            break
        f = _eval(F.f, T[idx], Z[idx])
        fz = _eval(F.dz, T[idx], Z[idx])
        good = np.isfinite(f) & np.isfinite(fz) & (fz != 0)
        with np.errstate(all="ignore"):
            step = np.where(good, f / np.where(good, fz, 1), 0)
        Z[idx] = Z[idx] - step
        done[idx] = good & (np.abs(step) <= 1e-12 * (1 + np.abs(Z[idx])))
        alive[idx] = good & (np.abs(Z[idx]) < 1e3 * (1 + np.abs(z_rect).max()))
    hit = np.nonzero(done & alive & _inside(Z, z_rect))[0]
    if hit.size == 0:
        return True
    res = np.abs(_eval(F.f, T[hit], Z[hit]))
    scale = 1 + np.abs(_eval(F.dz, T[hit], Z[hit])) * (1 + np.abs(Z[hit]))
    return not bool(np.any(res <= res_tol * scale))


def write_trajectories_csv(path, trajectories):
    """CSV with columns k, re(t), im(t), re(z), im(z), status."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "re(t)", "im(t)", "re(z)", "im(z)", "status"])
        for tr in trajectories:
            for t, z in tr.samples:
                w.writerow([tr.k, f"{t.real:.17g}", f"{t.imag:.17g}", f"{z.real:.17g}", f"{z.imag:.17g}", tr.status])


def trajectories_to_dict(trajectories):
    return [
        {
            "k": tr.k,
            "status": tr.status,
            "t_star": None if tr.t_star is None else [tr.t_star.real, tr.t_star.imag],
            "t": [[s[0].real, s[0].imag] for s in tr.samples],
            "z": [[s[1].real, s[1].imag] for s in tr.samples],
        }
        for tr in trajectories
    ]


def _num(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


SCENARIO_KEYS = {
    "initial", "random", "path", "variant", "lam", "rel_tol", "abs_tol",
    "min_separation", "max_step", "samples_per_segment", "seed", "mode",
}


def load_scenario(obj, seed=None):
    """Parse a scenario description into ``(initial, cfg, variant, lam, mode)``.

    ``initial`` lists the starting points, or ``random`` =
    ``{"n": N, "r_min": r0, "r_max": r1}`` draws N points with moduli in
    [r0, r1] from a seeded generator (seed from the argument or the file;
    one of them is required).
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise ValueError("scenario must be a JSON object")
    extra = set(obj) - SCENARIO_KEYS
    if extra:
        raise ValueError(f"unknown scenario keys: {sorted(extra)}")
    if "initial" in obj:
        initial = np.array([_num(v) for v in obj["initial"]])
    elif "random" in obj:
        spec = obj["random"]
        seed = obj.get("seed", seed) if seed is None else seed
        if seed is None:
            raise ValueError("random scenarios need a seed")
        initial = random_points(int(spec["n"]), float(spec.get("r_min", 0.5)), float(spec.get("r_max", 2.0)), int(seed))
    else:
        raise ValueError("scenario needs 'initial' or 'random'")
    path = tuple(_num(v) for v in obj.get("path", [0.0, 1.0]))
    cfg = ODEPathConfig(
        t_path=path,
        rel_tol=float(obj.get("rel_tol", 1e-9)),
        abs_tol=float(obj.get("abs_tol", 1e-12)),
        min_separation=float(obj.get("min_separation", 1e-6)),
        max_step=float(obj.get("max_step", math.inf)),
        samples_per_segment=int(obj.get("samples_per_segment", 20)),
    )
    variant = obj.get("variant", "genus0")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    mode = obj.get("mode", "ode")
    if mode not in ("ode", "track", "verify"):
        raise ValueError(f"unknown mode {mode!r}")
    return initial, cfg, variant, _num(obj.get("lam", 0.0)), mode


def random_points(n, r_min, r_max, seed, min_gap=0.05):
    """``n`` seeded random points with r_min <= |a| <= r_max, pairwise >= min_gap apart."""
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        r = rng.uniform(r_min, r_max)
        th = rng.uniform(0, 2 * math.pi)
        p = r * complex(math.cos(th), math.sin(th))
        if all(abs(p - q) >= min_gap for q in pts):
            pts.append(p)
    return np.array(pts)
