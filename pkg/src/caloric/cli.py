"""Command-line front end: ``python -m caloric <subcommand> ...``.

Every subcommand writes JSON (default) or CSV to stdout or ``--out``.
Exit codes: 0 success, 1 numerical failure, 2 bad input.  The environment
variable ``CALORIC_LOG`` sets the logging level (e.g. ``INFO``, ``DEBUG``).
"""

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

import numpy as np

from . import caloric_poly as cp
from . import debruijn as db
from . import entire_series as es
from . import heat_propagate as hp
from . import order_type as ot
from . import zero_dynamics as zd
from .errors import CaloricError

log = logging.getLogger("caloric")


class InputError(ValueError):
    """Raised for malformed command-line input (exit code 2)."""


# ----------------------------------------------------------------- parsing


def parse_number(text):
    """int, float or complex from a command-line token (``1``, ``0.5``, ``1+2j``)."""
    if isinstance(text, (int, float, complex)):
        return text
    s = str(text).strip().replace(" ", "")
    for kind in (int, float, complex):
        try:
            return kind(s)
        except ValueError:
            continue
    raise InputError(f"not a number: {text!r}")


def _complex(text):
    try:
        return complex(parse_number(text))
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _params(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_number(v)
    return out


def _read_json_arg(text):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{text!r} is neither a file nor valid JSON: {exc}") from None


def _series(args):
    if getattr(args, "series", None):
        return es.load_json(_read_json_arg(args.series))
    if not getattr(args, "rule", None):
        raise InputError("give --rule NAME [--param k=v ...] or --series JSON")
    if args.rule not in es.RULES:
        raise InputError(f"unknown rule {args.rule!r}; known: {sorted(es.RULES)}")
    params = _params(args.param)
    if getattr(args, "n_max", None) is not None and args.rule != "monomial":
        params["n_max"] = args.n_max
    try:
        return es.RULES[args.rule](**params)
    except TypeError as exc:
        raise InputError(f"bad parameters for rule {args.rule!r}: {exc}") from None


# ----------------------------------------------------------------- output


def _clean(obj):
    """JSON-safe copy: complex -> [re, im], arrays -> lists, nan -> null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _emit(args, payload, header=None, rows=None):
    """Write ``payload`` as JSON or (``header``, ``rows``) as CSV."""
    if args.format == "csv":
        if header is None:
            raise InputError(f"{args.command} has no CSV form; use --format json")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    else:
        text = json.dumps(_clean(payload), indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _cplx_cols(name):
    return [f"re({name})", f"im({name})"]


# ----------------------------------------------------------------- poly


def cmd_poly(args):
    P = cp.build(args.m)
    out = {"m": args.m}
    header, rows = ["j", "coefficient"], [(j, c) for j, c in enumerate(P.coeffs)]
    if args.eval is not None:
        t, z = args.eval
        val = complex(cp.evaluate(P, t, z))
        out["t"], out["z"], out["value"] = t, z, val
        header = _cplx_cols("t") + _cplx_cols("z") + _cplx_cols("value")
        rows = [(t.real, t.imag, z.real, z.imag, val.real, val.imag)]
    if args.spectrum:
        spec = cp.rho_spectrum(args.m)
        out["spectrum"] = list(spec.values)
        out["parity"] = spec.parity
        header, rows = ["j", "rho"], list(enumerate(spec.values, start=1))
    if args.interlace:
        ok = cp.interlacing_check(args.m)
        out["interlacing"] = ok
        header, rows = ["m", "interlacing"], [(args.m, str(ok).lower())]
    if args.eval is None and not args.spectrum and not args.interlace:
        # integers can exceed float range; keep them exact as strings when huge
        out["coeffs"] = [c if c < 2**53 else str(c) for c in P.coeffs]
    _emit(args, out, header, rows)
    return 0


# ----------------------------------------------------------------- propagate

_CLOSED = {
    "gaussian": lambda p: hp.gaussian_heat(p.get("a", 1.0)),
    "cos_sq": lambda p: hp.cos_sq_heat(p.get("a", 1.0)),
    "exp": lambda p: hp.exp_heat(p.get("rate", 1.0)),
    "monomial": lambda p: hp.caloric_polynomial_solution(int(p["m"])),
}


def _solution(args):
    method = args.method
    if method in ("auto", "closed") and args.rule in _CLOSED and not args.series:
        return _CLOSED[args.rule](_params(args.param))
    if method == "closed":
        raise InputError(f"no closed form for {args.rule or 'this series'}")
    f = _series(args)
    if method == "kernel":
        return hp.kernel_solution(f, tol=args.tol)
    if f.degree is not None:
        return hp.polynomial_solution(list(f.coeffs()), label=f.name)
    return hp.series_solution(f, tol=args.tol)


def cmd_propagate(args):
    F = _solution(args)
    ts = args.t or [0j]
    zs = args.z or [0j]
    if len(ts) != len(zs):
        if len(ts) == 1:
            ts = ts * len(zs)
        elif len(zs) == 1:
            zs = zs * len(ts)
        else:
            raise InputError("--t and --z need equal lengths (or one of them a single value)")
    records = F.records(ts, zs)
    out = {"solution": F.label, "backing": F.backing, "method": args.method, "records": records}
    if F.admissibility:
        out["admissibility"] = {"verdict": F.admissibility.get("verdict")}
    header = _cplx_cols("t") + _cplx_cols("z") + _cplx_cols("F") + _cplx_cols("dFdz") + ["residual"]
    rows = [tuple(r["t"] + r["z"] + r["F"] + r["dFdz"] + [r["residual"]]) for r in records]
    _emit(args, out, header, rows)
    if args.verify:
        return _verify_propagate(args, F)
    return 0


def _verify_propagate(args, F):
    if not args.out or args.format != "json":
        raise InputError("--verify needs --out with --format json")
    with open(args.out) as fh:
        data = json.load(fh)
    bad = 0
    for r in data["records"]:
        t, z = complex(*r["t"]), complex(*r["z"])
        val = complex(F(t, z))
        rec = complex(*r["F"])
        res = float(F.residual(t, z))
        scale = max(1.0, abs(val))
        if abs(val - rec) > args.tol * scale or res > math.sqrt(args.tol) * scale or abs(res - r["residual"]) > args.tol * scale:
            bad += 1
    log.info("verify: %d of %d records failed", bad, len(data["records"]))
    if bad:
        sys.stderr.write(f"verify failed on {bad} record(s)\n")
        return 1
    return 0


# ----------------------------------------------------------------- order


def cmd_order(args):
    s = _series(args)
    window = tuple(args.window) if args.window else None
    est = ot.estimate_order(s, window=window, method=args.method)
    out = {"series": es.dump_json(s) if s.n_max <= 2000 else s.name, **est.as_dict()}
    rows = [(est.rho_hat, est.tau_hat, est.exact_order_class, est.window[0], est.window[1], str(est.stable).lower())]
    _emit(args, out, ["rho_hat", "tau_hat", "class", "n_lo", "n_hi", "stable"], rows)
    return 0


# ----------------------------------------------------------------- theta-grid


def cmd_theta_grid(args):
    s = _series(args)
    re = np.linspace(args.re[0], args.re[1], args.n)
    im = np.linspace(args.im[0], args.im[1], args.n)
    grid = (re[None, :] + 1j * im[:, None]).ravel()
    rep = ot.theta_match_summary(s, grid, K=args.K, tol=args.theta_tol)
    t0, t1 = rep.pop("theta0"), rep.pop("theta1")
    if args.format == "csv":
        rows = [(z.real, z.imag, a, b) for z, a, b in zip(grid, t0, t1)]
        _emit(args, None, ["re(z)", "im(z)", "theta0", "theta1"], rows)
    else:
        rep["exceptional_theta0"] = rep["exceptional_theta0"][:200]
        rep["exceptional_theta1"] = rep["exceptional_theta1"][:200]
        _emit(args, rep)
    return 0


# ----------------------------------------------------------------- zeros


def cmd_zeros(args):
    obj = _read_json_arg(args.scenario)
    initial, cfg, variant, lam, mode = zd.load_scenario(obj, seed=args.seed)
    if mode == "verify":
        rep = zd.closed_form_verify(initial, cfg)
        table = rep["table"]
        rows = [tuple(r["t"] + [r["k"]] + r["ode"] + r["tracked"] + [r["deviation"]]) for r in table]
        header = _cplx_cols("t") + ["k"] + _cplx_cols("ode") + _cplx_cols("tracked") + ["deviation"]
        _emit(args, {"mode": mode, "initial": initial, **rep}, header, rows)
        return 0
    if mode == "track":
        F = hp.propagate_from_roots(initial)
        trajs = zd.track_roots(F, initial, cfg)
    else:
        trajs = zd.ode_evolve(initial, cfg, variant=variant, lam=lam)
    collisions = sorted({tr.t_star for tr in trajs if tr.t_star is not None}, key=abs)
    out = {
        "mode": mode,
        "variant": variant,
        "initial": initial,
        "collision_times": collisions,
        "trajectories": zd.trajectories_to_dict(trajs),
    }
    header = ["k"] + _cplx_cols("t") + _cplx_cols("z") + ["status"]
    rows = [(tr.k, t.real, t.imag, z.real, z.imag, tr.status) for tr in trajs for t, z in tr.samples]
    _emit(args, out, header, rows)
    return 0


# ----------------------------------------------------------------- collide-scan


def _scan_target(args):
    picked = [x is not None for x in (args.m, args.gaussian, args.roots)]
    if sum(picked) != 1:
        raise InputError("choose exactly one of --m, --gaussian, --roots")
    if args.m is not None:
        return hp.caloric_polynomial_solution(args.m), f"P_{args.m}"
    if args.gaussian is not None:
        return hp.gaussian_heat(args.gaussian), f"gaussian(a={args.gaussian})"
    return hp.propagate_from_roots(np.array(args.roots)), "product of (1 - z/a_k)"


def cmd_collide_scan(args):
    F, label = _scan_target(args)
    pts = zd.collision_scan(F, args.t_rect, args.z_rect, grid=args.grid, res_tol=args.tol)
    out = {
        "function": label,
        "t_rect": args.t_rect,
        "z_rect": args.z_rect,
        "points": [{"t": p.t, "z": p.z, "residual_F": p.residual_F, "residual_dz": p.residual_dz} for p in pts],
    }
    header = _cplx_cols("t") + _cplx_cols("z") + ["residual_F", "residual_dz"]
    rows = [(p.t.real, p.t.imag, p.z.real, p.z.imag, p.residual_F, p.residual_dz) for p in pts]
    _emit(args, out, header, rows)
    return 0


# ----------------------------------------------------------------- debruijn


def cmd_debruijn(args):
    cfg = db.HQuadConfig(x_max=args.x_max, panels=args.panels)
    out = {"t": args.t}
    header, rows = None, None
    if args.velocity_window is not None:
        if len(args.t) != 1:
            raise InputError("--velocity-window takes a single --t")
        rep = db.velocity_window_check(args.t[0], args.velocity_window, dt=args.dt, cfg=cfg)
        out["velocity_check"] = rep
        header = ["z", "velocity_fd", "velocity_sum", "abs_mismatch", "rel_mismatch"]
        rows = [tuple(r[h] for h in header) for r in rep["zeros"]]
    if args.eval is not None:
        vals = [{"t": t, "z": z, "H": complex(db.h_eval(t, z, cfg))} for t in args.t for z in args.eval]
        out["values"] = vals
        header = ["t"] + _cplx_cols("z") + _cplx_cols("H")
        rows = [(v["t"], v["z"].real, v["z"].imag, v["H"].real, v["H"].imag) for v in vals]
    if args.scan is not None:
        table = db.zeros_table(args.t, args.scan, cfg)
        out["interval"] = args.scan
        out["zeros"] = {str(t): [z for tt, _, z in table if tt == t] for t in args.t}
        header, rows = ["t", "index", "z"], table
    if args.velocity_window is None and args.eval is None and args.scan is None:
        raise InputError("debruijn needs --scan, --eval or --velocity-window")
    _emit(args, out, header, rows)
    return 0


# ----------------------------------------------------------------- parser


def _add_series_args(p):
    p.add_argument("--rule", help=f"closed-form coefficient rule: {', '.join(sorted(es.RULES))}")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="rule parameter (repeatable)")
    p.add_argument("--series", help="series description as a JSON string or file")
    p.add_argument("--n-max", type=int, default=None, help="number of coefficients for closed-form rules")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default json)")
    common.add_argument("--tol", type=float, default=1e-10, help="numerical tolerance (default 1e-10)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized scenarios")

    parser = argparse.ArgumentParser(prog="caloric", description="Entire solutions of the heat equation dF/dt = d^2F/dz^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="caloric polynomials P_m")
    p.add_argument("--m", type=int, required=True, help="degree")
    p.add_argument("--eval", nargs=2, type=_complex, metavar=("T", "Z"), help="evaluate P_m(T, Z)")
    p.add_argument("--spectrum", action="store_true", help="rho spectrum of P_m")
    p.add_argument("--interlace", action="store_true", help="check interlacing with P_{m-1}")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("propagate", parents=[common], help="evolve initial data under the heat flow")
    _add_series_args(p)
    p.add_argument("--t", type=_complex, nargs="+", help="time(s)")
    p.add_argument("--z", type=_complex, nargs="+", help="point(s)")
    p.add_argument("--method", choices=("auto", "series", "kernel", "closed"), default="auto",
                   help="auto uses a closed form when one exists, otherwise the t-series")
    p.add_argument("--verify", action="store_true", help="re-read --out and re-check values and residuals")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("order", parents=[common], help="order and type from Taylor coefficients")
    _add_series_args(p)
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), help="coefficient index window")
    p.add_argument("--method", choices=("regression", "limsup"), default="regression")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("theta-grid", parents=[common], help="local theta quantities on a grid")
    _add_series_args(p)
    p.add_argument("--re", nargs=2, type=float, default=(-4.0, 4.0), metavar=("LO", "HI"))
    p.add_argument("--im", nargs=2, type=float, default=(-4.0, 4.0), metavar=("LO", "HI"))
    p.add_argument("--n", type=int, default=101, help="points per axis (default 101)")
    p.add_argument("--K", type=int, default=40, help="subsequence depth (default 40)")
    p.add_argument("--theta-tol", type=float, default=0.05, help="match tolerance for theta (default 0.05)")
    p.set_defaults(func=cmd_theta_grid)

    p = sub.add_parser("zeros", parents=[common], help="zero trajectories from a scenario file")
    p.add_argument("--scenario", required=True, help="scenario JSON file or string")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("collide-scan", parents=[common], help="search for points with F = dF/dz = 0")
    p.add_argument("--m", type=int, help="scan the caloric polynomial P_m")
    p.add_argument("--gaussian", type=_complex, help="scan the Gaussian solution with this a")
    p.add_argument("--roots", type=_complex, nargs="+", help="scan the flow of prod (1 - z/a_k)")
    p.add_argument("--t-rect", type=float, nargs=4, default=(-1.0, 1.0, -1.0, 1.0),
                   metavar=("RE_LO", "RE_HI", "IM_LO", "IM_HI"))
    p.add_argument("--z-rect", type=float, nargs=4, default=(-2.0, 2.0, -2.0, 2.0),
                   metavar=("RE_LO", "RE_HI", "IM_LO", "IM_HI"))
    p.add_argument("--grid", type=int, default=5, help="seeds per axis and variable (default 5)")
    p.set_defaults(func=cmd_collide_scan, tol=1e-9)

    p = sub.add_parser("debruijn", parents=[common], help="the de Bruijn function H(t, z)")
    p.add_argument("--t", type=float, nargs="+", default=[0.0], help="time(s) (default 0)")
    p.add_argument("--scan", type=float, nargs=2, metavar=("LO", "HI"), help="real zeros in [LO, HI]")
    p.add_argument("--eval", type=_complex, nargs="+", metavar="Z", help="evaluate H(t, Z)")
    p.add_argument("--velocity-window", type=int, metavar="WINDOW", help="zero-velocity check with this many zeros")
    p.add_argument("--dt", type=float, default=1e-3, help="time step for finite-difference velocities")
    p.add_argument("--x-max", type=float, default=6.0, help="integration cutoff (default 6)")
    p.add_argument("--panels", type=int, default=240, help="quadrature panels (default 240)")
    p.set_defaults(func=cmd_debruijn)
    return parser


def _setup_logging():
    level = os.environ.get("CALORIC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    log.debug("arguments: %s", vars(args))
    try:
        return args.func(args)
    except (InputError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (CaloricError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 1
