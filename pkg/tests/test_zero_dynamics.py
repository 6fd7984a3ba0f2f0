import cmath
import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caloric import heat_propagate as hp
from caloric import zero_dynamics as zd
from caloric.errors import ConvergenceError, RamificationError


def _cfg(*path, **kw):
    return zd.ODEPathConfig(t_path=path, **kw)


# ------------------------------------------------------------ roots


def test_polynomial_roots_examples():
    r = np.sort_complex(zd.polynomial_roots([1, 0, 2]))
    assert np.allclose(r, [-1j * math.sqrt(2), 1j * math.sqrt(2)], atol=1e-14)
    assert np.allclose(zd.polynomial_roots([1, 0, 0, 0, 0]), 0)
    assert np.allclose(np.sort(zd.polynomial_roots([-1, 0, 1]).real), [-1, 1])


# ------------------------------------------------------------ velocities


def test_log_derivative_velocity_examples():
    P2 = hp.caloric_polynomial_solution(2)
    z = 1j * math.sqrt(2)
    assert abs(zd.log_deriv_velocity(P2, 1.0, z) - 1j / math.sqrt(2)) < 1e-14
    line = hp.propagate_from_roots([1.0])
    assert zd.log_deriv_velocity(line, 0.3, 1.0) == 0
    P3 = hp.caloric_polynomial_solution(3)
    assert abs(zd.log_deriv_velocity(P3, 1.0, 1j * math.sqrt(6)) - 1j * math.sqrt(6) / 2) < 1e-13


def test_velocity_raises_at_ramification():
    with pytest.raises(RamificationError):
        zd.log_deriv_velocity(hp.caloric_polynomial_solution(2), 0.0, 0.0)


# ------------------------------------------------------------ tracking


def test_track_p2_square_root_path():
    P2 = hp.caloric_polynomial_solution(2)
    tr = zd.track_roots(P2, [1j * math.sqrt(2)], _cfg(1.0, 2.0))[0]
    expected = 1j * np.sqrt(2 * tr.t)
    assert np.max(np.abs(tr.z - expected)) < 1e-10
    assert tr.status == "ok"


def test_track_static_zero():
    tr = zd.track_roots(hp.propagate_from_roots([1.0]), [1.0], _cfg(0.0, 1.0 + 1j))[0]
    assert np.all(tr.z == 1.0)


def test_track_two_body():
    F = hp.propagate_from_roots([1.0, -1.0])
    trajs = zd.track_roots(F, [1.0, -1.0], _cfg(0.0, 0.4))
    for tr, sign in zip(trajs, (1, -1)):
        assert np.max(np.abs(tr.z - sign * np.sqrt(1 - 2 * tr.t))) < 1e-10


def test_track_rejects_non_zeros():
    with pytest.raises(ConvergenceError):
        zd.track_roots(hp.propagate_from_roots([1.0]), [5.0], _cfg(0.0, 1.0))


def test_tracked_velocity_matches_log_derivative():
    F = hp.propagate_from_roots([1.2, -0.4 + 0.9j, 0.3 - 1.1j])
    cfg = _cfg(0.0, 0.1 + 0.05j, samples_per_segment=200)
    for tr in zd.track_roots(F, [1.2, -0.4 + 0.9j, 0.3 - 1.1j], cfg):
        t, z = tr.t, tr.z
        fd = (z[2:] - z[:-2]) / (t[2:] - t[:-2])
        v = np.array([zd.log_deriv_velocity(F, tt, zz) for tt, zz in zip(t[1:-1], z[1:-1])])
        h = abs(t[1] - t[0])
        assert np.max(np.abs(fd - v)) <= 10 * h * h * (1 + np.max(np.abs(v)))


# ------------------------------------------------------------ ODE


def test_ode_two_body_collision():
    trajs = zd.ode_evolve([1.0, -1.0], _cfg(0.0, 1.0))
    assert all(tr.status == "collision" for tr in trajs)
    assert abs(trajs[0].t_star - 0.5) < 1e-6
    t, z = trajs[0].t[:-1], trajs[0].z[:-1]
    assert np.max(np.abs(z - np.sqrt(1 - 2 * t))) < 1e-7


def test_ode_single_particle_variants():
    cfg = _cfg(0.0, 0.1)
    even = zd.ode_evolve([1.0], cfg, "even")[0]
    assert np.allclose(even.z, 1 - 2 * even.t, atol=1e-12)
    odd = zd.ode_evolve([1.0], cfg, "odd")[0]
    assert np.allclose(odd.z, 1 - 6 * odd.t, atol=1e-12)
    tilt = zd.ode_evolve([0.5], cfg, "tilt", lam=1.5)[0]
    assert np.allclose(tilt.z, 0.5 - 3 * tilt.t, atol=1e-12)


def test_ode_tilt_matches_tilted_solution():
    lam = 0.7 - 0.3j
    a = np.array([1.0, -0.5 + 1j, 0.2 - 0.8j])
    G = hp.tilt(hp.propagate_from_roots(a), lam)
    cfg = _cfg(0.0, 0.05)
    ode = zd.ode_evolve(a, cfg, "tilt", lam=lam)
    for tr in ode:
        for t, z in tr.samples:
            assert abs(G(t, z)) < 1e-8


def test_ode_rejects_bad_input():
    with pytest.raises(ValueError):
        zd.ode_evolve([1.0, 1.0], _cfg(0.0, 1.0))
    with pytest.raises(ValueError):
        zd.ode_evolve([1.0], _cfg(0.0, 1.0), "genus7")
    with pytest.raises(ValueError):
        zd.ODEPathConfig(t_path=(0.0,))


def test_ode_escape():
    cfg = _cfg(0.0, 10.0, escape_radius=20.0)
    tr = zd.ode_evolve([1.0], cfg, "tilt", lam=-3.0)[0]
    assert tr.status == "escaped"


def test_sum_of_zeros_conserved():
    a = [1.0, -0.5 + 1j, 0.3 - 1.2j, 2.0 + 0.5j]
    trajs = zd.ode_evolve(a, _cfg(0.0, 0.05 + 0.02j, 0.1))
    total = sum(tr.z for tr in trajs)
    assert np.max(np.abs(total - total[0])) < 1e-9


def test_even_variant_matches_squared_genus0():
    a = np.array([1.0 + 0.2j, 0.4 - 1.1j])
    sym = np.concatenate([a, -a])
    cfg = _cfg(0.0, 0.04 + 0.01j)
    z = zd.ode_evolve(sym, cfg)
    mu = zd.ode_evolve(a * a, cfg, "even")
    for k in range(a.size):
        assert np.max(np.abs(z[k].z ** 2 - mu[k].z)) < 1e-6


def test_odd_variant_matches_squared_genus0_with_zero():
    a = np.array([1.0 + 0.2j, 0.4 - 1.1j])
    sym = np.concatenate([a, -a, [0.0]])
    cfg = _cfg(0.0, 0.03)
    z = zd.ode_evolve(sym, cfg)
    mu = zd.ode_evolve(a * a, cfg, "odd")
    for k in range(a.size):
        assert np.max(np.abs(z[k].z ** 2 - mu[k].z)) < 1e-6


# ------------------------------------------------------------ closed form


def test_closed_form_verify_examples():
    rep = zd.closed_form_verify([1.0, -1.0], _cfg(0.0, 0.3))
    assert rep["max_deviation"] <= 1e-6
    rep1 = zd.closed_form_verify([1.0], _cfg(0.0, 0.5 + 0.5j))
    assert rep1["max_deviation"] == 0


def test_closed_form_verify_random_six():
    a = zd.random_points(6, 0.5, 2.0, seed=2024)
    rep = zd.closed_form_verify(a, _cfg(0.0, 0.05))
    assert rep["max_deviation"] <= 1e-6
    assert rep["endpoint_root_deviation"] <= 1e-8


@settings(max_examples=8, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 8))
def test_closed_form_agreement_property(seed, n):
    a = zd.random_points(n, 0.5, 2.0, seed=seed, min_gap=0.2)
    rep = zd.closed_form_verify(a, _cfg(0.0, 0.02))
    if all(s == "ok" for s in rep["status"]["ode"]):
        assert rep["max_deviation"] <= 1e-6


# ------------------------------------------------------------ collision scan


def test_collision_scan_examples():
    pts = zd.collision_scan(hp.caloric_polynomial_solution(4), (-1, 1, -1, 1), (-2, 2, -2, 2))
    assert len(pts) == 1 and abs(pts[0].t) < 1e-8 and abs(pts[0].z) < 1e-8
    assert zd.collision_scan(hp.caloric_polynomial_solution(1), (-1, 1, -1, 1), (-2, 2, -2, 2)) == []
    pts = zd.collision_scan(hp.propagate_from_roots([1.0, -1.0]), (-1, 1, -1, 1), (-2, 2, -2, 2))
    assert len(pts) == 1
    assert abs(pts[0].t - 0.5) < 1e-10 and abs(pts[0].z) < 1e-10


def test_collision_scan_points_isolated():
    F = hp.propagate_from_roots([1.0, -0.5 + 0.8j, 0.3 - 0.9j])
    pts = zd.collision_scan(F, (-1, 1, -1, 1), (-2, 2, -2, 2), grid=5)
    assert pts
    for i, p in enumerate(pts):
        assert abs(F(p.t, p.z)) < 1e-9 and abs(F.dz(p.t, p.z)) < 1e-9
        for q in pts[i + 1 :]:
            assert abs(p.t - q.t) + abs(p.z - q.z) > 1e-5


def test_never_zero_examples():
    box = (-3, 3, -3, 3)
    assert zd.never_zero_check(hp.exp_heat(1.0), box, box)
    assert not zd.never_zero_check(hp.caloric_polynomial_solution(2), (-1, 1, -1, 1), (-2, 2, -2, 2))
    assert zd.never_zero_check(hp.gaussian_heat(1.0), (-1, 1, -1, 1), (-2, 2, -2, 2))


# ------------------------------------------------------------ scenarios and I/O


def test_scenario_loading():
    initial, cfg, variant, lam, mode = zd.load_scenario({"initial": [1, [0, 1]], "path": [0, [0.1, 0.1]]})
    assert np.allclose(initial, [1, 1j]) and cfg.t_path == (0j, 0.1 + 0.1j)
    assert variant == "genus0" and mode == "ode"
    with pytest.raises(ValueError):
        zd.load_scenario({"initial": [1], "colour": 3})
    with pytest.raises(ValueError):
        zd.load_scenario({"random": {"n": 3}})
    a, *_ = zd.load_scenario({"random": {"n": 4}}, seed=5)
    b, *_ = zd.load_scenario({"random": {"n": 4}, "seed": 5})
    assert np.array_equal(a, b)


def test_random_points_constraints():
    p = zd.random_points(20, 0.5, 2.0, seed=1)
    assert np.all((np.abs(p) >= 0.5) & (np.abs(p) <= 2.0))
    assert np.array_equal(p, zd.random_points(20, 0.5, 2.0, seed=1))


def test_trajectory_csv(tmp_path):
    trajs = zd.ode_evolve([1.0, -1.0], _cfg(0.0, 0.2, samples_per_segment=4))
    path = tmp_path / "traj.csv"
    zd.write_trajectories_csv(path, trajs)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["k", "re(t)", "im(t)", "re(z)", "im(z)", "status"]
    assert len(rows) == 1 + 2 * 5
    assert float(rows[-1][3]) == pytest.approx(-math.sqrt(1 - 0.4), abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(
    z0=st.complex_numbers(min_magnitude=0.3, max_magnitude=2, allow_nan=False, allow_infinity=False),
    dt=st.floats(0.01, 0.3),
)
def test_two_body_closed_form_property(z0, dt):
    # pair +-z0 follows z(t)^2 = z0^2 - 2t until it collides
    t_end = min(dt, 0.9 * abs(z0) ** 2 / 2)
    trajs = zd.ode_evolve([z0, -z0], _cfg(0.0, t_end))
    for t, z in trajs[0].samples:
        assert abs(z * z - (z0 * z0 - 2 * t)) < 1e-7 * (1 + abs(z0) ** 2)
    assert cmath.isclose(trajs[1].z[-1], -trajs[0].z[-1], abs_tol=1e-9)
