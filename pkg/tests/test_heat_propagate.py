import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caloric import caloric_poly as cp
from caloric import entire_series as es
from caloric import heat_propagate as hp
from caloric.errors import SingularTimeError, TruncationError, WrongSheetError

rng = np.random.default_rng(12345)
T_SAMPLES = rng.uniform(-0.2, 0.2, 100) + 1j * rng.uniform(-0.2, 0.2, 100)
Z_SAMPLES = rng.uniform(-1.5, 1.5, 100) + 1j * rng.uniform(-1.5, 1.5, 100)


# ------------------------------------------------------------ series / kernel


def test_series_of_monomial_is_caloric_polynomial():
    f = es.monomial(5)
    for t, z in [(0.3, 0.8), (0.1 - 0.4j, 1.2 + 0.3j)]:
        assert abs(hp.propagate_series(f, t, z) - cp.evaluate(5, t, z)) < 1e-12


def test_series_of_exponential():
    val = hp.propagate_series(es.exp_series(1.0), 0.3, 1.0, J=40)
    assert abs(val - math.exp(1.3)) < 1e-10 * math.exp(1.3)


def test_series_at_time_zero_returns_initial_data():
    f = es.sin_series(1.0)
    assert abs(hp.propagate_series(f, 0, 0.7) - math.sin(0.7)) < 1e-14


def test_series_info_and_fixed_depth():
    val, info = hp.propagate_series(es.exp_series(), 0.2, 0.1, return_info=True)
    assert info["tail"] < 1e-10
    with pytest.raises(ValueError):
        hp.propagate_series(es.exp_series(n_max=100), 0.2, 0.1, J=10_000)


def test_series_truncation_signal():
    # e^{z^2} is not admissible: at t = 0.3 the t-series diverges
    with pytest.raises(TruncationError):
        hp.propagate_series(es.gaussian_series(1.0, n_max=200), 0.3, 0.5)


def test_kernel_examples():
    assert abs(hp.propagate_kernel(es.monomial(2), 0.5, 0) - 1.0) < 1e-13
    assert abs(hp.propagate_kernel(es.polynomial([1.0]), 0.7, 0.3) - 1) < 1e-13
    assert abs(hp.propagate_kernel(es.monomial(5), 0.3, 0.8) - cp.evaluate(5, 0.3, 0.8)) < 1e-10


@pytest.mark.parametrize(
    "f",
    [es.polynomial([1, -2, 0.5, 3, 0, 1, 0, 0, 0, 0, 0.25]), es.exp_series(0.8 - 0.3j), es.sin_series(1.2)],
    ids=["deg10", "exp", "sin"],
)
def test_series_and_kernel_agree(f):
    for t, z in [(0.3, 0.5), (0.8 + 0.4j, -1.2 + 1j), (-0.5 + 0.2j, 1.9)]:
        a = hp.propagate_series(f, t, z)
        b = hp.propagate_kernel(f, t, z)
        assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


# ------------------------------------------------------------ from roots


def test_propagate_from_roots_examples():
    F = hp.propagate_from_roots([1, -1])
    t, z = 0.3 - 0.1j, 0.7 + 0.2j
    assert abs(F(t, z) - (1 - z * z - 2 * t)) < 1e-14
    G = hp.propagate_from_roots([1])
    assert abs(G(t, z) - (1 - z)) < 1e-14
    H = hp.propagate_from_roots([1, 1j, -1, -1j])
    assert abs(H(t, z) - (1 - cp.evaluate(4, t, z))) < 1e-12


def test_propagate_from_roots_validation():
    with pytest.raises(ValueError):
        hp.propagate_from_roots([1, 1])
    with pytest.raises(ValueError):
        hp.propagate_from_roots([0, 1])


def test_polynomial_backing_reproduces_initial_data():
    a = [2.0, -1 + 1j, 0.5j]
    F = hp.propagate_from_roots(a)
    z = np.linspace(-2, 2, 9) + 0.3j
    f0 = np.prod([1 - z / ak for ak in a], axis=0)
    assert np.allclose(F(0, z), f0, rtol=0, atol=1e-14)


# ------------------------------------------------------------ heat residuals


@pytest.mark.parametrize(
    "F",
    [
        hp.caloric_polynomial_solution(6),
        hp.propagate_from_roots([1.5, -0.5 + 1j, 2j]),
        hp.gaussian_heat(0.6),
        hp.cos_sq_heat(0.5),  # singular times at |t| = 0.5, outside the sample box
        hp.exp_heat(1.1 - 0.4j),
        hp.series_solution(es.sin_series(1.0, n_max=200)),
        hp.hermite_alpha_heat(0.5 + 0.5j),
    ],
    ids=["P6", "roots", "gauss", "cos_sq", "exp", "series", "alpha"],
)
def test_heat_residual_at_sample_points(F):
    n = 100 if F.backing in ("polynomial", "closed_form") and "alpha" not in F.label else 10
    ts, zs = T_SAMPLES[:n], Z_SAMPLES[:n]
    if "alpha" in F.label:
        ts = ts + 0.5  # keep away from the essential singularity at t = 0
    for t, z in zip(ts, zs):
        val = complex(F(t, z))
        assert F.residual_fd(t, z) <= 1e-7 * (1 + abs(val))


def test_central_difference_residual_option():
    F = hp.gaussian_heat(1.0)
    assert F.residual_fd(0.1, 0.7, method="central") <= 1e-5
    with pytest.raises(ValueError):
        F.residual_fd(0.1, 0.7, method="spline")


def test_analytic_residual_and_records():
    F = hp.gaussian_heat(1.0)
    assert F.residual(0.1, 0.7) <= 1e-12
    rec = F.records([0.1], [0.7])[0]
    assert set(rec) == {"t", "z", "F", "dFdz", "residual"}


# ------------------------------------------------------------ even / odd


def test_even_odd_split_examples():
    lam = 0.9 + 0.2j
    Fe, Fo = hp.even_odd_split(hp.exp_heat(lam))
    t, z = 0.3, 0.4 - 0.1j
    assert abs(Fe(t, z) - cmath.exp(lam * lam * t) * cmath.cosh(lam * z)) < 1e-13
    assert abs(Fo(t, z) - cmath.exp(lam * lam * t) * cmath.sinh(lam * z)) < 1e-13
    Ge, Go = hp.even_odd_split(hp.caloric_polynomial_solution(4))
    assert abs(Go(t, z)) < 1e-15 and abs(Ge(t, z) - cp.evaluate(4, t, z)) < 1e-14
    He, Ho = hp.even_odd_split(hp.caloric_polynomial_solution(3))
    assert abs(He(t, z)) < 1e-15 and abs(Ho(t, z) - cp.evaluate(3, t, z)) < 1e-14


@settings(max_examples=40, deadline=None)
@given(
    t=st.complex_numbers(max_magnitude=0.2, allow_nan=False, allow_infinity=False),
    z=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
)
def test_even_odd_parity_identities(t, z):
    F = hp.propagate_from_roots([1.5, -0.5 + 1j, 2j])
    Fe, Fo = hp.even_odd_split(F)
    assert Fe(t, -z) == Fe(t, z)
    assert Fo(t, -z) == -Fo(t, z)
    assert abs(Fe(t, z) + Fo(t, z) - F(t, z)) <= 1e-13 * (1 + abs(F(t, z)))


# ------------------------------------------------------------ phi / psi


def test_phi_psi_examples():
    one, zero = es.polynomial([1.0]), es.polynomial([0.0])
    assert hp.phi_psi_expand(one, zero, 0.4, 1.3, 5) == pytest.approx(1)
    two_t = es.polynomial([0.0, 2.0])
    t, z = 0.4, 1.3
    assert hp.phi_psi_expand(two_t, zero, t, z, 3) == pytest.approx(z * z + 2 * t)
    e = es.exp_series(n_max=200)
    assert abs(hp.phi_psi_expand(e, e, 0.2, 0.4, 30) - math.exp(0.6)) < 1e-10


# ------------------------------------------------------------ admissibility


def test_admissibility_examples():
    assert hp.admissibility_check(es.gaussian_series(1.0))["verdict"] == "rejected"
    assert hp.admissibility_check(es.exp_series())["verdict"] == "admissible"
    assert hp.admissibility_check(es.factorial_power(1.5))["verdict"] == "admissible"
    assert hp.admissibility_check(es.monomial(3))["verdict"] == "admissible"
    with pytest.raises(ValueError):
        hp.admissibility_check(es.exp_series(), N=20)


# ------------------------------------------------------------ closed forms


def test_gaussian_examples():
    assert abs(hp.gaussian_solution(1.0, 0, 0.8) - math.exp(0.64)) < 1e-14
    assert abs(hp.gaussian_solution(1.0, 0.1, 0) - 0.6**-0.5) < 1e-14
    F = hp.gaussian_heat(1.0)
    assert F.residual_fd(0.1, 0.7) <= 1e-9
    with pytest.raises(SingularTimeError):
        hp.gaussian_solution(1.0, 0.25, 0.3)


def test_cos_sq_examples():
    z = 0.9 + 0.2j
    assert abs(hp.cos_sq_solution(1.0, 0, z) - cmath.cos(z * z)) < 1e-14
    assert abs(hp.zero_locus(1.0, 0.0) - math.sqrt(math.pi / 2)) < 1e-12
    assert hp.cos_sq_heat(1.0).residual_fd(0.05, 0.3) <= 1e-9


def test_zero_locus_away_from_zero_time():
    for t in (0.05, 0.1 + 0.05j):
        z = hp.zero_locus(1.0, t)
        assert abs(hp.cos_sq_solution(1.0, t, z)) <= 1e-8


def test_zero_locus_reports_wrong_sheet():
    with pytest.raises(WrongSheetError):
        hp.zero_locus(1.0, 0.1, branch=1)


@pytest.mark.parametrize("m", range(6))
def test_alpha_solution_closes_on_caloric_polynomials(m):
    val = hp.hermite_alpha_solution(m, 0.7, 1.3)
    assert abs(val - cp.evaluate(m, 0.7, 1.3)) <= 1e-8 * max(1.0, abs(val))


def test_alpha_minus_one_matches_erf_form():
    for t, z in [(0.7, 1.3), (0.4 + 0.1j, -0.6 + 0.3j)]:
        a = hp.hermite_alpha_solution(-1, t, z, sheet=-1)
        b = hp.erf_form_solution(t, z)
        assert abs(a - b) <= 1e-8 * max(1.0, abs(b))


def test_alpha_residual_and_singularity():
    F = hp.hermite_alpha_heat(0.5 + 0.5j)
    assert F.residual_fd(0.4, 0.6) <= 1e-8
    assert F.residual(0.4, 0.6) <= 1e-8
    with pytest.raises(SingularTimeError):
        hp.hermite_alpha_solution(0.5, 0, 1.0)


# ------------------------------------------------------------ tilt


def test_tilt_examples():
    lam = 0.6 - 0.2j
    G = hp.tilt(hp.constant_heat(1.0), lam)
    E = hp.exp_heat(lam)
    assert abs(G(0.3, 0.5) - E(0.3, 0.5)) < 1e-14
    T = hp.tilt(hp.caloric_polynomial_solution(3), 1.0)
    t, z = 0.2, 0.5
    w = z + 2 * t
    expected = (w**3 + 6 * t * w) * math.exp(t + z)
    assert abs(T(t, z) - expected) < 1e-13


@settings(max_examples=40, deadline=None)
@given(
    lam=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    t=st.complex_numbers(max_magnitude=0.5, allow_nan=False, allow_infinity=False),
    z=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
)
def test_tilt_group_property(lam, t, z):
    F = hp.caloric_polynomial_solution(4)
    back = hp.tilt(hp.tilt(F, lam), -lam)
    assert abs(back(t, z) - F(t, z)) <= 1e-12 * max(1.0, abs(F(t, z)))


@settings(max_examples=25, deadline=None)
@given(
    lam=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
    t=st.complex_numbers(max_magnitude=0.3, allow_nan=False, allow_infinity=False),
    z=st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False),
)
def test_tilt_preserves_heat_equation(lam, t, z):
    G = hp.tilt(hp.caloric_polynomial_solution(3), lam)
    assert G.residual(t, z) <= 1e-9 * (1 + abs(G(t, z)))


@settings(max_examples=25, deadline=None)
@given(
    t=st.complex_numbers(max_magnitude=0.2, allow_nan=False, allow_infinity=False),
    z=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
)
def test_polynomial_series_kernel_agree_property(t, z):
    f = es.polynomial([0.3, -1, 2, 0.5, 0, -0.25])
    a = hp.propagate_series(f, t, z)
    b = hp.propagate_kernel(f, t, z)
    assert abs(a - b) <= 1e-8 * max(1.0, abs(a))


def test_series_with_all_zero_t_coefficients():
    # sin has only odd Taylor terms, so every t-coefficient at z = 0 vanishes
    assert hp.propagate_series(es.sin_series(1.0), 0.1j, 0.0) == 0
