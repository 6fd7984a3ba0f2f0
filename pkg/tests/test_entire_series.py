import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from caloric import entire_series as es
from caloric.errors import TruncationError


def test_exp_coefficients():
    c = es.exp_series().coeffs(10)
    assert np.allclose(c, [1 / math.factorial(n) for n in range(11)], rtol=1e-14)


def test_sin_and_cos_coefficients():
    s = es.sin_series(2.0).coeffs(5)
    assert np.allclose(s, [0, 2, 0, -8 / 6, 0, 32 / 120], rtol=1e-14)
    c = es.cos_series(1.0).coeffs(4)
    assert np.allclose(c, [1, 0, -0.5, 0, 1 / 24], rtol=1e-14)


def test_gaussian_and_cos_sq_coefficients():
    g = es.gaussian_series(0.5).coeffs(6)
    assert np.allclose(g, [1, 0, 0.5, 0, 0.125, 0, 0.125 / 6], rtol=1e-14)
    c = es.cos_sq_series(1.0).coeffs(8)
    assert np.allclose(c, [1, 0, 0, 0, -0.5, 0, 0, 0, 1 / 24], rtol=1e-14)


def test_evaluate_matches_functions():
    z = np.array([0.3, -1.2 + 0.5j, 2.0j])
    assert np.allclose(es.exp_series().evaluate(z), np.exp(z), rtol=1e-13)
    assert np.allclose(es.sin_series(2.0).evaluate(z), np.sin(2 * z), rtol=1e-12)
    assert np.allclose(es.gaussian_series(0.5).evaluate(z), np.exp(0.5 * z * z), rtol=1e-12)


def test_n_max_is_enforced():
    with pytest.raises(ValueError):
        es.exp_series(n_max=20).coeffs(21)


def test_sharp_examples():
    s = es.from_coeffs([(-1) ** k for k in range(8)])
    assert np.allclose(es.sharp(s).coeffs(), np.ones(8))
    alt = es.from_coeffs([(-1) ** k / math.factorial(k) for k in range(30)])
    a = es.sharp(alt.derivative()).coeffs()
    b = es.sharp(alt).derivative().coeffs()
    assert np.allclose(a, b, rtol=1e-14)


def test_sharp_majorizes_sine():
    r = 2.0
    theta = np.linspace(0, 2 * np.pi, 400)
    m = np.max(np.abs(np.sin(r * np.exp(1j * theta))))
    assert m <= es.sharp(es.sin_series()).evaluate(r).real * (1 + 1e-12)


def test_sharp_is_idempotent():
    s = es.sin_series(1.5 - 0.5j, n_max=80)
    once = es.sharp(s).coeffs()
    twice = es.sharp(es.sharp(s)).coeffs()
    assert np.array_equal(once, twice)


def test_taylor_shift_identity_at_zero():
    s = es.sin_series(n_max=60)
    t = es.taylor_shift(s, 0, 40)
    assert np.allclose(t.coeffs(), s.coeffs(40))


def test_taylor_shift_exp():
    t = es.taylor_shift(es.exp_series(n_max=200), 1.0, 20)
    expected = [math.e / math.factorial(n) for n in range(21)]
    assert np.allclose(t.coeffs(), expected, rtol=1e-12, atol=0)
    assert t.truncation_bound < 1e-10


def test_taylor_shift_monomial():
    t = es.taylor_shift(es.monomial(3), 2.0)
    assert np.allclose(t.coeffs(), [8, 12, 6, 1], rtol=1e-15)
    assert t.truncation_bound == 0


def test_taylor_shift_cancellation_gives_zero():
    # even derivatives of sin vanish at pi
    t = es.taylor_shift(es.sin_series(n_max=300), math.pi, 40)
    c = t.coeffs()
    assert np.all(np.abs(c[0::2]) < 1e-13)
    assert abs(c[1] + 1) < 1e-12


def test_taylor_shift_truncation_error_raised():
    # only 30 coefficients of exp cannot represent a shift far from the origin
    with pytest.raises(TruncationError):
        es.taylor_shift(es.exp_series(n_max=30), 20.0, 10)


def test_shift_round_trip():
    s = es.exp_series(0.5 + 0.2j, n_max=300)
    fwd = es.taylor_shift(s, 1.0 + 0.5j, 200)
    back = es.taylor_shift(fwd, -1.0 - 0.5j, 60)
    bound = max(fwd.truncation_bound, back.truncation_bound, 1e-13)
    assert np.allclose(back.coeffs(), s.coeffs(60), rtol=100 * bound, atol=1e-300)


def test_genus_select_cases():
    assert es.genus_select(1.5, False, False) == 1
    assert es.genus_select(1, True, False) == 1
    assert es.genus_select(1, True, True) == 0
    assert es.genus_select(0, True, True) == 0


def test_canonical_product_examples():
    cp1 = es.CanonicalProduct((1.0,), 0)
    assert es.canonical_eval(cp1, 2.0) == pytest.approx(-1)
    cp2 = es.CanonicalProduct((1.0, -2.0 + 1j, 0.5j), 2)
    assert es.canonical_eval(cp2, 0) == pytest.approx(1)
    h = 1e-5
    deriv = (cp2(h) - cp2(-h)) / (2 * h)
    assert abs(deriv) <= 1e-8


def test_exp_poly_times_product_normalization():
    cp = es.CanonicalProduct((1.0 + 1j, -3.0), 1)
    g = es.exp_poly_times_product([0.7 - 0.2j, 0.1], cp)
    assert g(0) == pytest.approx(1)
    h = 1e-5
    assert abs((g(h) - g(-h)) / (2 * h) - (0.7 - 0.2j)) <= 1e-8


def test_canonical_product_rejects_zero():
    with pytest.raises(ValueError):
        es.CanonicalProduct((0.0, 1.0), 1)


def test_convergence_exponent():
    zeros = np.arange(1, 400) * 1.0  # n(r) ~ r
    assert es.estimate_convergence_exponent(zeros) == pytest.approx(1.0, abs=0.05)
    assert es.estimate_convergence_exponent(zeros, declared=0.5) == 0.5


def test_json_round_trip():
    s = es.sin_series(2.0, n_max=120)
    again = es.load_json(json.dumps(es.dump_json(s)))
    assert again.n_max == 120
    assert np.allclose(again.coeffs(), s.coeffs())
    lst = es.load_json({"kind": "list", "coeffs": [1, [0, 1], "2-1j"]})
    assert np.allclose(lst.coeffs(), [1, 1j, 2 - 1j])
    assert lst.degree == 2


def test_json_rejects_unknown_keys_and_rules():
    with pytest.raises(ValueError):
        es.load_json({"kind": "list", "coeffs": [1], "colour": "red"})
    with pytest.raises(ValueError):
        es.load_json({"kind": "closed_form", "rule": {"name": "nope"}})
    with pytest.raises(ValueError):
        es.load_json({"kind": "closed_form", "rule": {"name": "exp", "params": {"bogus": 1}}})


def test_decay_report_for_entire_function():
    assert es.decay_report(es.exp_series(n_max=100))["decreasing"]


def test_derivative_of_polynomial_tracks_degree():
    p = es.polynomial([1, 2, 3])
    d = p.derivative()
    assert d.degree == 1
    assert np.allclose(d.coeffs(), [2, 6])


@settings(max_examples=40, deadline=None)
@given(
    re=st.floats(-1.5, 1.5),
    im=st.floats(-1.5, 1.5),
)
def test_shift_reproduces_derivatives_of_exp(re, im):
    z0 = complex(re, im)
    t = es.taylor_shift(es.exp_series(n_max=150), z0, 15)
    n = np.arange(16)
    expected = np.exp(z0) / np.array([math.factorial(k) for k in n])
    assert np.allclose(t.coeffs(), expected, rtol=1e-11, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(coeffs=st.lists(st.floats(-3, 3), min_size=1, max_size=8))
def test_sharp_idempotent_on_lists(coeffs):
    s = es.from_coeffs(coeffs)
    assert np.array_equal(es.sharp(es.sharp(s)).coeffs(), es.sharp(s).coeffs())
