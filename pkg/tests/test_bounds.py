import math
from fractions import Fraction

import numpy as np
import pytest

import monoball.bounds as bounds
from monoball.fourier import (Coefficient, FourierCoefficients, synthesize)
from monoball.integrate import QuadratureRule
from monoball.poly3 import QPolynomial, ScalarPoly
from monoball.quaternion import ReducedQuaternion


# Generating-function oracles for the two series (frozen reference values):
# sum n x^n   = x/(1-x)^2,      sum n^2 x^n = x(1+x)/(1-x)^3,
# sum n^3 x^n = x(1+4x+x^2)/(1-x)^4, and (n+1)(n+2)(2n+1) = 2n^3+7n^2+7n+2.
def s1_oracle(r):
    x = 2.0 * r
    return (2 * x * (1 + 4 * x + x * x) / (1 - x) ** 4
            + 7 * x * (1 + x) / (1 - x) ** 3
            + 7 * x / (1 - x) ** 2
            + 2 * x / (1 - x))


def s2_oracle(r):
    x = 2.0 * r
    return x / (1 - x) ** 2 + x / (1 - x)


def test_a_factors():
    assert bounds.a1(0.0) == 9.0
    assert bounds.a2(0.0) == 3.0
    assert bounds.a2(0.25) == 2.25
    assert bounds.a1(0.25) == pytest.approx((3 * 2 + 8 * (1 / 16) * 1.75) / 0.25)


def test_radius_domain():
    for bad in (-0.01, 0.5, 0.7):
        with pytest.raises(ValueError):
            bounds.a1(bad)
        with pytest.raises(ValueError):
            bounds.rhs_series(bad, 1.0, 1.0)


def test_series_against_oracles():
    for r in (0.05, 0.1, 0.2, 0.3, 0.4, 0.45):
        assert bounds.f1_series_sum(r, tol=1e-14) == pytest.approx(s1_oracle(r), rel=1e-12)
        assert bounds.f2_series_sum(r, tol=1e-14) == pytest.approx(s2_oracle(r), rel=1e-12)


def test_rhs_series_examples():
    # r = 1/4, only the f2 part: 3 * sum (1/2)^n (n+1) = 3 * 3 = 9
    assert bounds.rhs_series(0.25, 0.0, 1.0) == pytest.approx(9.0, abs=1e-10)
    assert bounds.rhs_series(0.0, 1.0, 1.0) == 0.0
    # r = 1/4, only the f1 part: S1(1/2)/2 = 110/2 = 55
    assert bounds.rhs_series(0.25, 1.0, 0.0) == pytest.approx(55.0, rel=1e-12)


def test_series_monotonic_in_r():
    values = [bounds.rhs_series(r, 1.0, 0.5) for r in np.linspace(0.0, 0.45, 40)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_a2_consistency_identity():
    for r in np.linspace(0.025, 0.475, 19):
        series = 3.0 * bounds.f2_series_sum(float(r), tol=1e-15)
        closed = 4.0 * r / (2.0 * r - 1.0) ** 2 * bounds.a2(float(r))
        assert series == pytest.approx(closed, abs=1e-10)


def test_a1_ratio_is_two():
    # the closed form equals the full series, i.e. twice the proof's half-series
    for r in (0.05, 0.15, 0.25, 0.35, 0.45):
        closed = 4.0 * r / (2.0 * r - 1.0) ** 2 * bounds.a1(r)
        assert closed == pytest.approx(s1_oracle(r), rel=1e-12)
        ratio = closed / (0.5 * bounds.f1_series_sum(r, tol=1e-14))
        assert ratio == pytest.approx(2.0, rel=1e-10)


def test_max_on_sphere_linear():
    # |x0| on |x| = r peaks at the poles with value r
    f = QPolynomial.from_scalar(ScalarPoly.variable(0))
    assert bounds.max_on_sphere(f, 0.3) == pytest.approx(0.3, rel=1e-9)


def test_coefficient_bounds_single(basis6):
    key = (1, 0, "X0")
    nb = basis6.get(key)
    coeffs = FourierCoefficients(f0=ReducedQuaternion(0, 0, 0), max_degree=6)
    coeffs.entries[key] = Coefficient(1.0, Fraction(nb.scaled_from_alpha(1.0)))
    f = synthesize(coeffs, basis6)
    report = bounds.coefficient_bounds_check(f, basis6)
    assert report.worst_slack >= 0
    # the bound for the populated slot: sqrt(5)*1 <= (||X||/||Re X||)*||Re f||
    # with ||X_1^0||^2 = 2 pi, ||Re X_1^0||^2 = 4 pi/3, ||Re f|| = sqrt(5*2/3... )
    re_norm, _ = bounds.boundary_norms_exact(f)
    lhs = math.sqrt(5)
    rhs = math.sqrt(2.0 / (4.0 / 3.0)) * re_norm
    assert rhs >= lhs


def test_coefficient_bounds_constant(basis6):
    f = QPolynomial.constant(ReducedQuaternion(Fraction(3), 0, 0).to_quaternion())
    report = bounds.coefficient_bounds_check(f, basis6)
    assert report.worst_slack >= 0  # all LHS are zero


def test_coefficient_bounds_random_sweep(basis6):
    rng = np.random.default_rng(41)
    for _ in range(10):
        coeffs = bounds.random_coefficients(6, rng, basis6)
        f = synthesize(coeffs, basis6)
        report = bounds.coefficient_bounds_check(f, basis6)
        assert report.worst_slack >= 0, report.worst_key


def test_certify_constant(basis6, rule6):
    f = QPolynomial.constant(ReducedQuaternion(Fraction(2), Fraction(-1), 0).to_quaternion())
    reports = bounds.certify(f, [0.0, 0.1, 0.4], rule6, grid=(41, 80))
    c = math.sqrt(5)
    for rep in reports:
        assert rep.max_f == pytest.approx(c, rel=1e-12)
        assert rep.rhs_series == pytest.approx(c, rel=1e-12)
        assert rep.rhs_closed == pytest.approx(c, rel=1e-12)
        assert rep.pass_series and rep.pass_closed


def test_certify_r_zero(basis6, rule6):
    rng = np.random.default_rng(42)
    coeffs = bounds.random_coefficients(4, rng, basis6)
    f = synthesize(coeffs, basis6)
    rep = bounds.certify(f, [0.0], rule6, grid=(41, 80))[0]
    assert rep.max_f == pytest.approx(rep.f0_abs, rel=1e-12)
    assert rep.rhs_series == pytest.approx(rep.f0_abs, rel=1e-12)
    assert rep.pass_series


def test_certify_rejects_bad_radius(basis6, rule6):
    f = QPolynomial.constant(ReducedQuaternion(1, 0, 0).to_quaternion())
    with pytest.raises(ValueError):
        bounds.certify(f, [0.6], rule6)


def test_certify_series_bound_random(basis6, rule6):
    rng = np.random.default_rng(43)
    for _ in range(5):
        coeffs = bounds.random_coefficients(6, rng, basis6)
        f = synthesize(coeffs, basis6)
        for rep in bounds.certify(f, [0.05, 0.25, 0.45], rule6, grid=(61, 120)):
            assert rep.pass_series
            assert rep.rhs_series >= rep.f0_abs
            assert rep.rhs_closed >= rep.rhs_series - 1e-9  # closed dominates


def test_schwarz_corrected_threshold(basis6, rule6):
    # the proof-backed variant: with f(0) = 0 and
    # re_norm*A1 + re_e1*A2 <= (2r-1)^2/4 the bound gives max |f| <= r
    rng = np.random.default_rng(44)
    base = bounds.random_coefficients(4, rng, basis6, zero_origin=True)
    f = synthesize(base, basis6)
    re_norm, re_e1_norm = bounds.boundary_norms_quad(f, rule6)
    for r in (0.1, 0.3):
        target = (2 * r - 1.0) ** 2 / 4.0
        scale = Fraction(target / (re_norm * bounds.a1(r) + re_e1_norm * bounds.a2(r)) / 2)
        scaled = FourierCoefficients(f0=ReducedQuaternion(0, 0, 0), max_degree=4)
        for k, c in base.entries.items():
            scaled.entries[k] = Coefficient(c.alpha * float(scale), c.scaled * scale)
        g = synthesize(scaled, basis6)
        gn, ge = bounds.boundary_norms_quad(g, rule6)
        assert gn * bounds.a1(r) + ge * bounds.a2(r) <= target
        assert bounds.max_on_sphere(g, r, grid=(61, 120)) <= r


def test_random_coefficients_deterministic(basis6):
    a = bounds.random_coefficients(4, np.random.default_rng(7), basis6)
    b = bounds.random_coefficients(4, np.random.default_rng(7), basis6)
    assert a.entries.keys() == b.entries.keys()
    for k in a.entries:
        assert a.scaled(*k) == b.scaled(*k)
    assert a.f0 == b.f0


def test_sweep_metadata_and_thread_env(basis6, monkeypatch):
    rule = QuadratureRule.for_degree(4)
    sweep1 = bounds.certify_random_sweep(4, 3, [0.1, 0.3], 99, basis6, rule, grid=(41, 80))
    monkeypatch.setenv("MONOBALL_THREADS", "4")
    sweep2 = bounds.certify_random_sweep(4, 3, [0.1, 0.3], 99, basis6, rule, grid=(41, 80))
    assert sweep1.meta["seed"] == 99
    assert sweep1.reports == sweep2.reports  # thread count never changes results
    assert len(sweep1.reports) == 6
    assert [r["trial"] for r in sweep1.reports] == [0, 0, 1, 1, 2, 2]
