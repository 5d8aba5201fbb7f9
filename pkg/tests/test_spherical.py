import math
from fractions import Fraction

import numpy as np
import pytest

from monoball.poly3 import QPolynomial, ScalarPoly, apply_D, laplacian
from monoball.spherical import (MonogenicBasisElement, SphericalPoint,
                                basis_family, family_keys, modulus_bound,
                                pointwise_bound_check, solid_harmonic,
                                spherical_monogenic)

X0 = ScalarPoly.variable(0)
X1 = ScalarPoly.variable(1)
X2 = ScalarPoly.variable(2)


def test_solid_harmonic_examples():
    assert solid_harmonic(1, 0, "U") == QPolynomial.from_scalar(X0)
    want = X0 * X0 - (X1 * X1 + X2 * X2).scale(Fraction(1, 2))
    assert solid_harmonic(2, 0, "U") == QPolynomial.from_scalar(want)
    assert solid_harmonic(1, 1, "V") == QPolynomial.from_scalar(X2)
    assert solid_harmonic(1, 1, "U") == QPolynomial.from_scalar(X1)


def test_solid_harmonics_are_harmonic():
    for k in range(1, 10):
        for m in range(k + 1):
            assert laplacian(solid_harmonic(k, m, "U")).is_zero()
            if m >= 1:
                assert laplacian(solid_harmonic(k, m, "V")).is_zero()


def test_solid_harmonic_validation():
    with pytest.raises(ValueError):
        solid_harmonic(2, 0, "V")
    with pytest.raises(ValueError):
        solid_harmonic(2, 3, "U")
    with pytest.raises(ValueError):
        solid_harmonic(2, 1, "W")


def test_lowest_monogenics():
    half = QPolynomial.from_scalar(ScalarPoly.constant(Fraction(1, 2)))
    assert spherical_monogenic(0, 0, "X0").solid == half
    want = QPolynomial((X0, X1.scale(Fraction(1, 2)), X2.scale(Fraction(1, 2)),
                        ScalarPoly.zero()))
    assert spherical_monogenic(1, 0, "X0").solid == want


def test_values_stay_in_A():
    for n in range(6):
        for key in family_keys(n):
            el = spherical_monogenic(*key)
            assert el.solid.is_a_valued()


def test_family_count_and_keys():
    for n in range(9):
        fam = basis_family(n)
        assert len(fam) == 2 * n + 3
        assert len(family_keys(n)) == 2 * n + 3


def test_exact_monogenicity_and_homogeneity():
    for n in range(9):
        for el in basis_family(n):
            assert apply_D(el.solid).is_zero()
            assert el.solid.is_homogeneous(n)


def test_parameter_validation():
    with pytest.raises(ValueError):
        spherical_monogenic(2, 4, "X")
    with pytest.raises(ValueError):
        spherical_monogenic(2, 0, "Y")
    with pytest.raises(ValueError):
        spherical_monogenic(-1, 0, "X0")
    with pytest.raises(ValueError):
        spherical_monogenic(2, 1, "Z")


def test_spherical_point_round_trip():
    rng = np.random.default_rng(21)
    for _ in range(200):
        theta = float(rng.uniform(1e-6, math.pi))
        phi = float(rng.uniform(1e-6, 2 * math.pi))
        r = float(rng.uniform(0.1, 3.0))
        x = SphericalPoint(theta, phi, r).to_cartesian()
        back = SphericalPoint.from_cartesian(*x)
        y = back.to_cartesian()
        assert max(abs(a - b) for a, b in zip(x, y)) < 1e-14 * max(1.0, r)


def test_trig_matches_polynomial_path():
    rng = np.random.default_rng(22)
    worst = 0.0
    for n in range(9):
        for key in family_keys(n):
            el = spherical_monogenic(*key)
            for _ in range(15):
                theta = float(rng.uniform(0.0, math.pi))
                phi = float(rng.uniform(0.0, 2 * math.pi))
                x = SphericalPoint(theta, phi).to_cartesian()
                tv = el.trig_value(theta, phi)
                pv = el.value_float(*x)
                scale = max(1.0, pv.norm())
                diff = max(abs(a - b) for a, b in zip(tv.components(), pv.components()))
                worst = max(worst, diff / scale)
    assert worst < 1e-12


def test_trig_finite_at_poles():
    for n in range(6):
        for key in family_keys(n):
            el = spherical_monogenic(*key)
            for theta in (0.0, math.pi):
                x = SphericalPoint(theta, 0.3).to_cartesian()
                tv = el.trig_value(theta, 0.3)
                pv = el.value_float(*x)
                assert all(math.isfinite(c) for c in tv.components())
                scale = max(1.0, pv.norm())
                diff = max(abs(a - b) for a, b in zip(tv.components(), pv.components()))
                assert diff / scale < 1e-12


def test_pointwise_bound_n0():
    # |X0_0| = 1/2 <= sqrt(pi/3) with strictly positive margin
    samples = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    margin = pointwise_bound_check(0, 0, "X0", samples)
    assert margin == pytest.approx(math.sqrt(math.pi / 3) - 0.5, abs=1e-12)
    assert margin > 0


def test_pointwise_bound_grid():
    thetas = np.linspace(0, math.pi, 64)
    phis = np.linspace(0, 2 * math.pi, 128, endpoint=False)
    samples = [SphericalPoint(t, p if p else 2 * math.pi).to_cartesian()
               for t in thetas for p in phis]
    assert pointwise_bound_check(1, 0, "X0", samples) > 0
    assert pointwise_bound_check(1, 2, "Y", samples) > 0


def test_bound_not_tight():
    # margins stay strictly positive: the 2^n factor is not claimed sharp
    rng = np.random.default_rng(23)
    pts = rng.normal(size=(500, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    for n in (2, 5):
        for key in family_keys(n)[:3]:
            assert pointwise_bound_check(*key, samples=pts.tolist()) > 0


def test_element_label_and_value():
    el = spherical_monogenic(1, 0, "X0")
    assert isinstance(el, MonogenicBasisElement)
    v = el.value(Fraction(1), Fraction(2), Fraction(0))
    assert v.a0 == 1 and v.a1 == 1 and v.a2 == 0
    assert modulus_bound(1, 0, "X0") > 0
