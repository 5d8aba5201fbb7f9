from fractions import Fraction

import pytest

from monoball.legendre import (AssocLegendre, assoc_legendre, check_recurrence,
                               cross_inner_product, double_factorial, legendre,
                               l2_norm_sq, l2_norm_sq_formula, pmm_is_double_factorial,
                               poly_eval)


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(0) == 1
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
    with pytest.raises(ValueError):
        double_factorial(-3)


def test_low_degree_polynomials():
    assert legendre(0) == (Fraction(1),)
    assert legendre(1) == (Fraction(0), Fraction(1))
    assert legendre(2) == (Fraction(-1, 2), Fraction(0), Fraction(3, 2))
    with pytest.raises(ValueError):
        legendre(-1)


def test_normalization_at_one():
    for k in range(13):
        assert poly_eval(legendre(k), Fraction(1)) == 1


def test_assoc_legendre_examples():
    assert assoc_legendre(1, 1).poly_part == (Fraction(1),)  # P^1_1 = (1-t^2)^(1/2)
    al = assoc_legendre(2, 2)
    assert al.poly_part == (Fraction(3),)  # P^2_2 = 3 (1-t^2)
    assert al.m == 2
    assert assoc_legendre(2, 0).poly_part == legendre(2)


def test_assoc_legendre_validation():
    with pytest.raises(ValueError):
        assoc_legendre(2, 3)
    with pytest.raises(ValueError):
        assoc_legendre(2, -1)


def test_pmm_identity():
    for m in range(11):
        assert pmm_is_double_factorial(m)


def test_recurrence_base_case():
    # n=0, m=0: (1-t^2) * 1 == 1*P_0 - 1*t*t
    assert check_recurrence(1, 0)
    assert check_recurrence(2, 1)


def test_recurrence_all():
    for n in range(11):
        for m in range(n + 2):
            assert check_recurrence(n + 1, m), (n, m)


def test_l2_norms_examples():
    assert l2_norm_sq(1, 0) == Fraction(2, 3)
    assert l2_norm_sq(1, 1) == Fraction(4, 3)
    assert l2_norm_sq(2, 2) == Fraction(48, 5)


def test_l2_norms_match_formula():
    for n in range(11):
        for m in range(n + 2):
            assert l2_norm_sq(n + 1, m) == l2_norm_sq_formula(n + 1, m)


def test_orthogonality():
    for n in range(9):
        for k in range(n + 1, 9):
            for m in range(min(n, k) + 2):
                assert cross_inner_product(n + 1, k + 1, m) == 0


def test_float_evaluation_consistency():
    al = assoc_legendre(4, 2)
    t = 0.37
    exact = float((1 - Fraction(t) ** 2)) * float(poly_eval(al.poly_part, Fraction(t)))
    assert abs(al.value(t) - exact) < 1e-13


def test_degree_of_poly_part():
    for n in range(8):
        for m in range(n + 2):
            al = assoc_legendre(n + 1, m)
            assert isinstance(al, AssocLegendre)
            assert len(al.poly_part) - 1 == n + 1 - m
