"""Exact Legendre polynomials and associated Legendre functions.

The associated function of order m carries a half-integer factor
(1 - t^2)^(m/2); it is kept symbolic by storing m together with the
polynomial part g = d^m/dt^m P_{n+1}, so every identity used here reduces
to an exact polynomial identity and no branch cuts or floating error enter.

Univariate polynomials are coefficient tuples (index = power) over Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Poly1 = tuple[Fraction, ...]

T = (Fraction(0), Fraction(1))  # the variable t
ONE_MINUS_T2 = (Fraction(1), Fraction(0), Fraction(-1))


def poly_trim(c: list[Fraction]) -> Poly1:
    while c and not c[-1]:
        c.pop()
    return tuple(c) if c else (Fraction(0),)


def poly_add(a: Poly1, b: Poly1) -> Poly1:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_scale(a: Poly1, s) -> Poly1:
    s = Fraction(s)
    return poly_trim([c * s for c in a])


def poly_sub(a: Poly1, b: Poly1) -> Poly1:
    return poly_add(a, poly_scale(b, -1))


def poly_mul(a: Poly1, b: Poly1) -> Poly1:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_diff(a: Poly1) -> Poly1:
    return poly_trim([a[i] * i for i in range(1, len(a))])


def poly_eval(a: Poly1, t):
    total = 0
    for c in reversed(a):
        total = total * t + c
    return total


def poly_integrate_sym(a: Poly1) -> Fraction:
    """Exact integral over [-1, 1]: odd powers vanish, t^k -> 2/(k+1)."""
    return sum((Fraction(2, k + 1) * c for k, c in enumerate(a) if k % 2 == 0),
               Fraction(0))


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 1 (and 0!! = 1)."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n >= 2:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def legendre(k: int) -> Poly1:
    """Legendre polynomial P_k via the Bonnet recurrence, exact coefficients."""
    if k < 0:
        raise ValueError(f"negative degree {k}")
    if k == 0:
        return (Fraction(1),)
    if k == 1:
        return T
    j = k - 1
    lead = poly_scale(poly_mul(T, legendre(j)), 2 * j + 1)
    return poly_scale(poly_sub(lead, poly_scale(legendre(j - 1), j)), Fraction(1, j + 1))


@lru_cache(maxsize=None)
def _diff_legendre(k: int, m: int) -> Poly1:
    """d^m/dt^m P_k; the zero polynomial when m > k."""
    p = legendre(k)
    for _ in range(m):
        p = poly_diff(p)
    return p


@dataclass(frozen=True)
class AssocLegendre:
    """P^m_{n+1}(t) = (1 - t^2)^(m/2) * poly_part(t), poly_part = d^m P_{n+1}."""

    n_plus_1: int
    m: int
    poly_part: Poly1

    def value(self, t: float) -> float:
        """Float evaluation on [-1, 1] (the (1-t^2)^(1/2) factor taken >= 0)."""
        s2 = max(1.0 - t * t, 0.0)
        return (s2 ** (self.m / 2.0)) * poly_eval_float(self.poly_part, t)

    def poly_part_derivative(self) -> Poly1:
        return poly_diff(self.poly_part)


def poly_eval_float(a: Poly1, t: float) -> float:
    total = 0.0
    for c in reversed(a):
        total = total * t + float(c)
    return total


def assoc_legendre(n_plus_1: int, m: int) -> AssocLegendre:
    if n_plus_1 < 0:
        raise ValueError(f"negative degree {n_plus_1}")
    if not 0 <= m <= n_plus_1:
        raise ValueError(f"order m={m} outside 0..{n_plus_1}")
    return AssocLegendre(n_plus_1, m, _diff_legendre(n_plus_1, m))


def check_recurrence(n_plus_1: int, m: int) -> bool:
    """Exact check of (1-t^2)(P^m_{n+1})' = (n+m+1) P^m_n - (n+1) t P^m_{n+1}.

    Both sides share the factor (1-t^2)^(m/2); after cancelling it the claim
    is the polynomial identity
        (1-t^2) g' - m t g == (n+m+1) g_n - (n+1) t g,
    where g = d^m P_{n+1} and g_n = d^m P_n (zero when m > n).
    """
    n = n_plus_1 - 1
    if not 0 <= m <= n_plus_1:
        raise ValueError(f"order m={m} outside 0..{n_plus_1}")
    g = _diff_legendre(n_plus_1, m)
    g_n = _diff_legendre(n, m) if m <= n else (Fraction(0),)
    lhs = poly_sub(poly_mul(ONE_MINUS_T2, poly_diff(g)),
                   poly_scale(poly_mul(T, g), m))
    rhs = poly_sub(poly_scale(g_n, n + m + 1),
                   poly_scale(poly_mul(T, g), n + 1))
    return lhs == rhs


def pmm_is_double_factorial(m: int) -> bool:
    """Exact check of P^m_m = (2m-1)!! (1-t^2)^(m/2), i.e. d^m P_m == (2m-1)!!."""
    return _diff_legendre(m, m) == (Fraction(double_factorial(2 * m - 1)),)


def l2_norm_sq(n_plus_1: int, m: int) -> Fraction:
    """Exact int_{-1}^{1} (P^m_{n+1})^2 dt by termwise monomial integration.

    The integrand (1-t^2)^m g^2 is a polynomial. The result is checked against
    the closed form 2/(2n+3) * (n+1+m)!/(n+1-m)! before being returned.
    """
    n = n_plus_1 - 1
    g = assoc_legendre(n_plus_1, m).poly_part
    integrand = poly_mul(poly_mul(g, g), _one_minus_t2_pow(m))
    value = poly_integrate_sym(integrand)
    formula = l2_norm_sq_formula(n_plus_1, m)
    if value != formula:
        raise ArithmeticError(
            f"norm mismatch at (n+1={n_plus_1}, m={m}): {value} vs {formula}")
    return value


def l2_norm_sq_formula(n_plus_1: int, m: int) -> Fraction:
    n = n_plus_1 - 1
    return Fraction(2, 2 * n + 3) * Fraction(math.factorial(n + 1 + m),
                                             math.factorial(n + 1 - m))


@lru_cache(maxsize=None)
def _one_minus_t2_pow(m: int) -> Poly1:
    out = (Fraction(1),)
    for _ in range(m):
        out = poly_mul(out, ONE_MINUS_T2)
    return out


def cross_inner_product(n_plus_1: int, k_plus_1: int, m: int) -> Fraction:
    """Exact int_{-1}^{1} P^m_{n+1} P^m_{k+1} dt (zero when n != k)."""
    ga = assoc_legendre(n_plus_1, m).poly_part
    gb = assoc_legendre(k_plus_1, m).poly_part
    return poly_integrate_sym(poly_mul(poly_mul(ga, gb), _one_minus_t2_pow(m)))
