"""Integration over the unit sphere S^2: exact monomial calculus and quadrature.

Exact values are rational multiples of pi and stay symbolic (ExactSphereValue);
pi is never multiplied in numerically on the exact path.  The quadrature rule
is Gauss-Legendre in t = cos(theta) crossed with equispaced phi nodes, which is
exact (to roundoff) for polynomial-in-t times e^{i k phi} integrands within its
declared resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .legendre import double_factorial
from .poly3 import QPolynomial, ScalarPoly


class QuadratureResolutionError(ValueError):
    """Raised when a rule cannot integrate the declared degree class exactly."""


@dataclass(frozen=True)
class ExactSphereValue:
    """An exact sphere integral, represented as coeff * pi."""

    coeff: Fraction

    def __add__(self, other: "ExactSphereValue") -> "ExactSphereValue":
        return ExactSphereValue(self.coeff + other.coeff)

    def __sub__(self, other: "ExactSphereValue") -> "ExactSphereValue":
        return ExactSphereValue(self.coeff - other.coeff)

    def __mul__(self, s) -> "ExactSphereValue":
        if isinstance(s, float):
            raise TypeError("scale ExactSphereValue by rationals only")
        return ExactSphereValue(self.coeff * Fraction(s))

    __rmul__ = __mul__

    def __neg__(self) -> "ExactSphereValue":
        return ExactSphereValue(-self.coeff)

    def is_zero(self) -> bool:
        return not self.coeff

    def to_float(self) -> float:
        return float(self.coeff) * math.pi

    def __repr__(self):
        return f"({self.coeff})*pi"


ZERO = ExactSphereValue(Fraction(0))


@lru_cache(maxsize=None)
def _monomial_coeff(a: int, b: int, c: int) -> Fraction:
    if a % 2 or b % 2 or c % 2:
        return Fraction(0)
    num = 4 * double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1)
    return Fraction(num, double_factorial(a + b + c + 1))


def monomial_integral(a: int, b: int, c: int) -> ExactSphereValue:
    """int_{S^2} w0^a w1^b w2^c dsigma; zero unless all exponents are even."""
    if a < 0 or b < 0 or c < 0:
        raise ValueError("negative exponent")
    return ExactSphereValue(_monomial_coeff(a, b, c))


def _parity_buckets(p: ScalarPoly):
    out: dict[tuple[int, int, int], list] = {}
    for e, c in p.terms.items():
        out.setdefault((e[0] & 1, e[1] & 1, e[2] & 1), []).append((e, c))
    return out


def scalar_inner_product_exact(p: ScalarPoly, q: ScalarPoly) -> ExactSphereValue:
    """Exact int_{S^2} p q dsigma via termwise monomial integrals.

    Terms are bucketed by exponent parity first: a product integrates to a
    nonzero value only when both factors share the same parity class.
    """
    total = Fraction(0)
    bq = _parity_buckets(q)
    for key, terms in _parity_buckets(p).items():
        others = bq.get(key)
        if not others:
            continue
        for (a1, b1, c1), co1 in terms:
            for (a2, b2, c2), co2 in others:
                total += co1 * co2 * _monomial_coeff(a1 + a2, b1 + b2, c1 + c2)
    return ExactSphereValue(total)


def inner_product_exact(f: QPolynomial, g: QPolynomial) -> ExactSphereValue:
    """Exact real inner product <f, g> = int_S Re(conj(f) g) dsigma.

    Re(conj(f) g) collapses to the componentwise sum f0 g0 + f1 g1 + f2 g2 + f3 g3.
    """
    total = ZERO
    for fc, gc in zip(f.components, g.components):
        if fc.is_zero() or gc.is_zero():
            continue
        total = total + scalar_inner_product_exact(fc, gc)
    return total


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor rule: n_theta Gauss-Legendre nodes in t, n_phi equispaced phi nodes.

    Node ordering is theta-major (all phi for the first t node, then the next),
    and integration sums in that fixed order with compensated summation, so
    results are reproducible bit-for-bit.
    """

    n_theta: int
    n_phi: int

    @classmethod
    def for_degree(cls, degree: int) -> "QuadratureRule":
        """Rule that integrates products of two degree<=N restrictions exactly."""
        return cls(degree + 2, 2 * degree + 4)

    @property
    def node_count(self) -> int:
        return self.n_theta * self.n_phi

    def t_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        return _leggauss(self.n_theta)

    def phi_nodes(self) -> np.ndarray:
        # phi in (0, 2pi]; trapezoid on the periodic circle.
        return 2.0 * math.pi * (np.arange(self.n_phi) + 1) / self.n_phi

    def angles(self) -> tuple[np.ndarray, np.ndarray]:
        """(theta, phi) arrays of length node_count, theta-major order."""
        t, _ = self.t_nodes()
        theta = np.arccos(t)
        phi = self.phi_nodes()
        return (np.repeat(theta, self.n_phi), np.tile(phi, self.n_theta))

    def points(self) -> np.ndarray:
        """Unit-sphere nodes, shape (node_count, 3), theta-major order."""
        t, _ = self.t_nodes()
        s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
        phi = self.phi_nodes()
        x0 = np.repeat(t, self.n_phi)
        x1 = np.repeat(s, self.n_phi) * np.tile(np.cos(phi), self.n_theta)
        x2 = np.repeat(s, self.n_phi) * np.tile(np.sin(phi), self.n_theta)
        return np.column_stack([x0, x1, x2])

    def weights(self) -> np.ndarray:
        _, w = self.t_nodes()
        return np.repeat(w, self.n_phi) * (2.0 * math.pi / self.n_phi)

    def integrate(self, values: np.ndarray) -> float:
        """Integrate node-ordered samples; fsum in fixed index order."""
        values = np.asarray(values, dtype=float)
        if values.shape != (self.node_count,):
            raise ValueError(f"expected {self.node_count} node values, got {values.shape}")
        return math.fsum(values * self.weights())

    def check_resolution(self, degree: int) -> None:
        """Signal if an integrand of combined polynomial degree exceeds the rule."""
        if 2 * self.n_theta - 1 < degree or self.n_phi <= degree:
            raise QuadratureResolutionError(
                f"rule ({self.n_theta},{self.n_phi}) below combined degree {degree}")


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def evaluate_qpoly(p: QPolynomial, points: np.ndarray) -> np.ndarray:
    """Vectorized float evaluation: (N, 3) points -> (N, 4) component values."""
    pts = np.asarray(points, dtype=float)
    out = np.zeros((pts.shape[0], 4))
    for comp, poly in enumerate(p.components):
        for (i, j, k), c in poly.terms.items():
            out[:, comp] += float(c) * pts[:, 0]**i * pts[:, 1]**j * pts[:, 2]**k
    return out


def evaluate_scalar(p: ScalarPoly, points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    out = np.zeros(pts.shape[0])
    for (i, j, k), c in p.terms.items():
        out += float(c) * pts[:, 0]**i * pts[:, 1]**j * pts[:, 2]**k
    return out


def _sample(f, rule: QuadratureRule) -> np.ndarray:
    """Sample a boundary function to an (N, 4) array of quaternion components.

    Accepts an ndarray of shape (N,) (real-valued) or (N, 4), a QPolynomial,
    or a callable (theta, phi) -> Quaternion-like / float.
    """
    n = rule.node_count
    if isinstance(f, QPolynomial):
        return evaluate_qpoly(f, rule.points())
    if isinstance(f, np.ndarray) or isinstance(f, (list, tuple)):
        arr = np.asarray(f, dtype=float)
        if arr.shape == (n,):
            out = np.zeros((n, 4))
            out[:, 0] = arr
            return out
        if arr.shape == (n, 4):
            return arr
        raise ValueError(f"sampler array shape {arr.shape} does not match rule ({n} nodes)")
    theta, phi = rule.angles()
    out = np.zeros((n, 4))
    for idx in range(n):
        v = f(theta[idx], phi[idx])
        if isinstance(v, (int, float)):
            out[idx, 0] = v
        else:
            comps = v.components() if hasattr(v, "components") else v
            comps = list(comps)
            comps += [0.0] * (4 - len(comps))
            out[idx] = comps
    return out


def inner_product_quad(f, g, rule: QuadratureRule,
                       f_degree: int | None = None,
                       g_degree: int | None = None) -> float:
    """Quadrature approximation of int_S Re(conj(f) g) dsigma.

    When both degrees are declared the rule is checked against its exactness
    class (t-degree <= 2 n_theta - 1, trigonometric phi-degree < n_phi) and a
    QuadratureResolutionError is raised if it falls short.
    """
    if f_degree is not None and g_degree is not None:
        rule.check_resolution(f_degree + g_degree)
    fv = _sample(f, rule)
    gv = _sample(g, rule)
    return rule.integrate(np.einsum("ij,ij->i", fv, gv))
