"""Orthonormal basis, Fourier decomposition, and real-part coefficient recovery.

The degree-n family {X0_n, X^m_n, Y^m_n} normalized in L2(S) and weighted by
sqrt(2n+3) r^n is orthonormal in L2(B); a monogenic A-valued f splits as
f = f(0) + f1 + f2 where f1 collects the orders m <= n and f2 the top orders
m = n+1.  Coefficients of f1 are recoverable from Re(f) on S, and those of f2
from Re(f e1), because Re(X_n^{n+1}) vanishes identically.  The e1-twisted
real parts are not fully orthogonal within a degree (the m = n-1 twist
overlaps the m = n+1 one), so the top-order recovery subtracts that exactly
known contamination; see coeffs_from_real_part.

Exactness convention: a basis norm is sqrt(q * pi) with q rational, so the
paper-style normalized coefficients alpha are irrational multiples of the
rational data.  Internally each coefficient is therefore stored in the
*unnormalized* scale (`scaled`, the multiplier of the solid polynomial r^n X),
which is exact on the exact path; `alpha` is the derived float in the
orthonormal convention used for reporting and comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import spherical
from .integrate import (ExactSphereValue, QuadratureRule, evaluate_qpoly,
                        inner_product_exact)
from .poly3 import QPolynomial, ScalarPoly, apply_D
from .quaternion import ReducedQuaternion
from .spherical import MonogenicBasisElement

Key = tuple[int, int, str]  # (n, m, kind); m = 0 for kind "X0"


class NonMonogenicError(ValueError):
    """Input to a projection was not (exactly) monogenic."""

    def __init__(self, residual: float):
        super().__init__(f"input is not monogenic; |D f| residual norm {residual:.3e}")
        self.residual = residual


# ---------------------------------------------------------------------------
# Closed-form norms (rational coefficients of pi).

def x_norm_sq(n: int, m: int) -> Fraction:
    """||X^m_n||^2 / pi (equal for Y^m_n): n+1 at m=0, else (n+1)(n+1+m)!/(2(n+1-m)!)."""
    if m == 0:
        return Fraction(n + 1)
    return Fraction((n + 1) * math.factorial(n + 1 + m), 2 * math.factorial(n + 1 - m))


def re_x_norm_sq(n: int, m: int) -> Fraction:
    """||Re X^m_n||^2 / pi (equal for Y). Zero at m = n+1: Re(X_n^{n+1}) == 0,
    consistent with reading 1/(n-m)! through the Gamma limit."""
    if m == 0:
        return Fraction((n + 1) ** 2, 2 * n + 1)
    if m == n + 1:
        return Fraction(0)
    return Fraction((n + 1 + m) * math.factorial(n + 1 + m),
                    2 * (2 * n + 1) * math.factorial(n - m))


def re_e1_twist_norm_sq(n: int, kind: str = "X") -> Fraction:
    """||Re(X_n^{n+1} e1)||^2 / pi (and the Y variant).

    For n >= 1 both kinds give (n+1)(2n+2)!/4.  At n = 0 the phi-average
    degenerates (cos(0*phi) == 1, sin(0*phi) == 0) and the exact values are
    1 for X and 0 for Y; the closed form does not cover this case.
    """
    if n == 0:
        return Fraction(1) if kind == "X" else Fraction(0)
    return Fraction((n + 1) * math.factorial(2 * n + 2), 4)


def coefficient_keys(max_degree: int) -> Iterable[Key]:
    """All (n, m, kind) coefficient slots of the f1 + f2 expansion, n >= 1."""
    for n in range(1, max_degree + 1):
        for key in spherical.family_keys(n):
            yield key


# ---------------------------------------------------------------------------
# Normalized basis.

@dataclass(frozen=True)
class NormalizedBasisElement:
    """Basis element with its exact L2(S) norm; norm^2 = norm_sq.coeff * pi."""

    element: MonogenicBasisElement
    norm_sq: ExactSphereValue

    @property
    def key(self) -> Key:
        e = self.element
        return (e.n, e.m, e.kind)

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_sq.to_float())

    def alpha_from_scaled(self, scaled) -> float:
        """Convert an unnormalized-scale coefficient to the orthonormal alpha."""
        n = self.element.n
        return float(scaled) * math.sqrt(self.norm_sq.to_float() / (2 * n + 3))

    def scaled_from_alpha(self, alpha: float) -> float:
        n = self.element.n
        return alpha * math.sqrt((2 * n + 3) / self.norm_sq.to_float())


class NormalizedBasis:
    """Families 0..max_degree with exact norms, plus Gram verification helpers."""

    def __init__(self, max_degree: int):
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        self.max_degree = max_degree
        self.families: dict[int, list[NormalizedBasisElement]] = {}
        for n in range(max_degree + 1):
            fam = []
            for el in spherical.basis_family(n):
                fam.append(NormalizedBasisElement(el, inner_product_exact(el.solid, el.solid)))
            self.families[n] = fam
        self._by_key = {nb.key: nb for fam in self.families.values() for nb in fam}

    def degree(self, n: int) -> list[NormalizedBasisElement]:
        return self.families[n]

    def get(self, key: Key) -> NormalizedBasisElement:
        return self._by_key[key]

    def __iter__(self):
        for n in range(self.max_degree + 1):
            yield from self.families[n]

    def gram_entries(self, n: int) -> list[list[ExactSphereValue]]:
        """Exact L2(S) inner products of the raw degree-n family."""
        fam = self.families[n]
        size = len(fam)
        out = [[None] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                v = (fam[i].norm_sq if i == j
                     else inner_product_exact(fam[i].element.solid, fam[j].element.solid))
                out[i][j] = out[j][i] = v
        return out

    def gram_is_identity(self, n: int) -> bool:
        """Exact check that the normalized degree-n Gram is the identity.

        Off-diagonal: the raw inner product must be exactly zero (dividing by
        the irrational norms cannot change that).  Diagonal: <X, X>/||X||^2 is
        the rational 1 by construction, so only positivity needs checking.
        """
        entries = self.gram_entries(n)
        for i, row in enumerate(entries):
            for j, v in enumerate(row):
                if i == j:
                    if v.coeff <= 0:
                        return False
                elif not v.is_zero():
                    return False
        return True

    def ball_gram_is_identity(self, n: int) -> bool:
        """Identity Gram in L2(B) for {sqrt(2n+3) r^n X*}: the radial factor
        int_0^1 r^{2n+2} dr = 1/(2n+3) cancels the weight exactly."""
        weight_times_radial = Fraction(2 * n + 3) * Fraction(1, 2 * n + 3)
        return weight_times_radial == 1 and self.gram_is_identity(n)

    def cross_degree_orthogonal(self, n: int, k: int) -> bool:
        """Exact zero inner products between degree-n and degree-k families."""
        for a in self.families[n]:
            for b in self.families[k]:
                if not inner_product_exact(a.element.solid, b.element.solid).is_zero():
                    return False
        return True


def normalize_basis(max_degree: int) -> NormalizedBasis:
    return NormalizedBasis(max_degree)


# ---------------------------------------------------------------------------
# Fourier coefficients.

@dataclass
class Coefficient:
    alpha: float
    scaled: object  # Fraction on the exact path, float on quadrature paths


@dataclass
class FourierCoefficients:
    """Expansion data of Eq-(19) form: value at the origin plus per-key scalars."""

    f0: ReducedQuaternion
    max_degree: int
    entries: dict[Key, Coefficient] = field(default_factory=dict)

    def alpha(self, n: int, m: int, kind: str) -> float:
        c = self.entries.get((n, m, kind))
        return c.alpha if c else 0.0

    def scaled(self, n: int, m: int, kind: str):
        c = self.entries.get((n, m, kind))
        return c.scaled if c else Fraction(0)

    def keys(self):
        return list(coefficient_keys(self.max_degree))

    def max_alpha_diff(self, other: "FourierCoefficients") -> float:
        keys = set(self.entries) | set(other.entries)
        worst = 0.0
        for k in keys:
            worst = max(worst, abs(self.alpha(*k) - other.alpha(*k)))
        return worst

    def f1_f2_split(self) -> tuple[list[Key], list[Key]]:
        """f1 collects m <= n (including m=0); f2 the top orders m = n+1."""
        f1 = [k for k in self.entries if k[1] <= k[0]]
        f2 = [k for k in self.entries if k[1] == k[0] + 1]
        return f1, f2


def synthesize(coeffs: FourierCoefficients, basis: NormalizedBasis) -> QPolynomial:
    """Materialize f = f(0) + sum scaled * (r^n X) as an exact polynomial.

    Float coefficients are rationalized (binary64 -> Fraction, exact), so the
    result is always an exact rational polynomial and exactly monogenic.
    """
    if coeffs.max_degree > basis.max_degree:
        raise ValueError("coefficient degree exceeds basis degree")
    f0 = coeffs.f0
    comps = [ScalarPoly.constant(Fraction(f0.x0)), ScalarPoly.constant(Fraction(f0.x1)),
             ScalarPoly.constant(Fraction(f0.x2)), ScalarPoly.zero()]
    out = QPolynomial(comps)
    for key, c in sorted(coeffs.entries.items()):
        if not c.scaled:
            continue
        solid = basis.get(key).element.solid
        out = out + solid.scale(Fraction(c.scaled))
    return out


def _check_projectable(f: QPolynomial, basis: NormalizedBasis) -> None:
    if not f.is_a_valued():
        raise ValueError("polynomial is not A-valued (nonzero e3 component)")
    if f.degree() > basis.max_degree:
        raise ValueError(f"degree {f.degree()} exceeds basis degree {basis.max_degree}")
    df = apply_D(f)
    if not df.is_zero():
        residual = math.sqrt(max(inner_product_exact(df, df).to_float(), 0.0))
        raise NonMonogenicError(residual)


def project(f: QPolynomial, basis: NormalizedBasis,
            rule: QuadratureRule | None = None) -> FourierCoefficients:
    """Orthogonal projection of a monogenic A-valued polynomial onto the basis.

    Exact path (rule=None): scaled = <X, f_n> / ||X||^2 in rational arithmetic,
    so synthesize(project(f)) == f exactly.  Quadrature path: the same inner
    products via the rule.
    """
    _check_projectable(f, basis)
    c0 = f(0, 0, 0)
    f0 = ReducedQuaternion(c0.a0, c0.a1, c0.a2)
    out = FourierCoefficients(f0=f0, max_degree=basis.max_degree)
    if rule is not None:
        pts = rule.points()
        fv = evaluate_qpoly(f, pts)
    for n in range(1, basis.max_degree + 1):
        f_n = f.homogeneous_part(n)
        if f_n.is_zero() and rule is None:
            continue
        for nb in basis.degree(n):
            if rule is None:
                ip = inner_product_exact(nb.element.solid, f_n)
                scaled = ip.coeff / nb.norm_sq.coeff
            else:
                xv = evaluate_qpoly(nb.element.solid, pts)
                ip = rule.integrate(np.einsum("ij,ij->i", xv, fv))
                scaled = ip / nb.norm_sq.to_float()
            if scaled:
                out.entries[nb.key] = Coefficient(nb.alpha_from_scaled(scaled), scaled)
    return out


# ---------------------------------------------------------------------------
# Lemma-4.4 style recovery from real-part boundary data.

Sampler = Callable[[float, float], float]


def _sample_real(sampler, rule: QuadratureRule) -> np.ndarray:
    n = rule.node_count
    if isinstance(sampler, np.ndarray) or isinstance(sampler, (list, tuple)):
        arr = np.asarray(sampler, dtype=float)
        if arr.shape != (n,):
            raise ValueError(f"expected {n} node samples, got shape {arr.shape}")
        return arr
    theta, phi = rule.angles()
    return np.array([float(sampler(theta[i], phi[i])) for i in range(n)])


def twist_overlap(basis: NormalizedBasis, low: Key, top: Key) -> ExactSphereValue:
    """Exact <Re(X_low e1), Re(X_top e1)> on S; Re(X e1) = -(e1 component)."""
    a = basis.get(low).element.solid.components[1]
    b = basis.get(top).element.solid.components[1]
    from .integrate import scalar_inner_product_exact
    return scalar_inner_product_exact(a, b)  # the two minus signs cancel


def coeffs_from_real_part(re_f, re_fe1, basis: NormalizedBasis,
                          rule: QuadratureRule, f0_e2: float = 0.0,
                          literal: bool = False) -> FourierCoefficients:
    """Recover all Fourier coefficients from Re(f) and Re(f e1) sampled on S.

    For m <= n:   sqrt(2n+3) alpha = (||X|| / ||Re X||^2) int_S Re(f) Re(X);
    for m = n+1 the e1-twisted versions with Re(f e1) and Re(X e1).  In the
    unnormalized scale both collapse to scaled = integral / ||Re X||^2.

    The nominal m = n+1 formulas assume the twisted real parts of the lower
    orders are orthogonal to Re(X_n^{n+1} e1); measured exactly, that fails
    at m = n-1 (e.g. <Re(X_1^0 e1), Re(X_1^2 e1)> = -2 pi), so the top-order
    integrals are decontaminated by subtracting the exactly-known overlap of
    the already-recovered m <= n part.  ``literal=True`` skips the correction
    and reproduces the nominal formulas verbatim, for measuring the defect.

    The origin value comes from the harmonic mean-value property:
    f0 = mean(Re f), f1 = -mean(Re(f e1)).  The e2 component of f(0) is not
    observable from these two samplers (f == c*e2 nulls both); it is taken
    from the optional f0_e2 argument.
    """
    rule.check_resolution(2 * basis.max_degree)
    re_f = _sample_real(re_f, rule)
    re_fe1 = _sample_real(re_fe1, rule)
    pts = rule.points()
    area = 4.0 * math.pi

    f0 = ReducedQuaternion(rule.integrate(re_f) / area,
                           -rule.integrate(re_fe1) / area,
                           f0_e2)
    out = FourierCoefficients(f0=f0, max_degree=basis.max_degree)
    for n in range(1, basis.max_degree + 1):
        low_keys = []
        for nb in basis.degree(n):
            _, m, kind = nb.key
            if m > n:
                continue
            vals = evaluate_qpoly(nb.element.solid, pts)
            integral = rule.integrate(re_f * vals[:, 0])
            scaled = integral / (float(re_x_norm_sq(n, m)) * math.pi)
            out.entries[nb.key] = Coefficient(nb.alpha_from_scaled(scaled), scaled)
            low_keys.append(nb.key)
        for nb in basis.degree(n):
            _, m, kind = nb.key
            if m <= n:
                continue
            vals = evaluate_qpoly(nb.element.solid, pts)
            integral = rule.integrate(re_fe1 * (-vals[:, 1]))
            if not literal:
                for low in low_keys:
                    overlap = twist_overlap(basis, low, nb.key)
                    if not overlap.is_zero():
                        integral -= out.entries[low].scaled * overlap.to_float()
            denom = re_e1_twist_norm_sq(n, kind)
            scaled = integral / (float(denom) * math.pi)
            out.entries[nb.key] = Coefficient(nb.alpha_from_scaled(scaled), scaled)
    return out


def boundary_samples(f: QPolynomial, rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    """Node-ordered Re(f) and Re(f e1) arrays for a polynomial boundary trace."""
    vals = evaluate_qpoly(f, rule.points())
    return vals[:, 0].copy(), -vals[:, 1].copy()
