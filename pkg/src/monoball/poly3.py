"""Exact quaternion-valued polynomials in (x0, x1, x2).

Carries the generalized Cauchy-Riemann operator D = d/dx0 + e1 d/dx1 + e2 d/dx2,
its conjugate Dbar, and the Laplacian factorization Delta = D Dbar = Dbar D.
Coefficients are exact rationals throughout; floats appear only at evaluation
time and must be rationalized explicitly before entering a polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .quaternion import Quaternion, UNIT_TABLE

Exponents = tuple[int, int, int]


def _coerce(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError("float coefficient; rationalize explicitly with Fraction(x)")
    return c if isinstance(c, Fraction) else Fraction(c)


class ScalarPoly:
    """Sparse real polynomial in (x0, x1, x2): exponent triple -> Fraction.

    Instances are treated as immutable; all operations return new objects and
    canonical form stores no zero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, object] | None = None):
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "ScalarPoly":
        return cls()

    @classmethod
    def constant(cls, c) -> "ScalarPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, axis: int) -> "ScalarPoly":
        e = [0, 0, 0]
        e[axis] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Exponents, coeff=1) -> "ScalarPoly":
        return cls({tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ScalarPoly") -> "ScalarPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = out
        return p

    def __neg__(self) -> "ScalarPoly":
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: "ScalarPoly") -> "ScalarPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ScalarPoly):
            return self.scale(other)
        out: dict[Exponents, Fraction] = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2, k1 + k2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def scale(self, s) -> "ScalarPoly":
        s = _coerce(s)
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = {} if not s else {e: c * s for e, c in self.terms.items()}
        return p

    def __pow__(self, k: int) -> "ScalarPoly":
        if k < 0:
            raise ValueError("negative power")
        out = ScalarPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def diff(self, axis: int) -> "ScalarPoly":
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            n = e[axis]
            if n:
                e2 = list(e)
                e2[axis] = n - 1
                out[tuple(e2)] = c * n
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = out
        return p

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, n: int) -> bool:
        return all(sum(e) == n for e in self.terms) if self.terms else True

    def homogeneous_part(self, n: int) -> "ScalarPoly":
        p = ScalarPoly.__new__(ScalarPoly)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) == n}
        return p

    def __call__(self, x0, x1, x2):
        """Evaluate; exact for exact inputs, float for float inputs."""
        total = 0
        for (i, j, k), c in self.terms.items():
            total += c * x0**i * x1**j * x2**k
        return total

    def eval_float(self, x0: float, x1: float, x2: float) -> float:
        total = 0.0
        for (i, j, k), c in self.terms.items():
            total += float(c) * x0**i * x1**j * x2**k
        return total

    def __repr__(self):
        if not self.terms:
            return "ScalarPoly(0)"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(f"x{a}^{p}" for a, p in enumerate(e) if p)
            bits.append(f"{self.terms[e]}{'*' + mono if mono else ''}")
        return "ScalarPoly(" + " + ".join(bits) + ")"


class QPolynomial:
    """Quaternion-valued polynomial: four ScalarPoly components along 1, e1, e2, e3."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[ScalarPoly] | None = None):
        comps = tuple(components) if components is not None else ()
        if not comps:
            comps = (ScalarPoly(),) * 4
        if len(comps) != 4:
            raise ValueError("QPolynomial needs exactly 4 components")
        self.components = comps

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls()

    @classmethod
    def from_scalar(cls, p: ScalarPoly) -> "QPolynomial":
        return cls((p, ScalarPoly(), ScalarPoly(), ScalarPoly()))

    @classmethod
    def constant(cls, q: Quaternion) -> "QPolynomial":
        return cls(tuple(ScalarPoly.constant(c) if c else ScalarPoly()
                         for c in q.components()))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPolynomial) and self.components == other.components

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        return QPolynomial(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "QPolynomial") -> "QPolynomial":
        return QPolynomial(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(tuple(-c for c in self.components))

    def scale(self, s) -> "QPolynomial":
        return QPolynomial(tuple(c.scale(s) for c in self.components))

    def mul_left_unit(self, i: int) -> "QPolynomial":
        """e_i * p, multiplying each component by the basis table."""
        out = [ScalarPoly() for _ in range(4)]
        for j, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            k, sign = UNIT_TABLE[i][j]
            out[k] = out[k] + (comp if sign > 0 else -comp)
        return QPolynomial(out)

    def mul_right(self, q: Quaternion) -> "QPolynomial":
        """p * q for a constant quaternion q (H is non-commutative)."""
        out = [ScalarPoly() for _ in range(4)]
        qc = q.components()
        for j, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            for i in range(4):
                if not qc[i]:
                    continue
                k, sign = UNIT_TABLE[j][i]
                term = comp.scale(qc[i] if sign > 0 else -qc[i])
                out[k] = out[k] + term
        return QPolynomial(out)

    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def is_homogeneous(self, n: int) -> bool:
        return all(c.is_homogeneous(n) for c in self.components)

    def homogeneous_part(self, n: int) -> "QPolynomial":
        return QPolynomial(tuple(c.homogeneous_part(n) for c in self.components))

    def homogeneous_degrees(self) -> list[int]:
        degs = set()
        for c in self.components:
            degs.update(sum(e) for e in c.terms)
        return sorted(degs)

    def is_a_valued(self) -> bool:
        """True if the e3 component vanishes identically (values lie in A)."""
        return self.components[3].is_zero()

    def __call__(self, x0, x1, x2) -> Quaternion:
        return Quaternion(*(c(x0, x1, x2) for c in self.components))

    def eval_float(self, x0: float, x1: float, x2: float) -> Quaternion:
        return Quaternion(*(c.eval_float(x0, x1, x2) for c in self.components))

    def __repr__(self):
        return ("QPolynomial(" +
                ", ".join(repr(c) for c in self.components) + ")")


def _directional(p: QPolynomial, signs: tuple[int, int, int]) -> QPolynomial:
    """s0*d0 p + s1*e1*(d1 p) + s2*e2*(d2 p)."""
    out = QPolynomial(tuple(c.diff(0) for c in p.components)).scale(signs[0])
    for axis, unit in ((1, 1), (2, 2)):
        d = QPolynomial(tuple(c.diff(axis) for c in p.components))
        d = d.mul_left_unit(unit)
        out = out + (d if signs[axis] > 0 else -d)
    return out


def apply_D(p: QPolynomial) -> QPolynomial:
    """Generalized Cauchy-Riemann operator: d0 p + e1 (d1 p) + e2 (d2 p)."""
    return _directional(p, (1, 1, 1))


def apply_Dbar(p: QPolynomial) -> QPolynomial:
    """Conjugate operator: d0 p - e1 (d1 p) - e2 (d2 p)."""
    return _directional(p, (1, -1, -1))


def laplacian(p: QPolynomial) -> QPolynomial:
    """Delta p, computed componentwise as d00 + d11 + d22."""
    return QPolynomial(tuple(c.diff(0).diff(0) + c.diff(1).diff(1) + c.diff(2).diff(2)
                             for c in p.components))


def is_monogenic(p: QPolynomial) -> bool:
    """Exact left-monogenicity test: D p == 0."""
    return apply_D(p).is_zero()


def is_homogeneous(p: QPolynomial, n: int) -> bool:
    return p.is_homogeneous(n)


def evaluate(p: QPolynomial, point) -> Quaternion:
    x0, x1, x2 = point
    return p(x0, x1, x2)


def to_json_records(p: QPolynomial) -> list[dict]:
    """Canonical serialization: records sorted by (component, exponents)."""
    records = []
    for comp, poly in enumerate(p.components):
        for e in sorted(poly.terms):
            c = poly.terms[e]
            records.append({"component": comp, "exps": list(e),
                            "num": c.numerator, "den": c.denominator})
    records.sort(key=lambda r: (r["component"], r["exps"]))
    return records


def from_json_records(records: Iterable[Mapping]) -> QPolynomial:
    comps: list[dict[Exponents, Fraction]] = [{}, {}, {}, {}]
    for r in records:
        comps[r["component"]][tuple(r["exps"])] = Fraction(r["num"], r["den"])
    return QPolynomial(tuple(ScalarPoly(c) for c in comps))
