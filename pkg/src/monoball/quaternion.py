"""Real quaternion algebra H and the reduced-quaternion subspace A = span{1, e1, e2}.

Components are whatever scalar type the caller supplies (int, Fraction, float),
so the same classes serve both the exact-rational identity checks and the
floating-point quadrature paths.  Conversion from exact to float is always
explicit (``to_float``), never implicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# e_i * e_j -> (k, sign): rows i, columns j.  Generated by e1*e2 = e3 together
# with e_i*e_j + e_j*e_i = -2*delta_ij for i, j in {1, 2, 3}.
UNIT_TABLE = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, 1), (0, -1), (3, 1), (2, -1)),
    ((2, 1), (3, -1), (0, -1), (1, 1)),
    ((3, 1), (2, 1), (1, -1), (0, -1)),
)


def unit_mul(i: int, j: int) -> tuple[int, int]:
    """Product of basis units: e_i * e_j = sign * e_k, returned as (k, sign)."""
    return UNIT_TABLE[i][j]


@dataclass(frozen=True)
class Quaternion:
    """Element a0 + a1*e1 + a2*e2 + a3*e3 of H."""

    a0: object = 0
    a1: object = 0
    a2: object = 0
    a3: object = 0

    def components(self):
        return (self.a0, self.a1, self.a2, self.a3)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # other is a scalar (Quaternion * Quaternion is handled by __mul__).
        return self.scale(other)

    def scale(self, s) -> "Quaternion":
        return Quaternion(s * self.a0, s * self.a1, s * self.a2, s * self.a3)

    def conj(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    @property
    def re(self):
        return self.a0

    def vec(self) -> "Quaternion":
        return Quaternion(0 * self.a0, self.a1, self.a2, self.a3)

    def norm_sq(self):
        """|a|^2, exact when the components are exact."""
        return (self.a0 * self.a0 + self.a1 * self.a1
                + self.a2 * self.a2 + self.a3 * self.a3)

    def norm(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    __abs__ = norm

    def is_zero(self) -> bool:
        return not any(self.components())

    def to_float(self) -> "Quaternion":
        return Quaternion(*(float(c) for c in self.components()))


ONE = Quaternion(1, 0, 0, 0)
E1 = Quaternion(0, 1, 0, 0)
E2 = Quaternion(0, 0, 1, 0)
E3 = Quaternion(0, 0, 0, 1)
UNITS = (ONE, E1, E2, E3)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Quaternion product via the basis multiplication table."""
    out = [0, 0, 0, 0]
    ac = a.components()
    bc = b.components()
    for i in range(4):
        ai = ac[i]
        if not ai:
            continue
        row = UNIT_TABLE[i]
        for j in range(4):
            bj = bc[j]
            if not bj:
                continue
            k, sign = row[j]
            out[k] = out[k] + (ai * bj if sign > 0 else -(ai * bj))
    return Quaternion(*out)


def conj(a: Quaternion) -> Quaternion:
    return a.conj()


def norm(a: Quaternion) -> float:
    return a.norm()


def re(a: Quaternion):
    return a.re


def vec(a: Quaternion) -> Quaternion:
    return a.vec()


@dataclass(frozen=True)
class ReducedQuaternion:
    """Element x0 + x1*e1 + x2*e2 of A.

    A is a real subspace of H but not a subalgebra: products of reduced
    quaternions are general quaternions, so multiplication returns Quaternion.
    """

    x0: object = 0
    x1: object = 0
    x2: object = 0

    def components(self):
        return (self.x0, self.x1, self.x2)

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.x0, self.x1, self.x2, 0)

    @classmethod
    def from_quaternion(cls, a: Quaternion) -> "ReducedQuaternion":
        if a.a3:
            raise ValueError(f"e3-component {a.a3!r} is nonzero; not in A")
        return cls(a.a0, a.a1, a.a2)

    def __add__(self, other: "ReducedQuaternion") -> "ReducedQuaternion":
        return ReducedQuaternion(self.x0 + other.x0, self.x1 + other.x1,
                                 self.x2 + other.x2)

    def __neg__(self) -> "ReducedQuaternion":
        return ReducedQuaternion(-self.x0, -self.x1, -self.x2)

    def __mul__(self, other) -> Quaternion:
        if isinstance(other, (ReducedQuaternion, Quaternion)):
            b = other.to_quaternion() if isinstance(other, ReducedQuaternion) else other
            return mul(self.to_quaternion(), b)
        return Quaternion(other * self.x0, other * self.x1, other * self.x2, 0)

    def norm_sq(self):
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2

    def norm(self) -> float:
        return math.sqrt(float(self.norm_sq()))

    def to_float(self) -> "ReducedQuaternion":
        return ReducedQuaternion(*(float(c) for c in self.components()))


def from_point(x0, x1, x2) -> ReducedQuaternion:
    """Embed a point of R^3 as the reduced quaternion x0 + x1*e1 + x2*e2."""
    return ReducedQuaternion(x0, x1, x2)


def random_rational_quaternion(rng, max_num: int = 50, den: int = 17) -> Quaternion:
    """Random quaternion with small exact rational components (test helper)."""
    return Quaternion(*(Fraction(rng.randint(-max_num, max_num), den)
                        for _ in range(4)))
