"""Solid spherical harmonics and the spherical monogenics X0_n, X^m_n, Y^m_n.

Each basis element exists in two independent representations that are
cross-validated against each other:

* the polynomial path: (1/2) Dbar applied to the exact solid harmonic of
  degree n+1, giving a homogeneous degree-n polynomial with rational
  coefficients (the source of truth);
* the trigonometric path: the A/B/C coefficient form in spherical angles,
  evaluated through the factored associated-Legendre representation so the
  1/sin(theta) factor in C is cancelled analytically and the poles are finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import legendre as leg
from .poly3 import QPolynomial, ScalarPoly, apply_D, apply_Dbar
from .quaternion import Quaternion

KINDS = ("X0", "X", "Y")

# r^2 as a polynomial; even powers of r in homogeneous extensions become
# powers of this.
_R2 = ScalarPoly({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


@dataclass(frozen=True)
class SphericalPoint:
    """Point in spherical coordinates; x0 = r cos(theta) is the polar axis."""

    theta: float
    phi: float
    r: float = 1.0

    def to_cartesian(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (self.r * math.cos(self.theta),
                self.r * st * math.cos(self.phi),
                self.r * st * math.sin(self.phi))

    @classmethod
    def from_cartesian(cls, x0: float, x1: float, x2: float) -> "SphericalPoint":
        r = math.sqrt(x0 * x0 + x1 * x1 + x2 * x2)
        if r == 0.0:
            raise ValueError("origin has no spherical angles")
        theta = math.acos(max(-1.0, min(1.0, x0 / r)))
        phi = math.atan2(x2, x1) % (2.0 * math.pi)
        return cls(theta, phi if phi else 2.0 * math.pi, r)


@lru_cache(maxsize=None)
def _complex_pow(m: int) -> tuple[ScalarPoly, ScalarPoly]:
    """(Re, Im) of (x1 + i x2)^m, i.e. rho^m cos(m phi) and rho^m sin(m phi)."""
    re: dict = {}
    im: dict = {}
    for j in range(m + 1):
        c = Fraction(math.comb(m, j))
        e = (0, m - j, j)
        if j % 2 == 0:
            re[e] = c * (-1) ** (j // 2)
        else:
            im[e] = c * (-1) ** ((j - 1) // 2)
    return ScalarPoly(re), ScalarPoly(im)


@lru_cache(maxsize=None)
def solid_harmonic(n_plus_1: int, m: int, kind: str = "U") -> QPolynomial:
    """Homogeneous degree-(n+1) extension r^{n+1} U^m_{n+1} (or V^m_{n+1}).

    With t = x0/r the radial factors pair with the Legendre parity so only
    even powers of r remain:
        r^{n+1} P^m_{n+1}(x0/r) cos(m phi)
           = Re[(x1+ix2)^m] * sum_k g_k x0^k (r^2)^{(n+1-m-k)/2},
    g = d^m P_{n+1}.  Exact rational coefficients; harmonic by construction.
    """
    if kind not in ("U", "V"):
        raise ValueError(f"kind must be U or V, got {kind!r}")
    if kind == "V" and m < 1:
        raise ValueError("V-harmonics need m >= 1")
    g = leg.assoc_legendre(n_plus_1, m).poly_part
    base = ScalarPoly()
    for k, q in enumerate(g):
        if not q:
            continue
        rem = n_plus_1 - m - k
        if rem % 2:
            raise AssertionError("Legendre parity violated")
        term = ScalarPoly.monomial((k, 0, 0), q) * (_R2 ** (rem // 2))
        base = base + term
    if m == 0:
        return QPolynomial.from_scalar(base)
    re, im = _complex_pow(m)
    return QPolynomial.from_scalar((re if kind == "U" else im) * base)


@dataclass(frozen=True)
class MonogenicBasisElement:
    """One member of the degree-n family {X0_n, X^m_n, Y^m_n}.

    ``solid`` is the homogeneous degree-n polynomial r^n X(...) with exact
    rational coefficients; restricting it to |x| = 1 gives the spherical
    monogenic itself.
    """

    n: int
    kind: str
    m: int
    solid: QPolynomial

    def label(self) -> str:
        return f"X{self.n}^0" if self.kind == "X0" else f"{self.kind}{self.n}^{self.m}"

    def value(self, x0, x1, x2) -> Quaternion:
        return self.solid(x0, x1, x2)

    def value_float(self, x0: float, x1: float, x2: float) -> Quaternion:
        return self.solid.eval_float(x0, x1, x2)

    def trig_value(self, theta: float, phi: float) -> Quaternion:
        """Evaluate on the unit sphere through the A/B/C coefficient form."""
        a, b, c = trig_coefficients(self.n, self.m, theta)
        cm, sm = math.cos(self.m * phi), math.sin(self.m * phi)
        cp, sp = math.cos(phi), math.sin(phi)
        if self.kind == "X0":
            return Quaternion(a, b * cp, b * sp, 0.0)
        if self.kind == "X":
            return Quaternion(a * cm,
                              b * cp * cm - c * sp * sm,
                              b * sp * cm + c * cp * sm, 0.0)
        return Quaternion(a * sm,
                          b * cp * sm + c * sp * cm,
                          b * sp * sm - c * cp * cm, 0.0)


def trig_coefficients(n: int, m: int, theta: float) -> tuple[float, float, float]:
    """A^{m,n}, B^{m,n}, C^{m,n} at theta, via the factored Legendre form.

    Writing P^m_{n+1}(t) = s^m g(t) with s = sin(theta), t = cos(theta):
        sin(theta) * dP/dt = s^{m-1} (s^2 g' - m t g)   (finite for m >= 1),
        C = (m/2) s^{m-1} g(t)                          (pole-free).
    For m = 0 the derivative is g' directly and C is not used.
    """
    t, s = math.cos(theta), math.sin(theta)
    al = leg.assoc_legendre(n + 1, m)
    g = leg.poly_eval_float(al.poly_part, t)
    gp = leg.poly_eval_float(al.poly_part_derivative(), t)
    if m == 0:
        p = g
        dp = gp
        a = 0.5 * (s * s * dp + (n + 1) * t * p)
        b = 0.5 * (s * t * dp - (n + 1) * s * p)
        return a, b, 0.0
    sm1 = s ** (m - 1)
    p = sm1 * s * g
    s_dp = sm1 * (s * s * gp - m * t * g)  # sin(theta) * dP/dt
    a = 0.5 * (s * s_dp + (n + 1) * t * p)
    b = 0.5 * (t * s_dp - (n + 1) * s * p)
    c = 0.5 * m * sm1 * g
    return a, b, c


@lru_cache(maxsize=None)
def spherical_monogenic(n: int, m: int = 0, kind: str = "X0") -> MonogenicBasisElement:
    """Construct r^n X0_n / r^n X^m_n / r^n Y^m_n as (1/2) Dbar of a solid harmonic."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if n < 0:
        raise ValueError(f"negative degree {n}")
    if kind == "X0":
        if m not in (0, None):
            raise ValueError("X0 carries no order m")
        sh = solid_harmonic(n + 1, 0, "U")
        m = 0
    else:
        if not 1 <= m <= n + 1:
            raise ValueError(f"order m={m} outside 1..{n + 1}")
        sh = solid_harmonic(n + 1, m, "U" if kind == "X" else "V")
    solid = apply_Dbar(sh).scale(Fraction(1, 2))
    return MonogenicBasisElement(n, kind, m, solid)


def basis_family(n: int) -> list[MonogenicBasisElement]:
    """The 2n+3 degree-n elements, ordered X0, X^1..X^{n+1}, Y^1..Y^{n+1}."""
    family = [spherical_monogenic(n, 0, "X0")]
    family.extend(spherical_monogenic(n, m, "X") for m in range(1, n + 2))
    family.extend(spherical_monogenic(n, m, "Y") for m in range(1, n + 2))
    return family


def family_keys(n: int) -> list[tuple[int, int, str]]:
    keys = [(n, 0, "X0")]
    keys.extend((n, m, "X") for m in range(1, n + 2))
    keys.extend((n, m, "Y") for m in range(1, n + 2))
    return keys


def modulus_bound(n: int, m: int, kind: str) -> float:
    """Pointwise upper bound for |X^m_n| (and Y^m_n) on the unit sphere."""
    if kind == "X0":
        return (n + 1) * 2**n * math.sqrt(math.pi * (n + 1) / (2 * n + 3))
    ratio = Fraction(math.factorial(n + 1 + m), math.factorial(n + 1 - m))
    return (n + 1) * 2**n * math.sqrt(0.5 * math.pi * (n + 1) / (2 * n + 3)
                                      * float(ratio))


def pointwise_bound_check(n: int, m: int, kind: str, samples) -> float:
    """Worst margin bound - |value| over unit-sphere samples (>= 0: bound holds)."""
    el = spherical_monogenic(n, m, kind)
    bound = modulus_bound(n, m, kind)
    worst = math.inf
    for x0, x1, x2 in samples:
        margin = bound - el.value_float(x0, x1, x2).norm()
        if margin < worst:
            worst = margin
    return worst
