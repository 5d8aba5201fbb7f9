"""Coefficient inequalities and the Borel-Caratheodory-type growth bound.

For monogenic A-valued f on the unit ball and 0 <= r < 1/2 the proof-backed
series bound is

    max_{|x|=r} |f|  <=  |f(0)| + (1/2) ||Re f||_{L2(S)}  S1(2r)
                               +  3   ||Re(f e1)||_{L2(S)} S2(2r),

with S1(x) = sum x^n (n+1)(n+2)(2n+1) and S2(x) = sum x^n (n+1) over n >= 1.
The closed form |f(0)| + 4r/(2r-1)^2 (||Re f|| A1(r) + ||Re(f e1)|| A2(r)) is
computed alongside; its f2 part matches the series identically while its f1
part exceeds the series' by a constant factor, which certify() measures and
reports per radius rather than adjudicating.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fourier import (Coefficient, FourierCoefficients, NormalizedBasis,
                      coefficient_keys, project, re_e1_twist_norm_sq,
                      re_x_norm_sq, x_norm_sq)
from .integrate import QuadratureRule, evaluate_qpoly
from .poly3 import QPolynomial
from .quaternion import ReducedQuaternion

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def _thread_count() -> int:
    raw = os.environ.get("MONOBALL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _require_radius(r: float) -> None:
    if not 0.0 <= r < 0.5:
        raise ValueError(f"radius {r} outside [0, 1/2) (series diverges at 1/2)")


def a1(r: float) -> float:
    """Closed-form factor (3(3-4r) + 8r^2(2-r)) / (2r-1)^2."""
    _require_radius(r)
    return (3.0 * (3.0 - 4.0 * r) + 8.0 * r * r * (2.0 - r)) / (2.0 * r - 1.0) ** 2


def a2(r: float) -> float:
    """Closed-form factor 3(1-r)."""
    _require_radius(r)
    return 3.0 * (1.0 - r)


def f1_series_sum(r: float, tol: float = 1e-12) -> float:
    """sum_{n>=1} (2r)^n (n+1)(n+2)(2n+1), truncated by a geometric tail bound."""
    _require_radius(r)
    x = 2.0 * r
    if x == 0.0:
        return 0.0
    total = 0.0
    n = 1
    term = x * 2 * 3 * 3
    while True:
        total += term
        n += 1
        term = x**n * (n + 1) * (n + 2) * (2 * n + 1)
        # ratio of consecutive terms is below x*(n+2)(n+3)(2n+3)/((n+1)(n+2)(2n+1))
        growth = (n + 2) / (n + 1) * (2 * n + 3) / (2 * n + 1)
        q = x * growth
        if q < 1.0 and term / (1.0 - q) < tol:
            total += term
            return total
        if n > 20000:
            raise ArithmeticError("series truncation failed to converge")


def f2_series_sum(r: float, tol: float = 1e-12) -> float:
    """sum_{n>=1} (2r)^n (n+1), truncated by a geometric tail bound."""
    _require_radius(r)
    x = 2.0 * r
    if x == 0.0:
        return 0.0
    total = 0.0
    n = 1
    term = 2.0 * x
    while True:
        total += term
        n += 1
        term = x**n * (n + 1)
        q = x * (n + 2) / (n + 1)
        if q < 1.0 and term / (1.0 - q) < tol:
            total += term
            return total
        if n > 20000:
            raise ArithmeticError("series truncation failed to converge")


def rhs_series(r: float, re_norm: float, re_e1_norm: float, tol: float = 1e-12) -> float:
    """The |f(0)|-free series part: re_norm*S1/2 + 3*re_e1_norm*S2."""
    return 0.5 * re_norm * f1_series_sum(r, tol) + 3.0 * re_e1_norm * f2_series_sum(r, tol)


def rhs_closed(r: float, re_norm: float, re_e1_norm: float) -> float:
    """The |f(0)|-free closed-form part: 4r/(2r-1)^2 (re_norm A1 + re_e1_norm A2)."""
    _require_radius(r)
    pref = 4.0 * r / (2.0 * r - 1.0) ** 2
    return pref * (re_norm * a1(r) + re_e1_norm * a2(r))


# ---------------------------------------------------------------------------
# Coefficient inequalities.

@dataclass
class CoefficientBoundsReport:
    worst_slack: float
    worst_key: tuple | None
    checked: int


def coefficient_bounds_check(f: QPolynomial, basis: NormalizedBasis) -> CoefficientBoundsReport:
    """Verify sqrt(2n+3)|alpha| <= (||X||/||Re X||) ||Re f|| (and the e1-twisted
    variants at m = n+1); returns the minimal slack RHS - LHS over all slots."""
    coeffs = project(f, basis)
    re_norm, re_e1_norm = boundary_norms_exact(f)
    worst = math.inf
    worst_key = None
    checked = 0
    for key in coefficient_keys(basis.max_degree):
        n, m, kind = key
        lhs = math.sqrt(2 * n + 3) * abs(coeffs.alpha(*key))
        xn = math.sqrt(float(x_norm_sq(n, m)) * math.pi)
        if m <= n:
            ratio = xn / math.sqrt(float(re_x_norm_sq(n, m)) * math.pi)
            rhs = ratio * re_norm
        else:
            denom_sq = re_e1_twist_norm_sq(n, kind)
            if not denom_sq:
                continue  # n = 0 Y-degeneracy; no constraint
            ratio = xn / math.sqrt(float(denom_sq) * math.pi)
            rhs = ratio * re_e1_norm
        slack = rhs - lhs
        checked += 1
        if slack < worst:
            worst, worst_key = slack, key
    return CoefficientBoundsReport(worst, worst_key, checked)


def boundary_norms_exact(f: QPolynomial) -> tuple[float, float]:
    """(||Re f||, ||Re(f e1)||) on S, exact integrals converted to float."""
    from .integrate import scalar_inner_product_exact
    re_part = f.components[0]
    re_e1_part = -f.components[1]
    v1 = scalar_inner_product_exact(re_part, re_part).to_float()
    v2 = scalar_inner_product_exact(re_e1_part, re_e1_part).to_float()
    return math.sqrt(max(v1, 0.0)), math.sqrt(max(v2, 0.0))


def boundary_norms_quad(f: QPolynomial, rule: QuadratureRule) -> tuple[float, float]:
    vals = evaluate_qpoly(f, rule.points())
    v1 = rule.integrate(vals[:, 0] ** 2)
    v2 = rule.integrate(vals[:, 1] ** 2)
    return math.sqrt(max(v1, 0.0)), math.sqrt(max(v2, 0.0))


# ---------------------------------------------------------------------------
# Max modulus on |x| = r.

def _unit_grid(n_theta: int, n_phi: int) -> np.ndarray:
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tt = np.repeat(theta, n_phi)
    pp = np.tile(phi, n_theta)
    st = np.sin(tt)
    return np.column_stack([np.cos(tt), st * np.cos(pp), st * np.sin(pp)])


@dataclass
class _GradedEvaluator:
    """Per-degree component values on a fixed unit grid; |f(r w)| for any r."""

    degrees: list[int]
    parts: list[QPolynomial]
    values: list[np.ndarray]  # each (N, 4)

    @classmethod
    def build(cls, f: QPolynomial, points: np.ndarray) -> "_GradedEvaluator":
        degs = f.homogeneous_degrees()
        parts = [f.homogeneous_part(d) for d in degs]
        vals = [evaluate_qpoly(p, points) for p in parts]
        return cls(degs, parts, vals)

    def at_points(self, points: np.ndarray) -> "_GradedEvaluator":
        return _GradedEvaluator(self.degrees, self.parts,
                                [evaluate_qpoly(p, points) for p in self.parts])

    def modulus_at(self, r: float) -> np.ndarray:
        acc = np.zeros_like(self.values[0]) if self.values else np.zeros((1, 4))
        for d, v in zip(self.degrees, self.values):
            acc = acc + (r ** d) * v
        return np.sqrt(np.einsum("ij,ij->i", acc, acc))


def max_on_sphere(f: QPolynomial, radius: float,
                  grid: tuple[int, int] = (181, 360), refine: int = 64) -> float:
    """Estimate max |f| over |x| = radius on an equiangular grid.

    Golden-angle jitter refinement samples `refine` extra points inside the
    cell around the grid argmax.  The estimate is a lower bound on the true
    maximum, which is the conservative direction for inequality checking.
    """
    pts = _unit_grid(*grid)
    ev = _GradedEvaluator.build(f, pts)
    mods = ev.modulus_at(radius)
    best = float(mods.max())
    if refine > 0:
        best = max(best, _refined_max(ev, radius, int(mods.argmax()), grid, refine))
    return best


# ---------------------------------------------------------------------------
# Certification.

@dataclass
class BoundReport:
    r: float
    max_f: float
    f0_abs: float
    re_norm: float
    re_e1_norm: float
    rhs_series: float
    rhs_closed: float
    a1: float
    a2: float
    pass_series: bool
    pass_closed: bool
    f1_closed_over_series: float | None
    schwarz_hypothesis: bool
    schwarz_ok: bool

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


SLACK = 1e-9


def certify(f: QPolynomial, r_grid, rule: QuadratureRule,
            grid: tuple[int, int] = (181, 360), tol: float = 1e-12) -> list[BoundReport]:
    """Certify max|f| against both right-hand sides on each radius of the grid.

    The Schwarz-type predicate is evaluated as literally stated: when f(0) = 0
    and ||Re f|| A1(r) + ||Re(f e1)|| A2(r) <= 4/(2r-1)^2, then max|f| <= r is
    demanded.  (For the random sweeps here the hypothesis is essentially
    always false, making the check vacuous; it is still recorded.)
    """
    for r in r_grid:
        _require_radius(r)
    c0 = f(0, 0, 0)
    f0_abs = c0.to_float().norm()
    re_norm, re_e1_norm = boundary_norms_quad(f, rule)
    pts = _unit_grid(*grid)
    ev = _GradedEvaluator.build(f, pts)

    reports = []
    for r in r_grid:
        mods = ev.modulus_at(r)
        max_f = float(mods.max())
        idx = int(mods.argmax())
        max_f = max(max_f, _refined_max(ev, r, idx, grid))
        series_part = rhs_series(r, re_norm, re_e1_norm, tol)
        closed_part = rhs_closed(r, re_norm, re_e1_norm)
        rhs_s = f0_abs + series_part
        rhs_c = f0_abs + closed_part
        f1_series = 0.5 * re_norm * f1_series_sum(r, tol)
        f1_closed = 4.0 * r / (2.0 * r - 1.0) ** 2 * re_norm * a1(r)
        ratio = (f1_closed / f1_series) if f1_series > 0.0 else None
        hyp = (f0_abs == 0.0 and
               re_norm * a1(r) + re_e1_norm * a2(r) <= 4.0 / (2.0 * r - 1.0) ** 2)
        reports.append(BoundReport(
            r=r, max_f=max_f, f0_abs=f0_abs, re_norm=re_norm,
            re_e1_norm=re_e1_norm, rhs_series=rhs_s, rhs_closed=rhs_c,
            a1=a1(r), a2=a2(r),
            pass_series=max_f <= rhs_s + SLACK,
            pass_closed=max_f <= rhs_c + SLACK,
            f1_closed_over_series=ratio,
            schwarz_hypothesis=hyp,
            schwarz_ok=(not hyp) or max_f <= r + SLACK,
        ))
    return reports


def _jitter_points(idx: int, grid: tuple[int, int], refine: int) -> np.ndarray:
    """Golden-angle jitter inside the grid cell around an argmax index."""
    n_theta, n_phi = grid
    theta0 = math.pi * (idx // n_phi) / (n_theta - 1)
    phi0 = 2.0 * math.pi * (idx % n_phi) / n_phi
    dt = math.pi / (n_theta - 1)
    dp = 2.0 * math.pi / n_phi
    ks = np.arange(1, refine + 1)
    theta = np.clip(theta0 + dt * ((ks * GOLDEN) % 1.0 - 0.5), 0.0, math.pi)
    phi = (phi0 + dp * ((ks * GOLDEN * GOLDEN) % 1.0 - 0.5)) % (2.0 * math.pi)
    st = np.sin(theta)
    return np.column_stack([np.cos(theta), st * np.cos(phi), st * np.sin(phi)])


def _refined_max(ev: _GradedEvaluator, r: float, idx: int,
                 grid: tuple[int, int], refine: int = 64) -> float:
    extra = _jitter_points(idx, grid, refine)
    return float(ev.at_points(extra).modulus_at(r).max())


# ---------------------------------------------------------------------------
# Random monogenic test functions.

def random_coefficients(max_degree: int, rng, basis: NormalizedBasis,
                        coeff_range: float = 1.0, zero_origin: bool = False) -> FourierCoefficients:
    """Coefficients alpha drawn uniformly from [-range, range] in the
    orthonormal convention; scaled values rationalized once so the
    synthesized polynomial is exactly monogenic."""
    f0 = (ReducedQuaternion(0, 0, 0) if zero_origin else
          ReducedQuaternion(*(Fraction(float(rng.uniform(-coeff_range, coeff_range)))
                              for _ in range(3))))
    out = FourierCoefficients(f0=f0, max_degree=max_degree)
    for key in coefficient_keys(max_degree):
        alpha = float(rng.uniform(-coeff_range, coeff_range))
        nb = basis.get(key)
        scaled = Fraction(nb.scaled_from_alpha(alpha))
        out.entries[key] = Coefficient(alpha, scaled)
    return out


@dataclass
class SweepResult:
    meta: dict
    reports: list[dict] = field(default_factory=list)


def certify_random_sweep(max_degree: int, trials: int, r_grid, seed: int,
                         basis: NormalizedBasis, rule: QuadratureRule,
                         grid: tuple[int, int] = (181, 360),
                         tol: float = 1e-12) -> SweepResult:
    """Run certify() over `trials` random monogenic polynomials.

    Trials are independent; MONOBALL_THREADS > 1 evaluates them in a thread
    pool with reports assembled in trial order, so output is deterministic.
    """
    from .fourier import synthesize

    rng = np.random.default_rng(seed)
    polys = []
    for _ in range(trials):
        coeffs = random_coefficients(max_degree, rng, basis)
        polys.append(synthesize(coeffs, basis))

    def run(trial: int) -> list[dict]:
        rows = []
        for rep in certify(polys[trial], r_grid, rule, grid=grid, tol=tol):
            row = rep.to_json()
            row["trial"] = trial
            rows.append(row)
        return rows

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_trial = list(pool.map(run, range(trials)))
    else:
        per_trial = [run(t) for t in range(trials)]

    meta = {"max_degree": max_degree, "trials": trials, "seed": seed,
            "coefficient_range": 1.0, "r_grid": list(map(float, r_grid)),
            "quadrature": [rule.n_theta, rule.n_phi], "sphere_grid": list(grid)}
    reports = [row for rows in per_trial for row in rows]
    return SweepResult(meta=meta, reports=reports)
