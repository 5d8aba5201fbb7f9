"""Aggregated identity-verification suite behind the `verify` command.

Each check returns a CheckResult; anything exact is run in rational
arithmetic, anything numerical carries its tolerance in the detail string.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bounds, legendre as leg, spherical
from .fourier import (NormalizedBasis, re_e1_twist_norm_sq, re_x_norm_sq,
                      x_norm_sq)
from .integrate import (QuadratureRule, evaluate_qpoly, inner_product_exact,
                        scalar_inner_product_exact)
from .poly3 import QPolynomial, ScalarPoly, apply_D, apply_Dbar, laplacian


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_qpoly(rng: random.Random, degree: int) -> QPolynomial:
    comps = []
    for _ in range(4):
        terms = {}
        for _ in range(rng.randint(3, 8)):
            e = tuple(rng.randint(0, degree) for _ in range(3))
            if sum(e) > degree:
                continue
            terms[e] = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        comps.append(ScalarPoly(terms))
    return QPolynomial(comps)


def check_monogenicity(max_degree: int) -> CheckResult:
    t0 = time.perf_counter()
    count = 0
    for n in range(max_degree + 1):
        for el in spherical.basis_family(n):
            if not apply_D(el.solid).is_zero():
                return CheckResult("monogenicity", False, f"D {el.label()} != 0")
            if not el.solid.is_homogeneous(n):
                return CheckResult("monogenicity", False, f"{el.label()} not homogeneous")
            if not el.solid.is_a_valued():
                return CheckResult("monogenicity", False, f"{el.label()} leaves A")
            count += 1
    dt = time.perf_counter() - t0
    return CheckResult("monogenicity", True,
                       f"D=0, homogeneous, A-valued for {count} elements, n<={max_degree}, {dt:.2f}s")


def check_factorization(trials: int = 100, degree: int = 8, seed: int = 2024) -> CheckResult:
    rng = random.Random(seed)
    for t in range(trials):
        p = _random_qpoly(rng, degree)
        lap = laplacian(p)
        if apply_D(apply_Dbar(p)) != lap or apply_Dbar(apply_D(p)) != lap:
            return CheckResult("factorization", False, f"failure at trial {t}")
    return CheckResult("factorization", True,
                       f"D Dbar = Dbar D = Delta on {trials} random degree<={degree} polynomials")


def check_legendre(max_n: int = 10) -> CheckResult:
    for n in range(max_n + 1):
        for m in range(n + 2):
            if not leg.check_recurrence(n + 1, m):
                return CheckResult("legendre", False, f"recurrence fails at (n={n}, m={m})")
            leg.l2_norm_sq(n + 1, m)  # raises on mismatch with the closed form
    for m in range(max_n + 1):
        if not leg.pmm_is_double_factorial(m):
            return CheckResult("legendre", False, f"P^m_m identity fails at m={m}")
    return CheckResult("legendre", True,
                       f"recurrence, P^m_m = (2m-1)!! factor, and L2 norms exact for n<={max_n}")


def check_legendre_orthogonality(max_n: int = 8) -> CheckResult:
    for n in range(max_n + 1):
        for k in range(n + 1, max_n + 1):
            for m in range(min(n, k) + 2):
                if leg.cross_inner_product(n + 1, k + 1, m):
                    return CheckResult("legendre-orthogonality", False,
                                       f"nonzero at (n={n}, k={k}, m={m})")
    return CheckResult("legendre-orthogonality", True, f"exact zeros for n != k <= {max_n}")


def check_harmonic_dimension(max_n: int = 6) -> CheckResult:
    """2n+1 spherical harmonics per degree: diagonal nonsingular Gram, and
    cross-degree orthogonality, both exact."""
    families = {}
    for k in range(1, max_n + 2):
        fam = [spherical.solid_harmonic(k, 0, "U")]
        fam.extend(spherical.solid_harmonic(k, m, "U") for m in range(1, k + 1))
        fam.extend(spherical.solid_harmonic(k, m, "V") for m in range(1, k + 1))
        if len(fam) != 2 * k + 1:
            return CheckResult("harmonic-dimension", False, f"family size at degree {k}")
        families[k] = fam
    for k, fam in families.items():
        for i, p in enumerate(fam):
            if not laplacian(p).is_zero():
                return CheckResult("harmonic-dimension", False, f"not harmonic at degree {k}")
            for j, q in enumerate(fam):
                v = inner_product_exact(p, q)
                if i == j and v.coeff <= 0:
                    return CheckResult("harmonic-dimension", False,
                                       f"degenerate Gram diagonal at degree {k}")
                if i != j and not v.is_zero():
                    return CheckResult("harmonic-dimension", False,
                                       f"off-diagonal Gram at degree {k}")
    for k in families:
        for k2 in families:
            if k2 <= k:
                continue
            for p in families[k]:
                for q in families[k2]:
                    if not inner_product_exact(p, q).is_zero():
                        return CheckResult("harmonic-dimension", False,
                                           f"cross-degree {k}x{k2} not orthogonal")
    return CheckResult("harmonic-dimension", True,
                       f"2k+1 orthogonal harmonics per degree k <= {max_n + 1}, exact")


def check_pointwise_bounds(max_n: int = 8, samples: int = 2000, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(samples, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    worst = math.inf
    for n in range(max_n + 1):
        for key in spherical.family_keys(n):
            el = spherical.spherical_monogenic(key[0], key[1], key[2])
            vals = evaluate_qpoly(el.solid, pts)
            mods = np.sqrt(np.einsum("ij,ij->i", vals, vals))
            margin = spherical.modulus_bound(n, key[1], key[2]) - float(mods.max())
            worst = min(worst, margin)
            if margin < 0:
                return CheckResult("pointwise-bounds", False,
                                   f"violated at {el.label()} by {-margin:.3e}")
    return CheckResult("pointwise-bounds", True,
                       f"{samples} samples, n<={max_n}, worst margin {worst:.6f}")


def check_norm_formulas(basis: NormalizedBasis) -> CheckResult:
    for nb in basis:
        n, m, kind = nb.key
        if nb.norm_sq.coeff != x_norm_sq(n, m):
            return CheckResult("norm-formulas", False, f"||{nb.element.label()}||^2 mismatch")
        re_part = QPolynomial.from_scalar(nb.element.solid.components[0])
        got = inner_product_exact(re_part, re_part).coeff
        if got != re_x_norm_sq(n, m):
            return CheckResult("norm-formulas", False,
                               f"||Re {nb.element.label()}||^2 = {got}, formula {re_x_norm_sq(n, m)}")
    return CheckResult("norm-formulas", True,
                       f"||X||^2 and ||Re X||^2 closed forms exact, n<={basis.max_degree}")


def check_e1_twist_norms(basis: NormalizedBasis) -> CheckResult:
    notes = []
    for n in range(basis.max_degree + 1):
        vals = {}
        for kind in ("X", "Y"):
            el = basis.get((n, n + 1, kind)).element
            re_e1 = QPolynomial.from_scalar(-el.solid.components[1])
            vals[kind] = re_e1
            got = inner_product_exact(re_e1, re_e1).coeff
            want = re_e1_twist_norm_sq(n, kind)
            if got != want:
                return CheckResult("e1-twist-norms", False,
                                   f"||Re({kind}{n}^{n + 1} e1)||^2 = {got}, expected {want}")
        if not inner_product_exact(vals["X"], vals["Y"]).is_zero():
            return CheckResult("e1-twist-norms", False, f"pair not orthogonal at n={n}")
        if n == 0:
            notes.append("n=0 degenerate: X gives pi, Y gives 0 (closed form starts at n=1)")
    return CheckResult("e1-twist-norms", True,
                       f"(n+1)(2n+2)!/4 norms and pair orthogonality exact; " + "; ".join(notes))


def check_lemma_orthogonality(basis: NormalizedBasis) -> CheckResult:
    """Re parts with m <= n pairwise orthogonal (exact)."""
    for n in range(basis.max_degree + 1):
        fam = basis.degree(n)
        re_parts = [(nb.key, QPolynomial.from_scalar(nb.element.solid.components[0]))
                    for nb in fam if nb.key[1] <= n]
        for i in range(len(re_parts)):
            for j in range(i + 1, len(re_parts)):
                if not inner_product_exact(re_parts[i][1], re_parts[j][1]).is_zero():
                    return CheckResult("real-part-orthogonality", False,
                                       f"Re pair {re_parts[i][0]} x {re_parts[j][0]}")
    return CheckResult("real-part-orthogonality", True,
                       f"exact for all m <= n, degrees n<={basis.max_degree}")


def check_twist_orthogonality(basis: NormalizedBasis) -> CheckResult:
    """Measured structure of the e1-twisted overlaps within each degree.

    The nominal claim (m <= n twists orthogonal to the m = n+1 pair) fails at
    exactly m = n-1 with a nonzero exact value; this check passes when the
    measured overlap pattern matches that structure and records the values.
    """
    offenders = []
    for n in range(basis.max_degree + 1):
        fam = basis.degree(n)
        lows = [(nb.key, QPolynomial.from_scalar(-nb.element.solid.components[1]))
                for nb in fam if nb.key[1] <= n]
        tops = [(nb.key, QPolynomial.from_scalar(-nb.element.solid.components[1]))
                for nb in fam if nb.key[1] == n + 1]
        for lk, lp in lows:
            for tk, tp in tops:
                v = inner_product_exact(lp, tp)
                expected_nonzero = (lk[1] == n - 1 and
                                    (lk[2] == tk[2] or (lk[2] == "X0" and tk[2] == "X")))
                if v.is_zero() == expected_nonzero:
                    if v.is_zero():
                        return CheckResult("e1-twist-structure", False,
                                           f"expected nonzero overlap {lk} x {tk}")
                    return CheckResult("e1-twist-structure", False,
                                       f"unexpected nonzero overlap {lk} x {tk} = {v}")
                if not v.is_zero() and lk[2] in ("X0", "X"):
                    offenders.append(f"n={n}: {v}")
    return CheckResult("e1-twist-structure", True,
                       "nominal full orthogonality fails exactly at m=n-1; exact overlaps "
                       + "; ".join(offenders) + " (extraction corrects for these)")


def check_cross_degree_twist(basis: NormalizedBasis) -> CheckResult:
    """Measured (not assumed): Re(X_n^{n+1} e1) across distinct degrees."""
    worst_nonzero = 0
    for n in range(basis.max_degree + 1):
        for k in range(n + 1, basis.max_degree + 1):
            for kind_a in ("X", "Y"):
                for kind_b in ("X", "Y"):
                    pa = QPolynomial.from_scalar(
                        -basis.get((n, n + 1, kind_a)).element.solid.components[1])
                    pb = QPolynomial.from_scalar(
                        -basis.get((k, k + 1, kind_b)).element.solid.components[1])
                    if not inner_product_exact(pa, pb).is_zero():
                        worst_nonzero += 1
    return CheckResult("cross-degree-twist", worst_nonzero == 0,
                       f"Re(X_n^(n+1) e1) cross-degree inner products all exactly zero"
                       f" (n<={basis.max_degree})" if worst_nonzero == 0 else
                       f"{worst_nonzero} nonzero cross-degree entries")


def check_gram(basis: NormalizedBasis) -> CheckResult:
    for n in range(basis.max_degree + 1):
        if len(basis.degree(n)) != 2 * n + 3:
            return CheckResult("gram-identity", False, f"family size at n={n}")
        if not basis.gram_is_identity(n):
            return CheckResult("gram-identity", False, f"sphere Gram not identity at n={n}")
        if not basis.ball_gram_is_identity(n):
            return CheckResult("gram-identity", False, f"ball Gram not identity at n={n}")
    for n in range(basis.max_degree + 1):
        for k in range(n + 1, basis.max_degree + 1):
            if (k - n) % 2 == 0 and not basis.cross_degree_orthogonal(n, k):
                return CheckResult("gram-identity", False, f"cross-degree {n}x{k}")
    return CheckResult("gram-identity", True,
                       f"2n+3 elements, identity Gram on S and B, n<={basis.max_degree}")


def check_quadrature_agreement(basis: NormalizedBasis, tol: float = 1e-11) -> CheckResult:
    rule = QuadratureRule.for_degree(basis.max_degree)
    elements = list(basis)
    pts = rule.points()
    values = [evaluate_qpoly(nb.element.solid, pts) for nb in elements]
    norms = [math.sqrt(nb.norm_sq.to_float()) for nb in elements]
    worst = 0.0
    for i in range(len(elements)):
        for j in range(i, len(elements)):
            quad = rule.integrate(np.einsum("ij,ij->i", values[i], values[j]))
            if i == j:
                exact = elements[i].norm_sq.to_float()
            else:
                same = elements[i].element.n == elements[j].element.n
                exact = (inner_product_exact(elements[i].element.solid,
                                             elements[j].element.solid).to_float()
                         if same else 0.0)
            rel = abs(quad - exact) / max(norms[i] * norms[j], 1e-300)
            worst = max(worst, rel)
    ok = worst <= tol
    return CheckResult("quadrature-agreement", ok,
                       f"worst relative error {worst:.3e} (tolerance {tol:.0e}), "
                       f"{len(elements)} elements, rule ({rule.n_theta},{rule.n_phi})")


def check_a2_consistency(r_grid=None, tol: float = 1e-10) -> CheckResult:
    r_grid = r_grid if r_grid is not None else [0.05 * k for k in range(1, 10)]
    worst = 0.0
    for r in r_grid:
        series = 3.0 * bounds.f2_series_sum(r, tol=1e-15)
        closed = 4.0 * r / (2.0 * r - 1.0) ** 2 * bounds.a2(r)
        worst = max(worst, abs(series - closed))
    quarter = abs(3.0 * bounds.f2_series_sum(0.25, tol=1e-15) - 9.0)
    ok = worst <= tol and quarter <= tol
    return CheckResult("a2-consistency", ok,
                       f"max |series - closed| {worst:.2e}; r=1/4 value offset {quarter:.2e}")


def check_a1_ratio(r_grid=None) -> CheckResult:
    """Report (never assert ground truth for) the closed/series f1 ratio."""
    r_grid = r_grid if r_grid is not None else [0.05 * k for k in range(1, 10)]
    ratios = []
    for r in r_grid:
        series = 0.5 * bounds.f1_series_sum(r, tol=1e-15)
        closed = 4.0 * r / (2.0 * r - 1.0) ** 2 * bounds.a1(r)
        ratios.append(closed / series)
    finite = all(math.isfinite(x) for x in ratios)
    smooth = max(abs(ratios[i + 1] - ratios[i]) for i in range(len(ratios) - 1)) < 0.05
    detail = ("f1 closed/series ratio per r: "
              + ", ".join(f"{r:.2f}:{x:.6f}" for r, x in zip(r_grid, ratios))
              + " (measured leading-order ratio ~2; series kept as ground truth)")
    return CheckResult("a1-ratio-report", finite and smooth, detail)


def run_all(max_degree: int = 6, seed: int = 2024, trials: int = 50) -> list[CheckResult]:
    basis = NormalizedBasis(max_degree)
    results = [
        check_monogenicity(max(max_degree, 8)),
        check_factorization(trials=trials, degree=8, seed=seed),
        check_legendre(10),
        check_legendre_orthogonality(8),
        check_harmonic_dimension(min(max_degree, 6)),
        check_pointwise_bounds(max_degree, seed=seed),
        check_norm_formulas(basis),
        check_e1_twist_norms(basis),
        check_lemma_orthogonality(basis),
        check_twist_orthogonality(basis),
        check_cross_degree_twist(basis),
        check_gram(basis),
        check_quadrature_agreement(basis),
        check_a2_consistency(),
        check_a1_ratio(),
    ]
    return results
