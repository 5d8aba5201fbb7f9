"""FastAPI service wrapping the core library.

Normalized bases are cached per degree, so a long-running instance pays the
exact construction cost once and serves decomposition / certification
requests from memory.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from fastapi import FastAPI, HTTPException

from .. import __version__, bounds, verify
from ..fourier import (NormalizedBasis, coeffs_from_real_part,
                       re_e1_twist_norm_sq, re_x_norm_sq, x_norm_sq)
from ..integrate import QuadratureRule, QuadratureResolutionError, inner_product_exact
from ..poly3 import QPolynomial, to_json_records
from . import schemas as s

app = FastAPI(title="monoball", version=__version__)


@lru_cache(maxsize=8)
def get_basis(max_degree: int) -> NormalizedBasis:
    return NormalizedBasis(max_degree)


def _exact(q: Fraction, pi_power: int = 0) -> s.ExactValue:
    return s.ExactValue(num=q.numerator, den=q.denominator, pi_power=pi_power)


@app.get("/health", response_model=s.HealthResponse)
def health() -> s.HealthResponse:
    return s.HealthResponse(status="ok", version=__version__)


@app.post("/basis", response_model=s.BasisResponse)
def basis(req: s.BasisRequest) -> s.BasisResponse:
    nb = get_basis(req.max_degree)
    elements = []
    for item in nb:
        n, m, kind = item.key
        elements.append(s.BasisElementOut(
            n=n, m=m, kind=kind,
            norm_sq=_exact(item.norm_sq.coeff, pi_power=1),
            terms=[s.PolyTerm(**r) for r in to_json_records(item.element.solid)],
        ))
    return s.BasisResponse(max_degree=req.max_degree, count=len(elements),
                           version=__version__, elements=elements)


@app.post("/norms", response_model=s.NormsResponse)
def norms(req: s.NormsRequest) -> s.NormsResponse:
    nb = get_basis(req.max_degree)
    rows: list[s.NormRow] = []
    for item in nb:
        n, m, kind = item.key
        formula = x_norm_sq(n, m)
        rows.append(s.NormRow(n=n, m=m, kind=kind, quantity="norm_sq",
                              computed=_exact(item.norm_sq.coeff, 1),
                              formula=_exact(formula, 1),
                              match=item.norm_sq.coeff == formula))
        re_part = QPolynomial.from_scalar(item.element.solid.components[0])
        re_got = inner_product_exact(re_part, re_part).coeff
        re_want = re_x_norm_sq(n, m)
        rows.append(s.NormRow(n=n, m=m, kind=kind, quantity="re_norm_sq",
                              computed=_exact(re_got, 1), formula=_exact(re_want, 1),
                              match=re_got == re_want,
                              note="Gamma-limit 0 at m=n+1" if m == n + 1 else ""))
        if m == n + 1:
            tw = QPolynomial.from_scalar(-item.element.solid.components[1])
            tw_got = inner_product_exact(tw, tw).coeff
            tw_want = re_e1_twist_norm_sq(n, kind)
            rows.append(s.NormRow(
                n=n, m=m, kind=kind, quantity="re_e1_norm_sq",
                computed=_exact(tw_got, 1), formula=_exact(tw_want, 1),
                match=tw_got == tw_want,
                note=("n=0 degenerate case, closed form starts at n=1"
                      if n == 0 else "")))
    return s.NormsResponse(max_degree=req.max_degree, version=__version__,
                           all_match=all(r.match for r in rows), rows=rows)


@app.post("/verify", response_model=s.VerifyResponse)
def run_verify(req: s.VerifyRequest) -> s.VerifyResponse:
    results = verify.run_all(max_degree=req.max_degree, seed=req.seed, trials=req.trials)
    checks = [s.CheckOut(name=r.name, passed=r.passed, detail=r.detail) for r in results]
    return s.VerifyResponse(ok=all(r.passed for r in results), version=__version__,
                            max_degree=req.max_degree, seed=req.seed,
                            trials=req.trials, checks=checks)


@app.post("/decompose", response_model=s.DecomposeResponse)
def decompose(req: s.DecomposeRequest) -> s.DecomposeResponse:
    rule = QuadratureRule(req.rule.n_theta, req.rule.n_phi)
    if len(req.re_f) != rule.node_count or len(req.re_fe1) != rule.node_count:
        raise HTTPException(status_code=400,
                            detail=f"samplers must have {rule.node_count} node-ordered values")
    nb = get_basis(req.max_degree)
    try:
        coeffs = coeffs_from_real_part(req.re_f, req.re_fe1, nb, rule, f0_e2=req.f0_e2)
    except (QuadratureResolutionError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    out = [s.CoefficientOut(n=k[0], m=k[1], kind=k[2], value=coeffs.entries[k].alpha)
           for k in sorted(coeffs.entries)]
    f0 = [float(c) for c in coeffs.f0.components()]
    return s.DecomposeResponse(version=__version__, max_degree=req.max_degree,
                               f0=f0, coeffs=out)


@app.post("/bound", response_model=s.BoundResponse)
def bound(req: s.BoundRequest) -> s.BoundResponse:
    nb = get_basis(req.max_degree)
    rule = (QuadratureRule(req.quadrature.n_theta, req.quadrature.n_phi)
            if req.quadrature else QuadratureRule.for_degree(req.max_degree))
    try:
        sweep = bounds.certify_random_sweep(
            req.max_degree, req.trials, req.r_grid, req.seed, nb, rule,
            grid=tuple(req.sphere_grid), tol=req.tol)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    reports = [s.BoundReportOut(**row) for row in sweep.reports]
    return s.BoundResponse(
        version=__version__, meta=sweep.meta,
        all_pass_series=all(r.pass_series for r in reports),
        schwarz_counterexamples=sum(not r.schwarz_ok for r in reports),
        reports=reports)
