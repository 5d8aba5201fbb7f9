"""Pydantic request/response models for the HTTP service.

Exact rationals travel as {num, den, pi_power} triples (pi_power 1 for sphere
integrals, 0 for plain rationals); floats stay native JSON numbers.
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator

MAX_DEGREE_CAP = 12


class ExactValue(BaseModel):
    num: int
    den: int
    pi_power: int = 0


class HealthResponse(BaseModel):
    status: str
    version: str


class PolyTerm(BaseModel):
    component: int = Field(ge=0, le=3)
    exps: list[int]
    num: int
    den: int


class BasisRequest(BaseModel):
    max_degree: int = Field(ge=0, le=MAX_DEGREE_CAP)


class BasisElementOut(BaseModel):
    n: int
    m: int
    kind: str
    norm_sq: ExactValue
    terms: list[PolyTerm]


class BasisResponse(BaseModel):
    max_degree: int
    count: int
    version: str
    elements: list[BasisElementOut]


class NormsRequest(BaseModel):
    max_degree: int = Field(ge=0, le=MAX_DEGREE_CAP)


class NormRow(BaseModel):
    n: int
    m: int
    kind: str
    quantity: str  # norm_sq | re_norm_sq | re_e1_norm_sq
    computed: ExactValue
    formula: ExactValue | None
    match: bool
    note: str = ""


class NormsResponse(BaseModel):
    max_degree: int
    version: str
    all_match: bool
    rows: list[NormRow]


class VerifyRequest(BaseModel):
    max_degree: int = Field(default=6, ge=0, le=MAX_DEGREE_CAP)
    seed: int = 2024
    trials: int = Field(default=50, ge=1, le=1000)


class CheckOut(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    ok: bool
    version: str
    max_degree: int
    seed: int
    trials: int
    checks: list[CheckOut]


class RuleSpec(BaseModel):
    n_theta: int = Field(ge=1)
    n_phi: int = Field(ge=1)


class DecomposeRequest(BaseModel):
    max_degree: int = Field(ge=0, le=MAX_DEGREE_CAP)
    rule: RuleSpec
    re_f: list[float]
    re_fe1: list[float]
    # Unobservable from the two samplers; passed through to the output.
    f0_e2: float = 0.0


class CoefficientOut(BaseModel):
    n: int
    m: int
    kind: str
    value: float


class DecomposeResponse(BaseModel):
    version: str
    max_degree: int
    f0: list[float]
    coeffs: list[CoefficientOut]


class BoundRequest(BaseModel):
    max_degree: int = Field(default=6, ge=0, le=MAX_DEGREE_CAP)
    seed: int = 2024
    trials: int = Field(default=50, ge=1, le=1000)
    r_grid: list[float]
    tol: float = Field(default=1e-12, gt=0)
    quadrature: RuleSpec | None = None
    sphere_grid: tuple[int, int] = (181, 360)

    @field_validator("r_grid")
    @classmethod
    def _radii_in_range(cls, grid: list[float]) -> list[float]:
        if not grid:
            raise ValueError("empty r_grid")
        for r in grid:
            if not 0.0 <= r < 0.5:
                raise ValueError(f"radius {r} outside [0, 1/2)")
        return grid


class BoundReportOut(BaseModel):
    trial: int
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


class BoundResponse(BaseModel):
    version: str
    meta: dict
    all_pass_series: bool
    schwarz_counterexamples: int
    reports: list[BoundReportOut]
