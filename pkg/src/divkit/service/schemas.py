"""Pydantic request/response models for the divergence service.

Extended reals cross the wire as floats, with infinities and NaN encoded
as the strings "inf", "-inf", "nan".
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field

from ..distributions import DiscreteDistribution

ExtReal = float | str


class DistributionModel(BaseModel):
    support: list[str]
    mass: list[float]

    def to_core(self) -> DiscreteDistribution:
        return DiscreteDistribution(tuple(self.support), tuple(self.mass))

    @classmethod
    def from_core(cls, dist: DiscreteDistribution) -> "DistributionModel":
        return cls(support=list(dist.support), mass=list(dist.mass))


class SchemeModel(BaseModel):
    alphas: list[float]
    weights: list[float]


class SkewModel(BaseModel):
    t: float = Field(ge=0.0, le=1.0)
    s: float = Field(ge=0.0, le=1.0)


class ComputeRequest(BaseModel):
    p: DistributionModel
    q: DistributionModel
    divergences: list[str] = ["kl"]
    skew: SkewModel | None = None
    scheme: SchemeModel | None = None


class ComputeRow(BaseModel):
    divergence: str
    value: ExtReal
    skewed: ExtReal | None = None
    generalized: ExtReal | None = None


class ComputeResponse(BaseModel):
    rows: list[ComputeRow]
    total_variation: float


class CheckRequest(BaseModel):
    seed: int = 42
    count: int = Field(default=200, ge=1)
    support_sizes: list[int] = [2, 4, 8, 16]
    n_hypotheses: list[int] = [2, 3, 4]
    mass_floor: float = Field(default=0.0, ge=0.0, lt=1.0)
    checks: list[str] | None = None
    tolerance: float = Field(default=1e-10, ge=0.0)


class CheckReportModel(BaseModel):
    check_id: str
    instance: dict[str, Any]
    lhs: ExtReal
    rhs: ExtReal
    margin: ExtReal
    tolerance: float
    verdict: str
    detail: str = ""


class CheckSummaryModel(BaseModel):
    total: int
    passed: int
    failed: int
    skipped: int
    degenerate: int


class CheckResponse(BaseModel):
    seed: int
    count: int
    checks: list[str]
    tolerance: float
    reports: list[CheckReportModel]
    summary: CheckSummaryModel
    all_pass: bool


class BayesRequest(BaseModel):
    hypotheses: list[DistributionModel]
    prior: list[float]
    q: DistributionModel | None = None
    divergences: list[str] = ["kl"]


class WTermsModel(BaseModel):
    w0: ExtReal
    w1: ExtReal
    w2: ExtReal
    total: ExtReal


class BayesResponse(BaseModel):
    support: list[str]
    risk: float
    q_mass: float
    estimator: list[int]
    q1: DistributionModel | None
    q2: DistributionModel | None
    rho1: DistributionModel | None
    rho2: DistributionModel | None
    degenerate: list[str]
    w_terms: WTermsModel
    bounds: list[CheckReportModel]


class SeriesRequest(BaseModel):
    p1: DistributionModel
    p2: DistributionModel
    max_terms: int = Field(default=60, ge=1, le=200)


class SeriesResponse(BaseModel):
    kl: ExtReal
    total_variation: float
    diverges: bool
    terms_used: int
    partial_sums: list[float]
    lower_bound_terms: list[float]
    weighted_lower_bound_terms: list[float]
    plain_pinsker: float
    sharpened_bound: float
    proven_bound: float
    convergence_gap: ExtReal
    proven_bound_margin: ExtReal


class TableRowModel(BaseModel):
    name: str
    formula: str
    params: dict[str, float]
    domain: str
    kappa: float
    method: str
    certified: bool
    certificate_margin: float


class TableResponse(BaseModel):
    m: float
    alpha: float
    s: float
    rows: list[TableRowModel]
