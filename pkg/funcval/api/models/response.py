"""
Report Models

Pydantic models for verification reports, component evaluations and
growth tables.
"""

from typing import List, Optional, Union

from pydantic import BaseModel, Field

from funcval.api.models.request import ReportFormat, SuiteName

Value = Union[str, float, int, bool, None]


class CheckRecord(BaseModel):
    """Outcome of a single check"""

    name: str = Field(..., description="Check identifier")
    inputs_digest: str = Field(..., description="Short hash of the check inputs")
    expected: Value = Field(None, description="Expected value; rationals as p/q")
    got: Value = Field(None, description="Computed value; rationals as p/q")
    gap: Optional[float] = Field(None, ge=0.0, description="Absolute or relative gap")
    passed: bool = Field(..., description="Whether the check holds")
    detail: Optional[str] = Field(None, description="Error message of a failed check")


class ReportSummary(BaseModel):
    """Pass/fail counts"""

    total: int = Field(..., ge=0)
    passed: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)


class Report(BaseModel):
    """Verification report of one suite run"""

    suite: SuiteName = Field(..., description="Suite that produced the report")
    n: int = Field(..., ge=1, description="Ambient dimension of generated inputs")
    seed: int = Field(..., description="Seed of the run")
    trials: int = Field(..., ge=1, description="Random trials per property")
    records: List[CheckRecord] = Field(default_factory=list, description="Per-check records in run order")
    summary: ReportSummary = Field(..., description="Counts over records")
    wall_time_s: float = Field(..., ge=0.0, description="Wall time of the run in seconds")
    format: ReportFormat = Field(default=ReportFormat.JSON, exclude=True)

    @property
    def passed(self) -> bool:
        return self.summary.failed == 0


class ComponentsResponse(BaseModel):
    """The three summands of Z(u)"""

    z0: float = Field(..., description="zeta_0(min u)")
    z1: float = Field(..., description="Layer-cake integral of zeta_1(u)")
    z1_error: float = Field(..., ge=0.0, description="Quadrature error estimate of z1")
    z2: float = Field(..., description="Monge-Ampere sum of zeta_2")
    total: float = Field(..., description="Z(u)")


class GrowthRow(BaseModel):
    """Analytic and recovered growth functions at one t"""

    t: float
    psi0: float
    psi1: float
    psi2: float
    psi0_hat: float
    psi1_hat: float
    psi2_hat: float
