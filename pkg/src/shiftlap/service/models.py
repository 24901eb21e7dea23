"""Pydantic request/response models for the HTTP service.

Function specifications travel as plain JSON objects (see ``shiftlap.specs``
for the schema); scalars are "p/q" strings in rational mode and decimal
literals in float mode.  Every response echoes the run configuration,
including the seed for randomized suites, so outputs are reproducible
byte for byte.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

Mode = Literal["rational", "float64"]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ConfigEcho(BaseModel):
    N: int
    mode: Mode = "rational"
    seed: Optional[int] = None


class GreenKernelRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    x: str
    y: str


class ValueResponse(BaseModel):
    value: str
    config: ConfigEcho


class GreenApplyRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    f: dict
    points: list[str]
    resolution: Optional[int] = None


class PointValue(BaseModel):
    point: str
    value: str


class PointValuesResponse(BaseModel):
    records: list[PointValue]
    config: ConfigEcho


class EvaluateRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    u: dict
    points: list[str]


class DirichletFormRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    m: int = Field(ge=0)
    u: dict
    v: dict
    algorithm: Literal["operator-form", "difference-form", "both"] = "both"


class DirichletRecord(BaseModel):
    m: int
    value: str
    algorithm: str


class DirichletFormResponse(BaseModel):
    records: list[DirichletRecord]
    config: ConfigEcho


class EnergySequenceRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    f: dict
    mmax: int = Field(ge=0)


class EnergyRecord(BaseModel):
    m: int
    value: str
    algorithm: str


class EnergySequenceResponse(BaseModel):
    records: list[EnergyRecord]
    increments: list[str]
    monotone: bool
    limit_lower_bound: str
    config: ConfigEcho


class LaplacianRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    u: dict
    f: dict
    M: int = Field(ge=0)
    mmax: int


class ResidualRecord(BaseModel):
    m: int
    residual: str
    bound: Optional[str] = None


class LaplacianResponse(BaseModel):
    records: list[ResidualRecord]
    boundary_level: int
    nonincreasing: bool
    all_zero: bool
    config: ConfigEcho


class WeakResidualRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    u: dict
    f: dict
    M: int = Field(ge=0)
    m: int


class NeumannDerivativeRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    u: dict
    p: str
    M: int = Field(ge=0)
    mmax: Optional[int] = None


class SequenceRecord(BaseModel):
    m: int
    value: str


class NeumannDerivativeResponse(BaseModel):
    point: str
    boundary_level: int
    value: str
    exact: bool
    tail_bound: Optional[str] = None
    sequence: Optional[list[SequenceRecord]] = None
    config: ConfigEcho


class SolveDirichletRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    f: dict
    zeta: object
    points: Optional[list[str]] = None


class SolveNeumannRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    f: dict
    xi: object
    points: Optional[list[str]] = None


class SolveResponse(BaseModel):
    solution: dict
    boundary_values: dict[str, str]
    evaluations: Optional[list[PointValue]] = None
    config: ConfigEcho


class GaussGreenRequest(StrictModel):
    N: int = Field(ge=2)
    mode: Mode = "rational"
    u: dict
    v: dict
    M: int = Field(ge=0)


class GaussGreenResponse(BaseModel):
    boundary_level: int
    lhs: str
    rhs: str
    residual: str
    conservation_residuals: list[str]
    config: ConfigEcho


class VerifyRequest(StrictModel):
    N: int = Field(ge=2)
    mmax: int = Field(default=5, ge=1)
    seed: int = 0
    checks: Optional[list[str]] = None


class CheckRecord(BaseModel):
    check: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    records: list[CheckRecord]
    passed: bool
    config: ConfigEcho


class HealthResponse(BaseModel):
    status: str
    version: str
