"""Request and response models for the service and the CLI's JSON output.

Rationals travel as canonical strings ("p/q" or "p") so no precision is
lost in transit; exponent vectors and point coordinates stay integers
or strings accordingly.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class SystemIn(BaseModel):
    n: int = Field(gt=0)
    r: int = Field(gt=0)
    a: list[list[int]]
    b: list[int]
    mode: Literal["eq", "geq"] = "eq"


class GFTermOut(BaseModel):
    coeff: int
    exponents: list[int]


class GFOut(BaseModel):
    numerator: list[GFTermOut]
    denominator: list[list[int]]


class TermOut(BaseModel):
    weight: str
    cols: list[int]
    matrix: list[list[str]]
    generators: list[list[str]]
    vertex: list[str]
    gf: Optional[GFOut] = None


class DecomposeRequest(BaseModel):
    system: SystemIn
    strategy: str = "s2"
    gf: bool = False


class DecomposeResponse(BaseModel):
    strategy: str
    n: int
    r: int
    homogeneous: bool
    term_count: int
    rounds: list[int]
    terms: list[TermOut]


class FailureOut(BaseModel):
    point: list[str]
    expected: str
    got: str


class ReportOut(BaseModel):
    passed: bool
    checked_points: int
    failures: list[FailureOut]


class VerifyRequest(BaseModel):
    system: SystemIn
    strategy: str = "s2"
    box: int = 4
    seed: int = 0


class CrossRequest(BaseModel):
    system: SystemIn
    strategies: list[str] = ["s0", "s1", "s2"]
    points: int = 3
    seed: int = 0


class CrossResponse(ReportOut):
    term_counts: dict[str, int]


class SnfRequest(BaseModel):
    system: SystemIn
    cols: list[int]


class SnfResponse(BaseModel):
    cols: list[int]
    perm: list[int]
    stage_scales: list[int]
    identity_ok: bool
    is_denumerant: bool
    task_text: str


class ReciprocityRequest(BaseModel):
    system: SystemIn
    points: int = 3
    seed: int = 0
    box: int = 3


class UnityEvalRequest(BaseModel):
    dual_matrix: list[list[int]]
    point: list[list[float]]  # [re, im] per coordinate, 2d of them
    n_trunc: int = 60


class UnityEvalResponse(BaseModel):
    term_count: int
    value: list[float]        # [re, im]
    truncation_value: list[float]
    abs_error: float
    tail_estimate: float
    n_trunc: int
