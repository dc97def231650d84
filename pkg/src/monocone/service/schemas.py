"""Pydantic request/response models for the HTTP service.

Inputs arrive as the same strings the CLI grammars accept; parsing happens
inside the handlers so that parse errors carry position information instead
of surfacing as generic validation failures.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class BettiRequest(BaseModel):
    variables: str = Field(..., description="comma-separated variable names, e.g. 'x,y,z'")
    ideal: str = Field(..., description="comma-separated monomials, e.g. 'x*y,y*z'")
    cap: Optional[int] = Field(None, description="generator cap override")


class BettiResponse(BaseModel):
    total: list[int]
    pd: int


class PdResponse(BaseModel):
    pd: int


class CdResponse(BaseModel):
    cd: int


class SequenceRequest(BaseModel):
    variables: str
    sequence: str = Field(..., description="comma-separated monomials; order matters")
    cap: Optional[int] = None


class RegseqResponse(BaseModel):
    oracle_regular: bool
    pd_criterion: bool
    star_condition: bool
    discrepancy: bool
    witness: Optional[dict] = None
    subset_pds: list[dict]
    weak_proregularity: str


class ParamseqResponse(BaseModel):
    parameter_sequence: bool
    prefix_heights: list[int]


class ConeRequest(BaseModel):
    cone: str = Field(..., description="two clauses joined by '&', e.g. 'y >= 0 & x > 0'")
    box_radius: Optional[int] = None


class ClassifyResponse(BaseModel):
    tag: str
    map: list[list[int]]
    scale: int


class HalflinesResponse(BaseModel):
    ray1: dict
    ray2: dict
    facts: list[dict]


class NormalizeRequest(BaseModel):
    generators: list[list[int]]


class NormalizeResponse(BaseModel):
    t: int
    phi: list[list[int]]
    checks: dict


class PairRequest(BaseModel):
    tag: str
    f: str = Field(..., description="exponent pair, e.g. '(-2,1)'")
    g: str
    power_bound: Optional[int] = None
    radius: Optional[int] = None


class RejectPairResponse(BaseModel):
    certificate: list[int]
    powers: dict


class ModelRegularResponse(BaseModel):
    regular: bool
    witness: Optional[list[int]] = None


class LazardRequest(BaseModel):
    betas: str = Field(..., description="';'-separated sequences, e.g. '(2,2|2);(3,1|3)'")
    alpha: Optional[str] = None
    support: dict = Field(..., description="{'threshold': t, 'exceptions': [...]}")


class FamilyResponse(BaseModel):
    members: list[dict]
    support: dict
    coordinates: list[dict]


class DirectSystemRequest(BaseModel):
    points: str
    support: dict
    depth: int


class DirectSystemResponse(BaseModel):
    families: list[dict]
    transitions: list[list[list[int]]]


class SemigroupCheckRequest(BaseModel):
    semigroup: dict = Field(..., description="{'ambient_dim': n, 'generators': [...], 'search_bound': b}")
    property: str = Field(..., description="one of positive | normal | rank | membership | full | split")
    vector: Optional[list[int]] = None
    sup: Optional[dict] = None


class SemigroupCheckResponse(BaseModel):
    property: str
    result: Any


class ErrorResponse(BaseModel):
    error: str
    message: str
    witness: Optional[Any] = None
    position: Optional[int] = None
