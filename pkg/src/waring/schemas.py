"""Request and response models for the HTTP service.

Polynomials travel as strings in the package grammar; scalars inside
certificates are strings too ("3/7", "1+2i", or decimals in float mode), so
nothing loses precision in transit.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class GenericRankRequest(BaseModel):
    n: int = Field(ge=1, description="number of variables")
    k: int = Field(ge=1, description="power of the summands")
    d: int = Field(ge=1, description="degree of the summand bases")


class GenericRankResponse(BaseModel):
    value: int
    status: str
    exceptional: bool
    formulaPath: str


class SeriesRequest(BaseModel):
    n: int = Field(ge=1)
    degrees: list[int] = Field(min_length=1)
    cutoff: int = Field(ge=0)


class SeriesResponse(BaseModel):
    cutoff: int
    coefficients: list[int]
    truncated_normal_form: bool


class CodimRequest(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    d: int = Field(ge=1)
    s: int = Field(ge=0)


class CodimResponse(BaseModel):
    codim: int


class PolyRequest(BaseModel):
    poly: str


class CertificateResponse(BaseModel):
    certificate: dict
    length: int


class SexticCubesRequest(BaseModel):
    poly: str
    fold: bool = False


class SexticCubesResponse(BaseModel):
    certificate: dict
    branch: str
    residual: float
    folded: Optional[list[str]] = None


class CanonicalRequest(BaseModel):
    poly: str
    k: int = Field(ge=1)
    d: int = Field(ge=1)
    relaxed: bool = False


class CanonicalResponse(BaseModel):
    certificate: dict
    parts: list[str]
    rescued_levels: list[int]


class KrankBoundRequest(BaseModel):
    poly: str
    k: int = Field(ge=1)
    budget: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None


class KrankBoundResponse(BaseModel):
    upper: int
    upperCertificate: dict
    lower: int
    lowerConfidence: str
    method: str
    heuristic: bool


class MonomialFactorRequest(BaseModel):
    exponents: list[int] = Field(min_length=1)
    k: int = Field(ge=2)


class MonomialFactorResponse(BaseModel):
    certificate: dict
    m1: list[int]
    m2: list[int]
    powers: dict


class ExamplesRequest(BaseModel):
    names: Optional[list[str]] = None
    jobs: Optional[int] = Field(default=None, ge=1)


class ExampleCaseResult(BaseModel):
    name: str
    ok: bool
    detail: str
    seconds: float


class ExamplesResponse(BaseModel):
    ok: bool
    cases: list[ExampleCaseResult]


class VerifyCertificateRequest(BaseModel):
    certificate: dict


class VerifyCertificateResponse(BaseModel):
    ok: bool
    detail: str
