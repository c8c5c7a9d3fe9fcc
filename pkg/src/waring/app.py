"""HTTP service exposing the library.

Every endpoint is a stateless POST over JSON-serializable data; polynomials
and scalars travel as grammar strings.  Error mapping: unparseable input is
422, a violated mathematical precondition is 400, and an internal consistency
failure is 500.  Endpoint bodies are plain module functions so the CLI can
call them in-process with the same request models.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import schemas
from .apolarity import WaringDecomposition, sylvester_decompose, two_squares
from .certificates import certificate_to_json, verify_certificate
from .errors import (
    AmbiguousNumericsError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
)
from .fiber import krank_lower_probe, krank_upper
from .forms import MultiForm
from .parsing import format_form, parse_form
from .rankseries import froeberg_series, generic_k_rank, secant_codim
from .scalars import EXACT, FLOAT, one
from .sexticcubes import three_cubes
from .structured import canonical_form, monomial_k_factor, monomial_krank_upper
from .suite import run_examples

app = FastAPI(title="waring", version="0.1.0")


@app.exception_handler(ParseError)
async def _parse_error(request: Request, exc: ParseError):
    return JSONResponse(status_code=422, content={"error": str(exc)})


@app.exception_handler(PreconditionError)
async def _precondition(request: Request, exc: PreconditionError):
    return JSONResponse(status_code=400, content={"error": str(exc)})


@app.exception_handler(AmbiguousNumericsError)
async def _ambiguous(request: Request, exc: AmbiguousNumericsError):
    return JSONResponse(status_code=400, content={"error": str(exc)})


@app.exception_handler(InternalConsistencyError)
async def _internal(request: Request, exc: InternalConsistencyError):
    return JSONResponse(status_code=500, content={"error": str(exc)})


@app.post("/rank/generic", response_model=schemas.GenericRankResponse)
def rank_generic(req: schemas.GenericRankRequest) -> schemas.GenericRankResponse:
    return schemas.GenericRankResponse(**generic_k_rank(req.n, req.k, req.d).to_json_dict())


@app.post("/rank/series", response_model=schemas.SeriesResponse)
def rank_series(req: schemas.SeriesRequest) -> schemas.SeriesResponse:
    series = froeberg_series(req.n, req.degrees, req.cutoff)
    return schemas.SeriesResponse(
        cutoff=series.cutoff,
        coefficients=list(series.coeffs),
        truncated_normal_form=series.is_truncated_normal_form(),
    )


@app.post("/rank/codim", response_model=schemas.CodimResponse)
def rank_codim(req: schemas.CodimRequest) -> schemas.CodimResponse:
    return schemas.CodimResponse(codim=secant_codim(req.n, req.k, req.d, req.s))


@app.post("/decompose/sylvester", response_model=schemas.CertificateResponse)
def decompose_sylvester(req: schemas.PolyRequest) -> schemas.CertificateResponse:
    f = parse_form(req.poly)
    dec = sylvester_decompose(f)
    return schemas.CertificateResponse(
        certificate=certificate_to_json(dec, f), length=dec.length
    )


@app.post("/decompose/two-squares", response_model=schemas.CertificateResponse)
def decompose_two_squares(req: schemas.PolyRequest) -> schemas.CertificateResponse:
    f = parse_form(req.poly)
    u, v = two_squares(f)
    mode = u.mode
    terms = [
        (one(mode), g, 2)
        for g in (u, v)
        if not g.is_zero(1e-12 if mode == FLOAT else 0.0)
    ]
    dec = WaringDecomposition(terms, f.degree)
    return schemas.CertificateResponse(
        certificate=certificate_to_json(dec, f, method="two-squares"),
        length=len(terms),
    )


@app.post("/decompose/sextic-cubes", response_model=schemas.SexticCubesResponse)
def decompose_sextic_cubes(req: schemas.SexticCubesRequest) -> schemas.SexticCubesResponse:
    p = parse_form(req.poly, degree=6)
    cert = three_cubes(p)
    folded = [format_form(q) for q in cert.folded_terms()] if req.fold else None
    return schemas.SexticCubesResponse(
        certificate=certificate_to_json(cert, p),
        branch=cert.branch,
        residual=cert.residual,
        folded=folded,
    )


@app.post("/decompose/canonical", response_model=schemas.CanonicalResponse)
def decompose_canonical(req: schemas.CanonicalRequest) -> schemas.CanonicalResponse:
    p = parse_form(req.poly, degree=req.k * req.d)
    variant = "relaxed" if req.relaxed else "unique"
    cf = canonical_form(p, req.k, req.d, variant)
    return schemas.CanonicalResponse(
        certificate=certificate_to_json(cf, p),
        parts=[format_form(part) for part in cf.parts],
        rescued_levels=list(cf.rescued_levels),
    )


@app.post("/krank/bound", response_model=schemas.KrankBoundResponse)
def krank_bound(req: schemas.KrankBoundRequest) -> schemas.KrankBoundResponse:
    f = parse_form(req.poly)
    kwargs = {}
    if req.budget is not None:
        kwargs["budget"] = req.budget
    if req.seed is not None:
        kwargs["seed"] = req.seed
    upper = krank_upper(f, req.k, **kwargs)
    lower, confidence = krank_lower_probe(
        f, req.k, seed=req.seed if req.seed is not None else 0
    )
    return schemas.KrankBoundResponse(
        upper=upper.bound,
        upperCertificate=certificate_to_json(upper, f),
        lower=min(lower, upper.bound),
        lowerConfidence=confidence,
        method=upper.method,
        heuristic=upper.heuristic,
    )


@app.post("/monomial/factor", response_model=schemas.MonomialFactorResponse)
def monomial_factor(req: schemas.MonomialFactorRequest) -> schemas.MonomialFactorResponse:
    mf = monomial_k_factor(tuple(req.exponents), req.k)
    dec = monomial_krank_upper(tuple(req.exponents), req.k)
    n = len(req.exponents)
    target = MultiForm(n, sum(req.exponents), {tuple(req.exponents): one(EXACT)})
    return schemas.MonomialFactorResponse(
        certificate=certificate_to_json(mf),
        m1=list(mf.m1),
        m2=list(mf.m2),
        powers=certificate_to_json(dec, target),
    )


@app.post("/verify/examples", response_model=schemas.ExamplesResponse)
def verify_examples(req: schemas.ExamplesRequest) -> schemas.ExamplesResponse:
    results = run_examples(names=req.names, jobs=req.jobs)
    return schemas.ExamplesResponse(
        ok=all(r.ok for r in results),
        cases=[
            schemas.ExampleCaseResult(
                name=r.name, ok=r.ok, detail=r.detail, seconds=r.seconds
            )
            for r in results
        ],
    )


@app.post("/verify/certificate", response_model=schemas.VerifyCertificateResponse)
def verify_cert(req: schemas.VerifyCertificateRequest) -> schemas.VerifyCertificateResponse:
    ok, detail = verify_certificate(req.certificate)
    return schemas.VerifyCertificateResponse(ok=ok, detail=detail)


def create_app() -> FastAPI:
    return app
