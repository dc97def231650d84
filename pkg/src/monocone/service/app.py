"""FastAPI service exposing the toolkit; the CLI is a thin client of this app.

Domain errors map to HTTP 400, parse errors to HTTP 422 (with position), and
mathematically negative verdicts are ordinary 200 responses.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import monomials as mn
from .. import parsing, planecones, regular, sequences
from ..errors import DomainError, ParseError
from ..semigroups import (
    AffineSemigroup,
    group_rank,
    is_full,
    is_normal,
    is_positive,
    membership,
    split_positive,
)
from . import schemas

app = FastAPI(title="monocone", version="0.1.0")


@app.exception_handler(DomainError)
async def domain_error_handler(request: Request, exc: DomainError):
    return JSONResponse(status_code=400, content=_jsonable(exc.payload()))


@app.exception_handler(ParseError)
async def parse_error_handler(request: Request, exc: ParseError):
    return JSONResponse(status_code=422, content=_jsonable(exc.payload()))


def _or_default(value, default):
    return default if value is None else value


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, mn.Monomial):
        return list(value.exponents)
    return value


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/betti", response_model=schemas.BettiResponse)
def betti(req: schemas.BettiRequest):
    variables = parsing.parse_variables(req.variables)
    gens = parsing.parse_monomial_list(req.ideal, variables)
    table = mn.betti_table(mn.ideal(gens, len(variables)), _or_default(req.cap, mn.DEFAULT_GENERATOR_CAP))
    return {"total": list(table.total), "pd": table.pd}


@app.post("/pd", response_model=schemas.PdResponse)
def pd(req: schemas.BettiRequest):
    variables = parsing.parse_variables(req.variables)
    gens = parsing.parse_monomial_list(req.ideal, variables)
    table = mn.betti_table(mn.ideal(gens, len(variables)), _or_default(req.cap, mn.DEFAULT_GENERATOR_CAP))
    return {"pd": table.pd}


@app.post("/cd", response_model=schemas.CdResponse)
def cd(req: schemas.BettiRequest):
    variables = parsing.parse_variables(req.variables)
    gens = parsing.parse_monomial_list(req.ideal, variables)
    return {"cd": mn.cd(mn.ideal(gens, len(variables)), _or_default(req.cap, mn.DEFAULT_GENERATOR_CAP))}


@app.post("/regseq", response_model=schemas.RegseqResponse)
def regseq(req: schemas.SequenceRequest):
    variables = parsing.parse_variables(req.variables)
    items = parsing.parse_monomial_list(req.sequence, variables)
    report = regular.pd_criterion(items, _or_default(req.cap, mn.DEFAULT_GENERATOR_CAP))
    return _jsonable(report.payload())


@app.post("/paramseq", response_model=schemas.ParamseqResponse)
def paramseq(req: schemas.SequenceRequest):
    variables = parsing.parse_variables(req.variables)
    items = parsing.parse_monomial_list(req.sequence, variables)
    heights = []
    ok = True
    for j in range(1, len(items) + 1):
        prefix = mn.ideal(items[:j], len(variables))
        if not prefix.is_proper():
            ok = False
            heights.append(-1)
            continue
        h = mn.height(prefix)
        heights.append(h)
        if h != j:
            ok = False
    return {"parameter_sequence": ok and regular.is_parameter_sequence_poly(items), "prefix_heights": heights}


@app.post("/classify", response_model=schemas.ClassifyResponse)
def classify(req: schemas.ConeRequest):
    cone = parsing.parse_cone(req.cone)
    model = planecones.classify(cone, _or_default(req.box_radius, planecones.DEFAULT_BOX_RADIUS))
    return _jsonable(model.to_doc())


@app.post("/halflines", response_model=schemas.HalflinesResponse)
def halflines(req: schemas.ConeRequest):
    cone = parsing.parse_cone(req.cone)
    ray1, ray2, facts = planecones.bounding_halflines(
        cone, _or_default(req.box_radius, planecones.DEFAULT_BOX_RADIUS)
    )
    return {"ray1": ray1, "ray2": ray2, "facts": [_jsonable(f.payload()) for f in facts]}


@app.post("/normalize", response_model=schemas.NormalizeResponse)
def normalize(req: schemas.NormalizeRequest):
    t, phi, checks = planecones.normalize_map([tuple(g) for g in req.generators])
    return {"t": t, "phi": [list(r) for r in phi], "checks": _jsonable(checks.payload())}


@app.post("/reject-pair", response_model=schemas.RejectPairResponse)
def reject_pair(req: schemas.PairRequest):
    f = parsing.parse_int_pair(req.f)
    g = parsing.parse_int_pair(req.g)
    cert, powers = planecones.param_pair_reject(
        req.tag, f, g, _or_default(req.power_bound, planecones.DEFAULT_POWER_BOUND)
    )
    return {"certificate": list(cert), "powers": powers}


@app.post("/model-regular", response_model=schemas.ModelRegularResponse)
def model_regular(req: schemas.PairRequest):
    f = parsing.parse_int_pair(req.f)
    g = parsing.parse_int_pair(req.g)
    flag, witness = planecones.model_regular_pair(req.tag, f, g, req.radius)
    return {"regular": flag, "witness": list(witness) if witness else None}


@app.post("/lazard-resolve", response_model=schemas.FamilyResponse)
def lazard_resolve(req: schemas.LazardRequest):
    support = parsing.parse_support(req.support)
    betas = parsing.parse_finseq_list(req.betas)
    if req.alpha is not None:
        alpha = parsing.parse_finseq(req.alpha)
        family = sequences.extend_mixed(betas, alpha, support)
        declared = betas + [alpha]
    else:
        family = sequences.adjoin_closure(betas, support)
        declared = betas
    coords = []
    for v in declared:
        c = family.coordinates(v)
        coords.append(
            {
                "input": v.to_doc(),
                "coordinates": [str(x) for x in c] if c is not None else None,
            }
        )
    doc = family.to_doc()
    return {"members": doc["members"], "support": doc["support"], "coordinates": coords}


@app.post("/direct-system", response_model=schemas.DirectSystemResponse)
def direct_system(req: schemas.DirectSystemRequest):
    support = parsing.parse_support(req.support)
    points = parsing.parse_finseq_list(req.points)
    families, transitions = sequences.build_direct_system(points, support, req.depth)
    return {
        "families": [f.to_doc() for f in families],
        "transitions": transitions,
    }


@app.post("/semigroup-check", response_model=schemas.SemigroupCheckResponse)
def semigroup_check(req: schemas.SemigroupCheckRequest):
    s = AffineSemigroup.from_doc(req.semigroup)
    prop = req.property
    if prop == "positive":
        return {"property": prop, "result": _jsonable(is_positive(s).payload())}
    if prop == "normal":
        return {"property": prop, "result": _jsonable(is_normal(s).payload())}
    if prop == "rank":
        return {"property": prop, "result": group_rank(s)}
    if prop == "membership":
        if req.vector is None:
            raise ParseError("membership needs a vector", 0)
        return {"property": prop, "result": _jsonable(membership(s, tuple(req.vector)).payload())}
    if prop == "full":
        if req.sup is None:
            raise ParseError("fullness needs a supersemigroup", 0)
        sup = AffineSemigroup.from_doc(req.sup)
        return {"property": prop, "result": _jsonable(is_full(s, sup).payload())}
    if prop == "split":
        k, embedding, positive_part = split_positive(s)
        return {
            "property": prop,
            "result": {
                "unit_rank": k,
                "embedding": [list(r) for r in embedding],
                "positive_part": positive_part.to_doc(),
            },
        }
    raise ParseError(f"unknown property {prop!r}", 0)
