"""Self-contained JSON certificates.

Every decomposition can be serialized to a versioned document whose numbers
are exact strings in exact mode (or decimals in float mode) and re-verified
later from the document alone.  Verification reparses all numbers, rebuilds
the presentation, and compares it against the embedded input: exact equality
in exact mode, relative coefficient closeness in float mode.
"""

from __future__ import annotations

from .apolarity import WaringDecomposition
from .errors import ParseError
from .fiber import KrankBound
from .forms import BinaryForm, MultiForm
from .parsing import format_form, parse_form, parse_scalar
from .scalars import EXACT, FLOAT, scalar_str
from .sexticcubes import CubesCertificate
from .structured import CanonicalForm, MonomialFactorization

SCHEMA_VERSION = 1
DEFAULT_TOL = 1e-8


def _mode_name(mode: str) -> str:
    return "exact" if mode == EXACT else "float"


def _mode_of(doc) -> str:
    name = doc.get("mode", "exact")
    if name not in ("exact", "float"):
        raise ParseError("unknown scalar mode %r" % name)
    return EXACT if name == "exact" else FLOAT


def _require(doc, *keys):
    for key in keys:
        if key not in doc:
            raise ParseError("certificate is missing the %r field" % key)


def _envelope(kind: str, input_form, mode: str) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "mode": _mode_name(mode),
        "input": format_form(input_form),
    }


def _decomposition_mode(dec: WaringDecomposition, input_form) -> str:
    if input_form.mode == FLOAT:
        return FLOAT
    for lam, g, _ in dec.terms:
        if lam.mode == FLOAT or g.mode == FLOAT:
            return FLOAT
    return EXACT


def certificate_to_json(obj, input_form=None, **meta) -> dict:
    """Serialize a decomposition against the form it presents.

    ``meta`` entries (method, fiber point, heuristic flag, ...) are copied
    into the document unchanged when JSON-representable.
    """
    if isinstance(obj, KrankBound):
        doc = certificate_to_json(
            obj.decomposition,
            input_form,
            method=obj.method,
            heuristic=obj.heuristic,
            **meta,
        )
        if obj.fiber_c is not None:
            doc["fiberPoint"] = [
                scalar_str(v) if not isinstance(v, (int, str)) else str(v)
                for v in obj.fiber_c
            ]
        return doc
    if isinstance(obj, WaringDecomposition):
        if input_form is None:
            raise ParseError("a power-sum certificate needs its target form")
        mode = _decomposition_mode(obj, input_form)
        doc = _envelope("power-sum", input_form, mode)
        nvars = 2 if isinstance(input_form, BinaryForm) else input_form.nvars
        doc["nvars"] = nvars
        doc["degree"] = input_form.degree
        doc["terms"] = [
            {
                "lam": scalar_str(lam),
                "form": format_form(g),
                "exponent": e,
            }
            for lam, g, e in obj.terms
        ]
        doc.update(meta)
        return doc
    if isinstance(obj, CubesCertificate):
        if input_form is None:
            raise ParseError("a cube certificate needs its target form")
        mode = input_form.mode
        if any(mu.mode == FLOAT or q.mode == FLOAT for mu, q in obj.terms):
            mode = FLOAT
        doc = _envelope("sextic-cubes", input_form, mode)
        doc.update(obj.to_json_dict())
        doc.update(meta)
        return doc
    if isinstance(obj, CanonicalForm):
        if input_form is None:
            raise ParseError("a canonical-form certificate needs its target form")
        mode = FLOAT if any(p.mode == FLOAT for p in obj.parts) else input_form.mode
        doc = _envelope("canonical-form", input_form, mode)
        doc["k"] = obj.k
        doc["d"] = obj.d
        doc["variant"] = obj.variant
        doc["rescuedLevels"] = list(obj.rescued_levels)
        doc["parts"] = [format_form(p) for p in obj.parts]
        doc.update(meta)
        return doc
    if isinstance(obj, MonomialFactorization):
        doc = {
            "schema": SCHEMA_VERSION,
            "kind": "monomial-factorization",
            "mode": "exact",
            "exponents": list(obj.exponents),
            "k": obj.k,
            "d": obj.d,
            "m1": list(obj.m1),
            "m2": list(obj.m2),
            "allocation": list(obj.b_each),
        }
        doc.update(meta)
        return doc
    raise ParseError("no JSON certificate for %r" % type(obj).__name__)


# -- verification -----------------------------------------------------------------


def _check_against(target, rebuilt, mode: str, tol: float):
    if mode == EXACT and target.mode == EXACT and rebuilt.mode == EXACT:
        if rebuilt == target:
            return True, "reconstructed exactly"
        return False, "exact reconstruction differs from the input"
    if rebuilt.close_to(target, tol):
        return True, "reconstructed within tolerance %g" % tol
    return False, "reconstruction residual exceeds tolerance %g" % tol


def _verify_power_sum(doc) -> tuple:
    _require(doc, "input", "terms", "degree")
    nvars = doc.get("nvars", 2)
    target = parse_form(
        doc["input"],
        nvars=None if nvars == 2 else nvars,
        degree=int(doc["degree"]),
    )
    mode = _mode_of(doc)
    tol = float(doc.get("tolerance", DEFAULT_TOL))
    if not doc["terms"]:
        zero_ok = target.is_zero(tol if mode == FLOAT else 0.0)
        return (True, "empty presentation of the zero form") if zero_ok else (
            False,
            "empty presentation of a nonzero form",
        )
    acc = None
    for term in doc["terms"]:
        _require(term, "lam", "form", "exponent")
        lam = parse_scalar(term["lam"])
        g = parse_form(term["form"], nvars=None if nvars == 2 else nvars)
        piece = (g ** int(term["exponent"])).scale(lam)
        if acc is None:
            acc = piece
        else:
            if acc.mode != piece.mode:
                acc, piece = acc.promote(), piece.promote()
            acc = acc + piece
    if acc.degree != target.degree:
        return False, "terms have degree %d, input has degree %d" % (
            acc.degree,
            target.degree,
        )
    return _check_against(target, acc, mode, tol)


def _verify_cubes(doc) -> tuple:
    _require(doc, "input", "terms", "branch")
    target = parse_form(doc["input"], degree=6)
    mode = _mode_of(doc)
    tol = float(doc.get("tolerance", DEFAULT_TOL))
    if len(doc["terms"]) > 3:
        return False, "more than three cubes listed"
    acc = None
    for term in doc["terms"]:
        _require(term, "mu", "q")
        mu = parse_scalar(term["mu"])
        coeffs = [parse_scalar(t) for t in term["q"]]
        if len(coeffs) != 3:
            return False, "cube bases must be quadratics"
        qmode = FLOAT if mu.mode == FLOAT or any(c.mode == FLOAT for c in coeffs) else EXACT
        if qmode == FLOAT:
            mu = mu.promote()
            coeffs = [c.promote() for c in coeffs]
        q = BinaryForm(2, coeffs, qmode)
        piece = (q ** 3).scale(mu)
        if acc is None:
            acc = piece
        else:
            if acc.mode != piece.mode:
                acc, piece = acc.promote(), piece.promote()
            acc = acc + piece
    if acc is None:
        zero_ok = target.is_zero(tol if mode == FLOAT else 0.0)
        return (True, "empty presentation of the zero form") if zero_ok else (
            False,
            "empty presentation of a nonzero form",
        )
    return _check_against(target, acc, mode, tol)


def _verify_canonical(doc) -> tuple:
    _require(doc, "input", "parts", "k", "d")
    k, d = int(doc["k"]), int(doc["d"])
    target = parse_form(doc["input"], degree=k * d)
    parts = [parse_form(text, degree=d) for text in doc["parts"]]
    if len(parts) != k:
        return False, "expected %d parts, found %d" % (k, len(parts))
    if any(not isinstance(p, BinaryForm) or p.degree != d for p in parts):
        return False, "parts must be binary forms of degree %d" % d
    cf = CanonicalForm(parts, k, d, doc.get("variant", "unique"))
    rebuilt = cf.reconstruct()
    mode = _mode_of(doc)
    tol = float(doc.get("tolerance", DEFAULT_TOL))
    return _check_against(target, rebuilt, mode, tol)


def _verify_monomial(doc) -> tuple:
    _require(doc, "exponents", "k", "m1", "m2")
    a = [int(v) for v in doc["exponents"]]
    k = int(doc["k"])
    m1 = [int(v) for v in doc["m1"]]
    m2 = [int(v) for v in doc["m2"]]
    if len(m1) != len(a) or len(m2) != len(a):
        return False, "exponent vectors have mismatched lengths"
    if any(v < 0 for v in m1 + m2):
        return False, "negative exponents in the factorization"
    if sum(a) % k:
        return False, "total degree %d is not a multiple of %d" % (sum(a), k)
    d = sum(a) // k
    if sum(m1) != d or sum(m2) != d:
        return False, "factor degrees differ from %d" % d
    if any(x != u + (k - 1) * v for x, u, v in zip(a, m1, m2)):
        return False, "m1 + (k-1)*m2 does not reproduce the exponents"
    return True, "monomial factorization identity holds"


def _verify_krank(doc) -> tuple:
    _require(doc, "upper", "upperCertificate", "lower")
    ok, detail = verify_certificate(doc["upperCertificate"])
    if not ok:
        return False, "upper certificate failed: %s" % detail
    upper = int(doc["upper"])
    declared = len(doc["upperCertificate"].get("terms", []))
    if declared != upper:
        return False, "upper bound %d does not match the %d-term certificate" % (
            upper,
            declared,
        )
    if int(doc["lower"]) > upper:
        return False, "lower bound exceeds upper bound"
    return True, "bounds consistent; %s" % detail


_VERIFIERS = {
    "power-sum": _verify_power_sum,
    "sextic-cubes": _verify_cubes,
    "canonical-form": _verify_canonical,
    "monomial-factorization": _verify_monomial,
    "krank-bound": _verify_krank,
}


def verify_certificate(doc) -> tuple:
    """Re-check a certificate document; returns (ok, detail).

    Malformed documents raise ParseError; well-formed documents that fail
    their mathematical check return ``(False, reason)``.
    """
    if not isinstance(doc, dict):
        raise ParseError("certificate must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise ParseError("unsupported certificate schema %r" % doc.get("schema"))
    kind = doc.get("kind")
    if kind not in _VERIFIERS:
        raise ParseError("unknown certificate kind %r" % kind)
    return _VERIFIERS[kind](doc)
