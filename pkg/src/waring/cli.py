"""Command-line entry point.

Runs every operation in-process by default; with ``--server URL`` the same
command becomes a thin HTTP client against a running service, and the output
is identical.  Exit codes: 0 success, 2 unparseable input, 3 violated
mathematical precondition, 4 search budget exhausted (the heuristic result is
still printed), 1 any other failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import app as service
from . import schemas
from .certificates import verify_certificate
from .errors import (
    AmbiguousNumericsError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
)
from .forms import BinaryForm
from .parsing import format_form, parse_scalar
from .scalars import EXACT, FLOAT

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4


def _env_seed():
    raw = os.environ.get("WARING_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseError("WARING_SEED must be an integer, got %r" % raw)


def _form_text(coeff_strings) -> str:
    coeffs = [parse_scalar(s) for s in coeff_strings]
    mode = FLOAT if any(c.mode == FLOAT for c in coeffs) else EXACT
    if mode == FLOAT:
        coeffs = [c.promote() for c in coeffs]
    return format_form(BinaryForm(len(coeffs) - 1, coeffs, mode))


def _render_power_sum(cert: dict) -> list:
    lines = []
    for term in cert.get("terms", []):
        lines.append(
            "  %s * (%s)^%d" % (term["lam"], term["form"], term["exponent"])
        )
    return lines


def _render_rank(p: dict) -> list:
    suffix = ", exceptional" if p["exceptional"] else ""
    return ["%d (%s%s)" % (p["value"], p["status"], suffix)]


def _render_series(p: dict) -> list:
    out = ["coefficients: " + " ".join(str(c) for c in p["coefficients"])]
    if not p["truncated_normal_form"]:
        out.append("warning: not in truncated normal form")
    return out


def _render_codim(p: dict) -> list:
    return ["codim %d" % p["codim"]]


def _render_cert_list(p: dict) -> list:
    return ["length %d" % p["length"]] + _render_power_sum(p["certificate"])


def _render_cubes(p: dict) -> list:
    cert = p["certificate"]
    lines = ["branch %s" % p["branch"]]
    for term in cert["terms"]:
        lines.append("  %s * (%s)^3" % (term["mu"], _form_text(term["q"])))
    if p.get("folded") is not None:
        lines.append("folded cubes:")
        lines.extend("  (%s)^3" % q for q in p["folded"])
    lines.append("residual %g" % p["residual"])
    return lines


def _render_canonical(p: dict) -> list:
    lines = ["p%d = %s" % (j, part) for j, part in enumerate(p["parts"])]
    if p["rescued_levels"]:
        lines.append(
            "rescued levels: " + ", ".join(str(j) for j in p["rescued_levels"])
        )
    return lines


def _render_krank(p: dict) -> list:
    lines = ["upper %d (%s)" % (p["upper"], p["method"])]
    lines += _render_power_sum(p["upperCertificate"])
    lines.append("lower %d (%s)" % (p["lower"], p["lowerConfidence"]))
    if p["heuristic"]:
        lines.append("warning: search budget exhausted; upper bound is heuristic")
    return lines


def _render_monomial(p: dict) -> list:
    cert = p["certificate"]
    lines = [
        "d = %d" % (sum(cert["exponents"]) // cert["k"]),
        "m1 = (%s)" % ", ".join(str(v) for v in p["m1"]),
        "m2 = (%s)" % ", ".join(str(v) for v in p["m2"]),
        "identity: a = m1 + %d*m2" % (cert["k"] - 1),
        "k-th power certificate: %d terms" % len(p["powers"]["terms"]),
    ]
    return lines


def _render_examples(p: dict) -> list:
    lines = []
    for case in p["cases"]:
        mark = "PASS" if case["ok"] else "FAIL"
        lines.append(
            "%s %-42s %6.2fs  %s" % (mark, case["name"], case["seconds"], case["detail"])
        )
    lines.append("all green" if p["ok"] else "FAILURES PRESENT")
    return lines


def _krank_exit(p: dict) -> int:
    return EXIT_BUDGET if p.get("heuristic") else EXIT_OK


def _examples_exit(p: dict) -> int:
    return EXIT_OK if p["ok"] else EXIT_FAIL


# command key -> (endpoint path, local function, renderer, exit-code override)
_COMMANDS = {
    "rank generic": ("/rank/generic", service.rank_generic, _render_rank, None),
    "rank series": ("/rank/series", service.rank_series, _render_series, None),
    "rank codim": ("/rank/codim", service.rank_codim, _render_codim, None),
    "decompose sylvester": (
        "/decompose/sylvester",
        service.decompose_sylvester,
        _render_cert_list,
        None,
    ),
    "decompose two-squares": (
        "/decompose/two-squares",
        service.decompose_two_squares,
        _render_cert_list,
        None,
    ),
    "decompose sextic-cubes": (
        "/decompose/sextic-cubes",
        service.decompose_sextic_cubes,
        _render_cubes,
        None,
    ),
    "decompose canonical": (
        "/decompose/canonical",
        service.decompose_canonical,
        _render_canonical,
        None,
    ),
    "krank bound": ("/krank/bound", service.krank_bound, _render_krank, _krank_exit),
    "monomial factor": (
        "/monomial/factor",
        service.monomial_factor,
        _render_monomial,
        None,
    ),
    "verify examples": (
        "/verify/examples",
        service.verify_examples,
        _render_examples,
        _examples_exit,
    ),
}


def _build_request(key: str, args):
    if key == "rank generic":
        return schemas.GenericRankRequest(n=args.n, k=args.k, d=args.d)
    if key == "rank series":
        try:
            degrees = [int(v) for v in args.degrees.split(",") if v.strip()]
        except ValueError:
            raise ParseError("--degrees wants a comma-separated integer list")
        if not degrees:
            raise ParseError("--degrees wants at least one degree")
        return schemas.SeriesRequest(n=args.n, degrees=degrees, cutoff=args.cutoff)
    if key == "rank codim":
        return schemas.CodimRequest(n=args.n, k=args.k, d=args.d, s=args.s)
    if key in ("decompose sylvester", "decompose two-squares"):
        return schemas.PolyRequest(poly=args.poly)
    if key == "decompose sextic-cubes":
        return schemas.SexticCubesRequest(poly=args.poly, fold=args.fold)
    if key == "decompose canonical":
        return schemas.CanonicalRequest(
            poly=args.poly, k=args.k, d=args.d, relaxed=args.relaxed
        )
    if key == "krank bound":
        seed = args.seed if args.seed is not None else _env_seed()
        return schemas.KrankBoundRequest(
            poly=args.poly, k=args.k, budget=args.budget, seed=seed
        )
    if key == "monomial factor":
        try:
            exps = [int(v) for v in args.exponents.split(",") if v.strip()]
        except ValueError:
            raise ParseError("--exponents wants a comma-separated integer list")
        if not exps:
            raise ParseError("--exponents wants at least one exponent")
        return schemas.MonomialFactorRequest(exponents=exps, k=args.k)
    if key == "verify examples":
        return schemas.ExamplesRequest(names=args.names or None, jobs=args.jobs)
    raise InternalConsistencyError("no request builder for %r" % key)  # pragma: no cover


def _call_server(url: str, path: str, request) -> dict:
    import httpx

    resp = httpx.post(url.rstrip("/") + path, json=request.model_dump(), timeout=600.0)
    if resp.status_code == 422:
        detail = resp.json()
        message = detail.get("error") or json.dumps(detail.get("detail", detail))
        raise ParseError(message)
    if resp.status_code == 400:
        raise PreconditionError(resp.json().get("error", resp.text))
    if resp.status_code != 200:
        raise RuntimeError("server returned %d: %s" % (resp.status_code, resp.text))
    return resp.json()


def _dispatch(key: str, args) -> int:
    path, local, render, exit_fn = _COMMANDS[key]
    request = _build_request(key, args)
    if args.server:
        payload = _call_server(args.server, path, request)
    else:
        payload = local(request).model_dump()
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in render(payload):
            print(line)
    return exit_fn(payload) if exit_fn else EXIT_OK


def _run_verify_cert(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        print("cannot read %s: %s" % (args.file, exc), file=sys.stderr)
        return EXIT_FAIL
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %s: %s" % (args.file, exc))
    if args.server:
        payload = _call_server(
            args.server,
            "/verify/certificate",
            schemas.VerifyCertificateRequest(certificate=doc),
        )
        ok, detail = payload["ok"], payload["detail"]
    else:
        ok, detail = verify_certificate(doc)
    if args.json:
        print(json.dumps({"ok": ok, "detail": detail}, indent=2, sort_keys=True))
    else:
        print("%s: %s" % ("ok" if ok else "FAILED", detail))
    return EXIT_OK if ok else EXIT_FAIL


def _run_serve(args) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waring",
        description="ranks and power-sum decompositions of polynomial forms",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON output")
    common.add_argument(
        "--server", metavar="URL", help="send the command to a running service"
    )
    top = parser.add_subparsers(dest="command", required=True)

    rank = top.add_parser("rank", help="generic rank queries").add_subparsers(
        dest="sub", required=True
    )
    p = rank.add_parser("generic", parents=[common], help="generic k-rank of forms")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--k", type=int, required=True, help="power of the summands")
    p.add_argument("--d", type=int, required=True, help="degree of the bases")
    p = rank.add_parser("series", parents=[common], help="truncated quotient series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degrees", required=True, help="comma-separated generator degrees")
    p.add_argument("--cutoff", type=int, required=True)
    p = rank.add_parser("codim", parents=[common], help="secant variety codimension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    dec = top.add_parser("decompose", help="power-sum decompositions").add_subparsers(
        dest="sub", required=True
    )
    p = dec.add_parser("sylvester", parents=[common], help="binary form into powers of linear forms")
    p.add_argument("--poly", required=True)
    p = dec.add_parser("two-squares", parents=[common], help="even-degree binary form as two squares")
    p.add_argument("--poly", required=True)
    p = dec.add_parser("sextic-cubes", parents=[common], help="binary sextic as three cubes")
    p.add_argument("--poly", required=True)
    p.add_argument("--fold", action="store_true", help="absorb weights by cube roots")
    p = dec.add_parser("canonical", parents=[common], help="nested-power canonical form")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--relaxed", action="store_true")

    kr = top.add_parser("krank", help="k-th rank bounds").add_subparsers(
        dest="sub", required=True
    )
    p = kr.add_parser("bound", parents=[common], help="upper and lower k-rank bounds")
    p.add_argument("--poly", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    mono = top.add_parser("monomial", help="monomial constructions").add_subparsers(
        dest="sub", required=True
    )
    p = mono.add_parser("factor", parents=[common], help="m = m1 * m2^(k-1) split")
    p.add_argument("--exponents", required=True, help="comma-separated exponents")
    p.add_argument("--k", type=int, required=True)

    ver = top.add_parser("verify", help="reproduction suite and certificates").add_subparsers(
        dest="sub", required=True
    )
    p = ver.add_parser(
        "examples",
        parents=[common],
        aliases=["paper-examples"],
        help="run the worked-example reproduction suite",
    )
    p.add_argument("names", nargs="*", help="optional case names (default: all)")
    p.add_argument("--jobs", type=int, default=None, help="run cases concurrently")
    p = ver.add_parser("cert", parents=[common], help="re-check a JSON certificate")
    p.add_argument("file", help="path to the certificate document")

    p = top.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            return _run_serve(args)
        if args.command == "verify" and args.sub == "cert":
            return _run_verify_cert(args)
        sub = "examples" if args.sub == "paper-examples" else args.sub
        return _dispatch("%s %s" % (args.command, sub), args)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, AmbiguousNumericsError) as exc:
        print("cannot decompose: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
