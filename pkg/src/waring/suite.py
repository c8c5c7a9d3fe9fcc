"""Named reproduction cases for the package's pinned worked computations.

Each case re-runs one documented computation end to end and checks the
published constants (with the corrections noted in the test suite where the
source display had typos).  Results come back sorted by case name so output
is deterministic regardless of execution order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .fiber import krank_lower_probe, krank_upper
from .forms import BinaryForm, MultiForm
from .parsing import parse_form
from .rankseries import generic_k_rank
from .sexticcubes import three_cubes
from .structured import canonical_form, monomial_k_factor, monomial_krank_upper
from .apolarity import catalecticant, sylvester_decompose
from .scalars import EXACT, FLOAT, scalar_str


@dataclass
class CaseResult:
    name: str
    ok: bool
    detail: str
    seconds: float


_CASES = {}


def _case(name):
    def register(fn):
        _CASES[name] = fn
        return fn

    return register


def case_names():
    return sorted(_CASES)


def run_examples(names=None, jobs=None):
    """Run reproduction cases (all by default); results sorted by name."""
    if names is None:
        picked = sorted(_CASES)
    else:
        picked = sorted(names)
        unknown = [n for n in picked if n not in _CASES]
        if unknown:
            raise PreconditionError("unknown case name(s): %s" % ", ".join(unknown))

    def run_one(name):
        start = time.perf_counter()
        try:
            detail = _CASES[name]()
            ok = True
        except AssertionError as exc:
            detail, ok = "assertion failed: %s" % exc, False
        except Exception as exc:  # a crashed case is a failed case
            detail, ok = "%s: %s" % (type(exc).__name__, exc), False
        return CaseResult(name, ok, detail, time.perf_counter() - start)

    if jobs is not None and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, picked))
    else:
        results = [run_one(name) for name in picked]
    return sorted(results, key=lambda r: r.name)


# -- helpers ------------------------------------------------------------------------


def _closec(a, b, tol=1e-9):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


def _piece(mu, q):
    return (q ** 3).scale(mu)


def _has_piece(cert, expected, tol=1e-8):
    """Does some term of the certificate expand to the expected sextic?"""
    return any(_piece(mu, q).promote().close_to(expected, tol) for mu, q in cert.terms)


# -- sum-of-three-cubes worked sextics ----------------------------------------------


@_case("cubes-first-sextic-exact-identity")
def _cubes_first():
    p = parse_form("x^6 + 3x^5y - 3x^4y^2 - 11x^3y^3 + 9x^2y^4 + 21xy^5 - y^6")
    cert = three_cubes(p)
    assert cert.branch == "generic", cert.branch
    got = {(scalar_str(mu), tuple(scalar_str(c) for c in q.coeffs)) for mu, q in cert.terms}
    want = {
        ("1", ("1", "1", "-2")),
        ("-1", ("0", "1", "1")),
        ("1", ("0", "1", "2")),
    }
    assert got == want, got
    assert cert.residual == 0.0
    return "three exact integer cubes recovered term for term"


@_case("cubes-palindromic-sextic-surd-weights")
def _cubes_palindromic():
    p = parse_form("x^6 + x^5y + x^4y^2 + x^3y^3 + x^2y^4 + xy^5 + y^6")
    cert = three_cubes(p)
    assert cert.branch == "generic", cert.branch
    assert len(cert.terms) == 3
    s = math.sqrt(20153)
    lead = parse_form("x^2 + 1/3*x*y + 2/9*y^2").promote()
    assert _has_piece(cert, _piece(1.0, lead)), "leading cube missing"
    scale = Fraction(7, 729)
    for sign in (+1, -1):
        w = (20153 + sign * 134 * s) / 354209128
        ell = BinaryForm(2, [0.0, 78.0, 173.0 - sign * s], FLOAT)
        assert _has_piece(cert, _piece(float(scale) * w, ell)), "surd cube %+d missing" % sign
    assert cert.residual <= 1e-10
    return "both conjugate surd cubes match the published constants"


@_case("cubes-quintic-tail-sextic")
def _cubes_quintic_tail():
    p = parse_form("x^6 + 3x^5y + y^6")
    cert = three_cubes(p)
    assert cert.branch == "generic", cert.branch
    lead = parse_form("x^2 + x*y - y^2").promote()
    assert _has_piece(cert, _piece(1.0, lead)), "leading cube missing"
    r5 = math.sqrt(5)
    for sign in (+1, -1):
        w = (20 - sign * 9 * r5) / 20
        ell = BinaryForm(2, [0.0, -5.0 - sign * 2 * r5, 1.0], FLOAT)
        assert _has_piece(cert, _piece(w, ell)), "surd cube %+d missing" % sign
    assert cert.residual <= 1e-10
    return "residual cubic split into the two published surd cubes"


@_case("cubes-shear-fallback-sextic")
def _cubes_shear():
    p = parse_form("x^6 + 3xy^5 + y^6")
    cert = three_cubes(p)
    assert cert.branch == "p1-branch", cert.branch
    assert len(cert.terms) == 3
    assert any(
        _closec(mu.to_complex(), 1)
        and all(_closec(c.to_complex(), v) for c, v in zip(q.promote().coeffs, (6, 11, 4)))
        for mu, q in cert.terms
    ), cert.terms
    u = math.sqrt(5632445)
    weights = []
    for sign in (+1, -1):
        alpha = (6727 + sign * u) / 2282
        # published beta denominator 326 is off by a factor 7; 2282 = 7*326
        beta = (9009 + sign * u) / 2282
        match = None
        for mu, q in cert.terms:
            a, b, c = (z.to_complex() for z in q.promote().coeffs)
            if abs(c) < 1e-12:
                continue
            if _closec(a / c, alpha, 1e-7) and _closec(b / c, beta, 1e-7):
                match = mu.to_complex() * c ** 3
                break
        assert match is not None, "no quadratic with alpha=%r" % alpha
        weights.append(match)
    total = weights[0] + weights[1]
    assert _closec(total, -63, 1e-6), total
    assert cert.residual <= 1e-10
    return "shear branch reproduces the corrected weights (sum -63) and quadratics"


# -- apolarity on the residual cubic -------------------------------------------------


@_case("sylvester-residual-cubic-two-cubes")
def _sylvester_cubic():
    h = parse_form("3x^2y + 9xy^2 + 7y^3")
    ker = catalecticant(h.to_multi(), 2).kernel_forms()
    assert len(ker) == 1
    kq = {exps: c for exps, c in ker[0].terms.items()}
    ref = {(2, 0): 2, (1, 1): -3, (0, 2): 1}
    pairs = [(kq.get(e), v) for e, v in ref.items()]
    assert all(c is not None for c, _ in pairs) and len(kq) == 3
    assert all(
        pairs[i][0] * pairs[j][1] == pairs[j][0] * pairs[i][1]
        for i in range(3)
        for j in range(i + 1, 3)
    ), kq
    dec = sylvester_decompose(h)
    rec = dec.reconstruct()
    assert rec == h, rec
    expanded = {}
    for lam, ell, e in dec.terms:
        key = tuple(scalar_str(c) for c in (ell ** e).coeffs)
        expanded[key] = scalar_str(lam)
    want = {
        tuple(scalar_str(c) for c in (parse_form("x + y") ** 3).coeffs): "-1",
        tuple(scalar_str(c) for c in (parse_form("x + 2y").scale(Fraction(1, 2)) ** 3).coeffs): "8",
    }
    assert expanded == want, expanded
    return "annihilator quadratic (x-y)(2x-y) and weights -1, +1 recovered"


# -- fiber examples -------------------------------------------------------------------


@_case("octic-fiber-upper-bound")
def _octic_upper():
    f = parse_form("x^6y^2 - x^3y^5 + x^2y^6 - xy^7")
    res = krank_upper(f, 4)
    assert res.bound == 4, res.bound
    assert res.method == "fiber-conics", res.method
    assert not res.heuristic
    assert tuple(res.fiber_c) == (0, 0, 0, 0, -1, 0), res.fiber_c
    assert res.verify(f)
    got = {
        (scalar_str(lam), tuple(scalar_str(c) for c in g.coeffs))
        for lam, g, e in res.decomposition.terms
    }
    want = {
        ("1/8", ("0", "1", "-1")),
        ("-1/8", ("0", "1", "1")),
        ("-1/8", ("1", "0", "-1")),
        ("1/8", ("1", "0", "1")),
    }
    assert got == want, got
    eight_f = (
        parse_form("xy - y^2") ** 4
        - (parse_form("x^2 - y^2") ** 4)
        + parse_form("x^2 + y^2") ** 4
        - (parse_form("xy + y^2") ** 4)
    )
    assert eight_f == f.scale(8)
    return "fourth-power certificate of length 4 at fiber point (0,0,0,0,-1,0)"


@_case("seventh-power-lower-stratification")
def _seventh_power():
    m = parse_form("xy^7")
    lower, confidence = krank_lower_probe(m, 4, i=2)
    assert (lower, confidence) == (4, "certified"), (lower, confidence)
    up = krank_upper(m, 4)
    assert up.bound == 4 and up.method == "monomial"
    assert up.verify(m)
    return "stratified probe certifies lower bound 4; monomial route matches above"


# -- generic rank spot values ---------------------------------------------------------


@_case("generic-rank-binary-spot-values")
def _rank_spots():
    a = generic_k_rank(2, 3, 2)
    assert (a.value, a.status) == (3, "proven"), (a.value, a.status)
    for k, d, want in ((2, 3, 2), (4, 2, 3), (3, 4, 3), (5, 3, 4)):
        r = generic_k_rank(2, k, d)
        assert r.value == want and r.status == "proven", (k, d, r.value)
        assert r.value == -(-(k * d + 1) // (d + 1))
    return "closed-form binary values agree with the ceiling formula"


@_case("generic-rank-square-exception-tables")
def _rank_tables():
    for d in range(1, 9):
        r = generic_k_rank(3, 2, d)
        base = -(-math.comb(2 * d + 2, 2) // math.comb(d + 2, 2))
        want = base + (1 if d in (1, 3, 4) else 0)
        assert r.value == want and r.status == "proven", (3, d, r.value, want)
        assert r.exceptional == (d in (1, 3, 4))
    for d in range(1, 7):
        r = generic_k_rank(4, 2, d)
        base = -(-math.comb(2 * d + 3, 3) // math.comb(d + 3, 3))
        want = base + (1 if d in (1, 2) else 0)
        assert r.value == want and r.status == "proven", (4, d, r.value, want)
        assert r.exceptional == (d in (1, 2))
    return "ternary and quaternary sums-of-squares tables match, bumps included"


# -- monomial k-th power construction -------------------------------------------------


@_case("monomial-greedy-split")
def _monomial_split():
    mf = monomial_k_factor((3, 10, 11), 4)
    assert mf.d == 6 and mf.b == 1, (mf.d, mf.b)
    assert tuple(mf.r) == (0, 1, 2) and tuple(mf.q) == (1, 3, 3), (mf.r, mf.q)
    assert tuple(mf.m1) == (0, 4, 2) and tuple(mf.m2) == (1, 2, 3), (mf.m1, mf.m2)
    assert mf.check()
    return "split (3,10,11) = m1 + 3*m2 with m1=(0,4,2), m2=(1,2,3)"


@_case("monomial-four-fourth-powers")
def _monomial_powers():
    dec = monomial_krank_upper((3, 10, 11), 4)
    assert dec.length == 4
    assert all(e == 4 for _, _, e in dec.terms)
    target = MultiForm(3, 24, {(3, 10, 11): Fraction(1)})
    assert dec.reconstruct() == target
    return "degree-24 monomial rebuilt exactly from 4 fourth powers"


# -- nested-power canonical form -------------------------------------------------------


@_case("canonical-pure-power-shortcut")
def _canonical_pure():
    p = parse_form("x^2 + xy") ** 3
    cf = canonical_form(p, 3, 2)
    assert len(cf.parts) == 3
    assert cf.parts[0] == parse_form("x^2 + xy"), cf.parts[0]
    assert cf.parts[1].is_zero() and cf.parts[2].is_zero()
    assert cf.reconstruct() == p
    return "perfect cube collapses to p0 = x^2 + xy with zero higher parts"


@_case("canonical-octic-roundtrip")
def _canonical_octic():
    import random

    rng = random.Random(20260814)
    coeffs = [Fraction(1)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8)]
    p = BinaryForm(8, coeffs, EXACT)
    cf = canonical_form(p, 2, 4)
    assert cf.variant == "unique"
    assert cf.parts[0].coeffs[4].is_zero(), cf.parts[0]
    assert cf.reconstruct() == p
    assert sum(d + 1 for d in [4, 4]) - 1 == 2 * 4 + 1
    return "unique nested-square form of a random octic reconstructs exactly"
