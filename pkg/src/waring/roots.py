"""Projective roots and linear factorizations of binary forms.

Points on the projective line are scalar pairs ``(a, b)`` meaning ``(a : b)``,
normalized so that ``a == 1`` for finite points and ``(0, 1)`` for the point
at infinity (in the ``t = y/x`` chart).  The linear form vanishing at
``(a : b)`` is ``b*x - a*y``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import AmbiguousNumericsError, PreconditionError
from .forms import BinaryForm
from .linalg import DUAL_PRIMES
from .scalars import EXACT, Scalar, exact_int_vector, one, sc_exact, sc_float, zero

# Candidate exact roots probed before giving up on a high-degree factor.
_PROBE_BASE = [
    0,
    1,
    -1,
    2,
    -2,
    Fraction(1, 2),
    Fraction(-1, 2),
    3,
    -3,
    Fraction(1, 3),
    Fraction(-1, 3),
    Fraction(3, 2),
    Fraction(-3, 2),
]

SQUARE_FREE_LOW = 1e-9
SQUARE_FREE_HIGH = 1e-8


def _probe_candidates():
    for c in _PROBE_BASE:
        yield sc_exact(c)
    for c in _PROBE_BASE:
        if c != 0:
            yield sc_exact(0, c)
    for c in (1, -1, 2, -2):
        for d in (1, -1, 2, -2):
            yield sc_exact(c, d)


def _poly_eval(coeffs, t: Scalar) -> Scalar:
    acc = zero(t.mode)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _deflate(coeffs, r: Scalar):
    """Synthetic division of sum(coeffs[j] t^j) by (t - r); remainder dropped."""
    n = len(coeffs) - 1
    out = [zero(r.mode)] * n
    carry = coeffs[n]
    for j in range(n - 1, -1, -1):
        out[j] = carry
        carry = coeffs[j] + carry * r
    return out


def _exact_quadratic(c0, c1, c2):
    disc = c1 * c1 - sc_exact(4) * c2 * c0
    root = disc.sqrt_exact()
    if root is None:
        return None
    inv = (sc_exact(2) * c2).inverse()
    return [(-c1 + root) * inv, (-c1 - root) * inv]


def _probe_hit(cur):
    """First probe candidate that is a root of the polynomial, or None."""
    ints = exact_int_vector(cur)
    if ints is None:
        for cand in _probe_candidates():
            if _poly_eval(cur, cand).is_zero():
                return cand
        return None
    # homogeneous Horner in plain ints: value * q^deg at t = p/q
    for cand in _probe_candidates():
        t = cand.re
        p, q = t.numerator, t.denominator
        acc = ints[-1]
        qk = 1
        for c in reversed(ints[:-1]):
            qk *= q
            acc = acc * p + c * qk
        if acc == 0:
            return cand
    return None


def _exact_roots(coeffs):
    """All roots of an exact dense polynomial, or None if any is irrational."""
    cur = list(coeffs)
    while len(cur) > 1 and cur[-1].is_zero():
        cur.pop()
    found = []
    while len(cur) > 1:
        deg = len(cur) - 1
        if deg == 1:
            found.append(-cur[0] / cur[1])
            cur = [cur[1]]
            continue
        if deg == 2:
            pair = _exact_quadratic(cur[0], cur[1], cur[2])
            if pair is None:
                return None
            found.extend(pair)
            cur = [cur[2]]
            continue
        hit = _probe_hit(cur)
        if hit is None:
            return None
        found.append(hit)
        cur = _deflate(cur, hit)
    return found


def _float_roots(coeffs):
    z = [c.to_complex() for c in coeffs]
    while len(z) > 1 and abs(z[-1]) == 0.0:
        z.pop()
    if len(z) <= 1:
        return []
    raw = np.roots(list(reversed(z)))  # numpy wants leading coefficient first
    dz = [c * j for j, c in enumerate(z)][1:]
    scale = max(abs(c) for c in z)
    out = []
    for r in raw:
        t = complex(r)
        for _ in range(2):
            dv = _eval_c(dz, t)
            if abs(dv) <= 1e-8 * scale:
                break  # multiple root; Newton would blow up
            t = t - _eval_c(z, t) / dv
        out.append(sc_float(t))
    return out


def _eval_c(coeffs, t: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _root_sort_key(point):
    a, b = point
    if a.is_zero():
        return (1, 0.0, 0.0)
    t = (b / a).to_complex()
    return (0, round(t.real, 9), round(t.imag, 9))


def projective_roots(f: BinaryForm, allow_float: bool = True):
    """All projective roots of a nonzero binary form, with multiplicity.

    Returns normalized points ``(1, t)`` and possibly ``(0, 1)``.  For exact
    input the roots are exact whenever every root is expressible over the
    Gaussian rationals reachable by the closed forms and the candidate probe;
    otherwise all roots are returned in float mode (or ``None`` is returned
    when ``allow_float`` is false).
    """
    if f.is_zero():
        raise PreconditionError("the zero form has no well-defined root set")
    if f.degree == 0:
        return []
    ty = f.y_multiplicity()
    core = f.shift_down_y(ty)
    tx = core.x_multiplicity()
    core = core.shift_down_x(tx)
    pts = [(zero(f.mode), one(f.mode))] * tx
    pts += [(one(f.mode), zero(f.mode))] * ty
    if core.degree > 0:
        if f.mode == EXACT:
            taus = _exact_roots(core.coeffs)
            if taus is None:
                if not allow_float:
                    return None
                taus = _float_roots([c.promote() for c in core.coeffs])
                pts = [(a.promote(), b.promote()) for a, b in pts]
        else:
            taus = _float_roots(core.coeffs)
        mode = taus[0].mode if taus else f.mode
        if pts and pts[0][0].mode != mode:
            pts = [(a.promote(), b.promote()) for a, b in pts]
        pts += [(one(mode), t) for t in taus]
    if len(pts) != f.degree:
        raise PreconditionError("root extraction lost a root")
    pts.sort(key=_root_sort_key)
    return pts


def vanishing_linear_form(point) -> BinaryForm:
    """The linear form b*x - a*y cutting out the point (a : b)."""
    a, b = point
    return BinaryForm(1, [b, -a], b.mode)


def linear_factors(f: BinaryForm):
    """Split a nonzero binary form as ``c * prod_j ell_j`` with linear ell_j.

    Returns ``(c, [ell_1, ..., ell_D])``.  Float factorizations are approximate
    but re-multiply to the input within root-finding accuracy.
    """
    pts = projective_roots(f)
    ells = [vanishing_linear_form(p) for p in pts]
    prod = BinaryForm(0, [one(ells[0].mode if ells else f.mode)])
    for ell in ells:
        prod = prod * ell
    target = f if prod.mode == f.mode else f.promote()
    j_best = max(range(f.degree + 1), key=lambda j: float(target.coeffs[j].abs2()))
    c = target.coeffs[j_best] / prod.coeffs[j_best]
    return c, ells


def chordal_distance(p, q) -> float:
    """Fubini-Study style distance between projective points, in [0, 1]."""
    a1, b1 = (s.to_complex() for s in p)
    a2, b2 = (s.to_complex() for s in q)
    n1 = (abs(a1) ** 2 + abs(b1) ** 2) ** 0.5
    n2 = (abs(a2) ** 2 + abs(b2) ** 2) ** 0.5
    return abs(a1 * b2 - b1 * a2) / (n1 * n2)


def distinct_roots(f: BinaryForm, merge_tol: float = 1e-7):
    """Roots grouped into (point, multiplicity) pairs.

    Exact roots are merged on equality; float roots are merged when their
    chordal distance drops below ``merge_tol``.
    """
    pts = projective_roots(f)
    groups = []
    for p in pts:
        placed = False
        for g in groups:
            rep = g[0]
            if p[0].mode == EXACT and rep[0].mode == EXACT:
                same = (p[0] == rep[0]) and (p[1] == rep[1])
            else:
                same = chordal_distance(p, rep) < merge_tol
            if same:
                g[1] += 1
                placed = True
                break
        if not placed:
            groups.append([p, 1])
    return [(g[0], g[1]) for g in groups]


def _det_mod(rows, p: int) -> int:
    a = [[v % p for v in row] for row in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det % p
        lead = a[c][c]
        det = det * lead % p
        inv = pow(lead, p - 2, p)
        arow = a[c]
        for i in range(c + 1, n):
            fi = a[i][c]
            if fi:
                fi = fi * inv % p
                a[i] = [(x - fi * y) % p for x, y in zip(a[i], arow)]
    return det


def _square_free_certificate(ints, d: int):
    """True when the derivative resultant is provably nonzero, else None.

    The two partials of a repeated-root form share a projective zero (Euler's
    relation makes it a zero of the form as well), so the form is square-free
    exactly when the resultant of the partials is nonzero.  A nonzero value
    modulo a prime certifies that; zero modulo both primes stays inconclusive
    and the caller must decide exactly.
    """
    e = d - 1
    fx = [ints[j] * (d - j) for j in range(d)]
    fy = [ints[j + 1] * (j + 1) for j in range(d)]
    # Sylvester rows at formal degree e keep roots at infinity accounted for
    fx_lead = fx[::-1]
    fy_lead = fy[::-1]
    rows = []
    for block in (fx_lead, fy_lead):
        for i in range(e):
            rows.append([0] * i + block + [0] * (e - 1 - i))
    for p in DUAL_PRIMES:
        if _det_mod(rows, p):
            return True
    return None


def is_square_free(f: BinaryForm, tol_low: float = SQUARE_FREE_LOW, tol_high: float = SQUARE_FREE_HIGH) -> bool:
    """Whether a nonzero binary form has no repeated projective root.

    Exact mode decides via gcd(f, f_x, f_y), short-circuited by a modular
    resultant certificate.  Float mode compares the minimum pairwise chordal
    root distance against a two-sided band and raises
    AmbiguousNumericsError inside the band.
    """
    if f.is_zero():
        raise PreconditionError("square-freeness of the zero form is undefined")
    if f.degree <= 1:
        return True
    if f.mode == EXACT:
        ints = exact_int_vector(f.coeffs)
        if ints is not None:
            cert = _square_free_certificate(ints, f.degree)
            if cert is not None:
                return cert
        g = f.gcd(f.derivative_x()).gcd(f.derivative_y())
        return g.degree == 0
    pts = projective_roots(f)
    best = min(
        chordal_distance(pts[i], pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    )
    if best < tol_low:
        return False
    if best > tol_high:
        return True
    raise AmbiguousNumericsError(
        "minimum root separation %.3e sits between %g and %g" % (best, tol_low, tol_high)
    )
