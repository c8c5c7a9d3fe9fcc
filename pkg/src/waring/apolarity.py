"""Catalecticant matrices, apolar slices, and power-sum decompositions of
binary forms.

The derivative pairing: a form ``g`` of degree ``e`` acts on a form ``f`` of
degree ``D >= e`` by ``g(d/dx, d/dy) f``.  The degree-``e`` slice of the
annihilator of ``f`` is the kernel of that pairing, computable either from
the derivative (catalecticant) matrix or from the Hankel matrix of the
binomial-scaled coefficients of ``f`` (same kernel, different row scaling).

Length-minimal power-sum decompositions of binary forms come from the
classical algorithm: find the lowest-degree annihilator ``g1``; if it is
square-free its roots hand over the linear forms; otherwise a square-free
element of degree ``D + 2 - deg(g1)`` exists in the annihilator and is found
by a deterministic multiplier search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    AmbiguousNumericsError,
    InternalConsistencyError,
    PreconditionError,
)
from .forms import BinaryForm, MultiForm, monomials
from .linalg import ScalarMatrix, int_kernel_basis, rank_int_mod_primes
from .roots import is_square_free, projective_roots
from .scalars import EXACT, FLOAT, Scalar, as_scalar, exact_int_vector, one, sc_exact, zero


def _falling(a: int, t: int) -> int:
    out = 1
    for i in range(t):
        out *= a - i
    return out


def apolar_apply(g: BinaryForm, f: BinaryForm) -> BinaryForm:
    """g(d/dx, d/dy) applied to f; result has degree deg(f) - deg(g)."""
    D, e = f.degree, g.degree
    if e > D:
        raise PreconditionError("operator degree exceeds form degree")
    mode = FLOAT if FLOAT in (f.mode, g.mode) else EXACT
    ff = f.promote() if mode == FLOAT else f
    gg = g.promote() if mode == FLOAT else g
    out = BinaryForm.zero_form(D - e, mode)
    for j, v in enumerate(gg.coeffs):
        if v.is_zero():
            continue
        a, b = e - j, j
        for m in range(b, D - a + 1):
            c = ff.coeffs[m]
            if c.is_zero():
                continue
            factor = _falling(D - m, a) * _falling(m, b)
            if factor:
                out.coeffs[m - b] = out.coeffs[m - b] + v * c * factor
    return out


def hankel_matrix(f: BinaryForm, r: int) -> ScalarMatrix:
    """The (D-r+1) x (r+1) matrix H[i][j] = a_{i+j} of binomial-scaled
    coefficients; its kernel is the degree-r slice of the annihilator."""
    if not 0 <= r <= f.degree:
        raise PreconditionError("order out of range")
    a = f.binomial_view()
    return ScalarMatrix(
        [[a[i + j] for j in range(r + 1)] for i in range(f.degree - r + 1)], f.mode
    )


def _int_hankel(f: BinaryForm, r: int):
    """Integer row list spanning the same space as hankel_matrix, or None."""
    z = exact_int_vector(f.binomial_view())
    if z is None:
        return None
    return [[z[i + j] for j in range(r + 1)] for i in range(f.degree - r + 1)]


def apolar_slice_basis(f: BinaryForm, e: int):
    """Canonical basis of the degree-e annihilator slice, as binary forms."""
    if not 0 <= e <= f.degree:
        raise PreconditionError("order out of range")
    if f.mode == EXACT:
        rows = _int_hankel(f, e)
        if rows is not None:
            kb = int_kernel_basis(rows)
            return [BinaryForm(e, [sc_exact(q) for q in v], EXACT) for v in kb]
    kb = hankel_matrix(f, e).kernel_basis()
    return [BinaryForm(e, v, f.mode) for v in kb]


def _first_slice_hint(f: BinaryForm) -> int:
    """Lower bound for the first degree with a nonempty annihilator slice.

    The annihilator of a nonzero binary form is a complete intersection with
    generator degrees summing to D + 2, so the Hankel rank at order r is
    min(r + 1, D - r + 1, r1) where r1 is the lower generator degree.  At the
    middle order that minimum always equals the first degree whose slice is
    nonempty.  The rank is taken modulo two primes, which can only undershoot
    the rational rank, so scanning upward from the result stays correct.
    """
    if f.mode != EXACT:
        return 1
    D = f.degree
    rows = _int_hankel(f, (D + 1) // 2)
    if rows is None:
        return 1
    try:
        return max(1, rank_int_mod_primes(rows))
    except InternalConsistencyError:
        return 1


@dataclass
class Catalecticant:
    """The derivative map from degree-``order`` operators to degree-(D - order)
    forms, as an explicit matrix (rows: operator monomials, columns: target
    monomials, raw derivative coefficients without factorial normalization)."""

    form: MultiForm
    order: int
    matrix: ScalarMatrix

    def rank(self) -> int:
        return self.matrix.rank()

    def kernel_forms(self):
        """Degree-``order`` forms annihilating the source form."""
        rows = monomials(self.form.nvars, self.order)
        kb = self.matrix.transpose().kernel_basis()
        out = []
        for v in kb:
            terms = {alpha: c for alpha, c in zip(rows, v) if not c.is_zero()}
            out.append(MultiForm(self.form.nvars, self.order, terms, self.form.mode))
        return out


def catalecticant(f: MultiForm, i: int) -> Catalecticant:
    if not 0 <= i <= f.degree:
        raise PreconditionError("catalecticant order out of range")
    n = f.nvars
    row_monos = monomials(n, i)
    col_monos = monomials(n, f.degree - i)
    col_index = {m: t for t, m in enumerate(col_monos)}
    entries = []
    for alpha in row_monos:
        g = f.apply_derivative_monomial(alpha)
        row = [zero(f.mode)] * len(col_monos)
        for exps, c in g.terms.items():
            row[col_index[exps]] = c
        entries.append(row)
    return Catalecticant(f, i, ScalarMatrix(entries, f.mode))


@dataclass
class WaringDecomposition:
    """Power-sum presentation: sum of lam * ell^exponent matching a target of
    the stated degree."""

    terms: list  # (Scalar lam, form ell, int exponent)
    degree: int

    @property
    def length(self) -> int:
        return len(self.terms)

    def reconstruct(self):
        if not self.terms:
            return None
        mode = FLOAT if any(
            lam.mode == FLOAT or ell.mode == FLOAT for lam, ell, _ in self.terms
        ) else EXACT
        acc = None
        for lam, ell, k in self.terms:
            if mode == FLOAT:
                lam, ell = lam.promote(), ell.promote()
            piece = (ell**k).scale(lam)
            acc = piece if acc is None else acc + piece
        return acc

    def verify(self, target, tol: float = 1e-8) -> bool:
        got = self.reconstruct()
        if got is None:
            return target.is_zero(tol)
        if got.mode == EXACT and target.mode == EXACT:
            return got == target
        return got.close_to(target, tol)


def _point_to_linear(point) -> BinaryForm:
    """Linear form a*x + b*y through the point, rescaled so the larger
    coefficient is 1: high powers of the form then stay well-conditioned."""
    a, b = point
    if float(b.abs2()) > float(a.abs2()):
        return BinaryForm(1, [a / b, one(a.mode)], a.mode)
    return BinaryForm(1, [one(a.mode), b / a], a.mode)


def _solve_weights(f: BinaryForm, ells):
    """Solve sum_j lam_j * ell_j^D = f; returns exact or float scalars."""
    D = f.degree
    mode = FLOAT if any(e.mode == FLOAT for e in ells) else f.mode
    target = f.promote() if (mode == FLOAT and f.mode == EXACT) else f
    cols = []
    for ell in ells:
        ee = ell.promote() if (mode == FLOAT and ell.mode == EXACT) else ell
        cols.append((ee**D).coeffs)
    mat = ScalarMatrix(
        [[cols[j][i] for j in range(len(ells))] for i in range(D + 1)], mode
    )
    sol = mat.solve(target.coeffs)
    if sol is None:
        raise InternalConsistencyError(
            "weight system for a power-sum decomposition was inconsistent"
        )
    return sol


def _multiplier_sequence(u: int, mode: str):
    """Deterministic multipliers of degree u: nothing, monomials, then small
    integer combinations."""
    yield None
    for m in monomials(2, u):
        yield BinaryForm.monomial(u, m[1], 1, mode)
    small = (0, 1, -1, 2, -2, 3, -3)
    count = 0
    for tup in product(small, repeat=u + 1):
        if all(c == 0 for c in tup):
            continue
        count += 1
        if count > 600:
            return
        yield BinaryForm(u, list(tup), mode)


def _first_outside_span(candidates, span_forms, e: int, mode: str):
    """First candidate not in the linear span of span_forms (coefficientwise)."""
    if not span_forms:
        return candidates[0]
    base = ScalarMatrix(
        [[g.coeffs[i] for g in span_forms] for i in range(e + 1)], mode
    )
    base_rank = base.rank()
    for cand in candidates:
        aug = ScalarMatrix(
            [[g.coeffs[i] for g in span_forms] + [cand.coeffs[i]] for i in range(e + 1)],
            mode,
        )
        if aug.rank() > base_rank:
            return cand
    raise InternalConsistencyError(
        "annihilator slice did not grow beyond the principal part"
    )


def _square_free_in_slice(f: BinaryForm, g1: BinaryForm, e: int) -> BinaryForm:
    """A square-free degree-e annihilator of f of the shape g1*m + g2."""
    basis = apolar_slice_basis(f, e)
    if not basis:
        raise InternalConsistencyError("expected a nonzero annihilator slice")
    u = e - g1.degree
    span = [g1 * BinaryForm.monomial(u, m[1], 1, f.mode) for m in monomials(2, u)]
    g2 = _first_outside_span(basis, span, e, f.mode)
    for m in _multiplier_sequence(u, f.mode):
        cand = g2 if m is None else g1 * m + g2
        if cand.is_zero():
            continue
        try:
            if is_square_free(cand):
                return cand
        except AmbiguousNumericsError:
            continue
    raise InternalConsistencyError(
        "no square-free annihilator found within the deterministic multiplier budget"
    )


def sylvester_decompose(f: BinaryForm) -> WaringDecomposition:
    """Length-minimal decomposition of a binary form into powers of linear
    forms.

    The annihilator order r is the least one with a nonzero slice.  A
    square-free slice generator hands over the linear forms through its
    roots (length r); otherwise the decomposition comes from a square-free
    annihilator of degree deg(f) + 2 - r, which is the rank in that case.
    """
    if f.is_zero(1e-12 if f.mode == FLOAT else 0.0):
        raise PreconditionError("cannot decompose the zero form")
    D = f.degree
    if D == 0:
        raise PreconditionError("constant forms are not decomposed")
    basis = None
    r = 0
    for r in range(_first_slice_hint(f), D // 2 + 2):
        basis = apolar_slice_basis(f, r)
        if basis:
            break
    if not basis:
        raise InternalConsistencyError("no annihilator slice found up to mid degree")
    g1 = basis[0]
    try:
        g1_ok = is_square_free(g1)
    except AmbiguousNumericsError:
        raise
    if g1_ok:
        g = g1
    else:
        g = _square_free_in_slice(f, g1, D + 2 - r)
    pts = projective_roots(g)
    ells = [_point_to_linear(p) for p in pts]
    lams = _solve_weights(f, ells)
    terms = [(lam, ell, D) for lam, ell in zip(lams, ells) if not lam.is_zero()]
    deco = WaringDecomposition(terms, D)
    if not deco.verify(f):
        raise InternalConsistencyError("decomposition failed to reconstruct the input")
    return deco


def _search_wide_slice(basis, e: int):
    """Bounded deterministic search for a square-free element in the span of
    three or more degree-e forms: singles, then pairs, triples and quadruples
    of basis elements with small integer weights."""
    from itertools import combinations

    def sf(cand):
        return not cand.is_zero() and is_square_free(cand)

    for b in basis:
        if sf(b):
            return b
    weights = (1, -1, 2, -2, 3, -3, 4, -4, 5, -5)
    tried = 0
    for size in (2, 3, 4):
        if size > len(basis):
            break
        for idxs in combinations(range(len(basis)), size):
            for tup in product(weights, repeat=size - 1):
                cand = basis[idxs[0]]
                for c, t in zip(tup, idxs[1:]):
                    cand = cand + basis[t].scale(c)
                tried += 1
                if sf(cand):
                    return cand
                if tried > 30000:
                    return None
    return None


def binary_waring_rank_exact(f: BinaryForm):
    """Brute-force oracle: the least degree of a square-free annihilator.

    Returns ``(rank, witness)`` where the witness is a square-free
    annihilator of that degree.  Degree slices are searched exhaustively:
    dimension-1 slices are tested directly; in higher dimension, a slice
    whose basis gcd has a repeated root contains no square-free element, a
    2-dimensional slice is settled by enumerating the pencil past the degree
    of its discriminant, and wider slices (which only occur at the degree
    where existence is classically guaranteed) are searched over a small-
    integer grid.
    """
    if f.is_zero():
        raise PreconditionError("the zero form has no rank")
    if f.mode != EXACT:
        raise PreconditionError("the rank oracle requires exact input")
    D = f.degree
    for e in range(1, D + 1):
        basis = apolar_slice_basis(f, e)
        if not basis:
            continue
        if len(basis) == 1:
            if is_square_free(basis[0]):
                return e, basis[0]
            continue
        g = basis[0]
        for b in basis[1:]:
            g = g.gcd(b)
        if g.degree > 0 and not is_square_free(g):
            continue
        if len(basis) == 2:
            found = None
            for t in range(0, 2 * e - 1):
                cand = basis[0] + basis[1].scale(t)
                if not cand.is_zero() and is_square_free(cand):
                    found = cand
                    break
            if found is None and is_square_free(basis[1]):
                found = basis[1]
            if found is not None:
                return e, found
            continue
        # Wide slices only occur at the degree where a square-free element is
        # classically guaranteed, so a bounded structured search suffices:
        # single basis elements, then pairs and triples with small weights.
        witness = _search_wide_slice(basis, e)
        if witness is not None:
            return e, witness
        raise InternalConsistencyError(
            "wide annihilator slice at degree %d yielded no square-free element"
            % e
        )
    raise InternalConsistencyError(
        "rank oracle found no square-free annihilator up to degree %d" % D
    )


def cubic_three_cubes(h: BinaryForm) -> WaringDecomposition:
    """Write a nonzero binary cubic as a sum of at most three cubes of linear
    forms.

    Square-free cubics and perfect cubes need at most two terms (roots of the
    quadratic annihilator, or the cube itself); a cubic with exactly one
    repeated root is proportional to m^2*l and uses the exact identity
    6*m^2*l = (l-m)^3 - 2*l^3 + (l+m)^3.
    """
    if h.degree != 3:
        raise PreconditionError("expected a binary cubic")
    if h.is_zero(1e-12 if h.mode == FLOAT else 0.0):
        raise PreconditionError("cannot decompose the zero cubic")
    if h.mode == EXACT:
        g = h.gcd(h.derivative_x()).gcd(h.derivative_y())
        rep = g.degree
    else:
        from .roots import distinct_roots

        mults = tuple(sorted((m for _, m in distinct_roots(h)), reverse=True))
        table = {(1, 1, 1): 0, (2, 1): 1, (3,): 2}
        if mults not in table:
            raise AmbiguousNumericsError(
                "could not classify the root multiplicities of a float cubic"
            )
        rep = table[mults]
        g = None
    if rep == 0:
        return sylvester_decompose(h)
    if rep == 2:
        # perfect cube: gamma * ell^3; the gcd is ell^2, peel one factor
        if h.mode == EXACT:
            ell = g.gcd(g.derivative_x()).gcd(g.derivative_y()).normalized()
        else:
            from .roots import distinct_roots, vanishing_linear_form

            pt = max(distinct_roots(h), key=lambda pm: pm[1])[0]
            ell = vanishing_linear_form(pt)
        cube = ell**3
        j = next(t for t in range(4) if not cube.coeffs[t].is_zero(1e-12))
        gamma = h.coeffs[j] / cube.coeffs[j]
        deco = WaringDecomposition([(gamma, ell, 3)], 3)
        if not deco.verify(h):
            raise InternalConsistencyError("perfect-cube branch failed to reconstruct")
        return deco
    # one repeated root: h = m^2 * l
    if h.mode == EXACT:
        m = g.normalized()
        l = h.div_exact(m * m)
    else:
        from .roots import distinct_roots, vanishing_linear_form

        groups = distinct_roots(h)
        dbl = next(p for p, mult in groups if mult == 2)
        m = vanishing_linear_form(dbl)
        l = h.div_exact(m * m, tol=1e-7)
    sixth = as_scalar(Fraction(1, 6), h.mode)
    third = as_scalar(Fraction(1, 3), h.mode)
    terms = [(sixth, l - m, 3), (-third, l, 3), (sixth, l + m, 3)]
    deco = WaringDecomposition(terms, 3)
    if not deco.verify(h):
        raise InternalConsistencyError("repeated-root branch failed to reconstruct")
    return deco


def _lead_positive(g: BinaryForm) -> BinaryForm:
    """Flip the sign so the first nonzero coefficient has non-negative real
    part (the square is unchanged; output is deterministic)."""
    for c in g.coeffs:
        if not c.is_zero(1e-12 if g.mode == FLOAT else 0.0):
            re = c.re if g.mode == EXACT else c.to_complex().real
            return -g if re < 0 else g
    return g


def two_squares(f: BinaryForm):
    """Write a nonzero binary form of even degree as g1^2 + g2^2.

    Factor f into linear forms, split the factor multiset into halves A and
    B, and take g1 = (A+B)/2, g2 = i*(A-B)/2.  Stays exact when the roots
    and the needed square root of the leading constant are exact.
    """
    if f.is_zero(1e-12 if f.mode == FLOAT else 0.0):
        raise PreconditionError("cannot decompose the zero form")
    if f.degree % 2:
        raise PreconditionError("two-squares needs even degree")
    from .roots import linear_factors

    c, ells = linear_factors(f)
    mode = c.mode
    half = f.degree // 2
    A = BinaryForm(0, [one(mode)], mode)
    B = BinaryForm(0, [one(mode)], mode)
    for t, ell in enumerate(ells):
        if t % 2 == 0:
            A = A * ell
        else:
            B = B * ell
    # fold the constant in: prefer a symmetric exact square root
    root = c.sqrt_exact() if mode == EXACT else c.kth_root_float(2)
    if root is not None:
        A = A.scale(root)
        B = B.scale(root)
    else:
        A = A.scale(c)
    if A.degree != half or B.degree != half:
        raise InternalConsistencyError("unbalanced split in two_squares")
    i_unit = sc_exact(0, 1) if mode == EXACT else Scalar.approx(1j)
    halfc = as_scalar(Fraction(1, 2), mode)
    g1 = _lead_positive((A + B).scale(halfc))
    g2 = _lead_positive((A - B).scale(halfc * i_unit))
    got = g1 * g1 + g2 * g2
    ok = got == f if mode == EXACT and f.mode == EXACT else got.close_to(
        f.promote() if f.mode == EXACT else f, 1e-8
    )
    if not ok:
        raise InternalConsistencyError("two-squares reconstruction failed")
    return g1, g2
