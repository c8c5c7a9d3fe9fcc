"""Binary sextics as sums of at most three cubes of quadratic forms.

The pipeline peels off the cube of an explicit quadratic q so that the
remainder is y^3 times a cubic c, then splits c into at most two cubes of
linear forms.  A single scalar invariant D decides whether c is square-free;
the degenerate cases are repaired either directly (c a perfect cube, input
divisible by y^3) or by an integer shear that makes D nonzero again.  Every
certificate is verified against the input before it is returned.
"""

from dataclasses import dataclass, field
from math import comb

from .apolarity import cubic_three_cubes, sylvester_decompose
from .errors import (
    AmbiguousNumericsError,
    InternalConsistencyError,
    PreconditionError,
)
from .forms import BinaryForm, LinearSubstitution, undo_substitutions
from .scalars import EXACT, FLOAT, Scalar, as_scalar, one, scalar_str, zero

T_SEARCH_CAP = 200


@dataclass
class SexticView:
    """A degree-6 binary form through its seven binomial-basis coefficients.

    ``a[k]`` multiplies ``C(6,k) * x^(6-k) * y^k``; the plain coefficient
    vector of the underlying form is recovered by scaling back.
    """

    a: list
    mode: str = EXACT

    @staticmethod
    def from_form(f: BinaryForm) -> "SexticView":
        if f.degree != 6:
            raise PreconditionError("expected a binary sextic")
        return SexticView(f.binomial_view(), f.mode)

    def to_form(self) -> BinaryForm:
        return BinaryForm.from_binomial(self.a, self.mode)

    def promote(self) -> "SexticView":
        if self.mode == FLOAT:
            return self
        return SexticView([s.promote() for s in self.a], FLOAT)


def shear_coefficients(p: SexticView, T) -> SexticView:
    """Binomial coefficients of p(x, T*x + y).

    The shear acts triangularly on the binomial basis:
    a_m(T) = sum_{j >= m} C(6-m, j-m) * a_j * T^(j-m).
    """
    t = as_scalar(T, p.mode)
    view = p
    if t.mode != view.mode:
        if t.mode == EXACT:
            t = t.promote()
        else:
            view = view.promote()
    out = []
    for m in range(7):
        acc = zero(view.mode)
        tp = one(view.mode)
        for j in range(m, 7):
            acc = acc + as_scalar(comb(6 - m, j - m), view.mode) * view.a[j] * tp
            tp = tp * t
        out.append(acc)
    return SexticView(out, view.mode)


def _residual_parts(p: SexticView):
    """The quadratic q, the cubic c with p = a0*q^3 + y^3*c/a0^5, and the
    four binomial coefficients of c."""
    a = p.a
    mode = p.mode
    a0 = a[0]
    if a0.is_zero(1e-12 if mode == FLOAT else 0.0):
        raise PreconditionError("leading binomial coefficient a0 must be nonzero")
    two = as_scalar(2, mode)
    q = BinaryForm(
        2,
        [one(mode), two * a[1] / a0, (as_scalar(5, mode) * a0 * a[2] - as_scalar(4, mode) * a[1] ** 2) / a0**2],
        mode,
    )

    def n(k):
        return as_scalar(k, mode)

    c0 = n(20) * a0**3 * (n(2) * a[1] ** 3 - n(3) * a0 * a[1] * a[2] + a0**2 * a[3])
    c1 = n(5) * a0**3 * (n(4) * a[1] ** 2 * a[2] - n(5) * a0 * a[2] ** 2 + a0**2 * a[4])
    c2 = n(2) * a0 * (
        n(-16) * a[1] ** 5
        + n(40) * a0 * a[1] ** 3 * a[2]
        - n(25) * a0**2 * a[1] * a[2] ** 2
        + a0**4 * a[5]
    )
    c3 = (
        n(64) * a[1] ** 6
        - n(240) * a0 * a[1] ** 4 * a[2]
        + n(300) * a0**2 * a[1] ** 2 * a[2] ** 2
        - n(125) * a0**3 * a[2] ** 3
        + a0**5 * a[6]
    )
    c = BinaryForm(3, [c0, n(3) * c1, n(3) * c2, c3], mode)
    return q, c, (c0, c1, c2, c3)


def residual_cubic(p: SexticView):
    """Split p as a0*q^3 + (1/a0^5) * y^3 * c with q monic quadratic and c a
    binary cubic.  Requires a0 != 0."""
    q, c, _ = _residual_parts(p)
    return q, c


def _plain_cubic_discriminant(al, be, ga, de):
    n18 = as_scalar(18, al.mode)
    n4 = as_scalar(4, al.mode)
    n27 = as_scalar(27, al.mode)
    return (
        n18 * al * be * ga * de
        - n4 * be**3 * de
        + be**2 * ga**2
        - n4 * al * ga**3
        - n27 * al**2 * de**2
    )


def discriminant_D(p: SexticView) -> Scalar:
    """The invariant deciding square-freeness of the residual cubic: the
    cubic discriminant of c rescaled by -1/(540*a0^6).  Requires a0 != 0."""
    _, c, _ = _residual_parts(p)
    al, be, ga, de = c.coeffs
    disc = _plain_cubic_discriminant(al, be, ga, de)
    mode = p.mode
    return disc / (as_scalar(-540, mode) * p.a[0] ** 6)


@dataclass
class CubesCertificate:
    """A verified presentation of a binary sextic as sum(mu * q^3) with at
    most three quadratics q, expressed in the input coordinates."""

    terms: list  # (mu: Scalar, q: BinaryForm of degree 2)
    applied_substitutions: list = field(default_factory=list)
    branch: str = "generic"
    residual: float = 0.0

    @property
    def length(self) -> int:
        return len(self.terms)

    def reconstruct(self, mode: str = None) -> BinaryForm:
        if not self.terms:
            return BinaryForm.zero_form(6, mode or EXACT)
        out_mode = FLOAT if any(
            mu.mode == FLOAT or q.mode == FLOAT for mu, q in self.terms
        ) else EXACT
        acc = None
        for mu, q in self.terms:
            if out_mode == FLOAT:
                mu, q = mu.promote(), q.promote()
            piece = (q**3).scale(mu)
            acc = piece if acc is None else acc + piece
        return acc

    def relative_residual(self, target: BinaryForm) -> float:
        rec = self.reconstruct(target.mode)
        if rec.mode != target.mode:
            rec, target = rec.promote(), target.promote()
        diff = rec - target
        return diff.norm() / max(1.0, target.norm())

    def verify(self, target: BinaryForm, tol: float = 1e-8) -> bool:
        if target.mode == EXACT and all(
            mu.mode == EXACT and q.mode == EXACT for mu, q in self.terms
        ):
            return self.reconstruct(EXACT) == target
        return self.relative_residual(target) <= tol

    def folded_terms(self) -> list:
        """Quadratics with the scalar weights absorbed via a cube root, so
        the certificate reads as a bare sum of cubes."""
        out = []
        for mu, q in self.terms:
            if mu.mode == EXACT:
                root = mu.kth_root_exact(3)
                if root is None:
                    root = mu.promote().kth_root_float(3)
                    q = q.promote()
            else:
                root = mu.kth_root_float(3)
            out.append(q.scale(root))
        return out

    def to_json_dict(self) -> dict:
        return {
            "branch": self.branch,
            "substitutions": [
                [[scalar_str(entry) for entry in row] for row in sub.matrix]
                for sub in self.applied_substitutions
            ],
            "terms": [
                {
                    "mu": scalar_str(mu),
                    "q": [scalar_str(cf) for cf in q.coeffs],
                }
                for mu, q in self.terms
            ],
            "residual": self.residual,
        }


def _t_candidates():
    yield 0
    k = 1
    while True:
        yield -k
        yield k
        k += 1


def _rel_nonzero(value: Scalar, scale: float, tol: float = 1e-9) -> bool:
    if value.mode == EXACT:
        return not value.is_zero()
    return abs(value) > tol * max(1.0, scale)


def _a0_scale(view: SexticView, t: Scalar) -> float:
    # magnitude of the terms of a0(T) before cancellation
    tc = abs(t)
    return sum(abs(view.a[j]) * comb(6, j) * tc**j for j in range(7))


def _disc_scale(c: BinaryForm) -> float:
    al, be, ga, de = (abs(s) for s in c.coeffs)
    return 18 * al * be * ga * de + 4 * be**3 * de + be**2 * ga**2 + 4 * al * ga**3 + 27 * al**2 * de**2


def _generic_terms(view: SexticView):
    """Terms for a sextic whose residual cubic is square-free: the peeled
    quadratic cube plus two linear cubes times y."""
    q, c, _ = _residual_parts(view)
    a0 = view.a[0]
    dec = sylvester_decompose(c)
    if dec.length > 2:
        raise InternalConsistencyError(
            "square-free residual cubic should split into two cubes"
        )
    terms = [(a0, q)]
    for lam, ell, _ in dec.terms:
        mode = lam.mode
        a0m = a0 if a0.mode == mode else a0.promote()
        y = BinaryForm(1, [0, 1], mode)
        terms.append((lam / a0m**5, ell * y))
    return terms


def _peel_cube(c: BinaryForm):
    """For c = gamma * ell^3, return (gamma, ell) with ell normalized, or
    None if c is not an exact cube shape."""
    mode = c.mode
    if mode == EXACT:
        g = c.gcd(c.derivative_x()).gcd(c.derivative_y())
        if g.degree != 2:
            return None
        ell = g.gcd(g.derivative_x()).gcd(g.derivative_y())
        if ell.degree != 1:
            return None
        ell = ell.normalized()
    else:
        from .roots import distinct_roots, vanishing_linear_form

        roots = distinct_roots(c)
        if len(roots) != 1:
            return None
        ell = vanishing_linear_form(roots[0][0])
    cube = ell**3
    idx = max(range(4), key=lambda j: abs(cube.coeffs[j]))
    gamma = c.coeffs[idx] / cube.coeffs[idx]
    rebuilt = cube.scale(gamma)
    if mode == EXACT:
        if rebuilt != c:
            raise InternalConsistencyError("repeated-root cubic failed to peel")
    elif not rebuilt.close_to(c, 1e-6):
        raise InternalConsistencyError("repeated-root cubic failed to peel")
    return gamma, ell


def _square_part(c: BinaryForm) -> BinaryForm:
    """Normalized linear form m with c = m^2 * l, m and l coprime."""
    if c.mode == EXACT:
        g = c.gcd(c.derivative_x()).gcd(c.derivative_y())
        if g.degree != 1:
            raise InternalConsistencyError("expected exactly one repeated root")
        return g.normalized()
    from .roots import distinct_roots, vanishing_linear_form

    doubles = [pt for pt, m in distinct_roots(c) if m == 2]
    if len(doubles) != 1:
        raise InternalConsistencyError("expected exactly one repeated root")
    return vanishing_linear_form(doubles[0])


def _square_free_residual(view: SexticView) -> bool:
    """Whether the sheared sextic has a square-free residual cubic, by the
    exact invariant or a guarded float test."""
    _, c, _ = _residual_parts(view)
    al, be, ga, de = c.coeffs
    disc = _plain_cubic_discriminant(al, be, ga, de)
    return _rel_nonzero(disc, _disc_scale(c))


def _shear_terms(view: SexticView, subs: list):
    """Integer-shear repair: find T with a0(T) != 0 and a square-free
    residual, decompose there, and record the shear for undoing."""
    tried = 0
    for tv in _t_candidates():
        tried += 1
        if tried > T_SEARCH_CAP:
            break
        t = as_scalar(tv, view.mode)
        sheared = shear_coefficients(view, t)
        if not _rel_nonzero(sheared.a[0], _a0_scale(view, t)):
            continue
        if not _square_free_residual(sheared):
            continue
        subs.append(LinearSubstitution.shear(t, view.mode))
        return _generic_terms(sheared)
    raise InternalConsistencyError(
        "no shear produced a square-free residual within the search cap"
    )


def _normalize_leading(p: BinaryForm, subs: list) -> BinaryForm:
    """Apply a recorded invertible substitution so the x^6 coefficient is
    nonzero: identity, then swap, then shears y -> j*x + y."""
    scale = max(1.0, p.norm())
    candidates = [None, LinearSubstitution.swap(p.mode)]
    for j in (1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6):
        candidates.append(LinearSubstitution.shear(as_scalar(j, p.mode), p.mode))
    for sub in candidates:
        moved = p if sub is None else p.substitute(sub)
        lead = moved.coeffs[0]
        if _rel_nonzero(lead, scale, 1e-10):
            if sub is not None:
                subs.append(sub)
            return moved
    raise InternalConsistencyError("could not move a nonzero coefficient onto x^6")


def _primitive(mu: Scalar, q: BinaryForm):
    """Rescale an exact real-rational quadratic to coprime integer
    coefficients with positive lead, folding the cube of the scale into mu."""
    from fractions import Fraction
    from math import gcd, lcm

    if q.mode != EXACT or any(not cf.is_real() for cf in q.coeffs):
        return _signed(mu, q)
    vals = [Fraction(cf.re) for cf in q.coeffs]
    denom = lcm(*(v.denominator for v in vals)) if any(vals) else 1
    ints = [int(v * denom) for v in vals]
    numer = gcd(*ints)
    if numer == 0:
        return mu, q
    s = Fraction(denom, numer)
    lead = next(v for v in ints if v)
    if lead < 0:
        s = -s
    scale = as_scalar(s, EXACT)
    return mu / scale**3, q.scale(scale)


def _signed(mu: Scalar, q: BinaryForm):
    """Flip signs so the leading coefficient of q is not a negative real."""
    for cf in q.coeffs:
        if cf.is_zero(1e-12 if q.mode == FLOAT else 0.0):
            continue
        if cf.mode == EXACT:
            if cf.is_real() and cf.re < 0:
                return -mu, -q
        else:
            z = cf.to_complex()
            if abs(z.imag) <= 1e-12 * max(1.0, abs(z.real)) and z.real < 0:
                return -mu, -q
        break
    return mu, q


def _assemble(p: BinaryForm, raw_terms, subs, branch):
    out_mode = FLOAT if p.mode == FLOAT or any(
        mu.mode == FLOAT or q.mode == FLOAT for mu, q in raw_terms
    ) else EXACT
    terms = []
    for mu, q in raw_terms:
        if out_mode == FLOAT:
            mu, q = mu.promote(), q.promote()
        if subs:
            q = undo_substitutions(q, subs)
        terms.append(_primitive(mu, q))
    cert = CubesCertificate(terms, list(subs), branch)
    if not cert.verify(p):
        raise InternalConsistencyError(
            "three-cubes certificate failed to reconstruct the input"
        )
    if out_mode == FLOAT or p.mode == FLOAT:
        cert.residual = cert.relative_residual(p)
    return cert


def three_cubes(p: BinaryForm) -> CubesCertificate:
    """Write a binary sextic as a sum of at most three cubes of quadratics.

    Branches: ``generic`` (square-free residual, three cubes),
    ``cube-residual`` (residual is gamma * ell^3 or zero, at most two cubes),
    ``p1-branch`` / ``p2-branch`` (residual has a square factor, repaired by
    an integer shear; the tag records whether the squared factor is
    proportional to y), and ``y-divisible`` (input is y^3 times a cubic,
    handled by the linear-forms identity).  The zero form gets an empty
    certificate.
    """
    if p.degree != 6:
        raise PreconditionError("three_cubes expects a binary sextic")
    mode = p.mode
    tiny = 1e-12 if mode == FLOAT else 0.0
    if p.is_zero(tiny * max(1.0, p.norm()) if mode == FLOAT else 0.0):
        return CubesCertificate([], [], "y-divisible")

    if all(p.coeffs[j].is_zero(1e-12 * max(1.0, p.norm()) if mode == FLOAT else 0.0) for j in range(3)):
        # drop the (possibly tiny) low coefficients rather than exact-divide
        h = BinaryForm(3, p.coeffs[3:], mode)
        dec = cubic_three_cubes(h)
        y = BinaryForm(1, [0, 1], dec.terms[0][1].mode if dec.terms else mode)
        raw = [(lam, ell * y) for lam, ell, _ in dec.terms]
        return _assemble(p, raw, [], "y-divisible")

    subs = []
    work = _normalize_leading(p, subs)
    view = SexticView.from_form(work)
    q, c, _ = _residual_parts(view)
    a0 = view.a[0]

    if mode == EXACT:
        al, be, ga, de = c.coeffs
        disc = _plain_cubic_discriminant(al, be, ga, de)
        if not disc.is_zero():
            return _assemble(p, _generic_terms(view), subs, "generic")
        if c.is_zero():
            return _assemble(p, [(a0, q)], subs, "cube-residual")
        peeled = _peel_cube(c)
        if peeled is not None:
            gamma, ell = peeled
            y = BinaryForm(1, [0, 1], mode)
            raw = [(a0, q), (gamma / a0**5, ell * y)]
            return _assemble(p, raw, subs, "cube-residual")
        m = _square_part(c)
        branch = "p1-branch" if m.coeffs[0].is_zero() else "p2-branch"
        return _assemble(p, _shear_terms(view, subs), subs, branch)

    # float mode: classify the residual cubic by its root pattern
    c_scale = (1.0 + max(abs(s) for s in view.a)) ** 6
    if c.is_zero(1e-9 * c_scale):
        return _assemble(p, [(a0, q)], subs, "cube-residual")
    from .roots import distinct_roots, vanishing_linear_form

    pattern = tuple(sorted((mult for _, mult in distinct_roots(c)), reverse=True))
    if pattern == (1, 1, 1):
        al, be, ga, de = c.coeffs
        if not _rel_nonzero(_plain_cubic_discriminant(al, be, ga, de), _disc_scale(c)):
            raise AmbiguousNumericsError(
                "residual cubic sits between square-free and degenerate"
            )
        return _assemble(p, _generic_terms(view), subs, "generic")
    if pattern == (3,):
        peeled = _peel_cube(c)
        if peeled is None:
            raise AmbiguousNumericsError("triple-root residual failed to peel")
        gamma, ell = peeled
        y = BinaryForm(1, [0, 1], FLOAT)
        raw = [(a0, q), (gamma / a0**5, ell * y)]
        return _assemble(p, raw, subs, "cube-residual")
    if pattern == (2, 1):
        doubles = [pt for pt, mult in distinct_roots(c) if mult == 2]
        m = vanishing_linear_form(doubles[0])
        m_scale = max(abs(m.coeffs[0]), abs(m.coeffs[1]))
        branch = "p1-branch" if abs(m.coeffs[0]) <= 1e-8 * m_scale else "p2-branch"
        return _assemble(p, _shear_terms(view, subs), subs, branch)
    raise AmbiguousNumericsError(
        "could not classify the residual cubic's root pattern"
    )
