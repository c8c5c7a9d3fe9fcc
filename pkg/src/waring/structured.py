"""Monomial k-th power bounds and canonical presentations of binary forms.

A monomial of degree k*d whose variable count is small enough relative to d
splits as m1 * m2^(k-1) with both factors of degree d; a root-of-unity
identity then writes it as a sum of k k-th powers.  Separately, a binary
form of degree k*d is presented as sum(y^(j*d) * p_j^(k-j)) by recursively
matching leading coefficient windows.
"""

from dataclasses import dataclass, field

from .apolarity import WaringDecomposition
from .errors import GenericityError, InternalConsistencyError, PreconditionError
from .forms import BinaryForm, MultiForm
from .scalars import EXACT, FLOAT, Scalar, as_scalar, one, roots_of_unity, zero


@dataclass
class MonomialFactorization:
    """Witness for m = m1 * m2^(k-1) with |m1| = |m2| = d."""

    exponents: tuple
    k: int
    d: int
    m1: tuple
    m2: tuple
    q: tuple
    r: tuple
    b_each: tuple
    b: int

    def check(self) -> bool:
        n = len(self.exponents)
        return (
            all(self.exponents[i] == self.m1[i] + (self.k - 1) * self.m2[i] for i in range(n))
            and sum(self.m1) == self.d
            and sum(self.m2) == self.d
            and all(v >= 0 for v in self.m1 + self.m2)
        )


def monomial_k_factor(a, k: int) -> MonomialFactorization:
    """Factor the monomial with exponent vector a as m1 * m2^(k-1), both of
    degree d = deg/k.  Requires (k-2)*n <= d.

    Per-variable division by k-1 gives remainders r_i and quotients q_i; the
    deficit b = (d - sum r_i)/(k-1) is spread greedily over the variables
    with the largest quotients (ties to the lowest index).
    """
    exps = tuple(int(v) for v in a)
    if not exps or any(v < 0 for v in exps):
        raise PreconditionError("exponent vector must be non-empty and non-negative")
    if k < 2:
        raise PreconditionError("monomial factorization needs k >= 2")
    total = sum(exps)
    if total == 0 or total % k:
        raise PreconditionError("monomial degree must be a positive multiple of k")
    d = total // k
    n = len(exps)
    support = sum(1 for v in exps if v)
    if (k - 2) * support > d:
        raise PreconditionError(
            "hypothesis (k-2)*n <= d fails: (%d-2)*%d > %d" % (k, support, d)
        )
    r = [v % (k - 1) for v in exps]
    q = [v // (k - 1) for v in exps]
    if (d - sum(r)) % (k - 1):
        raise InternalConsistencyError("remainder sum incongruent to d")
    b = (d - sum(r)) // (k - 1)
    if b < 0:
        raise InternalConsistencyError("negative deficit despite the hypothesis")
    b_each = [0] * n
    remaining = b
    for idx in sorted(range(n), key=lambda i: (-q[i], i)):
        take = min(q[idx], remaining)
        b_each[idx] = take
        remaining -= take
        if not remaining:
            break
    if remaining:
        raise InternalConsistencyError("could not allocate the deficit b")
    m1 = tuple(r[i] + b_each[i] * (k - 1) for i in range(n))
    m2 = tuple(q[i] - b_each[i] for i in range(n))
    fac = MonomialFactorization(exps, k, d, m1, m2, tuple(q), tuple(r), tuple(b_each), b)
    if not fac.check():
        raise InternalConsistencyError("monomial factorization failed its own check")
    return fac


def monomial_krank_upper(a, k: int) -> WaringDecomposition:
    """A sum of at most k k-th powers of degree-d monomial combinations
    equal to the monomial with exponents a.

    Uses sum_j zeta^(-j) (zeta^j u + v)^k = k^2 * u * v^(k-1) over the k-th
    roots of unity; exact arithmetic when the roots are Gaussian rational.
    """
    fac = monomial_k_factor(a, k)
    n = len(fac.exponents)
    if fac.m1 == fac.m2:
        g = MultiForm.monomial_form(n, fac.m1, 1, EXACT)
        return WaringDecomposition([(one(EXACT), g, k)], sum(fac.exponents))
    mode = EXACT if k in (1, 2, 4) else FLOAT
    u = MultiForm.monomial_form(n, fac.m1, 1, mode)
    v = MultiForm.monomial_form(n, fac.m2, 1, mode)
    zetas = roots_of_unity(k, mode)
    ksq = as_scalar(k * k, mode)
    terms = []
    for j in range(k):
        lam = zetas[(-j) % k] / ksq
        terms.append((lam, u.scale(zetas[j]) + v, k))
    return WaringDecomposition(terms, sum(fac.exponents))


@dataclass
class CanonicalForm:
    """Presentation p = sum_j y^(j*d) * parts[j]^(k-j) with parts of degree
    d; in the unique variant parts 0..k-2 have no y^d term."""

    parts: list
    k: int
    d: int
    variant: str = "unique"
    rescued_levels: list = field(default_factory=list)

    def reconstruct(self) -> BinaryForm:
        mode = FLOAT if any(pt.mode == FLOAT for pt in self.parts) else EXACT
        acc = BinaryForm.zero_form(self.k * self.d, mode)
        for j, pt in enumerate(self.parts):
            if pt.mode != mode:
                pt = pt.promote()
            piece = pt ** (self.k - j)
            if j:
                piece = BinaryForm.monomial(j * self.d, j * self.d, 1, mode) * piece
            acc = acc + piece
        return acc

    def verify(self, target: BinaryForm, tol: float = 1e-8) -> bool:
        rec = self.reconstruct()
        if rec.mode == EXACT and target.mode == EXACT:
            return rec == target
        return rec.promote().close_to(target.promote(), tol)


def _solve_part(cur: BinaryForm, kk: int, d: int, rescue: bool):
    """Degree-d form g with g^kk matching cur on the first d coefficients
    (y-degree < d), solved one coefficient at a time.

    With rescue enabled the y^d coefficient of g is adjusted, only when
    needed, so the quotient (cur - g^kk)/y^d keeps a nonzero lead.
    """
    mode = cur.mode
    a0 = cur.coeffs[0]
    u0 = a0.kth_root_exact(kk) if mode == EXACT else None
    if u0 is None and mode == EXACT:
        cur = cur.promote()
        mode = FLOAT
        a0 = cur.coeffs[0]
    if u0 is None:
        u0 = a0.kth_root_float(kk)
    us = [u0] + [zero(mode)] * d
    slope = as_scalar(kk, mode) * u0 ** (kk - 1)
    for t in range(1, d):
        partial = BinaryForm(d, list(us), mode) ** kk
        us[t] = (cur.coeffs[t] - partial.coeffs[t]) / slope
    g = BinaryForm(d, list(us), mode)
    rescued = False
    if rescue:
        rem = cur - g**kk
        tiny = 1e-12 * max(1.0, cur.norm()) if mode == FLOAT else 0.0
        if rem.coeffs[d].is_zero(tiny) and not rem.is_zero(tiny):
            base = (g**kk).coeffs[d]
            us[d] = (cur.coeffs[d] - base - one(mode)) / slope
            g = BinaryForm(d, list(us), mode)
            rescued = True
    return g, cur, rescued


def canonical_form(p: BinaryForm, k: int, d: int, variant: str = "unique") -> CanonicalForm:
    """Present a degree-(k*d) binary form as sum_j y^(j*d) * p_j^(k-j).

    The unique variant forbids a y^d term in p_0..p_(k-2) and needs a
    nonzero lead at every recursion level; the relaxed variant spends that
    coefficient to restore the lead whenever the recursion would lose it.
    """
    if variant not in ("unique", "relaxed"):
        raise PreconditionError("variant must be 'unique' or 'relaxed'")
    if k < 1 or d < 1:
        raise PreconditionError("k and d must be positive")
    if p.degree != k * d:
        raise PreconditionError("form degree must equal k*d")
    parts = []
    rescued_levels = []
    cur = p
    for j in range(k):
        kk = k - j
        if kk == 1:
            parts.append(cur)
            break
        tiny = 1e-12 * max(1.0, cur.norm()) if cur.mode == FLOAT else 0.0
        if cur.is_zero(tiny):
            mode = cur.mode
            parts.extend(BinaryForm.zero_form(d, mode) for _ in range(k - j))
            break
        if cur.coeffs[0].is_zero(tiny):
            raise GenericityError(
                "leading coefficient vanishes at recursion level %d" % j
            )
        # the final part enters linearly, so only levels with kk >= 3 need a
        # nonzero lead on their quotient
        g, cur, rescued = _solve_part(cur, kk, d, rescue=(variant == "relaxed" and kk >= 3))
        if rescued:
            rescued_levels.append(j)
        parts.append(g)
        rem = cur - g**kk
        cur = BinaryForm(cur.degree - d, rem.coeffs[d:], rem.mode)
    if any(pt.mode == FLOAT for pt in parts):
        parts = [pt.promote() for pt in parts]
    return CanonicalForm(parts, k, d, variant, rescued_levels)


def _ascending_to_form(coeffs, degree: int, mode: str) -> BinaryForm:
    plain = [zero(mode)] * (degree + 1)
    for t, c in enumerate(coeffs):
        plain[degree - t] = as_scalar(c, mode) if not isinstance(c, Scalar) else c
    return BinaryForm(degree, plain, mode)


def univariate_canonical(coeffs, k: int, d: int):
    """Present a univariate polynomial of degree <= k*d (ascending
    coefficient list) as lambda*x^(kd) + sum_j p_j(x)^(k-j) with every p_j
    of degree <= d.  Returns (lambda, parts as degree-d binary forms); the
    identity holds after setting y = 1.
    """
    if k < 1 or d < 1:
        raise PreconditionError("k and d must be positive")
    vals = []
    for c in coeffs:
        if isinstance(c, Scalar):
            vals.append(c)
        elif isinstance(c, (float, complex)):
            vals.append(as_scalar(c, FLOAT))
        else:
            vals.append(as_scalar(c, EXACT))
    if len(vals) > k * d + 1:
        raise PreconditionError("polynomial degree exceeds k*d")
    mode = FLOAT if any(v.mode == FLOAT for v in vals) else EXACT
    if mode == FLOAT:
        vals = [v.promote() for v in vals]
    tiny = 1e-12 if mode == FLOAT else 0.0
    while vals and vals[-1].is_zero(tiny):
        vals.pop()
    deg = len(vals) - 1
    if deg < 0:
        zero_part = BinaryForm.zero_form(d, mode)
        return zero(mode), [zero_part] * k
    if deg <= d:
        zero_part = BinaryForm.zero_form(d, mode)
        parts = [zero_part] * (k - 1) + [_ascending_to_form(vals, d, mode)]
        return zero(mode), parts
    if deg == k * d:
        lam = zero(mode)
        form = _ascending_to_form(vals, k * d, mode)
    else:
        lam = -one(mode)
        vals = vals + [zero(mode)] * (k * d - deg - 1) + [one(mode)]
        form = _ascending_to_form(vals, k * d, mode)
    cf = canonical_form(form, k, d, variant="relaxed")
    if any(pt.mode == FLOAT for pt in cf.parts):
        lam = lam.promote()
    return lam, cf.parts
