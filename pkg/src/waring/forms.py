"""Dense binary forms, sparse multivariate forms, and linear substitutions.

Conventions used throughout the package:

* ``BinaryForm.coeffs[j]`` is the coefficient of ``x^(D-j) * y^j`` (monomial
  basis).  The binomial-scaled view ``a_j = coeffs[j] / C(D, j)`` is a
  computed accessor.
* ``substitute(f, s)`` returns the form ``v -> f(M v)`` where ``M`` is the
  substitution matrix, i.e. old variable i is replaced by the linear form
  ``sum_j M[i][j] * new_j``.
* ``MultiForm.terms`` maps exponent tuples (length = numVars, entries summing
  to the degree) to nonzero scalars.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import PreconditionError, ScalarModeError
from .scalars import EXACT, FLOAT, Scalar, as_scalar, one, zero


def _wrap(value, mode):
    if isinstance(value, Scalar):
        if value.mode != mode:
            raise ScalarModeError("mixed scalar modes inside one form")
        return value
    return as_scalar(value, mode)


class BinaryForm:
    __slots__ = ("degree", "coeffs", "mode")

    def __init__(self, degree: int, coeffs, mode=None):
        if degree < 0:
            raise PreconditionError("negative degree")
        coeffs = list(coeffs)
        if len(coeffs) != degree + 1:
            raise PreconditionError(
                "degree %d needs %d coefficients, got %d"
                % (degree, degree + 1, len(coeffs))
            )
        if mode is None:
            for c in coeffs:
                if isinstance(c, Scalar):
                    mode = c.mode
                    break
            else:
                mode = EXACT
        self.degree = degree
        self.mode = mode
        self.coeffs = [_wrap(c, mode) for c in coeffs]

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero_form(degree: int, mode: str = EXACT) -> "BinaryForm":
        return BinaryForm(degree, [zero(mode)] * (degree + 1), mode)

    @staticmethod
    def monomial(degree: int, j: int, coeff=1, mode: str = EXACT) -> "BinaryForm":
        """coeff * x^(degree-j) * y^j"""
        f = BinaryForm.zero_form(degree, mode)
        f.coeffs[j] = as_scalar(coeff, mode)
        return f

    @staticmethod
    def from_ints(values, mode: str = EXACT) -> "BinaryForm":
        return BinaryForm(len(values) - 1, [as_scalar(v, mode) for v in values], mode)

    @staticmethod
    def linear(a, b, mode: str = EXACT) -> "BinaryForm":
        """a*x + b*y"""
        return BinaryForm(1, [as_scalar(a, mode), as_scalar(b, mode)], mode)

    @staticmethod
    def from_binomial(a_list, mode=None) -> "BinaryForm":
        d = len(a_list) - 1
        m = mode
        if m is None:
            m = next((a.mode for a in a_list if isinstance(a, Scalar)), EXACT)
        return BinaryForm(
            d, [as_scalar(a, m) * comb(d, j) for j, a in enumerate(a_list)], m
        )

    # -- views ---------------------------------------------------------------

    def binomial_view(self):
        """The scaled coefficients a_j = coeffs[j] / C(D, j)."""
        d = self.degree
        return [c / comb(d, j) for j, c in enumerate(self.coeffs)]

    def coefficient(self, j: int) -> Scalar:
        return self.coeffs[j]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.is_zero(tol) for c in self.coeffs)

    def norm(self) -> float:
        return sum(c.abs2() if c.mode == FLOAT else float(c.abs2()) for c in self.coeffs) ** 0.5

    def promote(self) -> "BinaryForm":
        if self.mode == FLOAT:
            return self
        return BinaryForm(self.degree, [c.promote() for c in self.coeffs], FLOAT)

    def y_multiplicity(self) -> int:
        """Largest t with y^t dividing the form (degree+1 for the zero form)."""
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                return j
        return self.degree + 1

    def x_multiplicity(self) -> int:
        for j in range(self.degree, -1, -1):
            if not self.coeffs[j].is_zero():
                return self.degree - j
        return self.degree + 1

    # -- ring operations -------------------------------------------------------

    def _require_same(self, other: "BinaryForm"):
        if self.mode != other.mode:
            raise ScalarModeError("binary forms of different scalar modes")
        if self.degree != other.degree:
            raise PreconditionError(
                "degree mismatch: %d vs %d" % (self.degree, other.degree)
            )

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._require_same(other)
        return BinaryForm(
            self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.mode
        )

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        self._require_same(other)
        return BinaryForm(
            self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.mode
        )

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, [-c for c in self.coeffs], self.mode)

    def scale(self, s) -> "BinaryForm":
        s = as_scalar(s, self.mode)
        return BinaryForm(self.degree, [c * s for c in self.coeffs], self.mode)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        if self.mode != other.mode:
            raise ScalarModeError("binary forms of different scalar modes")
        d = self.degree + other.degree
        out = [zero(self.mode) for _ in range(d + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(d, out, self.mode)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BinaryForm":
        if e < 0:
            raise PreconditionError("negative power of a form")
        if self.degree == 1 and e > 0:
            # (a x + b y)^e directly; repeated squaring would convolve e times
            a, b = self.coeffs
            ap = [one(self.mode)]
            bp = [one(self.mode)]
            for _ in range(e):
                ap.append(ap[-1] * a)
                bp.append(bp[-1] * b)
            out = [ap[e - j] * bp[j] * comb(e, j) for j in range(e + 1)]
            return BinaryForm(e, out, self.mode)
        result = BinaryForm(0, [one(self.mode)], self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, xv, yv) -> Scalar:
        xv = as_scalar(xv, self.mode)
        yv = as_scalar(yv, self.mode)
        # Horner in y/x direction without division: accumulate powers
        acc = zero(self.mode)
        xp = one(self.mode)
        powers_x = []
        for _ in range(self.degree + 1):
            powers_x.append(xp)
            xp = xp * xv
        yp = one(self.mode)
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * powers_x[self.degree - j] * yp
            yp = yp * yv
        return acc

    def derivative_x(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero_form(0, self.mode)
        d = self.degree
        return BinaryForm(
            d - 1, [self.coeffs[j] * (d - j) for j in range(d)], self.mode
        )

    def derivative_y(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm.zero_form(0, self.mode)
        d = self.degree
        return BinaryForm(
            d - 1, [self.coeffs[j + 1] * (j + 1) for j in range(d)], self.mode
        )

    # -- division ---------------------------------------------------------------

    def shift_down_y(self, t: int) -> "BinaryForm":
        """Exact division by y^t (the first t coefficients must vanish)."""
        if t == 0:
            return self
        for j in range(t):
            if not self.coeffs[j].is_zero(1e-12 if self.mode == FLOAT else 0.0):
                raise PreconditionError("form is not divisible by y^%d" % t)
        return BinaryForm(self.degree - t, self.coeffs[t:], self.mode)

    def shift_down_x(self, t: int) -> "BinaryForm":
        if t == 0:
            return self
        for j in range(self.degree, self.degree - t, -1):
            if not self.coeffs[j].is_zero(1e-12 if self.mode == FLOAT else 0.0):
                raise PreconditionError("form is not divisible by x^%d" % t)
        return BinaryForm(self.degree - t, self.coeffs[: self.degree - t + 1], self.mode)

    def div_exact(self, divisor: "BinaryForm", tol: float = 1e-9) -> "BinaryForm":
        """Quotient self / divisor, requiring zero remainder.

        Exact mode checks the remainder exactly; float mode requires its norm
        to stay below ``tol`` times the operand scale.
        """
        if self.mode != divisor.mode:
            raise ScalarModeError("division across scalar modes")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero form")
        # strip y so the divisor has a nonzero leading (x-side) coefficient
        ty = divisor.y_multiplicity()
        num = self.shift_down_y(ty) if ty else self
        den = divisor.shift_down_y(ty) if ty else divisor
        dd = den.degree
        dn = num.degree
        if dn < dd:
            raise PreconditionError("division drops below degree zero")
        lead_inv = den.coeffs[0].inverse()
        rem = list(num.coeffs)
        qd = dn - dd
        q = [zero(self.mode) for _ in range(qd + 1)]
        for j in range(qd + 1):
            c = rem[j] * lead_inv
            q[j] = c
            if not c.is_zero():
                for t in range(dd + 1):
                    rem[j + t] = rem[j + t] - c * den.coeffs[t]
        resid = [c for c in rem[qd + 1 :]]
        if self.mode == EXACT:
            if any(not c.is_zero() for c in resid):
                raise PreconditionError("division is not exact")
        else:
            scale = max(1.0, self.norm())
            if any(abs(c) > tol * scale for c in resid):
                raise PreconditionError("division is not exact within tolerance")
        return BinaryForm(qd, q, self.mode)

    # -- gcd ---------------------------------------------------------------------

    def normalized(self) -> "BinaryForm":
        """Scale so the first nonzero coefficient equals one."""
        for c in self.coeffs:
            if not c.is_zero():
                return self.scale(c.inverse())
        return self

    def gcd(self, other: "BinaryForm") -> "BinaryForm":
        """Monic gcd, exact mode only."""
        if self.mode != EXACT or other.mode != EXACT:
            raise ScalarModeError("gcd needs exact scalars")
        if self.is_zero():
            return other.normalized()
        if other.is_zero():
            return self.normalized()
        ay, by = self.y_multiplicity(), other.y_multiplicity()
        ax, bx = self.x_multiplicity(), other.x_multiplicity()
        f = self.shift_down_y(ay).shift_down_x(ax)
        g = other.shift_down_y(by).shift_down_x(bx)
        u = [c for c in f.coeffs]  # univariate in t = y/x, u[j] = t^j coefficient
        v = [c for c in g.coeffs]
        while any(not c.is_zero() for c in v):
            u = _poly_mod(u, v)
            u, v = v, u
        lift = BinaryForm(len(u) - 1, u, EXACT).normalized()
        my, mx = min(ay, by), min(ax, bx)
        if my:
            lift = BinaryForm(lift.degree + my, [zero(EXACT)] * my + lift.coeffs, EXACT)
        if mx:
            lift = BinaryForm(
                lift.degree + mx, lift.coeffs + [zero(EXACT)] * mx, EXACT
            )
        return lift

    # -- substitution -------------------------------------------------------------

    def substitute(self, s: "LinearSubstitution") -> "BinaryForm":
        if s.n != 2:
            raise PreconditionError("binary form needs a 2x2 substitution")
        if s.mode != self.mode:
            raise ScalarModeError("substitution mode differs from form mode")
        m = s.matrix
        lx = BinaryForm(1, [m[0][0], m[0][1]], self.mode)  # image of old x
        ly = BinaryForm(1, [m[1][0], m[1][1]], self.mode)  # image of old y
        d = self.degree
        px = [BinaryForm(0, [one(self.mode)], self.mode)]
        py = [BinaryForm(0, [one(self.mode)], self.mode)]
        for _ in range(d):
            px.append(px[-1] * lx)
            py.append(py[-1] * ly)
        out = BinaryForm.zero_form(d, self.mode)
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            term = px[d - j] * py[j]
            out = out + term.scale(c)
        return out

    # -- conversions ----------------------------------------------------------------

    def to_multi(self) -> "MultiForm":
        terms = {}
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                terms[(self.degree - j, j)] = c
        return MultiForm(2, self.degree, terms, self.mode)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def close_to(self, other: "BinaryForm", tol: float = 1e-8) -> bool:
        """Relative coefficientwise closeness after float promotion."""
        if self.degree != other.degree:
            return False
        a = self.promote()
        b = other.promote()
        scale = max(1.0, a.norm(), b.norm())
        return all(
            abs(x.to_complex() - y.to_complex()) <= tol * scale
            for x, y in zip(a.coeffs, b.coeffs)
        )

    def __repr__(self):
        from .parsing import format_form

        return "BinaryForm(%s)" % format_form(self)


def _poly_mod(u, v):
    """Remainder of dense univariate scalar polynomials (index = power)."""
    u = u[:]
    dv = len(v) - 1
    while dv >= 0 and v[dv].is_zero():
        dv -= 1
    if dv < 0:
        raise ZeroDivisionError("polynomial mod zero")
    inv = v[dv].inverse()
    du = len(u) - 1
    while du >= dv:
        while du >= 0 and u[du].is_zero():
            du -= 1
        if du < dv:
            break
        c = u[du] * inv
        off = du - dv
        for t in range(dv + 1):
            u[off + t] = u[off + t] - c * v[t]
        u[du] = zero(u[du].mode)  # kill rounding at the cancelled position
        du -= 1
    out = u[: max(dv, 1)]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, lexicographically
    descending (x0-dominant first)."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return out


class MultiForm:
    __slots__ = ("nvars", "degree", "terms", "mode")

    def __init__(self, nvars: int, degree: int, terms, mode=None):
        if nvars < 1:
            raise PreconditionError("need at least one variable")
        if mode is None:
            mode = next((c.mode for c in terms.values() if isinstance(c, Scalar)), EXACT)
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise PreconditionError("exponent tuple of wrong length: %r" % (exps,))
            if any(e < 0 for e in exps):
                raise PreconditionError("negative exponent: %r" % (exps,))
            if sum(exps) != degree:
                raise PreconditionError(
                    "term %r does not have total degree %d" % (exps, degree)
                )
            c = _wrap(c, mode)
            if not c.is_zero():
                clean[exps] = c
        self.nvars = nvars
        self.degree = degree
        self.terms = clean
        self.mode = mode

    # -- constructors -------------------------------------------------------------

    @staticmethod
    def zero_form(nvars: int, degree: int, mode: str = EXACT) -> "MultiForm":
        return MultiForm(nvars, degree, {}, mode)

    @staticmethod
    def monomial_form(nvars: int, exps, coeff=1, mode: str = EXACT) -> "MultiForm":
        exps = tuple(exps)
        return MultiForm(nvars, sum(exps), {exps: as_scalar(coeff, mode)}, mode)

    @staticmethod
    def variable(nvars: int, index: int, mode: str = EXACT) -> "MultiForm":
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return MultiForm(nvars, 1, {exps: one(mode)}, mode)

    @staticmethod
    def from_binary(f: BinaryForm) -> "MultiForm":
        return f.to_multi()

    # -- views ---------------------------------------------------------------------

    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return not self.terms
        return all(c.is_zero(tol) for c in self.terms.values())

    def coefficient(self, exps) -> Scalar:
        return self.terms.get(tuple(exps), zero(self.mode))

    def norm(self) -> float:
        return sum(
            c.abs2() if c.mode == FLOAT else float(c.abs2()) for c in self.terms.values()
        ) ** 0.5 if self.terms else 0.0

    def promote(self) -> "MultiForm":
        if self.mode == FLOAT:
            return self
        return MultiForm(
            self.nvars,
            self.degree,
            {e: c.promote() for e, c in self.terms.items()},
            FLOAT,
        )

    def to_binary(self) -> BinaryForm:
        if self.nvars != 2:
            raise PreconditionError("only 2-variable forms convert to BinaryForm")
        f = BinaryForm.zero_form(self.degree, self.mode)
        for (_, j), c in self.terms.items():
            f.coeffs[j] = c
        return f

    # -- ring operations --------------------------------------------------------------

    def _require_compatible(self, other: "MultiForm", same_degree: bool):
        if self.mode != other.mode:
            raise ScalarModeError("multiforms of different scalar modes")
        if self.nvars != other.nvars:
            raise PreconditionError("variable-count mismatch")
        if same_degree and self.degree != other.degree:
            raise PreconditionError(
                "degree mismatch: %d vs %d" % (self.degree, other.degree)
            )

    def __add__(self, other: "MultiForm") -> "MultiForm":
        self._require_compatible(other, same_degree=True)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            terms[e] = c if s is None else s + c
        return MultiForm(self.nvars, self.degree, terms, self.mode)

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-other)

    def __neg__(self) -> "MultiForm":
        return MultiForm(
            self.nvars, self.degree, {e: -c for e, c in self.terms.items()}, self.mode
        )

    def scale(self, s) -> "MultiForm":
        s = as_scalar(s, self.mode)
        return MultiForm(
            self.nvars, self.degree, {e: c * s for e, c in self.terms.items()}, self.mode
        )

    def __mul__(self, other):
        if not isinstance(other, MultiForm):
            return self.scale(other)
        self._require_compatible(other, same_degree=False)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                p = c1 * c2
                out[e] = p if s is None else s + p
        return MultiForm(self.nvars, self.degree + other.degree, out, self.mode)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiForm":
        if e < 0:
            raise PreconditionError("negative power of a form")
        result = MultiForm(self.nvars, 0, {(0,) * self.nvars: one(self.mode)}, self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, point) -> Scalar:
        point = [as_scalar(p, self.mode) for p in point]
        acc = zero(self.mode)
        for exps, c in self.terms.items():
            v = c
            for p, e in zip(point, exps):
                if e:
                    v = v * p**e
            acc = acc + v
        return acc

    def derivative(self, var: int) -> "MultiForm":
        out = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e:
                ne = list(exps)
                ne[var] = e - 1
                out[tuple(ne)] = c * e
        return MultiForm(self.nvars, max(self.degree - 1, 0), out, self.mode)

    def apply_derivative_monomial(self, alpha) -> "MultiForm":
        """Apply the differential operator prod_i (d/dx_i)^alpha_i."""
        alpha = tuple(alpha)
        a = sum(alpha)
        out = {}
        for exps, c in self.terms.items():
            if any(e < al for e, al in zip(exps, alpha)):
                continue
            factor = 1
            ne = []
            for e, al in zip(exps, alpha):
                for t in range(al):
                    factor *= e - t
                ne.append(e - al)
            out_key = tuple(ne)
            v = c * factor
            s = out.get(out_key)
            out[out_key] = v if s is None else s + v
        return MultiForm(self.nvars, max(self.degree - a, 0), out, self.mode)

    def substitute(self, s: "LinearSubstitution") -> "MultiForm":
        if s.n != self.nvars:
            raise PreconditionError("substitution size differs from variable count")
        if s.mode != self.mode:
            raise ScalarModeError("substitution mode differs from form mode")
        images = []
        for i in range(self.nvars):
            images.append(
                MultiForm(
                    self.nvars,
                    1,
                    {
                        tuple(1 if t == j else 0 for t in range(self.nvars)): s.matrix[i][j]
                        for j in range(self.nvars)
                        if not s.matrix[i][j].is_zero()
                    },
                    self.mode,
                )
            )
        max_pow = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                max_pow[i] = max(max_pow[i], e)
        powers = []
        for i in range(self.nvars):
            ps = [MultiForm(self.nvars, 0, {(0,) * self.nvars: one(self.mode)}, self.mode)]
            for _ in range(max_pow[i]):
                ps.append(ps[-1] * images[i])
            powers.append(ps)
        acc = MultiForm.zero_form(self.nvars, self.degree, self.mode)
        for exps, c in self.terms.items():
            term = MultiForm(self.nvars, 0, {(0,) * self.nvars: c}, self.mode)
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            acc = acc + term
        return acc

    def __eq__(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        if self.nvars != other.nvars or self.degree != other.degree:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    __hash__ = None

    def close_to(self, other: "MultiForm", tol: float = 1e-8) -> bool:
        a, b = self.promote(), other.promote()
        if a.nvars != b.nvars or a.degree != b.degree:
            return False
        scale = max(1.0, a.norm(), b.norm())
        keys = set(a.terms) | set(b.terms)
        for e in keys:
            da = a.terms.get(e)
            db = b.terms.get(e)
            va = da.to_complex() if da else 0j
            vb = db.to_complex() if db else 0j
            if abs(va - vb) > tol * scale:
                return False
        return True

    def __repr__(self):
        from .parsing import format_form

        return "MultiForm(%s)" % format_form(self)


class LinearSubstitution:
    __slots__ = ("matrix", "mode", "n")

    def __init__(self, matrix, mode=None, require_invertible=True):
        rows = [list(r) for r in matrix]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise PreconditionError("substitution matrix must be square")
        if mode is None:
            mode = next(
                (c.mode for r in rows for c in r if isinstance(c, Scalar)), EXACT
            )
        self.matrix = [[_wrap(c, mode) for c in r] for r in rows]
        self.mode = mode
        self.n = n
        if require_invertible and self.det().is_zero(1e-12 if mode == FLOAT else 0.0):
            raise PreconditionError("substitution matrix is singular")

    @staticmethod
    def identity(n: int = 2, mode: str = EXACT) -> "LinearSubstitution":
        return LinearSubstitution(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], mode
        )

    @staticmethod
    def shear(t, mode: str = EXACT) -> "LinearSubstitution":
        """x -> x, y -> t*x + y (maps p to p(x, t*x + y))."""
        return LinearSubstitution([[1, 0], [t, 1]], mode)

    @staticmethod
    def swap(mode: str = EXACT) -> "LinearSubstitution":
        return LinearSubstitution([[0, 1], [1, 0]], mode)

    def det(self) -> Scalar:
        from .linalg import ScalarMatrix

        return ScalarMatrix(self.matrix, self.mode).det()

    def is_identity(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                expected = one(self.mode) if i == j else zero(self.mode)
                if not (self.matrix[i][j] - expected).is_zero(
                    1e-12 if self.mode == FLOAT else 0.0
                ):
                    return False
        return True

    def inverse(self) -> "LinearSubstitution":
        from .linalg import ScalarMatrix

        m = ScalarMatrix(self.matrix, self.mode)
        cols = []
        for j in range(self.n):
            e = [one(self.mode) if i == j else zero(self.mode) for i in range(self.n)]
            x = m.solve(e)
            if x is None:
                raise PreconditionError("substitution matrix is singular")
            cols.append(x)
        inv = [[cols[j][i] for j in range(self.n)] for i in range(self.n)]
        return LinearSubstitution(inv, self.mode)

    def compose(self, inner: "LinearSubstitution") -> "LinearSubstitution":
        """The substitution equivalent to applying ``inner`` after ``self``.

        ``f.substitute(s).substitute(inner) == f.substitute(s.compose(inner))``.
        """
        if self.n != inner.n:
            raise PreconditionError("substitution size mismatch")
        if self.mode != inner.mode:
            raise ScalarModeError("substitution mode mismatch")
        n = self.n
        prod = [
            [
                sum(
                    (self.matrix[i][t] * inner.matrix[t][j] for t in range(n)),
                    zero(self.mode),
                )
                for j in range(n)
            ]
            for i in range(n)
        ]
        return LinearSubstitution(prod, self.mode)

    def promote(self) -> "LinearSubstitution":
        if self.mode == FLOAT:
            return self
        return LinearSubstitution(
            [[c.promote() for c in row] for row in self.matrix], FLOAT
        )

    def __repr__(self):
        return "LinearSubstitution(%r)" % (
            [[str(c) for c in row] for row in self.matrix],
        )


def undo_substitutions(g: BinaryForm, chain) -> BinaryForm:
    """Map a form back through a chain of substitutions.

    If the pipeline produced ``p_i = p_{i-1}.substitute(chain[i])``, then a
    form expressed in the final coordinates is pulled back to the original
    coordinates by substituting the inverses in reverse order.
    """
    out = g
    for s in reversed(chain):
        inv = s.inverse()
        if out.mode == FLOAT and inv.mode == EXACT:
            inv = inv.promote()
        out = out.substitute(inv)
    return out
