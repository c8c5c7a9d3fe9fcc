"""Dual-mode scalars: exact Gaussian rationals or complex doubles.

All algebra in the package is generic over :class:`Scalar`.  An exact scalar
holds two :class:`fractions.Fraction` values (real and imaginary part); a
float scalar holds one ``complex``.  Arithmetic never silently mixes the two
modes: combining an exact scalar with a float scalar raises
:class:`~waring.errors.ScalarModeError`.  Plain ``int`` and ``Fraction``
operands are absorbed into either mode; ``float``/``complex`` operands only
into float mode.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

from .errors import ScalarModeError

EXACT = "exact"
FLOAT = "float"

_EXACT_OK = (int, Fraction)


def _int_kth_root(n: int, k: int):
    """Exact k-th root of a non-negative integer, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def _fraction_kth_root(q: Fraction, k: int):
    """Exact k-th root of a rational, or None.  Odd k allows negative input."""
    neg = q < 0
    if neg and k % 2 == 0:
        return None
    if neg:
        q = -q
    num = _int_kth_root(q.numerator, k)
    den = _int_kth_root(q.denominator, k)
    if num is None or den is None:
        return None
    r = Fraction(num, den)
    return -r if neg else r


class Scalar:
    __slots__ = ("mode", "_re", "_im", "_z")

    def __init__(self, mode, re=None, im=None, z=None):
        # Use sc_exact / sc_float instead of calling this directly.
        self.mode = mode
        self._re = re
        self._im = im
        self._z = z

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(re, im=0) -> "Scalar":
        if not isinstance(re, _EXACT_OK) or not isinstance(im, _EXACT_OK):
            raise ScalarModeError(
                "exact scalars take int or Fraction parts, got %r, %r" % (re, im)
            )
        return Scalar(EXACT, Fraction(re), Fraction(im))

    @staticmethod
    def approx(z) -> "Scalar":
        return Scalar(FLOAT, z=complex(z))

    # -- views -------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    @property
    def re(self):
        return self._re if self.mode == EXACT else self._z.real

    @property
    def im(self):
        return self._im if self.mode == EXACT else self._z.imag

    def to_complex(self) -> complex:
        if self.mode == FLOAT:
            return self._z
        return complex(self._re, self._im)

    def promote(self) -> "Scalar":
        """Explicit exact -> float promotion (identity on float scalars)."""
        return self if self.mode == FLOAT else Scalar.approx(self.to_complex())

    # -- predicates --------------------------------------------------------

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.mode == EXACT:
            return not self._re and not self._im
        return abs(self._z) <= tol

    def is_real(self) -> bool:
        if self.mode == EXACT:
            return not self._im
        return self._z.imag == 0.0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.mode != self.mode:
                raise ScalarModeError(
                    "cannot mix %s and %s scalars without promote()"
                    % (self.mode, other.mode)
                )
            return other
        if isinstance(other, _EXACT_OK):
            if self.mode == EXACT:
                return Scalar.exact(other)
            return Scalar.approx(other)
        if isinstance(other, (float, complex)):
            if self.mode == FLOAT:
                return Scalar.approx(other)
            raise ScalarModeError("cannot mix a float literal into an exact scalar")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.mode == EXACT:
            return Scalar(EXACT, self._re + o._re, self._im + o._im)
        return Scalar(FLOAT, z=self._z + o._z)

    __radd__ = __add__

    def __neg__(self):
        if self.mode == EXACT:
            return Scalar(EXACT, -self._re, -self._im)
        return Scalar(FLOAT, z=-self._z)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.mode == EXACT:
            return Scalar(
                EXACT,
                self._re * o._re - self._im * o._im,
                self._re * o._im + self._im * o._re,
            )
        return Scalar(FLOAT, z=self._z * o._z)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.mode == FLOAT:
            return Scalar(FLOAT, z=self._z / o._z)
        d = o._re * o._re + o._im * o._im
        if not d:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(
            EXACT,
            (self._re * o._re + self._im * o._im) / d,
            (self._im * o._re - self._re * o._im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "Scalar":
        return one(self.mode) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = one(self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "Scalar":
        if self.mode == EXACT:
            return Scalar(EXACT, self._re, -self._im)
        return Scalar(FLOAT, z=self._z.conjugate())

    def abs2(self):
        """|self|^2 as Fraction (exact) or float."""
        if self.mode == EXACT:
            return self._re * self._re + self._im * self._im
        return abs(self._z) ** 2

    def __abs__(self) -> float:
        if self.mode == EXACT:
            return float(self.abs2()) ** 0.5
        return abs(self._z)

    def __eq__(self, other):
        if isinstance(other, Scalar) and other.mode != self.mode:
            raise ScalarModeError("cannot compare scalars of different modes")
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.mode == EXACT:
            return self._re == o._re and self._im == o._im
        return self._z == o._z

    __hash__ = None

    # -- exact root extraction ----------------------------------------------

    def sqrt_exact(self):
        """Exact square root inside the Gaussian rationals, or None.

        For a + bi with b != 0 a root u + vi exists iff a^2 + b^2 is a square
        of a rational s and (a + s)/2 is a square of a rational u.
        """
        if self.mode != EXACT:
            return None
        a, b = self._re, self._im
        if not b:
            r = _fraction_kth_root(a, 2) if a >= 0 else None
            if r is not None:
                return Scalar.exact(r)
            r = _fraction_kth_root(-a, 2) if a < 0 else None
            if r is not None:
                return Scalar.exact(0, r)
            return None
        s = _fraction_kth_root(a * a + b * b, 2)
        if s is None:
            return None
        u = _fraction_kth_root((a + s) / 2, 2)
        if u is None or u == 0:
            return None
        v = b / (2 * u)
        cand = Scalar.exact(u, v)
        return cand if cand * cand == self else None

    def kth_root_exact(self, k: int):
        """Exact k-th root, or None.  Handles rational values and k in {1,2}."""
        if self.mode != EXACT or k < 1:
            return None
        if k == 1:
            return self
        if k == 2:
            return self.sqrt_exact()
        if self._im:
            return None
        r = _fraction_kth_root(self._re, k)
        if r is not None:
            return Scalar.exact(r)
        # even k of a negative rational can still land in Q(i) via i
        if k % 2 == 0 and self._re < 0:
            half = Scalar.exact(-self._re).kth_root_exact(k)
            if half is not None and k % 4 == 2:
                # (r*i)^k = r^k * i^k, i^k = -1 when k = 2 mod 4
                return half * Scalar.exact(0, 1)
        return None

    def sqrt_float(self) -> "Scalar":
        return Scalar.approx(cmath.sqrt(self.to_complex()))

    def kth_root_float(self, k: int) -> "Scalar":
        z = self.to_complex()
        if z == 0:
            return Scalar.approx(0.0)
        return Scalar.approx(z ** (1.0 / k))

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return "Scalar(%s)" % scalar_str(self)

    def __str__(self):
        return scalar_str(self)


def sc_exact(re, im=0) -> Scalar:
    return Scalar.exact(re, im)


def sc_float(z) -> Scalar:
    return Scalar.approx(z)


def zero(mode: str) -> Scalar:
    return Scalar.exact(0) if mode == EXACT else Scalar.approx(0.0)


def one(mode: str) -> Scalar:
    return Scalar.exact(1) if mode == EXACT else Scalar.approx(1.0)


def imaginary_unit(mode: str) -> Scalar:
    return Scalar.exact(0, 1) if mode == EXACT else Scalar.approx(1j)


def exact_int_vector(values):
    """Common-denominator integer multiples of exact real scalars, or None.

    The returned list spans the same line as the input over Q, so it can
    stand in for the input wherever only ratios or zero-tests matter.
    """
    fracs = []
    for s in values:
        if s.mode != EXACT or not s.is_real():
            return None
        fracs.append(s.re)
    den = 1
    for q in fracs:
        den = den * q.denominator // gcd(den, q.denominator)
    return [int(q * den) for q in fracs]


def as_scalar(value, mode: str) -> Scalar:
    """Wrap ints/Fractions/floats/complex/Scalar into the requested mode."""
    if isinstance(value, Scalar):
        if value.mode != mode:
            if mode == FLOAT:
                return value.promote()
            raise ScalarModeError("cannot demote a float scalar to exact")
        return value
    if isinstance(value, _EXACT_OK):
        return Scalar.exact(value) if mode == EXACT else Scalar.approx(value)
    if isinstance(value, (float, complex)):
        if mode == EXACT:
            raise ScalarModeError("float literal cannot enter exact mode")
        return Scalar.approx(value)
    raise ScalarModeError("cannot interpret %r as a scalar" % (value,))


def roots_of_unity(k: int, mode: str):
    """The k-th roots of unity, exact for k in {1, 2, 4}, float otherwise."""
    if mode == EXACT and k in (1, 2, 4):
        i = imaginary_unit(EXACT)
        table = {
            1: [sc_exact(1)],
            2: [sc_exact(1), sc_exact(-1)],
            4: [sc_exact(1), i, sc_exact(-1), -i],
        }
        return table[k]
    return [Scalar.approx(cmath.exp(2j * cmath.pi * j / k)) for j in range(k)]


def _frac_str(q: Fraction) -> str:
    return str(q)


def _float_str(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def scalar_str(s: Scalar) -> str:
    """Render a scalar in the grammar the parser accepts.

    Exact: ``3``, ``-2/7``, ``2i``, ``(1/2-3/4i)``.  Float: ``1.5``,
    ``(1.5+0.25i)``.  Mixed real+imaginary values are parenthesised so the
    result can serve as a coefficient token.
    """
    if s.mode == EXACT:
        a, b = s._re, s._im
        if not b:
            return _frac_str(a)
        ib = "i" if abs(b) == 1 else _frac_str(abs(b)) + "i"
        if not a:
            return ("-" if b < 0 else "") + ib
        return "(%s%s%s)" % (_frac_str(a), "-" if b < 0 else "+", ib)
    z = s._z
    re, im = z.real + 0.0, z.imag + 0.0
    if im == 0.0:
        return _float_str(re)
    ib = "i" if abs(im) == 1.0 else _float_str(abs(im)) + "i"
    if re == 0.0:
        return ("-" if im < 0 else "") + ib
    return "(%s%s%s)" % (_float_str(re), "-" if im < 0 else "+", ib)
