"""Text representation of forms and scalars.

Grammar accepted by :func:`parse_form` (whitespace is insignificant):

* a form is a signed sum of terms,
* a term is an optional coefficient, an optional ``*``, and a product of
  variable powers (``*`` between factors optional),
* a coefficient is an integer, a rational ``p/q``, a decimal, an imaginary
  multiple such as ``2i``, or a parenthesized combination ``(a+bi)``,
* variables are ``x``/``y`` (binary forms), ``x1 .. xn``, or ``Y0 .. YN``,
  with exponents written ``^e`` (``**e`` is also accepted).

Any decimal literal anywhere switches the whole form to float scalars;
otherwise everything stays exact (Gaussian rationals).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .forms import BinaryForm, MultiForm
from .scalars import (
    EXACT,
    FLOAT,
    Scalar,
    as_scalar,
    imaginary_unit,
    one,
    scalar_str,
    zero,
)

_DECIMAL_RE = re.compile(r"[.eE]")
_XN_RE = re.compile(r"^x(\d+)$")
_YN_RE = re.compile(r"^Y(\d+)$")


def _scan_digits(s: str, i: int):
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    return s[i:j], j


def _scan_number(s: str, i: int, mode: str):
    n = len(s)
    start = i
    digits, i = _scan_digits(s, i)
    if digits and i < n and s[i] == "/" and i + 1 < n and s[i + 1].isdigit():
        den, i = _scan_digits(s, i + 1)
        value = as_scalar(Fraction(int(digits), int(den)), mode)
    elif i < n and s[i] in ".eE":
        if s[i] == ".":
            i += 1
            frac, i = _scan_digits(s, i)
            if not digits and not frac:
                raise ParseError("bare '.' is not a number")
        if i < n and s[i] in "eE":
            k = i + 1
            if k < n and s[k] in "+-":
                k += 1
            expd, k = _scan_digits(s, k)
            if not expd:
                raise ParseError("malformed exponent in %r" % s[start : i + 1])
            i = k
        try:
            value = as_scalar(float(s[start:i]), FLOAT)
        except ValueError:
            raise ParseError("malformed number %r" % s[start:i])
        if mode == EXACT:
            raise ParseError("decimal literal in exact context")
    else:
        if not digits:
            raise ParseError("expected a number at position %d" % start)
        value = as_scalar(int(digits), mode)
    if i < n and s[i] == "i":
        value = value * imaginary_unit(value.mode)
        i += 1
    return value, i


def _scan_power(s: str, i: int):
    """Optional ^e or **e suffix; returns (exponent, new position)."""
    n = len(s)
    if i < n and s[i] == "^":
        i += 1
    elif s[i : i + 2] == "**":
        i += 2
    else:
        return 1, i
    digits, j = _scan_digits(s, i)
    if not digits:
        raise ParseError("exponent marker without digits at position %d" % i)
    return int(digits), j


def _scan_variable(s: str, i: int):
    c = s[i]
    if c == "x":
        digits, j = _scan_digits(s, i + 1)
        if digits:
            if int(digits) == 0:
                raise ParseError("indexed variables start at x1")
            return "x" + digits, j
        return "x", i + 1
    if c == "y":
        return "y", i + 1
    if c == "Y":
        digits, j = _scan_digits(s, i + 1)
        if not digits:
            raise ParseError("Y must carry an index, e.g. Y0")
        return "Y" + digits, j
    raise ParseError("unexpected character %r at position %d" % (c, i))


def _parse_sum(s: str, mode: str, allow_vars: bool):
    """List of (coefficient, exponent-dict) terms."""
    i, n = 0, len(s)
    terms = []
    while i < n:
        sign = 1
        while i < n and s[i] in "+-":
            if s[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign at end of input")
        coeff = one(mode)
        exps = {}
        factors = 0
        while i < n and s[i] not in "+-":
            c = s[i]
            if c == "*":
                if s[i : i + 2] == "**":
                    raise ParseError("exponent without a base at position %d" % i)
                i += 1
                continue
            if c == "(":
                j = s.find(")", i)
                if j < 0:
                    raise ParseError("unbalanced parenthesis")
                inner = _parse_sum(s[i + 1 : j], mode, allow_vars=False)
                value = zero(mode)
                for cf, _ in inner:
                    value = value + cf
                i = j + 1
                e, i = _scan_power(s, i)
                coeff = coeff * value**e
                factors += 1
                continue
            if c.isdigit() or c == ".":
                value, i = _scan_number(s, i, mode)
                e, i = _scan_power(s, i)
                coeff = coeff * value**e
                factors += 1
                continue
            if c == "i":
                i += 1
                e, i = _scan_power(s, i)
                coeff = coeff * imaginary_unit(mode) ** e
                factors += 1
                continue
            if c in "xyY":
                if not allow_vars:
                    raise ParseError("variable inside a coefficient")
                name, i = _scan_variable(s, i)
                e, i = _scan_power(s, i)
                exps[name] = exps.get(name, 0) + e
                factors += 1
                continue
            raise ParseError("unexpected character %r at position %d" % (c, i))
        if factors == 0:
            raise ParseError("empty term")
        if sign < 0:
            coeff = -coeff
        terms.append((coeff, exps))
    if not terms:
        raise ParseError("empty input")
    return terms


def parse_scalar(text: str, mode=None) -> Scalar:
    """Parse a single coefficient (integer, rational, decimal, or complex)."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty scalar")
    detected = FLOAT if _DECIMAL_RE.search(s) else EXACT
    if mode == FLOAT:
        detected = FLOAT
    terms = _parse_sum(s, detected, allow_vars=False)
    value = zero(detected)
    for coeff, _ in terms:
        value = value + coeff
    if mode == EXACT and value.mode == FLOAT:
        raise ParseError("decimal literal where an exact scalar is required")
    return value


def _classify(names):
    if not names:
        return "constant"
    if names <= {"x", "y"}:
        return "binary"
    if all(_XN_RE.match(v) for v in names):
        return "xn"
    if all(_YN_RE.match(v) for v in names):
        return "Y"
    raise ParseError("mixed variable families: %s" % ", ".join(sorted(names)))


def parse_form(text: str, nvars=None, degree=None):
    """Parse a homogeneous form.

    Binary input (variables ``x`` and ``y``, or none) yields a
    :class:`BinaryForm`; indexed input (``x1..xn`` or ``Y0..YN``) yields a
    :class:`MultiForm` whose variable count is inferred from the largest
    index unless ``nvars`` says otherwise.  ``degree`` fixes the degree of a
    textually zero form and is otherwise checked against the parsed degree.
    """
    s = "".join(text.split())
    if not s:
        raise ParseError("empty input")
    mode = FLOAT if _DECIMAL_RE.search(s) else EXACT
    terms = _parse_sum(s, mode, allow_vars=True)
    names = set()
    for _, exps in terms:
        names.update(exps)
    family = _classify(names)

    if family in ("binary", "constant") and (nvars in (None, 2) or family == "constant"):
        if family == "constant" and nvars not in (None, 2):
            width = nvars
            total = 0 if degree is None else degree
            acc = MultiForm.zero_form(width, total, mode)
            for coeff, _ in terms:
                if degree in (None, 0):
                    acc = acc + MultiForm(width, 0, {(0,) * width: coeff}, mode)
                elif not coeff.is_zero():
                    raise ParseError("nonzero constant cannot have degree %d" % degree)
            return acc
        degs = {exps.get("x", 0) + exps.get("y", 0) for _, exps in terms}
        if len(degs) > 1:
            raise ParseError("form is not homogeneous: degrees %s" % sorted(degs))
        d = degs.pop()
        f = BinaryForm.zero_form(d, mode)
        for coeff, exps in terms:
            j = exps.get("y", 0)
            f.coeffs[j] = f.coeffs[j] + coeff
        if degree is not None and degree != d:
            if f.is_zero():
                return BinaryForm.zero_form(degree, mode)
            raise ParseError("expected degree %d, parsed degree %d" % (degree, d))
        return f

    if family == "binary":
        raise ParseError("binary variables x, y cannot make a %d-variable form" % nvars)

    if family == "xn":
        index = lambda v: int(v[1:]) - 1
    else:
        index = lambda v: int(v[1:])
    top = max(index(v) for v in names)
    width = (top + 1) if nvars is None else nvars
    if top + 1 > width:
        raise ParseError("variable index exceeds the declared count %d" % width)
    degs = {sum(exps.values()) for _, exps in terms}
    if len(degs) > 1:
        raise ParseError("form is not homogeneous: degrees %s" % sorted(degs))
    d = degs.pop()
    acc = MultiForm.zero_form(width, d, mode)
    for coeff, exps in terms:
        key = [0] * width
        for v, e in exps.items():
            key[index(v)] += e
        acc = acc + MultiForm(width, d, {tuple(key): coeff}, mode)
    if degree is not None and degree != d:
        if acc.is_zero():
            return MultiForm.zero_form(width, degree, mode)
        raise ParseError("expected degree %d, parsed degree %d" % (degree, d))
    return acc


def _monomial_text(pairs):
    parts = []
    for name, e in pairs:
        if e == 0:
            continue
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


def _join_terms(rendered):
    if not rendered:
        return "0"
    out = rendered[0]
    for t in rendered[1:]:
        if t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out


def _term_text(coeff: Scalar, mono: str) -> str:
    cs = scalar_str(coeff)
    if not mono:
        return cs
    if cs == "1":
        return mono
    if cs == "-1":
        return "-" + mono
    return "%s*%s" % (cs, mono)


def format_form(form, style=None) -> str:
    """Render a form in the grammar accepted by :func:`parse_form`.

    ``style='Y'`` prints a MultiForm in the ``Y0..YN`` family; the default is
    ``x``/``y`` for binary forms and ``x1..xn`` otherwise.
    """
    if isinstance(form, BinaryForm):
        rendered = []
        d = form.degree
        for j, c in enumerate(form.coeffs):
            if c.is_zero():
                continue
            mono = _monomial_text([("x", d - j), ("y", j)])
            rendered.append(_term_text(c, mono))
        return _join_terms(rendered)
    if isinstance(form, MultiForm):
        namer = (lambda i: "Y%d" % i) if style == "Y" else (lambda i: "x%d" % (i + 1))
        rendered = []
        for exps in sorted(form.terms.keys(), reverse=True):
            c = form.terms[exps]
            mono = _monomial_text([(namer(i), e) for i, e in enumerate(exps)])
            rendered.append(_term_text(c, mono))
        return _join_terms(rendered)
    raise TypeError("format_form expects a BinaryForm or MultiForm")
