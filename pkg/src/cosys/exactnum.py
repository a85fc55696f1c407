"""Exact rational arithmetic.

Every weight, LP entry and invariant in the package is a :class:`Rational`.
It is the stdlib :class:`fractions.Fraction`: arbitrary precision, always
reduced, sign on the numerator, zero stored as ``0/1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([-−]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def rational_field_ops(a: Rational, b: Rational, kind: str) -> Rational:
    """Apply ``kind`` in {"add", "sub", "mul", "div"} exactly.

    Raises ZeroDivisionError for division by zero.
    """
    a, b = Fraction(a), Fraction(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def rational_compare(a: Rational, b: Rational) -> str:
    a, b = Fraction(a), Fraction(b)
    if a < b:
        return "less"
    if a > b:
        return "greater"
    return "equal"


def parse_rational(text: str) -> Rational:
    """Parse ``p/q`` or ``p``; a leading ``-`` (or U+2212) negates."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
