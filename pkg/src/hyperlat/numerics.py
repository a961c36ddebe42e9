"""Exact rational scalars and the optional floating backend.

The exact backend is the default and the only one the verification story
relies on: every identity in this library is an algebraic one, so "zero"
means literally zero.  ``Rational`` is ``fractions.Fraction``, which already
keeps values in canonical form (reduced, positive denominator) after every
operation.  The float backend exists purely for speed exploration and is
applied by converting all problem data once, at the input boundary; exact
and floating values are never mixed within a run.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, RationalParseError

Rational = Fraction

#: A scalar is either an exact rational or (on the inexact backend) a float.
Scalar = Union[Fraction, float]


class Backend(enum.Enum):
    EXACT = "exact"
    APPROX = "approx"


def rat_add(a: Rational, b: Rational) -> Rational:
    return a + b


def rat_sub(a: Rational, b: Rational) -> Rational:
    return a - b


def rat_mul(a: Rational, b: Rational) -> Rational:
    return a * b


def rat_div(a: Rational, b: Rational) -> Rational:
    if b == 0:
        raise DivisionByZero("rational division by zero")
    return a / b


def rat_pow(a: Rational, e: int) -> Rational:
    """a**e for a signed integer exponent (exact, repeated squaring)."""
    if a == 0 and e < 0:
        raise DivisionByZero("zero cannot be raised to a negative power")
    return a ** e


def parse_rational(text: str) -> Rational:
    """Parse ``num`` or ``num/den`` (ASCII digits, optional leading ``-``).

    No whitespace is accepted inside the literal.  Raises
    ``RationalParseError`` with the byte offset of the first bad character,
    or ``DivisionByZero`` for a zero denominator.
    """
    if not text:
        raise RationalParseError("empty rational literal", 0)

    def scan_int(pos: int) -> int:
        if pos < len(text) and text[pos] == "-":
            pos += 1
        start = pos
        while pos < len(text) and text[pos].isascii() and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise RationalParseError("expected digits", start)
        return pos

    pos = scan_int(0)
    num = int(text[:pos])
    if pos == len(text):
        return Fraction(num)
    if text[pos] != "/":
        raise RationalParseError("unexpected character in rational literal", pos)
    den_start = pos + 1
    pos = scan_int(den_start)
    if pos != len(text):
        raise RationalParseError("trailing characters after rational literal", pos)
    if text[den_start] == "-":
        raise RationalParseError("denominator must be unsigned", den_start)
    den = int(text[den_start:])
    if den == 0:
        raise DivisionByZero("zero denominator in rational literal")
    return Fraction(num, den)


def format_rational(value: Rational) -> str:
    """Canonical text form: ``num`` or ``num/den``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return repr(value)


def to_backend(value: Rational, backend: Backend) -> Scalar:
    if backend is Backend.APPROX:
        return float(value)
    return value


def is_zero(value: Scalar, tol: Scalar = 0) -> bool:
    """Exact zero test, or |value| <= tol when a tolerance is in force."""
    if tol == 0:
        return value == 0
    return abs(value) <= tol
