"""Scalar modes: exact rationals or binary64 floats, never mixed.

Rational mode admits any :class:`numbers.Rational` (``int``,
``fractions.Fraction``, and compatible third-party rationals such as
``gmpy2.mpq``); ``fractions.Fraction`` is the canonical type produced by
parsing.  Float mode uses plain ``float``.  Integers are valid in either mode,
so a single run never needs to coerce them.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from .errors import FunctionSpecError

RATIONAL = "rational"
FLOAT64 = "float64"

MODES = (RATIONAL, FLOAT64)


def is_rational(value) -> bool:
    return isinstance(value, numbers.Rational)


def mode_of_values(values, declared=None):
    """Infer the arithmetic mode of a value collection and reject mixing.

    All-integer collections default to rational mode (integers are exact)
    unless ``declared`` says otherwise.
    """
    saw_float = False
    saw_rational = False
    for v in values:
        if isinstance(v, bool):
            raise ValueError(f"boolean is not a scalar: {v!r}")
        if isinstance(v, float):
            saw_float = True
        elif is_rational(v):
            if not isinstance(v, numbers.Integral):
                saw_rational = True
        else:
            raise ValueError(f"unsupported scalar type: {type(v).__name__}")
    if saw_float and saw_rational:
        raise ValueError("values mix exact rationals with floats; pick one mode per run")
    if saw_float:
        inferred = FLOAT64
    elif saw_rational:
        inferred = RATIONAL
    else:
        inferred = declared or RATIONAL
    if declared is not None and declared != inferred:
        raise ValueError(f"values are {inferred} but mode {declared} was declared")
    return inferred


def zero(mode):
    return 0.0 if mode == FLOAT64 else 0


def one(mode):
    return 1.0 if mode == FLOAT64 else 1


def reciprocal_power(base: int, exponent: int, mode):
    """1 / base**exponent in the requested mode (exact in rational mode)."""
    if mode == FLOAT64:
        return 1.0 / base**exponent
    return Fraction(1, base**exponent)


def ratio(numerator: int, denominator: int, mode):
    if mode == FLOAT64:
        return numerator / denominator
    return Fraction(numerator, denominator)


def parse_scalar(text, mode):
    """Parse a scalar literal: "p/q" / integer / decimal string or number."""
    if isinstance(text, bool):
        raise FunctionSpecError(f"boolean is not a scalar: {text!r}")
    if mode == FLOAT64:
        if isinstance(text, (int, float)):
            return float(text)
        try:
            if "/" in text:
                return float(Fraction(text))
            return float(text)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise FunctionSpecError(f"cannot parse float scalar from {text!r}") from exc
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise FunctionSpecError(
            f"float literal {text!r} in rational mode; write it as 'p/q' or a decimal string"
        )
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FunctionSpecError(f"cannot parse rational scalar from {text!r}") from exc


def format_scalar(value) -> str:
    """Render a scalar for output: "p/q" for rationals, shortest round-trip for floats."""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    return str(Fraction(value))
