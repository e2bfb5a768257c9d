"""Rational helpers shared by every module.

All exact quantities are :class:`fractions.Fraction`, which already keeps
values in lowest terms with a positive denominator. This module only adds
the textual convention used in files and CLI output: integers as plain
decimal strings, everything else as ``"p/q"``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "parse_vector",
    "format_vector",
    "clear_denominators",
]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction.

    Floats are refused: silently converting 0.1 would smuggle a binary
    approximation into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def parse_rational(text) -> Fraction:
    """Parse ``"7"``, ``"-3/4"`` (or a JSON integer) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_vector(items: Iterable) -> list[Fraction]:
    return [parse_rational(t) for t in items]


def format_vector(xs: Iterable) -> list[str]:
    return [format_rational(x) for x in xs]


def clear_denominators(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale ``row`` by the lcm of its denominators.

    Returns the integer row and the (positive) scale factor.
    """
    scale = 1
    for v in row:
        scale = math.lcm(scale, v.denominator)
    return [int(v * scale) for v in row], scale
