"""Exact rational coercion and formatting.

Floats are rejected everywhere: all comparisons in this package are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


def exact_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise DomainError(
            f"{value!r} is a float; pass an int, Fraction, or 'p/q' string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            if "." in value or "e" in value.lower():
                raise ValueError
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"{value!r} is not an exact rational 'p/q'") from None
    raise DomainError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
