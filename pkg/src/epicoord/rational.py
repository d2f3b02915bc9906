"""Exact rational parsing and rendering shared by the JSON, CSV, and CLI layers."""

from __future__ import annotations

from fractions import Fraction


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, integer, or finite-decimal notation into a Fraction.

    Decimal strings convert exactly ("0.25" -> 1/4, "1.1" -> 11/10).  Binary
    floats are rejected: they do not round-trip decimal notation, so callers
    must hand over the original text (json loading uses parse_float for this).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"refusing inexact float {value!r}; pass a string like '1/4' or '0.25'")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``p/q`` with an explicit denominator (``1`` -> ``1/1``)."""
    return f"{value.numerator}/{value.denominator}"
