"""Exact thresholds.  Floats are refused everywhere."""

from __future__ import annotations

import re
from fractions import Fraction

_RATIO = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal; decimals are rejected."""
    m = _RATIO.match(text)
    if not m:
        raise ValueError(f"expected a rational p/q, got {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def as_rational(r) -> Fraction:
    if isinstance(r, bool) or isinstance(r, float):
        raise TypeError("thresholds must be exact (int, Fraction or 'p/q')")
    if isinstance(r, str):
        return parse_fraction(r)
    return Fraction(r)


def as_threshold(r) -> Fraction:
    """A blocking threshold: rational with 0 <= r < 1."""
    r = as_rational(r)
    if not 0 <= r < 1:
        raise ValueError(f"threshold must satisfy 0 <= r < 1, got {r}")
    return r


def format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"
