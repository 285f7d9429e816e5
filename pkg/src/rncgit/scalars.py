"""Exact scalar plumbing: rationals via fractions.Fraction plus a point at infinity.

The rest of the library never touches floating point.  Parameters on a
projective line are either a Fraction or the singleton INF.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

__all__ = [
    "Infinity",
    "INF",
    "Param",
    "parse_rational",
    "format_rational",
    "parse_param",
    "format_param",
]


class Infinity:
    """The parameter value at infinity on the projective line (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


INF = Infinity()

Param = Union[Fraction, Infinity]

# "p" or "p/q" with integer p and positive integer q; decimal points rejected.
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as "p" or "p/q".  Never parses floats."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def parse_param(text: str) -> Param:
    """Parse a rational parameter or the string "inf"."""
    s = text.strip()
    if s == "inf":
        return INF
    return parse_rational(s)


def format_param(t: Param) -> str:
    if isinstance(t, Infinity):
        return "inf"
    return format_rational(t)
