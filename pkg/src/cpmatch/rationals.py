"""Exact rational arithmetic shared by every solver path.

Every number that flows through the LP machinery is an arbitrary-precision
rational; floats never appear. The backend is gmpy2.mpq when available (much
faster pivots) and fractions.Fraction otherwise. Both keep values canonical:
positive denominator, numerator and denominator coprime.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _backend
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _backend = Fraction

#: The concrete rational type in use (for isinstance checks in tests).
Rational = type(_backend(0))

R0 = _backend(0)
R1 = _backend(1)
HALF = _backend(1, 2)


def rat(numerator, denominator=None):
    """Build a canonical rational from ints, a rational, or a 'p/q' string."""
    if denominator is None:
        return _backend(numerator)
    return _backend(numerator, denominator)


def rat_str(value) -> str:
    """Render exactly, as 'p/q' or plain 'p' when the denominator is 1."""
    return str(_backend(value))


def is_int(value) -> bool:
    """True when the rational is an integer."""
    return _backend(value).denominator == 1


def as_int(value) -> int:
    """Convert an integral rational to int; raises ValueError otherwise."""
    q = _backend(value)
    if q.denominator != 1:
        raise ValueError(f"not an integer: {q}")
    return int(q.numerator)
