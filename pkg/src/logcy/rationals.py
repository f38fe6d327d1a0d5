"""Helpers for exact rational I/O.

All JSON interfaces serialize rationals as strings "p/q" (or "p" for
integers); floats are never produced or accepted.
"""

from fractions import Fraction

from .errors import InputError


def parse_rational(value) -> Fraction:
    """Parse an int, or a string "p", "-p/q" into an exact Fraction."""
    if isinstance(value, bool):
        raise InputError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {value!r}: {exc}") from None
    raise InputError(f"expected a rational, got {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    """Canonical string form: "p" for integers, "p/q" otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational_vector(values, expected_len=None) -> tuple:
    vec = tuple(parse_rational(v) for v in values)
    if expected_len is not None and len(vec) != expected_len:
        raise InputError(f"expected a vector of length {expected_len}, got {len(vec)}")
    return vec
