"""Scalar helpers shared across the package.

Exact values are carried as ``fractions.Fraction`` (ints are promoted);
anything else is treated as binary64.  Operations keep exactness as long as
every input is exact and degrade to float the moment a square root or a float
input forces it.
"""
from __future__ import annotations

import math
from fractions import Fraction

Number = Fraction | int | float


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def to_fraction(x) -> Fraction:
    """Exact conversion; floats convert via their binary expansion."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"cannot convert non-finite value {x!r} to a rational")
        return Fraction(x)
    raise TypeError(f"not a supported number: {x!r}")


def as_float(x) -> float:
    return float(x)


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Return sqrt(q) as a Fraction when q is a perfect rational square."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = math.isqrt(num)
    rd = math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_number(x, *, context: str = "sqrt argument"):
    """Square root that stays exact for perfect rational squares.

    Raises ValueError naming `context` when x < 0.
    """
    if is_exact(x):
        q = to_fraction(x)
        if q < 0:
            raise ValueError(f"negative square-root argument in {context}: {q}")
        r = exact_sqrt(q)
        if r is not None:
            return r
        return math.sqrt(float(q))
    xf = float(x)
    if xf < 0.0:
        raise ValueError(f"negative square-root argument in {context}: {xf}")
    return math.sqrt(xf)


def close(a, b, tol: float) -> bool:
    return abs(float(a) - float(b)) <= tol


def fmt_number(x) -> str:
    """Deterministic text form: rationals as num/den, floats with 17 sig digits."""
    if is_exact(x):
        q = to_fraction(x)
        if q.denominator == 1:
            return str(q.numerator)
        return f"{q.numerator}/{q.denominator}"
    return f"{float(x):.17g}"


def fmt_float(x) -> str:
    return f"{float(x):.17g}"
