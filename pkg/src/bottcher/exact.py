"""Exact rational scalars with the two infinity conventions.

All Newton-polygon combinatorics (vertices, intercepts, weights, interval
endpoints, region exponents) is carried out in `Fraction`.  The weights
l1 in [0, oo) and l2 in (0, oo] and the basin exponents need +-oo as
first-class values; we represent them by the float infinities, which compare
and combine correctly with `Fraction` for every operation used here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

INF = float("inf")
NEG_INF = float("-inf")

#: A finite exact rational, or one of the two infinities.
ExtRat = Union[Fraction, float]


def is_inf(x: ExtRat) -> bool:
    return x == INF or x == NEG_INF


def as_fraction(x) -> Fraction:
    """Exact conversion of ints, strings like '3/2', and Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def ext_str(x: ExtRat) -> str:
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return str(x)


def ext_json(x: ExtRat) -> dict:
    """Serialize an extended rational as {num, den, approx}.

    Infinity follows the 1/0 convention, so exact values survive a
    round trip through the report format.
    """
    if x == INF:
        return {"num": 1, "den": 0, "approx": "inf"}
    if x == NEG_INF:
        return {"num": -1, "den": 0, "approx": "-inf"}
    f = as_fraction(x)
    return {"num": f.numerator, "den": f.denominator, "approx": float(f)}


def ext_from_json(obj: dict) -> ExtRat:
    num, den = obj["num"], obj["den"]
    if den == 0:
        return INF if num > 0 else NEG_INF
    return Fraction(num, den)


def pow_abs(base: float, exponent: ExtRat) -> float:
    """|z|^e for base >= 0 with extended-rational exponent.

    Conventions (matching the region formulas): 0^0 = 1, 0^e = 0 for e > 0,
    0^e = +oo for e < 0, and b^(+-oo) via the usual limits with 1^(+-oo) = 1.
    """
    if base < 0.0:
        raise ValueError("pow_abs expects a nonnegative base")
    e = exponent if isinstance(exponent, float) else float(exponent)
    if base == 0.0:
        if e == 0.0:
            return 1.0
        return 0.0 if e > 0.0 else INF
    try:
        return base ** e
    except OverflowError:
        return INF
