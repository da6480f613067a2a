"""Sparse complex-coefficient polynomials for skew products.

A skew product f(z, w) = (p(z), q(z, w)) is stored as two sparse coefficient
maps: `UniPoly` for p with lowest order delta >= 2, and `BiPoly` for q with
the germ-form support of a superattracting fixed point (every monomial has
total degree >= 2, except the allowed linear term b*z).

Coefficients are double-precision complex; exponents stay exact integers.
Polynomials are canonicalized on construction: zero coefficients are dropped,
so equality is support-plus-coefficient equality.  All values are immutable
after construction and safe to share between threads.

Symbolic composition is deliberately absent: iterates of f are evaluated
pointwise, never expanded.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple

from .errors import InputError, NonIntegralExponent

Exponent = Tuple[int, int]


def _check_coeff(c: complex, where: str) -> complex:
    c = complex(c)
    if not (cmath.isfinite(c)):
        raise InputError(f"non-finite coefficient in {where}: {c!r}")
    return c


@dataclass(frozen=True)
class UniPoly:
    """p(z) = sum a_k z^k with lowest nonzero order delta >= 2."""

    coeffs: Mapping[int, complex]
    delta: int = field(init=False)
    leading: complex = field(init=False)

    def __post_init__(self):
        clean: Dict[int, complex] = {}
        for k, c in self.coeffs.items():
            if not isinstance(k, int) or k < 0:
                raise InputError(f"bad exponent in p: {k!r}")
            c = _check_coeff(c, "p")
            if c != 0:
                clean[k] = c
        if not clean:
            raise InputError("p must be a nonzero polynomial")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        delta = min(clean)
        if delta < 2:
            raise InputError(
                f"p has a nonzero term of order {delta}; a superattracting "
                "fixed point requires order >= 2"
            )
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "leading", clean[delta])

    def evaluate(self, z: complex) -> complex:
        return sum((c * z ** k for k, c in self.coeffs.items()), complex(0))

    def __call__(self, z: complex) -> complex:
        return self.evaluate(z)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))


@dataclass(frozen=True)
class BiPoly:
    """q(z, w) = sum b_ij z^i w^j with finite, canonical support."""

    coeffs: Mapping[Exponent, complex]

    def __post_init__(self):
        clean: Dict[Exponent, complex] = {}
        for key, c in self.coeffs.items():
            i, j = key
            if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
                raise InputError(f"bad exponent pair in q: {key!r}")
            c = _check_coeff(c, "q")
            if c != 0:
                clean[(i, j)] = c
        if not clean:
            raise InputError("q must be a nonzero polynomial")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def support(self) -> Tuple[Exponent, ...]:
        return tuple(self.coeffs)

    def evaluate(self, z: complex, w: complex) -> complex:
        return sum((c * z ** i * w ** j for (i, j), c in self.coeffs.items()),
                   complex(0))

    def __call__(self, z: complex, w: complex) -> complex:
        return self.evaluate(z, w)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))


def validate_germ_form(q: BiPoly) -> None:
    """Check the superattracting germ form of q.

    Every monomial must have total degree >= 2, except the single allowed
    linear term b*z.  A w-linear or constant term would give Df(0) a nonzero
    eigenvalue.
    """
    for (i, j) in q.coeffs:
        if i + j >= 2 or (i, j) == (1, 0):
            continue
        raise InputError(
            f"monomial z^{i} w^{j} breaks the superattracting germ form "
            "(only b*z and total degree >= 2 are allowed)"
        )


@dataclass(frozen=True)
class SkewProduct:
    """f(z, w) = (p(z), q(z, w)) with a superattracting fixed point at 0."""

    p: UniPoly
    q: BiPoly

    def __post_init__(self):
        validate_germ_form(self.q)

    def evaluate(self, z: complex, w: complex) -> Tuple[complex, complex]:
        return self.p(z), self.q(z, w)

    def __call__(self, z: complex, w: complex) -> Tuple[complex, complex]:
        return self.evaluate(z, w)


def uni_poly(terms: Iterable[Tuple[int, complex]]) -> UniPoly:
    """Build p from (exponent, coefficient) pairs, summing duplicates."""
    acc: Dict[int, complex] = {}
    for k, c in terms:
        acc[k] = acc.get(k, 0) + complex(c)
    return UniPoly(acc)


def bi_poly(terms: Iterable[Tuple[int, int, complex]]) -> BiPoly:
    """Build q from (i, j, coefficient) triples, summing duplicates."""
    acc: Dict[Exponent, complex] = {}
    for i, j, c in terms:
        acc[(i, j)] = acc.get((i, j), 0) + complex(c)
    return BiPoly(acc)


ExponentMap = Callable[[Fraction, Fraction], Tuple[Fraction, Fraction]]


def substitute_exponents(q: BiPoly, transform: ExponentMap) -> BiPoly:
    """Apply an affine exponent transform to the support of q.

    Coefficients are carried over unchanged.  The caller guarantees the
    transform sends the support to nonnegative pairs and is injective on it;
    a fractional image exponent raises NonIntegralExponent, which is the
    signal that a covering is not well-defined at the chosen weight.
    """
    out: Dict[Exponent, complex] = {}
    for (i, j), c in q.coeffs.items():
        x, y = transform(Fraction(i), Fraction(j))
        if x.denominator != 1 or y.denominator != 1:
            raise NonIntegralExponent(
                f"support point ({i}, {j}) maps to ({x}, {y})"
            )
        if x < 0 or y < 0:
            raise ValueError(
                f"support point ({i}, {j}) maps to negative exponents ({x}, {y})"
            )
        key = (int(x), int(y))
        if key in out:
            raise ValueError(f"transform is not injective on the support at {key}")
        out[key] = c
    return BiPoly(out)
