"""Branched-covering lifts of a classified skew product.

Two covering families, written in lifted coordinates (u, v):

* z-direction, weight s/r:  project(u, v) = (u^r, u^s v).  Admissible for
  Cases 1, 2 and the first Case-4 stage, for any rational weight in the
  z-weight interval.  The lifted second component is an exact polynomial
  whose support is the sheared image of the support of q.
* w-direction, weight s/r:  project(u, v) = (u v^r, v^s).  Admissible for
  Case 3 (and for the Case-4 second stage, applied to the first lift) when
  additionally s divides the dominant z-exponent; otherwise the s-th root
  in the construction is not single-valued and the covering is rejected.

Lifts are represented as "monomial x (1 + series)": the exact exponent data
is integer, and pointwise evaluation uses principal powers of the unit
factors, valid wherever the relative deviations stay inside the unit disk.
The second Case-4 stage takes the user weight in the paper-normalised
second-stage interval; the covering actually applied to the stage-one
polynomial has weight (first covering root) * (chosen weight), and the
divisibility guard is checked against that realised covering.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Tuple, Union

from .errors import (BranchDomainError, DivisibilityFailure, GuardError,
                     WeightOutsideInterval)
from .newton import (Case, Classification, NewtonPolygon, RationalInterval,
                     newton_polygon, second_stage_interval, weight_intervals)
from .poly import BiPoly, SkewProduct, substitute_exponents
from .region import poly_eta, zeta


@dataclass(frozen=True)
class CoveringSpec:
    """One covering stage: axis 'z' or 'w', weight s/r in lowest terms.

    s = 0 with r = 1 is the identity z-lift (weight 0, Cases 1 and 3).
    """

    axis: str
    r: int
    s: int

    def __post_init__(self):
        if self.axis not in ("z", "w"):
            raise ValueError("axis must be 'z' or 'w'")
        if self.r < 1 or self.s < 0:
            raise ValueError("need r >= 1 and s >= 0")
        if self.s == 0 and (self.axis != "z" or self.r != 1):
            raise ValueError("weight 0 is only the identity z-lift")
        if gcd(self.r, self.s) != 1:
            raise ValueError("s/r must be in lowest terms")

    @classmethod
    def from_weight(cls, axis: str, weight: Fraction) -> "CoveringSpec":
        w = Fraction(weight)
        if w < 0:
            raise ValueError("weights are nonnegative")
        return cls(axis=axis, r=w.denominator if w else 1, s=w.numerator)

    @property
    def weight(self) -> Fraction:
        return Fraction(self.s, self.r)


def _unit_pow(u: complex, exponent: Fraction) -> complex:
    """Principal power of a unit factor u = 1 + (small)."""
    if abs(u - 1.0) >= 1.0:
        raise BranchDomainError(f"unit factor {u} left the disk |u-1| < 1")
    e = float(exponent)
    if e == 0.0:
        return complex(1)
    return cmath.exp(e * cmath.log(u))


def _const_pow(c: complex, exponent: Fraction) -> complex:
    """Fixed principal power of a nonzero constant (recorded once)."""
    e = float(exponent)
    if e == 0.0 or c == 1:
        return complex(1) if e == 0.0 else c ** e
    return cmath.exp(e * cmath.log(c))


@dataclass(frozen=True)
class LiftedMap:
    """A covering lift in monomial-with-unit form.

    `first_exponents` / `second_exponents` are the integer monomial
    exponents of the two components in the lifted coordinates (u, v);
    `series` is the exact exponent-transformed polynomial of the
    construction (the lifted second component for a z-lift, the inner
    substituted polynomial for a w-lift).  `meta` carries the transformed
    dominant data used by reports and origin-type checks.
    """

    kind: str
    coverings: Tuple[CoveringSpec, ...]
    first_coeff: complex
    first_exponents: Tuple[int, int]
    second_coeff: complex
    second_exponents: Tuple[int, int]
    series: BiPoly
    meta: dict = field(compare=False)
    _unit1: Callable[[complex, complex], complex] = field(repr=False, compare=False)
    _unit2: Callable[[complex, complex], complex] = field(repr=False, compare=False)
    _project: Callable[[complex, complex], Tuple[complex, complex]] = \
        field(repr=False, compare=False)

    def evaluate(self, u: complex, v: complex) -> Tuple[complex, complex]:
        e11, e12 = self.first_exponents
        e21, e22 = self.second_exponents
        return (self.first_coeff * u ** e11 * v ** e12 * self._unit1(u, v),
                self.second_coeff * u ** e21 * v ** e22 * self._unit2(u, v))

    def __call__(self, u, v):
        return self.evaluate(u, v)

    def project(self, u: complex, v: complex) -> Tuple[complex, complex]:
        """Covering projection to the original (z, w) coordinates."""
        return self._project(u, v)


def _z_weight_interval(c: Classification, np_: NewtonPolygon) -> RationalInterval:
    if c.case in (Case.CASE1, Case.CASE2, Case.CASE4):
        return weight_intervals(c, np_, c.delta).i1
    # Case 3: only the identity z-lift.
    return RationalInterval(Fraction(0), Fraction(0))


def cover_z(f: SkewProduct, c: Classification,
            spec: CoveringSpec) -> LiftedMap:
    """Lift f through project(u, v) = (u^r, u^s v).

    The lifted second component is exactly

        sum b_ij u^(r i + s j - s delta) v^j,

    with every exponent a nonnegative integer whenever s/r lies in the
    admissible z-weight interval; the dominant vertex moves to
    (r gamma + s d - s delta, d).
    """
    if spec.axis != "z":
        raise GuardError("cover_z needs a z-axis covering spec")
    if c.is_boundary:
        raise GuardError("pick one boundary alternative before lifting")
    np_ = newton_polygon(f.q)
    delta = f.p.delta
    interval = _z_weight_interval(c, np_)
    if not interval.contains(spec.weight):
        raise WeightOutsideInterval(
            f"weight {spec.weight} outside admissible interval {interval}")
    r, s = spec.r, spec.s

    def shear(i: Fraction, j: Fraction) -> Tuple[Fraction, Fraction]:
        return (r * i + s * j - s * delta, j)

    series = substitute_exponents(f.q, shear)
    gamma_t = r * c.gamma + s * c.d - s * delta
    assert gamma_t >= 0 and (gamma_t, c.d) in series.coeffs
    a = f.p.leading
    p = f.p

    def unit1(u: complex, v: complex) -> complex:
        return _unit_pow(1 + zeta(p, u ** r), Fraction(1, r))

    def unit2(u: complex, v: complex) -> complex:
        num = 1 + poly_eta(series, gamma_t, c.d, c.coeff, u, v)
        return num * _unit_pow(1 + zeta(p, u ** r), Fraction(-s, r))

    def project(u: complex, v: complex) -> Tuple[complex, complex]:
        return (u ** r, u ** s * v)

    return LiftedMap(
        kind="pi1",
        coverings=(spec,),
        first_coeff=_const_pow(a, Fraction(1, r)),
        first_exponents=(delta, 0),
        second_coeff=c.coeff * _const_pow(a, Fraction(-s, r)),
        second_exponents=(gamma_t, c.d),
        series=series,
        meta={"gamma_tilde": gamma_t, "d": c.d, "delta": delta,
              "weight": spec.weight, "covering_degree": max(r, 1) * max(s, 1)},
        _unit1=unit1,
        _unit2=unit2,
        _project=project,
    )


def _cover_w_core(*, delta: int, d: int, gamma: int,
                  a_coeff: complex, b_coeff: complex,
                  zeta_fn: Callable[[complex], complex],
                  eta_fn: Callable[[complex, complex], complex],
                  inner: BiPoly, spec: CoveringSpec,
                  project_down: Callable, kind: str,
                  coverings: Tuple[CoveringSpec, ...], meta: dict) -> LiftedMap:
    """Shared w-direction covering construction.

    Works on any map in factored form (a u^delta (1+zeta), b u^gamma v^d
    (1+eta)); `inner` is its exact second-component polynomial, already in
    the coordinates being covered.
    """
    r, s = spec.r, spec.s
    if gamma % s != 0:
        raise DivisibilityFailure(
            f"dominant z-exponent {gamma} is not divisible by s = {s}")
    g = gamma // s
    e11 = delta - r * g
    e12 = r * (delta - d) - r * r * g
    e21, e22 = g, r * g + d
    if min(e11, e12, e21, e22) < 0:
        raise WeightOutsideInterval(
            f"weight {spec.weight} gives negative lifted exponents")

    def sub_inner(t: complex, v: complex) -> Tuple[complex, complex]:
        return (t * v ** r, v ** s)

    def unit1(t: complex, v: complex) -> complex:
        z, w = sub_inner(t, v)
        e = eta_fn(z, w)
        return (1 + zeta_fn(z)) * _unit_pow(1 + e, Fraction(-r, s))

    def unit2(t: complex, v: complex) -> complex:
        z, w = sub_inner(t, v)
        return _unit_pow(1 + eta_fn(z, w), Fraction(1, s))

    def project(t: complex, v: complex) -> Tuple[complex, complex]:
        return project_down(*sub_inner(t, v))

    def shear(i: Fraction, j: Fraction) -> Tuple[Fraction, Fraction]:
        return (i, r * i + s * j)

    series = substitute_exponents(inner, shear)
    return LiftedMap(
        kind=kind,
        coverings=coverings,
        first_coeff=a_coeff * _const_pow(b_coeff, Fraction(-r, s)),
        first_exponents=(e11, e12),
        second_coeff=_const_pow(b_coeff, Fraction(1, s)),
        second_exponents=(e21, e22),
        series=series,
        meta=meta,
        _unit1=unit1,
        _unit2=unit2,
        _project=project,
    )


def cover_w(source: Union[SkewProduct, LiftedMap], c: Classification,
            spec: CoveringSpec) -> LiftedMap:
    """Lift through project(t, v) = (t v^r, v^s).

    For Case 3, `source` is the skew product itself and s/r must lie in the
    admissible w-weight interval with s | gamma.  For Case 4, `source` is
    the first-stage lift; the weight is taken in the second-stage interval
    at the realised first weight, and divisibility is checked against the
    lifted dominant exponent.
    """
    if spec.axis != "w":
        raise GuardError("cover_w needs a w-axis covering spec")
    if c.is_boundary:
        raise GuardError("pick one boundary alternative before lifting")

    if isinstance(source, SkewProduct):
        if c.case is not Case.CASE3:
            raise GuardError(
                "a direct w-covering is defined for Case 3; Case 4 applies "
                "it to the first-stage lift")
        np_ = newton_polygon(source.q)
        interval = weight_intervals(c, np_, c.delta).i1
        if not interval.contains(spec.weight):
            raise WeightOutsideInterval(
                f"weight {spec.weight} outside admissible interval {interval}")
        q = source.q
        p = source.p
        meta = {"gamma": c.gamma, "d": c.d, "delta": c.delta,
                "weight": spec.weight,
                "covering_degree": max(spec.r, 1) * max(spec.s, 1)}
        return _cover_w_core(
            delta=c.delta, d=c.d, gamma=c.gamma,
            a_coeff=p.leading, b_coeff=c.coeff,
            zeta_fn=lambda z: zeta(p, z),
            eta_fn=lambda z, w: poly_eta(q, c.gamma, c.d, c.coeff, z, w),
            inner=q, spec=spec, project_down=lambda z, w: (z, w),
            kind="pi2", coverings=(spec,), meta=meta)

    stage1 = source
    if stage1.kind != "pi1":
        raise GuardError("the w-covering chains onto a z-direction lift")
    if c.case is not Case.CASE4:
        raise GuardError("two-stage lifts are the Case-4 construction")
    spec1 = stage1.coverings[0]
    i2 = second_stage_interval(c, spec1.weight)
    if not i2.contains(spec.weight):
        raise WeightOutsideInterval(
            f"second-stage weight {spec.weight} outside {i2}")
    # Covering actually applied to the stage-one polynomial.
    eff = spec1.r * spec.weight
    spec_eff = CoveringSpec.from_weight("w", eff)
    gamma_t = stage1.meta["gamma_tilde"]
    series1 = stage1.series
    d = c.d
    coeff_b1 = stage1.second_coeff
    unit1_stage1 = stage1._unit1
    unit2_stage1 = stage1._unit2

    meta = {"gamma_tilde": gamma_t, "d": d, "delta": c.delta,
            "weights": (spec1.weight, spec.weight),
            "effective_second_weight": eff,
            "covering_degree": (max(spec1.r, 1) * max(spec1.s, 1)
                                * max(spec_eff.r, 1) * max(spec_eff.s, 1))}
    return _cover_w_core(
        delta=c.delta, d=d, gamma=gamma_t,
        a_coeff=stage1.first_coeff, b_coeff=coeff_b1,
        zeta_fn=lambda u: unit1_stage1(u, 0j) - 1,
        eta_fn=lambda u, v: unit2_stage1(u, v) - 1,
        inner=series1, spec=spec_eff,
        project_down=stage1.project,
        kind="pi1+pi2", coverings=(spec1, spec_eff), meta=meta)


@dataclass(frozen=True)
class OriginTypeReport:
    """Exponent inequalities at the lifted origin."""

    first_exponents: Tuple[int, int]
    second_exponents: Tuple[int, int]
    fixes_origin: bool
    superattracting: bool
    inequalities: dict


def lifted_origin_type(lm: LiftedMap) -> OriginTypeReport:
    """Exponent inequalities at the lifted origin.

    The origin is superattracting iff neither component has a monomial of
    total degree one.  For w-direction lifts the report also records the
    domination inequalities of the construction: the first exponent of the
    first component and the sheared w-degree both dominate d, and (the
    two-stage sufficient chain) the former dominates the latter.
    """
    e1, e2 = lm.first_exponents, lm.second_exponents
    fixes = sum(e1) >= 1 and sum(e2) >= 1
    superattracting = sum(e1) >= 2 and sum(e2) >= 2
    ineq: dict = {"first_total_degree": sum(e1), "second_total_degree": sum(e2)}
    if lm.kind in ("pi2", "pi1+pi2"):
        d = lm.meta["d"]
        ineq["domination"] = {
            "first_u_exponent_ge_d": e1[0] >= d,
            "d_tilde_ge_d": e2[1] >= d,
            "chain_first_ge_d_tilde": e1[0] >= e2[1],
        }
    else:
        ineq["gamma_tilde_nonnegative"] = e2[0] >= 0
    return OriginTypeReport(first_exponents=e1, second_exponents=e2,
                            fixes_origin=fixes, superattracting=superattracting,
                            inequalities=ineq)


def semiconjugacy_defect(lm: LiftedMap, f: SkewProduct,
                         u: complex, v: complex) -> float:
    """Relative defect of project(lift(x)) = f(project(x)) at one point."""
    img = lm.project(*lm.evaluate(u, v))
    ref = f(*lm.project(u, v))
    err = max(abs(img[0] - ref[0]), abs(img[1] - ref[1]))
    return err / (1.0 + max(abs(ref[0]), abs(ref[1])))
