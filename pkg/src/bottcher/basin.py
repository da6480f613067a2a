"""Closed-form basin algebra for the normalised monomial map.

Everything here concerns f0(z, w) = (z^delta, z^gamma w^d) with unit
coefficients (an affine conjugation absorbs the coefficients, so the region
geometry is unchanged).  The affine map

    R(a) = (delta a - gamma) / d

acts on wedge exponents: the n-th preimage of the wedge under f0 is again a
region bounded by powers coeff * |z|^e with e an iterate of R, and the
union of all preimages collapses to a finite catalog of regions selected by
exact comparisons of delta with the intercepts.  The forward-orbit
membership oracle iterates log-magnitudes, so it stays exact in floating
point far beyond the range where |z|^(delta^n) underflows.

All exponent arithmetic is exact (Fractions with +-oo); region membership
evaluates real powers of magnitudes with the conventions of `exact.pow_abs`.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import GuardError, InclusionViolation
from .exact import INF, NEG_INF, ExtRat, is_inf, pow_abs
from .newton import Case, Classification, NewtonPolygon, alpha0
from .region import WedgeRegion, sample, wedge_for


def exponent_step(a: ExtRat, delta: int, gamma: int, d: int) -> ExtRat:
    """One application of R(a) = (delta a - gamma) / d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if is_inf(a):
        return a
    return Fraction(delta * a - gamma, d)


def exponent_iterate(a: ExtRat, n: int, delta: int, gamma: int,
                     d: int) -> ExtRat:
    """R^n(a), in closed form when delta != d.

    R^n(a) = (delta/d)^n (a - alpha0) + alpha0 with alpha0 = gamma/(delta-d);
    for delta = d the iterates form the arithmetic progression a - n*gamma/d.
    Exact big-integer rationals throughout.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if d < 1:
        raise ValueError("d must be >= 1")
    if is_inf(a):
        return a
    if delta == d:
        return Fraction(a) - n * Fraction(gamma, d)
    a0 = Fraction(gamma, delta - d)
    return Fraction(delta, d) ** n * (Fraction(a) - a0) + a0


@dataclass(frozen=True)
class PowerBound:
    """One side of a region boundary: the curve |w| = coeff * |z|^exponent."""

    coeff: float
    exponent: ExtRat

    def value_at(self, abs_z: float) -> float:
        return self.coeff * pow_abs(abs_z, self.exponent)


@dataclass(frozen=True)
class ExponentRegion:
    """A Reinhardt region cut out by power bounds on |w| and a disk on |z|.

    Membership is the conjunction of the strict inequalities that are
    present plus the axis punctures.  This shape covers the wedge, all its
    monomial preimages, the basin catalog entries, the injectivity wedge
    and the extension region.
    """

    lower: Optional[PowerBound] = None
    upper: Optional[PowerBound] = None
    z_bound: Optional[float] = None
    exclude_z_axis: bool = False
    exclude_w_axis: bool = False

    def contains(self, z: complex, w: complex) -> bool:
        az, aw = abs(z), abs(w)
        if self.exclude_z_axis and az == 0.0:
            return False
        if self.exclude_w_axis and aw == 0.0:
            return False
        if self.z_bound is not None and not az < self.z_bound:
            return False
        if self.lower is not None and not self.lower.value_at(az) < aw:
            return False
        if self.upper is not None and not aw < self.upper.value_at(az):
            return False
        return True


def wedge_region(c: Classification, r: float) -> ExponentRegion:
    """The wedge U_r as an ExponentRegion."""
    if is_inf(c.l2):
        return ExponentRegion(upper=PowerBound(r, c.l1), z_bound=r)
    return ExponentRegion(
        lower=PowerBound(r ** (-float(c.l2)), c.l1 + c.l2),
        upper=PowerBound(r, c.l1))


def preimage_region(c: Classification, r: float, n: int) -> ExponentRegion:
    """The n-th preimage of the wedge under the normalised monomial map.

    Radial coefficients are the d^n-th (and delta^n-th) roots of r, and the
    exponents are R^n of the wedge weights:

      Case 1:  |z| < r^(1/delta^n),  |w| < r^(1/d^n) |z|^(R^n(0))
      Case 2:  same with exponent R^n(l1) and the w-axis removed (n >= 1)
      Case 3:  r^(-l2/d^n) |z|^(R^n(l2)) < |w| < r^(1/d^n) |z|^(R^n(0))
      Case 4:  r^(-l2/d^n) |z|^(R^n(l1+l2)) < |w| < r^(1/d^n) |z|^(R^n(l1)),
               with the z-axis removed.

    n = 0 is the wedge itself.
    """
    if c.is_boundary:
        raise GuardError("pick one boundary alternative")
    if n < 0:
        raise ValueError("n must be >= 0")
    delta, gamma, d = c.delta, c.gamma, c.d
    if d < 1:
        raise GuardError("preimage regions need d >= 1")
    rn = math.exp(math.log(r) / d ** n)

    def rpow(e: Fraction) -> float:
        return math.exp(float(e) * math.log(r) / d ** n)

    if c.case is Case.CASE1:
        return ExponentRegion(
            upper=PowerBound(rn, exponent_iterate(Fraction(0), n, delta, gamma, d)),
            z_bound=math.exp(math.log(r) / delta ** n))
    if c.case is Case.CASE2:
        return ExponentRegion(
            upper=PowerBound(rn, exponent_iterate(c.l1, n, delta, gamma, d)),
            z_bound=math.exp(math.log(r) / delta ** n),
            exclude_w_axis=(n >= 1))
    if c.case is Case.CASE3:
        return ExponentRegion(
            lower=PowerBound(rpow(-c.l2), exponent_iterate(c.l2, n, delta, gamma, d)),
            upper=PowerBound(rn, exponent_iterate(Fraction(0), n, delta, gamma, d)))
    return ExponentRegion(
        lower=PowerBound(rpow(-c.l2),
                         exponent_iterate(c.l1 + c.l2, n, delta, gamma, d)),
        upper=PowerBound(rn, exponent_iterate(c.l1, n, delta, gamma, d)),
        exclude_z_axis=True)


def orbit_membership(c: Classification, r: float, n: int, z: complex,
                     w: complex) -> bool:
    """Forward-orbit oracle: is f0^n(z, w) in the wedge U_r?

    Wedge membership depends only on magnitudes, so the monomial orbit is
    iterated on log-magnitudes; this stays meaningful long after |z|^delta^n
    would underflow.
    """
    if c.is_boundary:
        raise GuardError("pick one boundary alternative")
    delta, gamma, d = c.delta, c.gamma, c.d

    def mul(coef: float, value: float) -> float:
        return 0.0 if coef == 0 else coef * value

    lz = math.log(abs(z)) if z != 0 else NEG_INF
    lw = math.log(abs(w)) if w != 0 else NEG_INF
    for _ in range(n):
        lz, lw = delta * lz, mul(gamma, lz) + d * lw
    lr = math.log(r)
    fl1 = float(c.l1)
    if is_inf(c.l2):
        return lz < lr and lw < lr + mul(fl1, lz)
    fl2 = float(c.l2)
    return (mul(fl1 + fl2, lz) < fl2 * lr + lw
            and lw < lr + mul(fl1, lz))


@dataclass(frozen=True)
class BasinDescriptor:
    """One catalog entry for the union of all wedge preimages."""

    case: Case
    label: str
    region: ExponentRegion
    alpha0: ExtRat


def basin_descriptor(c: Classification, np_: NewtonPolygon,
                     r: Optional[float] = None) -> BasinDescriptor:
    """Select the catalog entry for the union of all preimages of the wedge.

    Guards are exact rational comparisons of delta against the relevant
    intercepts; the subcase labels follow the per-case lists (i), (ii), ...
    The printed conditions index the final finite-slope edge, whose
    intercept is T_{s-1} in the indexing used here.

    The two entries that retain the radius r (final-edge coincidence with
    d = 1) are only reachable by explicitly passing a boundary alternative
    and r; without r they are refused, matching the d = 1 guard.
    """
    if c.is_boundary:
        raise GuardError("pick one boundary alternative")
    delta, gamma, d = c.delta, c.gamma, c.d
    a0 = alpha0(c)

    def entry(label: str, region: ExponentRegion) -> BasinDescriptor:
        return BasinDescriptor(case=c.case, label=label, region=region,
                               alpha0=a0)

    if c.case is Case.CASE1:
        if gamma == 0:
            return entry("iii", ExponentRegion(upper=PowerBound(1.0, Fraction(0)),
                                               z_bound=1.0))
        if delta >= d:
            return entry("i", ExponentRegion(z_bound=1.0))
        return entry("ii", ExponentRegion(upper=PowerBound(1.0, a0), z_bound=1.0))

    if c.case is Case.CASE2:
        t_last = np_.intercepts[-1]
        if delta < d:
            return entry("iv", ExponentRegion(upper=PowerBound(1.0, a0),
                                              z_bound=1.0, exclude_z_axis=True))
        if t_last == delta:
            if d >= 2:
                return entry("i", ExponentRegion(upper=PowerBound(1.0, c.l1),
                                                 z_bound=1.0))
            if r is None:
                raise GuardError("final-edge coincidence with d = 1 keeps the "
                                 "radius in the basin; pass r explicitly")
            return entry("ii", ExponentRegion(upper=PowerBound(r, c.l1),
                                              z_bound=1.0))
        return entry("iii", ExponentRegion(z_bound=1.0, exclude_z_axis=True))

    if c.case is Case.CASE3:
        if delta > d and gamma > 0:
            return entry("i", ExponentRegion(z_bound=1.0, exclude_w_axis=True))
        if delta > d:
            return entry("ii", ExponentRegion(upper=PowerBound(1.0, Fraction(0)),
                                              z_bound=1.0, exclude_w_axis=True))
        return entry("iii", ExponentRegion(lower=PowerBound(1.0, c.l2),
                                           upper=PowerBound(1.0, Fraction(0))))

    t_hi = np_.intercepts[c.k - 2]
    t_lo = np_.intercepts[c.k - 1]
    if t_hi == delta:
        if d >= 2:
            return entry("i", ExponentRegion(upper=PowerBound(1.0, c.l1),
                                             z_bound=1.0, exclude_w_axis=True))
        if r is None:
            raise GuardError("upper-edge coincidence with d = 1 keeps the "
                             "radius in the basin; pass r explicitly")
        return entry("ii", ExponentRegion(upper=PowerBound(r, c.l1),
                                          z_bound=1.0, exclude_w_axis=True))
    if t_lo == delta:
        if d >= 2:
            return entry("iv", ExponentRegion(lower=PowerBound(1.0, c.l1 + c.l2),
                                              z_bound=1.0, exclude_z_axis=True))
        if r is None:
            raise GuardError("lower-edge coincidence with d = 1 keeps the "
                             "radius in the basin; pass r explicitly")
        return entry("v", ExponentRegion(
            lower=PowerBound(r ** (-float(c.l2)), c.l1 + c.l2),
            z_bound=1.0, exclude_z_axis=True))
    return entry("iii", ExponentRegion(z_bound=1.0, exclude_z_axis=True,
                                       exclude_w_axis=True))


@dataclass(frozen=True)
class VRegion:
    """Extension region { r2^-1 |z|^a2 < |w| < r1 |z|^a1 }.

    Constraints: r <= r1 <= 1, r2 <= 1 and
    -oo <= a1 <= l1 <= l1 + l2 <= a2 <= +oo; a1 = -oo realises "no upper
    power bound" inside the unit cylinder.
    """

    r1: float
    r2: float
    a1: ExtRat
    a2: ExtRat

    def region(self) -> ExponentRegion:
        return ExponentRegion(lower=PowerBound(1.0 / self.r2, self.a2),
                              upper=PowerBound(self.r1, self.a1))


def _sample_v(v: VRegion, count: int, seed: int) -> List[Tuple[complex, complex]]:
    rng = random.Random(seed)
    if is_inf(v.a1) or is_inf(v.a2):
        z_hi = 0.98
    else:
        z_hi = min(0.98, (v.r1 * v.r2) ** (1.0 / float(v.a2 - v.a1)) * 0.98)
    z_lo = z_hi * 1e-3
    reg = v.region()
    out = []
    for _ in range(count):
        az = math.exp(rng.uniform(math.log(z_lo), math.log(z_hi)))
        hi = v.r1 * pow_abs(az, v.a1)
        lo = pow_abs(az, v.a2) / v.r2
        hi_eff = min(hi, 2.0)
        lo_eff = max(lo, hi_eff * 1e-6)
        gap = math.log(hi_eff) - math.log(lo_eff)
        if gap <= 0:
            continue
        aw = math.exp(rng.uniform(math.log(lo_eff) + 0.01 * gap,
                                  math.log(hi_eff) - 0.01 * gap))
        zp = az * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        wp = aw * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
        if reg.contains(zp, wp):
            out.append((zp, wp))
    return out


def validate_extension_region(c: Classification, np_: NewtonPolygon,
                              v: VRegion, r: float, count: int = 512,
                              seed: int = 0) -> VRegion:
    """Check U subset V and V subset (interior closure of the basin).

    Parameter-ordering violations raise ValueError; a sampled inclusion
    failure raises InclusionViolation carrying a witness point.  Sampled
    points all avoid the axes, where the interior of the basin closure and
    the basin itself agree.
    """
    if c.is_boundary:
        raise GuardError("pick one boundary alternative")
    if not (r <= v.r1 <= 1.0 and v.r2 <= 1.0):
        raise ValueError("need r <= r1 <= 1 and r2 <= 1")
    if not (v.a1 <= c.l1):
        raise ValueError("need a1 <= l1")
    if not is_inf(v.a2) and not (c.l1_plus_l2 <= v.a2):
        raise ValueError("need a2 >= l1 + l2")
    vreg = v.region()
    for z, w in sample(wedge_for(c, r), count, seed):
        if not vreg.contains(z, w):
            raise InclusionViolation(
                f"wedge point outside V at ({z}, {w})", witness=(z, w))
    basin = basin_descriptor(c, np_, r=r).region
    for z, w in _sample_v(v, count, seed + 1):
        if not basin.contains(z, w):
            raise InclusionViolation(
                f"V point outside the basin at ({z}, {w})", witness=(z, w))
    return v


def rasterize_csv(path: str, c: Classification, np_: NewtonPolygon, r: float,
                  n: int, width: int, height: int,
                  v: Optional[VRegion] = None,
                  log10_z: Tuple[float, float] = None,
                  log10_w: Tuple[float, float] = None,
                  threads: int = 1) -> None:
    """Rasterize membership flags over a (log10|z|, log10|w|) grid.

    Columns: the grid point, wedge membership, n-th preimage membership,
    basin-catalog membership and (optionally) extension-region membership.
    Rows are assembled in grid order regardless of worker count.
    """
    lr = math.log10(r)
    if log10_z is None:
        log10_z = (lr - 3.0, lr)
    if log10_w is None:
        log10_w = (lr - 6.0, 0.0)
    u = wedge_region(c, r)
    pre = preimage_region(c, r, n)
    basin = basin_descriptor(c, np_, r=r).region
    vreg = v.region() if v is not None else None

    def row(idx: int) -> List[list]:
        ly = log10_w[0] + (log10_w[1] - log10_w[0]) * idx / max(height - 1, 1)
        out = []
        for jx in range(width):
            lx = log10_z[0] + (log10_z[1] - log10_z[0]) * jx / max(width - 1, 1)
            z, w = 10.0 ** lx, 10.0 ** ly
            rec = [lx, ly, int(u.contains(z, w)), int(pre.contains(z, w)),
                   int(basin.contains(z, w))]
            if vreg is not None:
                rec.append(int(vreg.contains(z, w)))
            out.append(rec)
        return out

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(row, range(height)))
    else:
        rows = [row(i) for i in range(height)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["log10_z", "log10_w", "in_wedge", f"in_preimage_{n}",
                  "in_basin"]
        if vreg is not None:
            header.append("in_v")
        writer.writerow(header)
        for block in rows:
            writer.writerows(block)
