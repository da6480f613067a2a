"""The invariant wedge and numerical dominance verification.

The wedge U_r = { |z|^(l1+l2) < r^l2 |w|,  |w| < r |z|^l1 } is where the
dominant monomial controls the skew product.  With l2 = oo the first
inequality degenerates and U_r = { |z| < r, |w| < r|z|^l1 }; with l1 = 0
this is a bidisk.

Dominance is quantified by the relative deviations

    zeta(z)    = (p(z) - a z^delta) / (a z^delta)
    eta(z, w)  = (q(z, w) - b z^gamma w^d) / (b z^gamma w^d)

whose sampled sup norms this module estimates on seeded log-uniform samples.
Reported sups are maxima over the sample set, so lower bounds for the true
sups; the radius search makes the asymptotic "for small r" concrete by
halving r until the measured sup and the forward-invariance check pass.
"""

from __future__ import annotations

import cmath
import csv
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DivisionNearZero, EmptyBand, GuardError, NoConvergence
from .exact import INF, ExtRat, is_inf
from .newton import Classification, NewtonPolygon
from .poly import BiPoly, SkewProduct, UniPoly

Point = Tuple[complex, complex]

_HUGE = complex(math.inf, 0.0)


def zeta_log(p: UniPoly, log_z: complex) -> complex:
    """zeta at the point e^(log_z), computed from the logarithm.

    Each residual term is exp of a combined logarithm, so the value stays
    meaningful far beyond the range where e^(log_z) itself underflows.
    """
    rest = [(k, c) for k, c in p.coeffs.items() if k != p.delta]
    total = 0j
    for k, c in rest:
        try:
            total += (c / p.leading) * cmath.exp((k - p.delta) * log_z)
        except OverflowError:
            return _HUGE
    return total


def zeta(p: UniPoly, z: complex) -> complex:
    """Relative deviation of p from its leading monomial."""
    if len(p.coeffs) == 1:
        return 0j
    if z == 0:
        raise DivisionNearZero("zeta needs z != 0")
    return zeta_log(p, cmath.log(z))


def poly_eta_log(q: BiPoly, gamma: int, d: int, coeff: complex,
                 log_z: complex, log_w: complex) -> complex:
    """eta at (e^log_z, e^log_w), computed from the logarithms."""
    total = 0j
    for (i, j), b in q.coeffs.items():
        if (i, j) == (gamma, d):
            continue
        try:
            total += (b / coeff) * cmath.exp((i - gamma) * log_z
                                             + (j - d) * log_w)
        except OverflowError:
            return _HUGE
    return total


def poly_eta(q: BiPoly, gamma: int, d: int, coeff: complex,
             z: complex, w: complex) -> complex:
    """Relative deviation of q from the monomial coeff * z^gamma w^d."""
    if list(q.coeffs) == [(gamma, d)]:
        return 0j
    if z == 0 or w == 0:
        raise DivisionNearZero("eta needs z != 0 and w != 0")
    return poly_eta_log(q, gamma, d, coeff, cmath.log(z), cmath.log(w))


def eta(f: SkewProduct, c: Classification, z: complex, w: complex) -> complex:
    """Relative deviation of q from its dominant monomial b z^gamma w^d."""
    return poly_eta(f.q, c.gamma, c.d, c.coeff, z, w)


@dataclass(frozen=True)
class WedgeRegion:
    """U_r with exact weights; membership uses real powers of magnitudes."""

    l1: Fraction
    l2: ExtRat
    r: float

    def contains_log(self, log_z: float, log_w: float) -> bool:
        """Membership from log-magnitudes (finite log_z, log_w)."""
        lr = math.log(self.r)
        fl1 = float(self.l1)
        if is_inf(self.l2):
            return log_z < lr and log_w < lr + fl1 * log_z
        fl2 = float(self.l2)
        return ((fl1 + fl2) * log_z < fl2 * lr + log_w
                and log_w < lr + fl1 * log_z)

    def contains(self, z: complex, w: complex) -> bool:
        az, aw = abs(z), abs(w)
        if az > 0.0 and aw > 0.0:
            return self.contains_log(math.log(az), math.log(aw))
        fl1 = float(self.l1)
        if is_inf(self.l2):
            return az < self.r and aw < self.r * az ** fl1
        fl2 = float(self.l2)
        return (az ** (fl1 + fl2) < self.r ** fl2 * aw
                and aw < self.r * az ** fl1)

    def shrink(self, r: float) -> "WedgeRegion":
        return WedgeRegion(self.l1, self.l2, r)


def wedge_for(c: Classification, r: float) -> WedgeRegion:
    if c.is_boundary:
        raise GuardError("a boundary classification has two wedges; "
                         "pick one alternative")
    return WedgeRegion(c.l1, c.l2, r)


def sample(u: WedgeRegion, count: int, seed: int) -> List[Point]:
    """Seeded log-uniform sample of U_r; every point satisfies contains().

    |z| is drawn log-uniformly across the z-extent of the wedge, |w|
    log-uniformly strictly between the two wedge bounds at that |z| (with a
    fixed band below the upper bound when the lower bound is absent), and
    both phases uniformly.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = random.Random(seed)
    fl1 = float(u.l1)
    if is_inf(u.l2):
        z_hi = u.r
    else:
        z_hi = u.r ** (1.0 + 1.0 / float(u.l2))
    z_lo = z_hi * 1e-2
    z_hi = z_hi * 0.98
    if not (0.0 < z_lo < z_hi) or not math.isfinite(z_lo):
        raise EmptyBand(f"z band degenerate for r={u.r}")
    out: List[Point] = []
    for _ in range(count):
        az = math.exp(rng.uniform(math.log(z_lo), math.log(z_hi)))
        hi_w = u.r * az ** fl1
        if is_inf(u.l2):
            lo_w = hi_w * 1e-4
        else:
            lo_w = u.r ** (-float(u.l2)) * az ** (fl1 + float(u.l2))
        if not (0.0 < lo_w < hi_w) or not math.isfinite(hi_w):
            raise EmptyBand(f"w band degenerate at |z|={az}")
        gap = math.log(hi_w) - math.log(lo_w)
        law = rng.uniform(math.log(lo_w) + 0.01 * gap,
                          math.log(hi_w) - 0.01 * gap)
        aw = math.exp(law)
        zp = az * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        wp = aw * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        if not u.contains(zp, wp):
            raise EmptyBand(f"sampled point left the wedge at |z|={az}")
        out.append((zp, wp))
    return out


@dataclass(frozen=True)
class DominanceReport:
    """Sampled dominance and invariance evidence at one radius.

    Sup values are maxima over the sample set (lower bounds for the true
    sups).  `violations` lists sampled points whose image under f left the
    wedge; empty means invariance verified on the samples.
    """

    r: float
    sup_eta: float
    sup_zeta: float
    sup_relative_f_error: float
    samples: int
    violations: Tuple[Point, ...]

    @property
    def invariant(self) -> bool:
        return not self.violations


def _relative_f_error(f: SkewProduct, c: Classification,
                      z: complex, w: complex) -> float:
    p0 = f.p.leading * z ** f.p.delta
    q0 = c.coeff * z ** c.gamma * w ** c.d
    den = max(abs(p0), abs(q0))
    if den == 0.0:
        raise DivisionNearZero("dominant part vanished at a sample point")
    num = max(abs(f.p(z) - p0), abs(f.q(z, w) - q0))
    return num / den


def dominance_report(f: SkewProduct, c: Classification, r: float,
                     count: int, seed: int) -> DominanceReport:
    u = wedge_for(c, r)
    pts = sample(u, count, seed)
    sup_e = sup_z = sup_rel = 0.0
    violations = []
    for z, w in pts:
        sup_e = max(sup_e, abs(eta(f, c, z, w)))
        sup_z = max(sup_z, abs(zeta(f.p, z)))
        sup_rel = max(sup_rel, _relative_f_error(f, c, z, w))
        if not u.contains(*f(z, w)):
            violations.append((z, w))
    return DominanceReport(r=r, sup_eta=sup_e, sup_zeta=sup_z,
                           sup_relative_f_error=sup_rel, samples=len(pts),
                           violations=tuple(violations))


def verify_dominance(f: SkewProduct, c: Classification,
                     r_list: Sequence[float], count: int,
                     seed: int) -> List[DominanceReport]:
    """Dominance and one-step invariance reports across a radius grid."""
    return [dominance_report(f, c, r, count, seed) for r in r_list]


def find_accepted_radius(f: SkewProduct, c: Classification,
                         r0: float = 0.4, eps_target: float = 0.5,
                         count: int = 1024, seed: int = 0,
                         max_halvings: int = 16) -> DominanceReport:
    """First radius r0 * 2^-k with sup deviations < eps_target and no
    invariance violations.

    The default eps_target 0.5 keeps |eta|, |zeta| < 1 on the wedge so the
    principal logarithms downstream are defined.
    """
    for k in range(max_halvings + 1):
        rep = dominance_report(f, c, r0 * 2.0 ** (-k), count, seed)
        if max(rep.sup_eta, rep.sup_zeta) < eps_target and rep.invariant:
            return rep
    raise NoConvergence(
        f"no radius down to {r0 * 2.0 ** (-max_halvings)} met "
        f"eps_target={eps_target} with invariance")


def export_samples_csv(path: str, f: SkewProduct, c: Classification,
                       r: float, count: int, seed: int) -> None:
    """Sample grid CSV for plotting: point, |eta|, and invariance flag."""
    u = wedge_for(c, r)
    pts = sample(u, count, seed)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["z_re", "z_im", "w_re", "w_im",
                         "eta_abs", "in_region_after_f"])
        for z, w in pts:
            writer.writerow([z.real, z.imag, w.real, w.imag,
                             abs(eta(f, c, z, w)),
                             int(u.contains(*f(z, w)))])
