"""Numerical construction of the conjugacy to the dominant monomial map.

The coordinate change is the limit of (monomial map)^-n composed with f^n.
All iteration happens on the logarithmic lift: with pi(Z, W) = (e^Z, e^W),

    F(Z, W) = (delta Z + log a + log(1 + zeta(e^Z)),
               gamma Z + d W + log b + log(1 + eta(e^Z, e^W)))

and F0 its affine part.  Lifting removes every root-branch ambiguity: the
n-th approximant F0^-n o F^n telescopes into a sum of increments

    increment_n = M^-(n+1) (u_n, v_n),   M = [[delta, 0], [gamma, d]],

with u_n = log(1 + zeta) and v_n = log(1 + eta) along the orbit, so the
computation never forms the huge intermediate values of F^n.  The fixed
logarithms of the coefficients a, b cancel from the increments, which is
how non-normalised coefficients are supported.

Convergence for d >= 2 is geometric with the explicit rates 1/delta^(n+1)
and 1/d^(n+1) + gamma_(n+1)/(delta d)^(n+1); for d = 1 it is governed by
the wedge contraction U_r -> U_{r/2^n} and requires delta != T_k, which the
entry points guard.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .basin import ExponentRegion, PowerBound
from .errors import (BranchDomainError, DivisionNearZero, EmptyRegion,
                     GuardError, NoContraction, NoConvergence)
from .exact import is_inf
from .newton import (Case, Classification, NewtonPolygon,
                     d1_boundary_conflict, newton_polygon)
from .poly import SkewProduct, UniPoly
from .region import (eta, poly_eta_log, sample, wedge_for, zeta, zeta_log)


@dataclass(frozen=True)
class MonomialMap:
    """f0(z, w) = (a z^delta, b z^gamma w^d)."""

    a: complex
    delta: int
    b: complex
    gamma: int
    d: int

    def evaluate(self, z: complex, w: complex) -> Tuple[complex, complex]:
        return (self.a * z ** self.delta,
                self.b * z ** self.gamma * w ** self.d)

    def __call__(self, z, w):
        return self.evaluate(z, w)


def monomial_map(f: SkewProduct, c: Classification) -> MonomialMap:
    if c.is_boundary:
        raise GuardError("a boundary classification has two dominant terms; "
                         "pick one alternative")
    return MonomialMap(a=f.p.leading, delta=f.p.delta,
                       b=c.coeff, gamma=c.gamma, d=c.d)


@dataclass(frozen=True)
class LogPoint:
    """A point of the logarithmic lift; pi(Z, W) = (e^Z, e^W)."""

    Z: complex
    W: complex


def _unit_log(x: complex, what: str) -> complex:
    if abs(x) >= 1.0:
        raise BranchDomainError(f"|{what}| = {abs(x):.3g} >= 1; point is "
                                "outside the dominance domain")
    return cmath.log(1 + x)


def log_lift_step(f: SkewProduct, c: Classification, x: LogPoint) -> LogPoint:
    """One application of the lift F at a log point."""
    m = monomial_map(f, c)
    u = _unit_log(zeta_log(f.p, x.Z), "zeta")
    v = _unit_log(poly_eta_log(f.q, m.gamma, m.d, m.b, x.Z, x.W), "eta")
    return LogPoint(Z=m.delta * x.Z + cmath.log(m.a) + u,
                    W=m.gamma * x.Z + m.d * x.W + cmath.log(m.b) + v)


def _check_d1(c: Classification, np_: Optional[NewtonPolygon],
              f: SkewProduct) -> None:
    if c.d == 0:
        raise GuardError("dominant w-degree 0: the second component of the "
                         "monomial map is degenerate")
    if c.d == 1:
        poly = np_ if np_ is not None else newton_polygon(f.q)
        if d1_boundary_conflict(poly, c.delta):
            raise GuardError("d = 1 with delta equal to an intercept T_k: "
                             "no conjugacy to the dominant monomial exists")


@dataclass(frozen=True)
class BottcherResult:
    """Outcome of the conjugacy iteration at one point.

    `increments` are the max-norm lift increments per step; when converged
    they have decayed below the tolerance.  `residual` is the relative
    conjugacy defect computed post hoc with an independent evaluation at
    f(z, w), or None when not requested.
    """

    phi: Tuple[complex, complex]
    iterations: int
    increments: Tuple[float, ...]
    residual: Optional[float]
    converged: bool


def _lift_sums(f: SkewProduct, c: Classification, z: complex, w: complex,
               tol: float, n_max: int):
    """Increment sums of the lifted iteration at one point.

    Returns (S1, S2, per-step (inc1, inc2) list, converged).  The whole
    orbit is tracked on the logarithmic lift, so the superattracting
    contraction never underflows.
    """
    a, delta = f.p.leading, f.p.delta
    b, gamma, d = c.coeff, c.gamma, c.d
    log_a, log_b = cmath.log(a), cmath.log(b)
    zn, wn = cmath.log(z), cmath.log(w)
    s1 = s2 = 0j
    gam = 0  # gamma_n, exact
    dpow = 1  # d^n, exact
    deltapow = 1  # delta^n, exact
    incs: List[Tuple[complex, complex]] = []
    converged = False
    for n in range(n_max):
        u = _unit_log(zeta_log(f.p, zn), "zeta")
        v = _unit_log(poly_eta_log(f.q, gamma, d, b, zn, wn), "eta")
        gam_next = delta * gam + gamma * dpow
        deltapow *= delta
        dpow *= d
        inc1 = u / deltapow
        inc2 = v / dpow - float(Fraction(gam_next, deltapow * dpow)) * u
        s1 += inc1
        s2 += inc2
        incs.append((inc1, inc2))
        if max(abs(inc1), abs(inc2)) < tol:
            converged = True
            break
        zn, wn = (delta * zn + log_a + u,
                  gamma * zn + d * wn + log_b + v)
        gam = gam_next
    return s1, s2, incs, converged


def bottcher_evaluate(f: SkewProduct, c: Classification, z: complex,
                      w: complex, tol: float = 1e-12, n_max: int = 64,
                      with_residual: bool = True) -> BottcherResult:
    """Evaluate the conjugacy at one wedge point.

    The point must satisfy z w != 0 (on the axes the coordinate change is
    defined by continuity and is not evaluated numerically).  For d = 1 the
    additional guard delta != T_k applies.
    """
    _check_d1(c, None, f)
    if z == 0 or w == 0:
        raise DivisionNearZero("evaluate at z w != 0; the conjugacy extends "
                               "to the axes by continuity")
    s1, s2, incs, converged = _lift_sums(f, c, z, w, tol, n_max)
    if not converged:
        raise NoConvergence(f"increments not below {tol} after {n_max} steps")
    phi = (z * cmath.exp(s1), w * cmath.exp(s2))
    residual = None
    if with_residual:
        m = monomial_map(f, c)
        image = bottcher_evaluate(f, c, *f(z, w), tol=tol, n_max=n_max,
                                  with_residual=False)
        lhs = image.phi
        rhs = m(*phi)
        den = max(abs(rhs[0]), abs(rhs[1]))
        residual = max(abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1])) / den
    return BottcherResult(
        phi=phi, iterations=len(incs),
        increments=tuple(max(abs(i1), abs(i2)) for i1, i2 in incs),
        residual=residual, converged=converged)


def lift_increments(f: SkewProduct, c: Classification, z: complex, w: complex,
                    tol: float = 1e-12, n_max: int = 64
                    ) -> List[Tuple[float, float]]:
    """Per-step component increment magnitudes of the lifted iteration."""
    _check_d1(c, None, f)
    _, _, incs, _ = _lift_sums(f, c, z, w, tol, n_max)
    return [(abs(i1), abs(i2)) for i1, i2 in incs]


def approximant_via_lift(f: SkewProduct, c: Classification, n: int, z: complex,
                         w: complex) -> Tuple[complex, complex]:
    """The n-th approximant computed on the logarithmic lift.

    Independent arithmetic route from `approximant`; the two agree to
    rounding on the dominance domain.
    """
    _check_d1(c, None, f)
    if n == 0:
        return (z, w)
    if z == 0 or w == 0:
        raise DivisionNearZero("evaluate at z w != 0")
    s1, s2, _, _ = _lift_sums(f, c, z, w, tol=0.0, n_max=n)
    return (z * cmath.exp(s1), w * cmath.exp(s2))


def approximant(f: SkewProduct, c: Classification, n: int, z: complex,
                w: complex) -> Tuple[complex, complex]:
    """The n-th compositional approximant via the product formula.

    phi_n(z, w) = (z * prod_j (1 + zeta(p^(j-1)(z)))^(1/delta^j),
                   w * prod_j (1 + eta(f^(j-1)))^(1/d^j)
                          / (1 + zeta(p^(j-1)))^(gamma_j / (delta d)^j)),

    all powers principal (every base is within distance < 1 of 1).
    """
    _check_d1(c, None, f)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return (z, w)
    if z == 0 or w == 0:
        raise DivisionNearZero("evaluate at z w != 0")
    delta, d, gamma = f.p.delta, c.d, c.gamma
    prod1 = prod2 = complex(1)
    zn, wn = z, w
    gam = 0
    for j in range(1, n + 1):
        if zn == 0 or wn == 0:
            break
        zr = _unit_log(zeta(f.p, zn), "zeta")
        er = _unit_log(eta(f, c, zn, wn), "eta")
        gam = delta * gam + gamma * d ** (j - 1)  # gamma_j
        prod1 *= cmath.exp(zr / delta ** j)
        prod2 *= cmath.exp(er / d ** j
                           - float(Fraction(gam, (delta * d) ** j)) * zr)
        zn, wn = f(zn, wn)
    return (z * prod1, w * prod2)


@dataclass(frozen=True)
class Bottcher1DResult:
    phi: complex
    iterations: int
    increments: Tuple[float, ...]
    residual: Optional[float]
    converged: bool


def bottcher_1d(p: UniPoly, z: complex, tol: float = 1e-12,
                n_max: int = 64, with_residual: bool = True) -> Bottcher1DResult:
    """Classical one-variable coordinate: the limit of p0^-n o p^n.

    Computed on the logarithmic lift, which fixes every delta^n-th root so
    that p0^-n o p0^n = id; the result is tangent to the identity at 0.
    """
    if z == 0:
        return Bottcher1DResult(phi=0j, iterations=0, increments=(),
                                residual=0.0 if with_residual else None,
                                converged=True)
    delta = p.delta
    zn = z
    s = 0j
    incs: List[float] = []
    converged = False
    deltapow = 1
    for n in range(n_max):
        if zn == 0:
            converged = True
            break
        zr = zeta(p, zn)
        if abs(zr) >= 1.0:
            raise NoContraction(
                f"|zeta| = {abs(zr):.3g} >= 1 at step {n}: the orbit is not "
                "in the contraction domain")
        deltapow *= delta
        inc = cmath.log(1 + zr) / deltapow
        s += inc
        incs.append(abs(inc))
        if abs(inc) < tol:
            converged = True
            break
        zn = p(zn)
    if not converged:
        raise NoContraction(f"orbit failed to settle within {n_max} steps")
    phi = z * cmath.exp(s)
    residual = None
    if with_residual:
        image = bottcher_1d(p, p(z), tol=tol, n_max=n_max, with_residual=False)
        rhs = p.leading * phi ** delta
        residual = abs(image.phi - rhs)
    return Bottcher1DResult(phi=phi, iterations=len(incs),
                            increments=tuple(incs), residual=residual,
                            converged=True)


@dataclass(frozen=True)
class ContractionReport:
    """Sampled check of f^j(U_r) inside U_{r/2^j} for j <= n."""

    r: float
    n: int
    orbits: int
    failures: Tuple[Tuple[int, complex, complex], ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def d1_contraction_check(f: SkewProduct, c: Classification, r: float,
                         n: int, count: int, seed: int) -> ContractionReport:
    """Verify the halving contraction of the wedge for a d = 1 instance.

    Requires d = 1 and delta different from every intercept; each sampled
    orbit must land in the shrunken wedge U_{r/2^j} at every step j <= n.
    """
    if c.d != 1:
        raise GuardError("the halving contraction check is the d = 1 path")
    _check_d1(c, None, f)
    u = wedge_for(c, r)
    pts = sample(u, count, seed)
    failures = []
    for z, w in pts:
        x = LogPoint(cmath.log(z), cmath.log(w))
        for j in range(1, n + 1):
            try:
                x = log_lift_step(f, c, x)
            except BranchDomainError:
                failures.append((j, z, w))
                break
            if not u.shrink(r / 2.0 ** j).contains_log(x.Z.real, x.W.real):
                failures.append((j, z, w))
                break
    return ContractionReport(r=r, n=n, orbits=len(pts),
                             failures=tuple(failures))


def contraction_exponent(c: Classification, np_: NewtonPolygon,
                         delta: int) -> Fraction:
    """The d = 1 convergence-rate exponent in (0, 1].

    Equals 1 for Cases 1-3.  For Case 4 it is the least positive gap
    between the sheared vertex abscissae and the sheared dominant abscissa,
    capped at 1.
    """
    if c.d != 1:
        raise GuardError("the rate exponent is defined for d = 1")
    if c.case is not Case.CASE4:
        return Fraction(1)
    l1 = c.l1
    gamma_t = Fraction(c.gamma) + l1 * c.d - l1 * delta
    best = Fraction(1)
    for (nj, mj) in np_.vertices:
        nt = Fraction(nj) + l1 * mj - l1 * delta
        if nt > gamma_t:
            best = min(best, nt - gamma_t)
    return best


def injectivity_region(c: Classification, r: float,
                       eps: float) -> ExponentRegion:
    """The explicit shrunken wedge on which the coordinate is injective.

    For finite l2 both wedge bounds move by the factor (1+eps)^(2C) with
    C = max(1/d, l2/(2 delta)).  With l2 = oo the two strips shrink by
    their own Rouche margins (1+eps)^(2/delta) and (1+eps)^(2/d).
    EmptyRegion is raised when the w-window has closed at the
    representative radius |z| = half the z-extent of the original wedge.
    """
    if c.is_boundary:
        raise GuardError("pick one boundary alternative")
    if eps < 0:
        raise ValueError("eps must be >= 0")
    delta, d = c.delta, c.d
    if is_inf(c.l2):
        z_bound = r * (1.0 + eps) ** (-2.0 / delta)
        upper = PowerBound(r * (1.0 + eps) ** (-2.0 / d), c.l1)
        if z_bound <= 0.0:
            raise EmptyRegion("z bound collapsed")
        return ExponentRegion(lower=None, upper=upper, z_bound=z_bound)
    cc = max(Fraction(1, d), Fraction(c.l2) / (2 * delta))
    factor = (1.0 + eps) ** (2.0 * float(cc))
    lower = PowerBound(factor * r ** (-float(c.l2)), c.l1 + c.l2)
    upper = PowerBound(r / factor, c.l1)
    rep = 0.5 * r ** (1.0 + 1.0 / float(c.l2))
    if not lower.value_at(rep) < upper.value_at(rep):
        raise EmptyRegion(f"bounds cross at representative |z| = {rep:.3g}")
    return ExponentRegion(lower=lower, upper=upper, z_bound=None)


@dataclass(frozen=True)
class DeckSymmetry:
    """A diagonal map (c1 z, c2 w) commuting with the monomial map.

    The angles are exact rationals (turns); c1, c2 are their complex
    exponentials, satisfying c1^(delta-1) = 1 and c1^gamma c2^(d-1) = 1.
    """

    c1: complex
    c2: complex
    angle1: Fraction
    angle2: Fraction


def _turn(t: Fraction) -> complex:
    t = t - math.floor(t)
    x = 2.0 * math.pi * float(t)
    return complex(math.cos(x), math.sin(x))


def deck_symmetries(m: MonomialMap) -> List[DeckSymmetry]:
    """All diagonal self-conjugacies of the monomial map, d >= 2.

    c1 runs over the (delta-1)-st roots of unity and, for each, c2 over the
    (d-1)-st roots of c1^(-gamma); the count is (delta-1)(d-1).  Roots are
    built from exact angle arithmetic, not solved numerically.
    """
    if m.d < 2:
        raise GuardError("deck symmetries are enumerated for d >= 2")
    out: List[DeckSymmetry] = []
    for i in range(m.delta - 1):
        a1 = Fraction(i, m.delta - 1)
        for j in range(m.d - 1):
            a2 = Fraction(j * (m.delta - 1) - m.gamma * i,
                          (m.delta - 1) * (m.d - 1))
            out.append(DeckSymmetry(c1=_turn(a1), c2=_turn(a2),
                                    angle1=a1 % 1, angle2=a2 % 1))
    return out
