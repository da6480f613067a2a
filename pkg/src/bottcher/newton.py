"""Newton-polygon combinatorics, case classification and weight intervals.

The Newton polygon of q is the convex hull of the union of upper-right
quadrants D(i, j) = {x >= i, y >= j} over the support of q.  Its vertices
(n_1, m_1), ..., (n_s, m_s) form a convex staircase with n_k increasing and
m_k decreasing; T_k is the exact y-intercept of the edge through vertices k
and k+1, strictly decreasing in k.

Comparing the order delta of p against the intercepts selects the dominant
monomial of q and the wedge weights:

* Case 1: single vertex; l1 = 0, l2 = oo (a bidisk).
* Case 2: delta <= T_{s-1}; dominant vertex (n_s, m_s), l2 = oo.
* Case 3: T_1 <= delta; dominant vertex (n_1, m_1), l1 = 0.
* Case 4: T_k <= delta <= T_{k-1}; dominant vertex (n_k, m_k).

Every endpoint below is an exact rational and open/closed endpoints are
carried explicitly: the boundary coincidences delta = T_k are the central
degeneracy of the theory and must not be lost to rounding.  When delta
equals some T_k the classification is `Boundary` and both adjacent
classifications are recorded, since both dominant terms give invariant
wedges when their degree conditions hold.

The linear term b*z of q participates in the hull like any other monomial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .errors import GuardError
from .exact import INF, ExtRat, ext_json, is_inf
from .poly import BiPoly, Exponent, SkewProduct

RatPoint = Tuple[Fraction, Fraction]


def staircase_vertices(points: Iterable[Sequence]) -> Tuple[RatPoint, ...]:
    """Vertices of the hull of union of quadrants D(p), in staircase order.

    Works on exact rational coordinates.  Gift wrapping: start at the point
    with minimal x (minimal y among ties), then repeatedly follow the
    steepest descending edge; collinear interior points are skipped by the
    farthest-point tie break.
    """
    pts = {(Fraction(p[0]), Fraction(p[1])) for p in points}
    if not pts:
        raise ValueError("empty support")
    chain = [min(pts, key=lambda p: (p[0], p[1]))]
    while True:
        ax, ay = chain[-1]
        cand = [p for p in pts if p[0] > ax and p[1] < ay]
        if not cand:
            break
        chain.append(min(cand, key=lambda p: ((p[1] - ay) / (p[0] - ax), -p[0])))
    return tuple(chain)


def _intercepts(vertices: Sequence[RatPoint]) -> Tuple[Fraction, ...]:
    out = []
    for (n0, m0), (n1, m1) in zip(vertices, vertices[1:]):
        out.append(Fraction(m0 * n1 - m1 * n0, n1 - n0))
    return tuple(out)


@dataclass(frozen=True)
class NewtonPolygon:
    """Ordered vertex list of N(q) with exact edge intercepts T_k."""

    vertices: Tuple[Tuple[int, int], ...]
    intercepts: Tuple[Fraction, ...]

    @property
    def s(self) -> int:
        return len(self.vertices)

    def edge_slope(self, k: int) -> Fraction:
        """Slope of the edge L_k through vertices k and k+1 (1-based k)."""
        (n0, m0), (n1, m1) = self.vertices[k - 1], self.vertices[k]
        return Fraction(m1 - m0, n1 - n0)


def newton_polygon(q: BiPoly) -> NewtonPolygon:
    verts = staircase_vertices(q.support)
    vertices = tuple((int(x), int(y)) for x, y in verts)
    return NewtonPolygon(vertices=vertices, intercepts=_intercepts(verts))


class Case(enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class Classification:
    """Dominant-term data for one (q, delta) pair.

    For Boundary (delta = T_k) the vertex fields are None and the two
    adjacent classifications are in `alternatives`, ordered (side with the
    smaller vertex index, side with the larger).  `k` is the 1-based index
    of the dominant vertex, or of the offending intercept at a boundary.
    """

    case: Case
    delta: int
    k: int
    gamma: Optional[int]
    d: Optional[int]
    coeff: Optional[complex]
    l1: Optional[Fraction]
    l2: Optional[ExtRat]
    alternatives: Optional[Tuple["Classification", "Classification"]] = None

    @property
    def is_boundary(self) -> bool:
        return self.case is Case.BOUNDARY

    @property
    def l1_plus_l2(self) -> ExtRat:
        if is_inf(self.l2):
            return INF
        return self.l1 + self.l2

    @property
    def vertex(self) -> Tuple[int, int]:
        return (self.gamma, self.d)


def _vertex_classification(np_: NewtonPolygon, delta: int, k: int, case: Case,
                           coeffs: Optional[Mapping[Exponent, complex]]) -> Classification:
    """Classification with dominant vertex k under the given case tag."""
    verts = np_.vertices
    gamma, d = verts[k - 1]
    if case is Case.CASE1:
        l1: Fraction = Fraction(0)
        l2: ExtRat = INF
    elif case is Case.CASE2:
        n0, m0 = verts[k - 2]
        l1 = Fraction(gamma - n0, m0 - d)
        l2 = INF
    elif case is Case.CASE3:
        n1, m1 = verts[k]
        l1 = Fraction(0)
        l2 = Fraction(n1 - gamma, d - m1)
    else:
        n0, m0 = verts[k - 2]
        n1, m1 = verts[k]
        l1 = Fraction(gamma - n0, m0 - d)
        l2 = Fraction(n1 - gamma, d - m1) - l1
    coeff = complex(1) if coeffs is None else coeffs[(gamma, d)]
    return Classification(case=case, delta=delta, k=k, gamma=gamma, d=d,
                          coeff=coeff, l1=l1, l2=l2)


def classify(np_: NewtonPolygon, delta: int,
             coeffs: Optional[Mapping[Exponent, complex]] = None) -> Classification:
    """Classify (N(q), delta) into Case 1-4 or Boundary.

    Exact rational comparison of delta against every T_k; Boundary is
    returned iff delta equals some intercept, with both adjacent
    classifications attached.  `coeffs` optionally supplies the dominant
    coefficient b_{gamma,d} (defaults to 1).
    """
    if delta < 2:
        raise ValueError("delta must be >= 2")
    s = np_.s
    if s == 1:
        return _vertex_classification(np_, delta, 1, Case.CASE1, coeffs)
    T = np_.intercepts
    for k in range(1, s):
        if delta == T[k - 1]:
            upper = _vertex_classification(
                np_, delta, k, Case.CASE3 if k == 1 else Case.CASE4, coeffs)
            lower = _vertex_classification(
                np_, delta, k + 1, Case.CASE2 if k + 1 == s else Case.CASE4,
                coeffs)
            return Classification(case=Case.BOUNDARY, delta=delta, k=k,
                                  gamma=None, d=None, coeff=None, l1=None,
                                  l2=None, alternatives=(upper, lower))
    if delta < T[s - 2]:
        return _vertex_classification(np_, delta, s, Case.CASE2, coeffs)
    if delta > T[0]:
        return _vertex_classification(np_, delta, 1, Case.CASE3, coeffs)
    for k in range(2, s):
        if T[k - 1] < delta < T[k - 2]:
            return _vertex_classification(np_, delta, k, Case.CASE4, coeffs)
    raise AssertionError("unreachable: intercepts are strictly decreasing")


def classify_map(f: SkewProduct) -> Classification:
    """Classify a SkewProduct, attaching its dominant coefficient."""
    return classify(newton_polygon(f.q), f.p.delta, coeffs=f.q.coeffs)


def alpha0(c: Classification) -> ExtRat:
    """gamma / (delta - d), the fixed point of the basin exponent map.

    Returns +oo when delta = d; negative when delta < d.
    """
    if c.delta == c.d:
        return INF
    return Fraction(c.gamma, c.delta - c.d)


def d1_boundary_conflict(np_: NewtonPolygon, delta: int) -> bool:
    """True when delta equals some intercept T_k.

    With a dominant w-degree d = 1 this coincidence defeats the wedge
    contraction, so the d = 1 constructions refuse such inputs.
    """
    return any(delta == t for t in np_.intercepts)


@dataclass(frozen=True)
class RationalInterval:
    """Interval with exact rational (or infinite) endpoints."""

    lo: ExtRat
    hi: ExtRat
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, x: ExtRat) -> bool:
        if self.is_empty():
            return False
        if x < self.lo or (x == self.lo and self.lo_open):
            return False
        if x > self.hi or (x == self.hi and self.hi_open):
            return False
        return True

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        if self.lo > other.lo:
            lo, lo_open = self.lo, self.lo_open
        elif self.lo < other.lo:
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open or other.lo_open
        if self.hi < other.hi:
            hi, hi_open = self.hi, self.hi_open
        elif self.hi > other.hi:
            hi, hi_open = other.hi, other.hi_open
        else:
            hi, hi_open = self.hi, self.hi_open or other.hi_open
        return RationalInterval(lo, hi, lo_open, hi_open)

    def to_json(self) -> dict:
        return {"lo": ext_json(self.lo), "hi": ext_json(self.hi),
                "lo_open": self.lo_open, "hi_open": self.hi_open}

    def __str__(self) -> str:
        lo = "(" if self.lo_open else "["
        hi = ")" if self.hi_open else "]"
        from .exact import ext_str
        return f"{lo}{ext_str(self.lo)}, {ext_str(self.hi)}{hi}"


@dataclass(frozen=True)
class WeightIntervals:
    """Admissible weight intervals for the covering lifts.

    `i1` is the interval of z-direction weights (Cases 1, 2 and the first
    Case-4 stage); for Case 3 it is the interval of w-direction weights.
    `i2` is the second-stage Case-4 interval evaluated at l_(1) = l1.
    """

    i1: RationalInterval
    i2: Optional[RationalInterval]
    alpha0: ExtRat


def second_stage_interval(c: Classification,
                          l1_choice: Fraction) -> RationalInterval:
    """Case-4 second-stage interval as a function of the chosen first weight.

    [alpha0 - l_(1), l1 + l2 - l_(1)], with the lower endpoint opened when it
    degenerates to 0 (weights are positive).
    """
    if c.case is not Case.CASE4:
        raise GuardError("second-stage interval is defined for Case 4 only")
    a0 = alpha0(c)
    lo = a0 - l1_choice
    hi = c.l1 + c.l2 - l1_choice
    return RationalInterval(lo, hi, lo_open=(lo == 0), hi_open=False)


def weight_intervals(c: Classification, np_: NewtonPolygon,
                     delta: int) -> WeightIntervals:
    """Closed-form admissible weight intervals for a non-boundary case.

    Case 2: [l1, gamma/(delta-d)] when delta > d, else [l1, oo).
    Case 3: [gamma/(delta-d), l2] when gamma > 0, else (0, l2].
    Case 4: [l1, l1+l2) intersected with (0, alpha0], plus the second-stage
    interval at l_(1) = l1.
    Case 1 gets the same z-weight set as Case 2 with min 0 (the identity
    lift is always admissible).
    """
    if c.is_boundary:
        raise GuardError("weight intervals at a boundary come from the "
                         "two alternative classifications")
    if delta != c.delta:
        raise ValueError("delta disagrees with the classification")
    a0 = alpha0(c)
    if c.case is Case.CASE1:
        if delta > c.d:
            i1 = RationalInterval(Fraction(0), a0)
        else:
            i1 = RationalInterval(Fraction(0), INF, hi_open=True)
        return WeightIntervals(i1=i1, i2=None, alpha0=a0)
    if c.case is Case.CASE2:
        if delta > c.d:
            i1 = RationalInterval(c.l1, a0)
        else:
            i1 = RationalInterval(c.l1, INF, hi_open=True)
        return WeightIntervals(i1=i1, i2=None, alpha0=a0)
    if c.case is Case.CASE3:
        if c.gamma > 0:
            i1 = RationalInterval(a0, c.l2)
        else:
            i1 = RationalInterval(Fraction(0), c.l2, lo_open=True)
        return WeightIntervals(i1=i1, i2=None, alpha0=a0)
    base = RationalInterval(c.l1, c.l1 + c.l2, hi_open=True)
    cap = RationalInterval(Fraction(0), a0, lo_open=True)
    return WeightIntervals(i1=base.intersect(cap),
                           i2=second_stage_interval(c, c.l1),
                           alpha0=a0)


def shear_horizontal(support: Iterable[Sequence], weight: Fraction,
                     delta: int) -> Tuple[RatPoint, ...]:
    """Exponent shear (i, j) -> (i + weight*(j - delta), j).

    Sends the polygon edge of inverse slope -weight to a vertical line; this
    is the exponent action of the z-direction covering at the given weight.
    """
    w = Fraction(weight)
    return tuple(sorted((Fraction(i) + w * Fraction(j) - w * delta, Fraction(j))
                        for i, j in support))


def shear_vertical(support: Iterable[Sequence],
                   inv_weight: Fraction) -> Tuple[RatPoint, ...]:
    """Exponent shear (i, j) -> (i, inv_weight*i + j).

    Sends the edge of slope -inv_weight to a horizontal line; the exponent
    action of the w-direction covering.
    """
    lw = Fraction(inv_weight)
    return tuple(sorted((Fraction(i), lw * Fraction(i) + Fraction(j))
                        for i, j in support))
