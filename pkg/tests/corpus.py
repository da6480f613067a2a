"""Curated skew-product instances used across the test suite.

Each instance freezes the expected classification data, derived by exact
intercept arithmetic on the stated support and cross-checked against the
brute-force hull oracle in test_newton/test_acceptance.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from bottcher import INF, ExtRat, SkewProduct, bi_poly, uni_poly

F = Fraction


@dataclass(frozen=True)
class Instance:
    name: str
    p: tuple
    q: tuple
    case: str                      # expected case label
    vertex: Optional[Tuple[int, int]] = None
    l1: Optional[Fraction] = None
    l2: Optional[ExtRat] = None
    # For boundaries: expected (case, vertex) of the two alternatives.
    alternatives: Optional[tuple] = None

    @property
    def f(self) -> SkewProduct:
        return SkewProduct(uni_poly(self.p), bi_poly(self.q))

    @property
    def d(self) -> Optional[int]:
        return self.vertex[1] if self.vertex else None


CORPUS = [
    # --- Case 1 ---------------------------------------------------------
    Instance("case1_pure", ((2, 1),), ((0, 2, 1),),
             "Case1", (0, 2), F(0), INF),
    Instance("case1_unit", ((2, 1),), ((0, 2, 1), (1, 2, 1)),
             "Case1", (0, 2), F(0), INF),
    Instance("case1_gamma", ((2, 1),), ((1, 2, 1), (2, 3, 1)),
             "Case1", (1, 2), F(0), INF),
    Instance("case1_highd", ((2, 1),), ((1, 3, 1), (2, 5, 1)),
             "Case1", (1, 3), F(0), INF),
    Instance("case1_fiber", ((2, 1),), ((0, 2, 1), (0, 3, 0.5)),
             "Case1", (0, 2), F(0), INF),
    Instance("case1_coeff", ((2, 1.2), (3, 0.3)),
             ((1, 2, complex(0.9, -0.2)), (2, 3, 0.5)),
             "Case1", (1, 2), F(0), INF),
    # --- Case 2 ---------------------------------------------------------
    Instance("case2_spec", ((3, 1),), ((1, 3, 1), (4, 2, 1)),
             "Case2", (4, 2), F(3), INF),
    Instance("case2_pert", ((3, 1), (4, 0.5)),
             ((1, 3, 1), (4, 2, 1), (5, 3, 0.1)),
             "Case2", (4, 2), F(3), INF),
    Instance("case2_dge", ((3, 1),), ((0, 5, 1), (2, 3, 1)),
             "Case2", (2, 3), F(1), INF),
    Instance("case2_dlt", ((2, 1),), ((0, 5, 1), (2, 3, 1)),
             "Case2", (2, 3), F(1), INF),
    Instance("case2_d1", ((2, 1),), ((1, 2, 1), (3, 1, 1)),
             "Case2", (3, 1), F(2), INF),
    # --- Case 3 ---------------------------------------------------------
    Instance("case3_spec", ((4, 1),), ((0, 3, 1), (2, 1, 1)),
             "Case3", (0, 3), F(0), F(1)),
    Instance("case3_gamma", ((3, 1),), ((1, 2, 1), (3, 1, 1)),
             "Case3", (1, 2), F(0), F(2)),
    Instance("case3_g0", ((3, 1),), ((0, 2, 1), (3, 1, 1)),
             "Case3", (0, 2), F(0), F(3)),
    Instance("case3_d1", ((3, 1),), ((1, 1, 1), (3, 0, 1)),
             "Case3", (1, 1), F(0), F(2)),
    # --- Case 4 ---------------------------------------------------------
    Instance("case4_spec", ((3, 1),), ((0, 4, 1), (2, 2, 1), (5, 1, 1)),
             "Case4", (2, 2), F(1), F(2)),
    Instance("case4_pert", ((3, 1), (5, 1)),
             ((0, 4, 1), (2, 2, 1), (5, 1, 1), (3, 3, 1)),
             "Case4", (2, 2), F(1), F(2)),
    Instance("case4_coeff", ((3, 1.1),),
             ((0, 4, 1), (2, 2, complex(0.9, -0.2)), (5, 1, 1)),
             "Case4", (2, 2), F(1), F(2)),
    Instance("case4_d1_m1", ((2, 1),), ((0, 3, 1), (2, 1, 1), (6, 0, 1)),
             "Case4", (2, 1), F(1), F(3)),
    Instance("case4_d1_mhalf", ((2, 1),),
             ((0, 6, 1), (1, 3, 1), (2, 1, 1), (6, 0, 1)),
             "Case4", (2, 1), F(1, 2), F(7, 2)),
    # --- Boundaries (delta = T_k) ----------------------------------------
    Instance("boundary_ex1", ((2, 1),), ((1, 1, 1), (2, 0, 1)),
             "Boundary", alternatives=(("Case3", (1, 1)), ("Case2", (2, 0)))),
    Instance("boundary_ex2", ((2, 1),), ((2, 1, 1), (4, 0, 1)),
             "Boundary", alternatives=(("Case3", (2, 1)), ("Case2", (4, 0)))),
    Instance("boundary_ex3", ((2, 1),), ((3, 1, 1), (6, 0, 1)),
             "Boundary", alternatives=(("Case3", (3, 1)), ("Case2", (6, 0)))),
    Instance("boundary_d2", ((4, 1),), ((0, 4, 1), (2, 2, 1)),
             "Boundary", alternatives=(("Case3", (0, 4)), ("Case2", (2, 2)))),
    Instance("boundary_case4_hi", ((4, 1),), ((0, 4, 1), (2, 2, 1), (5, 1, 1)),
             "Boundary", alternatives=(("Case3", (0, 4)), ("Case4", (2, 2)))),
    Instance("boundary_case4_lo", ((3, 1),), ((0, 6, 1), (2, 2, 1), (4, 1, 1)),
             "Boundary", alternatives=(("Case4", (2, 2)), ("Case2", (4, 1)))),
    Instance("boundary_case3_eq", ((2, 1),), ((0, 2, 1), (2, 1, 1)),
             "Boundary", alternatives=(("Case3", (0, 2)), ("Case2", (2, 1)))),
]

BY_NAME = {inst.name: inst for inst in CORPUS}


def verification_instances():
    """Non-boundary instances with d >= 2 (the dominance/conjugacy corpus)."""
    return [inst for inst in CORPUS
            if inst.case != "Boundary" and inst.d >= 2]


def d1_instances():
    """Non-boundary instances with d = 1."""
    return [inst for inst in CORPUS
            if inst.case != "Boundary" and inst.d == 1]
