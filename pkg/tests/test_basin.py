"""Exponent map iterates, preimage regions, basin catalog, extension region."""

import math
import random
from fractions import Fraction

import pytest

from bottcher import (GuardError, InclusionViolation, VRegion, alpha0,
                      basin_descriptor, classify_map, exponent_iterate,
                      exponent_step, newton_polygon, orbit_membership,
                      preimage_region, validate_extension_region,
                      wedge_region, INF, NEG_INF)
from corpus import BY_NAME

F = Fraction


def margin_points(region, count, seed, z_window, w_window, margin=1e-6,
                  z_margin=None):
    """Random magnitude points separated from the region boundaries.

    Points whose log-distance to any active power bound (or to the z disk
    boundary) is below the margin are discarded, so membership is stable
    under the rounding differences between the closed form and the orbit
    oracle.
    """
    rng = random.Random(seed)
    if z_margin is None:
        z_margin = margin
    pts = []
    while len(pts) < count:
        lz = rng.uniform(*z_window)
        lw = rng.uniform(*w_window)
        if region.z_bound is not None \
                and abs(lz - math.log(region.z_bound)) < z_margin:
            continue
        ok = True
        for bound in (region.lower, region.upper):
            if bound is None or bound.coeff <= 0:
                continue
            e = float(bound.exponent)
            if not math.isfinite(e):
                continue
            if abs(lw - (math.log(bound.coeff) + e * lz)) < margin:
                ok = False
                break
        if ok:
            pts.append((math.exp(lz), math.exp(lw)))
    return pts


class TestExponentMap:
    def test_identity_when_gamma_zero_delta_eq_d(self):
        assert exponent_step(F(5, 7), 2, 0, 2) == F(5, 7)

    def test_simple_step(self):
        assert exponent_step(F(0), 2, 1, 1) == F(-1)

    def test_two_steps(self):
        a = exponent_step(exponent_step(F(1), 3, 2, 2), 3, 2, 2)
        assert a == F(-1, 4)

    def test_closed_form_matches(self):
        assert exponent_iterate(F(1), 2, 3, 2, 2) == F(-1, 4)

    def test_n_zero(self):
        assert exponent_iterate(F(3, 5), 0, 4, 1, 2) == F(3, 5)

    def test_delta_eq_d_progression(self):
        for n in range(6):
            assert exponent_iterate(F(2), n, 2, 1, 2) == F(2) - n * F(1, 2)

    @pytest.mark.parametrize("params", [(2, 0, 2), (3, 2, 2), (2, 1, 1),
                                        (4, 3, 2), (2, 2, 3), (5, 1, 5)])
    def test_closed_form_equals_iteration(self, params):
        delta, gamma, d = params
        rng = random.Random(sum(params))
        for _ in range(30):
            a = F(rng.randint(-1000, 1000), rng.randint(1, 1000))
            x = a
            for n in range(33):
                assert exponent_iterate(a, n, delta, gamma, d) == x
                x = exponent_step(x, delta, gamma, d)

    def test_infinite_input_preserved(self):
        assert exponent_iterate(INF, 5, 3, 1, 2) == INF
        assert exponent_step(NEG_INF, 3, 1, 2) == NEG_INF


class TestPreimageRegions:
    def test_n_zero_is_wedge(self):
        for name in ("case1_gamma", "case2_spec", "case3_gamma", "case4_spec"):
            c = classify_map(BY_NAME[name].f)
            pre = preimage_region(c, 0.3, 0)
            u = wedge_region(c, 0.3)
            rng = random.Random(1)
            for _ in range(300):
                z = 10 ** rng.uniform(-5, -0.3)
                w = 10 ** rng.uniform(-8, -0.3)
                assert pre.contains(z, w) == u.contains(z, w)

    def test_case1_one_step(self):
        c = classify_map(BY_NAME["case1_gamma"].f)  # delta=2, gamma=1, d=2
        pre = preimage_region(c, 0.25, 1)
        assert pre.z_bound == pytest.approx(0.5)
        assert pre.upper.exponent == F(-1, 2)
        assert pre.upper.coeff == pytest.approx(0.5)

    def test_case4_one_step_exponents(self):
        c = classify_map(BY_NAME["case4_spec"].f)
        pre = preimage_region(c, 0.3, 1)
        assert pre.upper.exponent == F(1, 2)
        assert pre.lower.exponent == F(7, 2)

    @pytest.mark.parametrize(
        "name", ["case1_unit", "case1_gamma", "case1_highd", "case2_spec",
                 "case2_dlt", "case2_d1", "case3_spec", "case3_gamma",
                 "case3_d1", "case4_spec", "case4_d1_m1"])
    def test_matches_orbit_oracle(self, name):
        c = classify_map(BY_NAME[name].f)
        r = 0.3
        for n in range(0, 9):
            reg = preimage_region(c, r, n)
            for z, w in margin_points(reg, 120, 100 + n, (-14, -0.1),
                                      (-20, 0.5)):
                assert reg.contains(z, w) == orbit_membership(c, r, n, z, w), \
                    (name, n, z, w)

    def test_monotone_absorption(self):
        # Forward invariance makes preimages nested: oracle(n) => oracle(n+1).
        for name in ("case1_unit", "case2_spec", "case3_gamma", "case4_spec"):
            c = classify_map(BY_NAME[name].f)
            rng = random.Random(7)
            for _ in range(300):
                z = 10 ** rng.uniform(-6, -0.2)
                w = 10 ** rng.uniform(-9, -0.2)
                hits = [orbit_membership(c, 0.2, n, z, w) for n in range(9)]
                first = next((i for i, h in enumerate(hits) if h), None)
                if first is not None:
                    assert all(hits[first:])


class TestBasinCatalog:
    @pytest.mark.parametrize("name,label", [
        ("case1_gamma", "i"), ("case1_highd", "ii"), ("case1_unit", "iii"),
        ("case2_spec", "iii"), ("case2_dlt", "iv"),
        ("case3_gamma", "i"), ("case3_spec", "ii"),
        ("case4_spec", "iii"),
    ])
    def test_labels(self, name, label):
        inst = BY_NAME[name]
        c = classify_map(inst.f)
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        assert desc.label == label

    def test_boundary_alternative_labels(self):
        # delta = T_{s-1} with d >= 2 selects the closed-wedge entries.
        inst = BY_NAME["boundary_d2"]
        c = classify_map(inst.f).alternatives[1]  # Case2 at (2, 2)
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        assert desc.label == "i"
        inst = BY_NAME["boundary_case4_hi"]
        c = classify_map(inst.f).alternatives[1]  # Case4 at (2, 2)
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        assert desc.label == "i"
        inst = BY_NAME["boundary_case4_lo"]
        c = classify_map(inst.f).alternatives[0]  # Case4 at (2, 2), delta=T_k
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        assert desc.label == "iv"
        inst = BY_NAME["boundary_case3_eq"]
        c = classify_map(inst.f).alternatives[0]  # Case3 with delta = d
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        assert desc.label == "iii"

    def test_d1_edge_coincidence_needs_radius(self):
        inst = BY_NAME["boundary_ex1"]
        c = classify_map(inst.f).alternatives[1]  # Case2 vertex (2, 0)... d=0
        inst2 = BY_NAME["boundary_case4_lo"]
        c2 = classify_map(inst2.f).alternatives[1]  # Case2 (4, 1), d=1
        np2 = newton_polygon(inst2.f.q)
        with pytest.raises(GuardError):
            basin_descriptor(c2, np2)
        desc = basin_descriptor(c2, np2, r=0.3)
        assert desc.label == "ii"
        assert desc.region.upper.coeff == pytest.approx(0.3)

    @pytest.mark.parametrize(
        "name", ["case1_gamma", "case1_highd", "case1_unit", "case2_spec",
                 "case2_dlt", "case3_gamma", "case3_spec", "case4_spec"])
    def test_consistent_with_orbit_oracle(self, name):
        inst = BY_NAME[name]
        c = classify_map(inst.f)
        desc = basin_descriptor(c, newton_polygon(inst.f.q))
        r = 0.25
        inside = outside = 0
        # The z margin keeps |z| away from 1, where reaching the wedge can
        # take arbitrarily many steps; points beyond |z| = 1 are sampled to
        # exercise rejection.
        for z, w in margin_points(desc.region, 250, 11, (-8, 0.5),
                                  (-10, 0.6), margin=0.01, z_margin=0.12):
            member = desc.region.contains(z, w)
            hits = any(orbit_membership(c, r, n, z, w) for n in range(25))
            if member:
                inside += 1
                assert hits, (name, z, w)
            else:
                outside += 1
                assert not hits, (name, z, w)
        assert inside > 20 and outside > 5


class TestExtensionRegion:
    def test_wedge_itself_is_valid(self):
        inst = BY_NAME["case4_spec"]
        c = classify_map(inst.f)
        r = 0.25
        v = VRegion(r1=r, r2=r ** 2, a1=c.l1, a2=c.l1 + c.l2)
        out = validate_extension_region(c, newton_polygon(inst.f.q), v, r,
                                        count=256, seed=1)
        assert out is v

    def test_full_catalog_region_valid(self):
        inst = BY_NAME["case4_spec"]  # basin (iii): {0 < |z| < 1, w != 0}
        c = classify_map(inst.f)
        v = VRegion(r1=0.9, r2=0.9, a1=NEG_INF, a2=INF)
        validate_extension_region(c, newton_polygon(inst.f.q), v, 0.25,
                                  count=256, seed=2)

    def test_violation_detected_with_witness(self):
        # Basin entry (i) is the closed wedge |w| < |z|^l1; widening the
        # upper bound past l1 leaves it.
        inst = BY_NAME["boundary_d2"]
        c = classify_map(inst.f).alternatives[1]  # Case2 at delta = T_{s-1}
        np_ = newton_polygon(inst.f.q)
        v = VRegion(r1=1.0, r2=1.0, a1=F(1, 4), a2=INF)
        with pytest.raises(InclusionViolation) as exc:
            validate_extension_region(c, np_, v, 0.2, count=512, seed=3)
        z, w = exc.value.witness
        assert not basin_descriptor(c, np_).region.contains(z, w)

    def test_parameter_ordering_enforced(self):
        inst = BY_NAME["case4_spec"]
        c = classify_map(inst.f)
        np_ = newton_polygon(inst.f.q)
        with pytest.raises(ValueError):
            validate_extension_region(
                c, np_, VRegion(r1=0.1, r2=1.0, a1=F(1), a2=F(3)), 0.25)
        with pytest.raises(ValueError):
            validate_extension_region(
                c, np_, VRegion(r1=1.0, r2=1.0, a1=F(2), a2=F(3)), 0.25)

    def test_case4_lower_edge_needs_neg_inf(self):
        # Basin (iv) at delta = T_k: {0 < |z| < 1, |z|^(l1+l2) < |w|} is
        # realised with a1 = -inf.
        inst = BY_NAME["boundary_case4_lo"]
        c = classify_map(inst.f).alternatives[0]
        np_ = newton_polygon(inst.f.q)
        v = VRegion(r1=1.0, r2=1.0, a1=NEG_INF, a2=c.l1 + c.l2)
        validate_extension_region(c, np_, v, 0.2, count=256, seed=4)


class TestAlpha0Reporting:
    def test_alpha0_negative_when_delta_lt_d(self):
        c = classify_map(BY_NAME["case2_dlt"].f)
        assert alpha0(c) == F(-2)
        desc = basin_descriptor(c, newton_polygon(BY_NAME["case2_dlt"].f.q))
        assert desc.region.upper.exponent == F(-2)
