"""Wedge membership, sampling, residuals, dominance verification."""

from fractions import Fraction

import pytest

from bottcher import (DivisionNearZero, WedgeRegion, classify_map,
                      dominance_report, eta, find_accepted_radius, sample,
                      verify_dominance, wedge_for, zeta, INF)
from corpus import BY_NAME, verification_instances

F = Fraction


class TestContains:
    def test_case1_bidisk(self):
        u = WedgeRegion(F(0), INF, 0.5)
        assert u.contains(0.1, 0.1)
        assert not u.contains(0.6, 0.1)
        assert u.contains(0.0, 0.3)

    def test_case4_point(self):
        u = WedgeRegion(F(1), F(2), 0.5)
        assert u.contains(0.1, 0.02)

    def test_w_axis_excluded_for_finite_l2(self):
        u = WedgeRegion(F(0), F(2), 0.5)
        assert not u.contains(0.1, 0.0)

    def test_z_axis_excluded_for_positive_l1(self):
        u = WedgeRegion(F(2), INF, 0.5)
        assert not u.contains(0.0, 1e-10)

    def test_nesting(self):
        big = WedgeRegion(F(1), F(2), 0.4)
        small = WedgeRegion(F(1), F(2), 0.2)
        for z, w in sample(small, 200, 11):
            assert big.contains(z, w)


class TestSample:
    def test_empty_count(self):
        u = WedgeRegion(F(0), INF, 0.2)
        assert sample(u, 0, 1) == []

    def test_postcondition(self):
        u = WedgeRegion(F(1), F(2), 0.3)
        pts = sample(u, 500, 3)
        assert len(pts) == 500
        assert all(u.contains(z, w) for z, w in pts)

    def test_deterministic(self):
        u = WedgeRegion(F(2), INF, 0.25)
        assert sample(u, 64, 9) == sample(u, 64, 9)
        assert sample(u, 64, 9) != sample(u, 64, 10)


class TestResiduals:
    def test_monomial_map_zero(self):
        inst = BY_NAME["case1_pure"]
        c = classify_map(inst.f)
        assert eta(inst.f, c, 0.2, 0.1) == 0
        assert zeta(inst.f.p, 0.2) == 0

    def test_unit_factor(self):
        inst = BY_NAME["case1_unit"]  # q = w^2 (1 + z)
        c = classify_map(inst.f)
        assert eta(inst.f, c, 0.25, 0.1) == pytest.approx(0.25)

    def test_case4_value(self):
        inst = BY_NAME["case4_spec"]
        c = classify_map(inst.f)
        # (w^4 + z^5 w) / (z^2 w^2) at (0.1, 0.01)
        assert eta(inst.f, c, 0.1, 0.01) == pytest.approx(0.11)

    def test_zero_point_rejected(self):
        inst = BY_NAME["case4_spec"]
        c = classify_map(inst.f)
        with pytest.raises(DivisionNearZero):
            eta(inst.f, c, 0.0, 0.1)

    def test_coefficient_scaled(self):
        inst = BY_NAME["case4_coeff"]
        c = classify_map(inst.f)
        z, w = 0.1, 0.01
        expected = (inst.f.q(z, w) - c.coeff * z ** 2 * w ** 2) \
            / (c.coeff * z ** 2 * w ** 2)
        assert eta(inst.f, c, z, w) == pytest.approx(expected)


class TestDominance:
    def test_monomial_map_trivial(self):
        inst = BY_NAME["case1_pure"]
        c = classify_map(inst.f)
        for rep in verify_dominance(inst.f, c, [0.4, 0.1], 256, 0):
            assert rep.sup_eta == 0 and rep.sup_zeta == 0
            assert rep.invariant

    def test_case1_unit_sup_bounded_by_r(self):
        inst = BY_NAME["case1_unit"]  # eta = z
        c = classify_map(inst.f)
        reps = verify_dominance(inst.f, c, [0.25, 0.125], 512, 2)
        for rep in reps:
            assert rep.sup_eta <= rep.r
            assert not rep.violations
        assert reps[1].sup_eta < reps[0].sup_eta

    @pytest.mark.parametrize("inst", verification_instances(),
                             ids=lambda i: i.name)
    def test_monotone_and_invariant(self, inst):
        c = classify_map(inst.f)
        reps = verify_dominance(inst.f, c, [0.4, 0.2, 0.1, 0.05], 512, 5)
        sups = [rep.sup_eta for rep in reps]
        assert all(a >= b for a, b in zip(sups, sups[1:]))
        assert any(max(r.sup_eta, r.sup_zeta) < 0.5 and r.invariant
                   for r in reps)

    def test_accepted_radius_search(self):
        inst = BY_NAME["case2_spec"]
        c = classify_map(inst.f)
        rep = find_accepted_radius(inst.f, c, eps_target=0.1, count=512, seed=4)
        assert max(rep.sup_eta, rep.sup_zeta) < 0.1
        assert rep.invariant

    def test_relative_error_bounded_by_residual_sups(self):
        inst = BY_NAME["case4_spec"]
        c = classify_map(inst.f)
        rep = dominance_report(inst.f, c, 0.2, 512, 6)
        assert rep.sup_relative_f_error <= max(rep.sup_eta, rep.sup_zeta) + 1e-15
