"""Polynomial core: evaluation, canonical form, germ checks, exponent
substitution."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bottcher import (BiPoly, InputError, NonIntegralExponent, SkewProduct,
                      UniPoly, bi_poly, substitute_exponents, uni_poly)

F = Fraction


class TestEvaluate:
    def test_p_fixed_point(self):
        assert uni_poly([(2, 1)])(0) == 0

    def test_p_direct(self):
        assert uni_poly([(2, 1), (3, 1)])(0.5) == pytest.approx(0.375)

    def test_p_complex(self):
        assert uni_poly([(3, 1)])(1j) == pytest.approx(-1j)

    def test_q_fixed_point(self):
        assert bi_poly([(1, 1, 1), (2, 0, 1)])(0, 0) == 0

    def test_q_direct(self):
        assert bi_poly([(1, 1, 1), (2, 0, 1)])(1, 1) == pytest.approx(2)

    def test_q_three_terms(self):
        # w^4 + z^2 w^2 + z^5 w at (1, 2): 16 + 4 + 2
        q = bi_poly([(0, 4, 1), (2, 2, 1), (5, 1, 1)])
        assert q(1, 2) == pytest.approx(22)


class TestCanonicalForm:
    def test_zero_coefficients_dropped(self):
        q = bi_poly([(1, 1, 1), (2, 2, 0.0)])
        assert q.support == ((1, 1),)

    def test_duplicate_terms_sum(self):
        q = bi_poly([(1, 1, 1), (1, 1, 2)])
        assert q.coeffs[(1, 1)] == 3

    def test_cancel_to_zero_rejected(self):
        with pytest.raises(InputError):
            bi_poly([(1, 1, 1), (1, 1, -1)])

    def test_equality_is_support_and_coeffs(self):
        assert bi_poly([(1, 1, 1), (2, 0, 1)]) == bi_poly([(2, 0, 1), (1, 1, 1)])
        assert bi_poly([(1, 1, 1)]) != bi_poly([(1, 1, 2)])

    def test_nonfinite_coefficient_rejected(self):
        with pytest.raises(InputError):
            uni_poly([(2, float("nan"))])


class TestGermForm:
    def test_p_needs_order_two(self):
        with pytest.raises(InputError):
            uni_poly([(1, 1), (2, 1)])

    def test_delta_and_leading(self):
        p = uni_poly([(5, 2), (3, 4)])
        assert p.delta == 3 and p.leading == 4

    def test_linear_z_term_allowed(self):
        SkewProduct(uni_poly([(2, 1)]), bi_poly([(1, 0, 1), (0, 2, 1)]))

    def test_linear_w_term_rejected(self):
        with pytest.raises(InputError):
            SkewProduct(uni_poly([(2, 1)]), bi_poly([(0, 1, 1), (0, 2, 1)]))


class TestSubstituteExponents:
    def test_identity(self):
        q = bi_poly([(1, 1, 1), (2, 0, 1)])
        assert substitute_exponents(q, lambda i, j: (i, j)) == q

    def test_shear_case2(self):
        # (i, j) -> (i + 3j - 9, j) on z w^3 + z^4 w^2
        q = bi_poly([(1, 3, 1), (4, 2, 2)])
        out = substitute_exponents(q, lambda i, j: (i + 3 * j - 9, j))
        assert out == bi_poly([(1, 3, 1), (1, 2, 2)])

    def test_fractional_image_rejected(self):
        q = bi_poly([(1, 1, 1), (2, 0, 1)])
        with pytest.raises(NonIntegralExponent):
            substitute_exponents(
                q, lambda i, j: (i + F(1, 2) * j - F(1, 2) * 2, j))

    def test_negative_image_rejected(self):
        q = bi_poly([(1, 1, 1)])
        with pytest.raises(ValueError):
            substitute_exponents(q, lambda i, j: (i - 5, j))

    @given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)),
                    min_size=1, max_size=6, unique=True))
    def test_identity_preserves_evaluation(self, support):
        try:
            q = BiPoly({k: 1.0 for k in support})
        except InputError:
            return
        out = substitute_exponents(q, lambda i, j: (i, j))
        for z, w in [(0.3, 0.7), (0.5 + 0.1j, -0.2), (1.0, 1.0)]:
            assert out(z, w) == pytest.approx(q(z, w))

    def test_support_image_exact(self):
        q = bi_poly([(0, 4, 1), (2, 2, 1), (5, 1, 1)])
        out = substitute_exponents(q, lambda i, j: (2 * i, 3 * j))
        assert set(out.support) == {(2 * i, 3 * j) for i, j in q.support}
