import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsobolev.groups import (
    FiniteAbelianGroup,
    HaarConvention,
    PhaseFunction,
    character,
    group_neg,
    group_sum,
    l_q_norm,
    lq_table_norm,
    make_group,
)


def brute_lq(values, q, mass):
    # Independent oracle: plain python accumulation of the defining sum.
    if math.isinf(q):
        return max(abs(v) for v in values)
    return sum(abs(v) ** q * mass for v in values) ** (1.0 / q)


class TestMakeGroup:
    def test_single_cyclic_factor(self):
        assert make_group([4]).total_order == 4

    def test_product_order(self):
        assert make_group([2, 3]).total_order == 6

    def test_trivial_group(self):
        g = make_group([1])
        assert g.total_order == 1
        assert list(g.points()) == [(0,)]

    def test_rejects_empty_and_nonpositive(self):
        with pytest.raises(ValueError):
            make_group([])
        with pytest.raises(ValueError):
            make_group([4, 0])
        with pytest.raises(ValueError):
            make_group([-2])

    def test_enumeration_is_lexicographic(self):
        g = make_group([2, 3])
        pts = list(g.points())
        assert pts == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        for i, p in enumerate(pts):
            assert g.index(p) == i
            assert g.point_at(i) == p


class TestCharacter:
    def test_z4_generator(self):
        g = make_group([4])
        assert character(g, (1,), (1,)) == pytest.approx(1j)

    def test_trivial_character(self):
        g = make_group([7])
        for x in g.points():
            assert character(g, (0,), x) == pytest.approx(1.0)

    def test_z2_z2_diagonal(self):
        # (-1) * (-1) by direct evaluation of the two factors.
        g = make_group([2, 2])
        assert character(g, (1, 1), (1, 1)) == pytest.approx(1.0)

    def test_out_of_range_rejected(self):
        g = make_group([4])
        with pytest.raises(ValueError):
            character(g, (4,), (0,))
        with pytest.raises(ValueError):
            character(g, (0,), (-1,))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_unit_modulus_and_homomorphism(self, data):
        orders = data.draw(st.lists(st.integers(1, 12), min_size=1, max_size=3))
        g = make_group(orders)
        draw_pt = lambda: tuple(data.draw(st.integers(0, n - 1)) for n in orders)
        xi, x, y = draw_pt(), draw_pt(), draw_pt()
        assert abs(abs(character(g, xi, x)) - 1.0) < 1e-14
        lhs = character(g, xi, group_sum(g, x, y))
        rhs = character(g, xi, x) * character(g, xi, y)
        assert lhs == pytest.approx(rhs, abs=1e-13)

    @pytest.mark.parametrize("orders", [[4], [2, 3], [8], [2, 2, 2], [8, 8], [64]])
    def test_orthogonality_exhaustive(self, orders):
        # sum_x chi_xi(x) conj(chi_eta(x)) = |G| delta_{xi,eta}, |G| <= 64.
        g = make_group(orders)
        pts = list(g.points())
        table = np.array([[character(g, xi, x) for x in pts] for xi in pts])
        gram = table @ table.conj().T
        assert np.max(np.abs(gram - g.total_order * np.eye(g.total_order))) < 1e-11


class TestGroupArithmetic:
    def test_mod_4_sum(self):
        g = make_group([4])
        assert group_sum(g, (3,), (2,)) == (1,)

    def test_neg(self):
        g = make_group([4])
        assert group_neg(g, (1,)) == (3,)

    def test_product_sum(self):
        g = make_group([2, 3])
        assert group_sum(g, (1, 2), (1, 2)) == (0, 1)

    def test_sum_with_neg_is_identity(self):
        g = make_group([5, 3])
        for x in g.points():
            assert group_sum(g, x, group_neg(g, x)) == g.identity


class TestLqNorm:
    def dual16(self):
        return make_group([4, 4]), HaarConvention(1.0, 0.25)

    def test_constant_one_total_mass(self):
        g, conv = self.dual16()
        f = PhaseFunction(g, np.ones(16), conv)
        assert l_q_norm(f, 1.0) == pytest.approx(4.0)

    def test_constant_sup(self):
        g, conv = self.dual16()
        f = PhaseFunction(g, np.ones(16), conv)
        assert l_q_norm(f, math.inf) == pytest.approx(1.0)

    def test_indicator_l2(self):
        g, conv = self.dual16()
        vals = np.zeros(16)
        vals[[1, 5, 11]] = 1.0
        f = PhaseFunction(g, vals, conv)
        assert l_q_norm(f, 2.0) == pytest.approx(brute_lq(vals, 2.0, 0.25))
        assert l_q_norm(f, 2.0) == pytest.approx(math.sqrt(3 * 0.25))

    def test_matches_brute_force(self):
        g, conv = self.dual16()
        rng = np.random.default_rng(3)
        vals = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        f = PhaseFunction(g, vals, conv)
        for q in (0.5, 1.0, 1.7, 2.0, 4.0, math.inf):
            assert l_q_norm(f, q) == pytest.approx(brute_lq(vals, q, 0.25), rel=1e-13)

    def test_rejects_bad_exponent(self):
        g, conv = self.dual16()
        f = PhaseFunction(g, np.ones(16), conv)
        with pytest.raises(ValueError):
            l_q_norm(f, 0.0)
        with pytest.raises(ValueError):
            l_q_norm(f, -1.0)

    def test_zero_function(self):
        g, conv = self.dual16()
        f = PhaseFunction.zero(g, conv)
        assert l_q_norm(f, 2.0) == 0.0
        assert l_q_norm(f, math.inf) == 0.0

    def test_pointwise_monotone(self):
        g, conv = self.dual16()
        rng = np.random.default_rng(11)
        small = np.abs(rng.standard_normal(16))
        big = small + np.abs(rng.standard_normal(16))
        for q in (0.7, 1.0, 2.0, 5.0, math.inf):
            assert lq_table_norm(small, q, 0.25) <= lq_table_norm(big, q, 0.25) + 1e-15

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False), min_size=16, max_size=16),
        st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False), min_size=16, max_size=16),
        st.floats(1.0, 20.0),
    )
    def test_triangle_inequality(self, u, v, q):
        g, conv = self.dual16()
        fu = PhaseFunction(g, np.array(u), conv)
        fv = PhaseFunction(g, np.array(v), conv)
        fsum = PhaseFunction(g, fu.values + fv.values, conv)
        lhs = l_q_norm(fsum, q)
        rhs = l_q_norm(fu, q) + l_q_norm(fv, q)
        assert lhs <= rhs * (1.0 + 1e-12) + 1e-12

    def test_holder_on_dual(self):
        # ||fg||_sigma <= ||f||_alpha ||g||_q with 1/sigma = 1/alpha + 1/q.
        g, conv = self.dual16()
        rng = np.random.default_rng(23)
        for trial in range(200):
            f = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            h = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            alpha = float(rng.uniform(1.0, 8.0))
            q = float(rng.uniform(1.0, 8.0))
            sigma = alpha * q / (alpha + q)
            lhs = lq_table_norm(f * h, sigma, 0.25)
            rhs = lq_table_norm(f, alpha, 0.25) * lq_table_norm(h, q, 0.25)
            assert lhs <= rhs * (1.0 + 1e-12)


class TestPhaseFunction:
    def test_shape_validation(self):
        g = make_group([4, 4])
        with pytest.raises(ValueError):
            PhaseFunction(g, np.ones(5), HaarConvention.counting())

    def test_finiteness_validation(self):
        g = make_group([2])
        with pytest.raises(ValueError):
            PhaseFunction(g, np.array([1.0, np.nan]), HaarConvention.counting())

    def test_delta_and_value_at(self):
        g = make_group([4, 4])
        f = PhaseFunction.delta(g, (1, 2), HaarConvention.counting(), amplitude=2j)
        assert f.value_at((1, 2)) == 2j
        assert f.value_at((0, 0)) == 0

    def test_haar_positivity(self):
        with pytest.raises(ValueError):
            HaarConvention(0.0, 1.0)
        with pytest.raises(ValueError):
            HaarConvention(1.0, -0.5)
