from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_chabauty.errors import CompositionDomain, PrecisionExhausted
from padic_chabauty.padic import PadicNumber
from padic_chabauty.series import (INTEGRAL_TAIL, Tail, TruncatedSeries, find_zeros,
                                   formal_integrate, isolate_zeros, strassman_count,
                                   substitute_pT)


def S(values, p=3, N=20, tail=None):
    if tail is None:
        return TruncatedSeries.from_values(values, p, N)
    return TruncatedSeries.from_values(values, p, N, tail)


def lifts(f):
    out = [c.lift() for c in f.coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


class TestRing:
    def test_compose_t_with_t_squared(self):
        assert lifts(S([0, 1]).compose(S([0, 0, 1]))) == [0, 0, 1]

    def test_times_one(self):
        f = S([1, 2, 3, 4])
        assert lifts(f * S([1])) == lifts(f)

    def test_geometric(self):
        M = 8
        geo = S([1] * M, tail=INTEGRAL_TAIL)
        prod = S([1, -1]) * geo
        assert [c.lift() for c in prod.coeffs[:M]] == [1] + [0] * (M - 1)

    def test_compose_needs_zero_constant(self):
        with pytest.raises(CompositionDomain):
            S([0, 1]).compose(S([1, 1]))

    def test_inverse_of_one_minus_t(self):
        f = TruncatedSeries.from_values([1, -1, 0, 0, 0, 0], 3, 20, INTEGRAL_TAIL)
        assert lifts(f.inverse()) == [1] * 6


class TestIntegration:
    def test_one_integrates_to_t(self):
        assert lifts(formal_integrate(S([1]))) == [0, 1]

    def test_precision_drops_at_multiples_of_p(self):
        F = S([0, 0, 1], N=10).formal_integrate()
        c = F.coeffs[3]
        assert c.valuation == -1 and c.precision == 9

    @given(st.lists(st.integers(-100, 100), min_size=1, max_size=10))
    def test_derivative_undoes_integration(self, vals):
        f = S(vals, N=30)
        g = f.formal_integrate().derivative()
        assert all((a - b).is_zero() for a, b in zip(f.coeffs, g.coeffs))


class TestSubstitution:
    def test_t_becomes_3T(self):
        assert lifts(substitute_pT(S([0, 1]))) == [0, 3]

    def test_constant_unchanged(self):
        assert lifts(S([5]).substitute_pT()) == [5]

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=6),
           st.lists(st.integers(-50, 50), min_size=1, max_size=6))
    def test_commutes_with_products(self, a, b):
        f, g = S(a, N=30), S(b, N=30)
        lhs = (f * g).substitute_pT()
        rhs = f.substitute_pT() * g.substitute_pT()
        assert all((x - y).is_zero() for x, y in zip(lhs.coeffs, rhs.coeffs))


class TestStrassman:
    def test_one_plus_t(self):
        assert strassman_count(S([1, 1])) == 1

    def test_three_plus_t_squared(self):
        assert strassman_count(S([3, 0, 1])) == 2

    def test_unknown_tail(self):
        f = TruncatedSeries.from_values([1, 1], 3, 10, None)
        with pytest.raises(PrecisionExhausted):
            f.strassman_count()

    def test_tail_too_large(self):
        # coefficients of valuation 0 could still appear beyond the truncation
        f = S([3, 3], tail=INTEGRAL_TAIL)
        with pytest.raises(PrecisionExhausted):
            f.strassman_count()

    def test_convergent_tail(self):
        f = S([1, 3, 9], tail=Tail(1, 0, 0))
        assert f.strassman_count() == 0


class TestZeros:
    def test_t_times_t_minus_one(self):
        zs = sorted(z.lift() for z in isolate_zeros(S([0, -1, 1])))
        assert zs == [0, 1]

    def test_cubic(self):
        zs = sorted(z.symmetric_lift() for z in isolate_zeros(S([0, -1, 0, 1])))
        assert zs == [-1, 0, 1]

    def test_zeros_are_zeros(self):
        f = S([6, -5, 1], p=5)  # (t - 2)(t - 3)
        for z in isolate_zeros(f):
            assert f.evaluate(z).is_zero()

    def test_double_zero_is_a_cluster(self):
        f = S([1, -2, 1], N=8)  # (t - 1)^2
        zs = find_zeros(f)
        assert not zs.zeros and zs.clusters

    def test_zero_deep_in_a_residue_class(self):
        f = S([-10, 1], N=12)  # t = 10
        (z,) = isolate_zeros(f)
        assert z.lift() == 10


poly_coeffs = st.lists(st.integers(-3 ** 6, 3 ** 6), min_size=1, max_size=5).filter(
    lambda c: any(c))


@settings(max_examples=1000, deadline=None)
@given(poly_coeffs, poly_coeffs, st.sampled_from([3, 5, 7]))
def test_strassman_multiplicative(a, b, p):
    f, g = S(a, p=p, N=40), S(b, p=p, N=40)
    assert strassman_count(f * g) == strassman_count(f) + strassman_count(g)
