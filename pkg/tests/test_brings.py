import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_chabauty.brings import (E_CURVE, E_RATIONAL_POINTS, KNOWN_POINTS, ProjPoint5,
                                   bounded_quadratic_search, canonical, e_equation,
                                   eprime_equation, eprime_to_e, fields_up_to,
                                   fundamental_discriminant, point, quotient_to_eprime,
                                   s3_factors, s3_filter, s3_product_constraint, s5_orbit,
                                   trace_norm_constraint, trace_on_e, verify_brings)
from padic_chabauty.errors import AtInfinity, FieldMismatch, InvalidInput, InvalidRatio
from padic_chabauty.exactfield import QuadElement

TRANSPOSITIONS = list(itertools.combinations(range(5), 2))


@pytest.fixture(scope="module")
def orbit():
    return s5_orbit(KNOWN_POINTS[0])


class TestPoints:
    def test_normalization(self):
        assert point(2, "2*s", -2, "-2*s", 0) == KNOWN_POINTS[0]
        assert point(0, 1, -1, 0, 0).coords[1] == 1

    def test_zero_vector(self):
        with pytest.raises(InvalidInput):
            point(0, 0, 0, 0, 0)

    def test_known_points(self):
        assert all(verify_brings(p) for p in KNOWN_POINTS)

    def test_non_point(self):
        assert not verify_brings(point(1, 1, -1, -1, 0))

    def test_orbit(self, orbit):
        assert len(orbit) == 30
        assert all(verify_brings(q) for q in orbit)
        assert set(KNOWN_POINTS) <= orbit

    def test_conjugates_share_an_orbit(self):
        assert s5_orbit(KNOWN_POINTS[0]) == s5_orbit(KNOWN_POINTS[1])
        assert KNOWN_POINTS[0].conj() in s5_orbit(KNOWN_POINTS[0], with_conjugation=False)

    def test_json(self):
        assert KNOWN_POINTS[0].to_json() == ["1", "s", "-1", "-s", "0"]


class TestMaps:
    def test_e_points(self):
        for P in E_RATIONAL_POINTS:
            assert E_CURVE.contains(P)
            if P is not None:
                assert e_equation(*P) == 0

    def test_eprime_to_e(self):
        # the rational points of E' that avoid 1 + 2x + 2y = 0
        for x, y in [(Fraction(0), Fraction(-1)), (Fraction(-1), Fraction(0))]:
            assert eprime_equation(x, y) == 0
            X, Y = eprime_to_e((x, y))
            assert e_equation(X, Y) == 0

    def test_quotient_lands_on_eprime(self, orbit):
        hits = 0
        for q in orbit:
            for t in TRANSPOSITIONS:
                try:
                    x, y = quotient_to_eprime(q, t)
                except AtInfinity:
                    continue
                hits += 1
                assert eprime_equation(x, y) == 0
        assert hits > 0

    def test_traces_are_rational_points_of_e(self, orbit):
        for q in orbit:
            for t in TRANSPOSITIONS:
                try:
                    S = trace_on_e(q, t)
                except AtInfinity:
                    continue
                assert S in E_RATIONAL_POINTS

    def test_bad_transposition(self):
        with pytest.raises(InvalidInput):
            quotient_to_eprime(KNOWN_POINTS[0], (1, 1))


class TestConstraints:
    def test_trace_norm_on_known_points(self):
        x = KNOWN_POINTS[0].coords
        # s and -s have the same trace and norm
        assert trace_norm_constraint(x[1], x[3])

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            trace_norm_constraint(QuadElement(0, 1, -1), QuadElement(0, 1, 5))

    def test_zero_denominator(self):
        with pytest.raises(InvalidRatio):
            s3_factors(1, 2, 0)

    def test_six_factors(self):
        assert len(s3_factors(1, 2, 3)) == 6

    def test_filter_on_orbit(self, orbit):
        assert all(s3_filter(q) for q in orbit)

    def test_rational_triple(self):
        # T(1/1) - T(1/1) = 0 forces the product to vanish
        assert s3_product_constraint(Fraction(1), Fraction(1), Fraction(2))


class TestSearch:
    def test_fields(self):
        assert fields_up_to(5) == [-3, -1, 5]
        assert fields_up_to(10) == [-7, -3, -2, -1, 2, 5]
        assert fundamental_discriminant(-1) == -4
        assert fundamental_discriminant(5) == 5

    def test_small_search(self):
        result = bounded_quadratic_search(5, 2)
        assert result.orbits == [canonical(KNOWN_POINTS[0])]
        assert result.orbit_sizes == [30]
        assert set(result.representatives) == set(KNOWN_POINTS)

    def test_stable_at_larger_bounds(self):
        small = bounded_quadratic_search(5, 2)
        large = bounded_quadratic_search(10, 3)
        assert large.orbits == small.orbits
        assert large.candidates > small.candidates

    def test_rational_only(self):
        assert bounded_quadratic_search(1, 2).orbits == []

    def test_threads_do_not_change_results(self):
        a = bounded_quadratic_search(5, 2, threads=1).to_json()
        b = bounded_quadratic_search(5, 2, threads=3).to_json()
        assert json.dumps(a) == json.dumps(b)

    def test_bad_bounds(self):
        with pytest.raises(InvalidInput):
            bounded_quadratic_search(0, 2)


perms = st.permutations(list(range(5)))


@settings(max_examples=200, deadline=None)
@given(perms, st.booleans())
def test_canonical_is_orbit_invariant(perm, conj):
    q = KNOWN_POINTS[0].permute(perm)
    if conj:
        q = q.conj()
    assert canonical(q) == canonical(KNOWN_POINTS[0])
    assert verify_brings(q)
