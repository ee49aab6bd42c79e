import json
from fractions import Fraction

import pytest

from padic_chabauty.chabauty import (MordellWeilInput, annihilating_differential,
                                     annihilator_space, coleman_bound, disk_locus,
                                     pairing_matrix, run)
from padic_chabauty.coleman import DX_OVER_Y
from padic_chabauty.errors import BoundInapplicable, InvalidInput, NotChabautyApplicable
from padic_chabauty.hyperelliptic import X0_37, ResidueDisk, count_points

A, B = (Fraction(-1), Fraction(4)), (Fraction(1), Fraction(-4))
MW = MordellWeilInput(1, [[(1, B), (-1, A)]])

# Displayed coefficients of I(3T) on the disk (0, 1), with their precisions
SERIES_GOLDEN = {
    1: ([(1, 1), (3, 1), (4, 2), (5, 2), (6, 1), (7, 1), (8, 2), (9, 1), (10, 1)], 11),
    3: ([(2, 1), (4, 2), (5, 2), (7, 1), (8, 2), (9, 2), (10, 1)], 12),
    5: ([(6, 1), (7, 1), (8, 2), (9, 1), (10, 1), (11, 1), (13, 2), (14, 2)], 15),
    7: ([(8, 1), (9, 2), (10, 1), (11, 2), (12, 2), (13, 2), (15, 2)], 17),
    9: ([(7, 1), (8, 2), (10, 2), (11, 2), (12, 1), (14, 1), (16, 2)], 17),
}


def expand(terms):
    return sum(d * 3 ** e for e, d in terms)


@pytest.fixture(scope="module")
def report():
    return run(X0_37, 3, MW, A, 11, 12)


@pytest.fixture(scope="module")
def locus():
    return disk_locus(X0_37, 3, ResidueDisk(3, "ordinary", 0, 1), DX_OVER_Y, A, 11, 12)


class TestInputs:
    def test_generator_count(self):
        with pytest.raises(InvalidInput):
            MordellWeilInput(1, [])

    def test_degree_zero(self):
        with pytest.raises(InvalidInput):
            MordellWeilInput(1, [[(1, A)]])

    def test_negative_rank(self):
        with pytest.raises(InvalidInput):
            MordellWeilInput(-1, [])


class TestBound:
    def test_p7(self):
        assert coleman_bound(X0_37, 7) == count_points(X0_37, 7) + 2

    def test_small_prime(self):
        with pytest.raises(BoundInapplicable):
            coleman_bound(X0_37, 3)

    def test_bad_prime(self):
        with pytest.raises(BoundInapplicable):
            coleman_bound(X0_37, 37)


class TestAnnihilator:
    def test_pairing_matrix_shape(self):
        rows = pairing_matrix(X0_37, 3, MW, 11)
        assert len(rows) == 1 and len(rows[0]) == 2
        assert rows[0][0].valuation >= 9
        assert rows[0][1].valuation == 2

    def test_differential_is_dx_over_y(self):
        omega = annihilating_differential(X0_37, 3, MW, 11)
        assert omega.coefficients == (Fraction(1), Fraction(0))

    def test_rank_zero(self):
        space = annihilator_space(X0_37, 3, MordellWeilInput(0, []), 11)
        assert len(space) == 2

    def test_rank_too_large(self):
        gens = [[(1, B), (-1, A)], [(1, (Fraction(1), Fraction(4))), (-1, A)]]
        with pytest.raises(NotChabautyApplicable):
            annihilator_space(X0_37, 3, MordellWeilInput(2, gens), 11)


class TestDiskLocus:
    @pytest.mark.parametrize("k", sorted(SERIES_GOLDEN))
    def test_displayed_coefficients(self, locus, k):
        terms, prec = SERIES_GOLDEN[k]
        c = locus.series.coeffs[k]
        assert c.precision >= prec
        assert (c.lift() - expand(terms)) % 3 ** prec == 0

    def test_even_coefficients_vanish(self, locus):
        for k in (0, 2, 4, 6, 8):
            assert locus.series.coeffs[k].valuation >= 11

    def test_single_zero_at_origin(self, locus):
        assert locus.strassman == 1
        assert len(locus.points) == 1
        pt = locus.points[0]
        assert pt.T.is_zero()
        assert pt.status == "algebraic"
        assert tuple(pt.minpoly) == (-37, 0, 1)


class TestRun:
    def test_rational_points(self, report):
        assert set(report.rational_points) == {(Fraction(a), Fraction(b))
                                               for a in (1, -1) for b in (4, -4)}

    def test_algebraic_points(self, report):
        assert report.algebraic_points == [(Fraction(0), (-37, 0, 1))]

    def test_nothing_unrecognized(self, report):
        assert report.unrecognized == []
        assert not report.partial

    def test_zero_count(self, report):
        assert report.total_zeros == 6
        assert [l.strassman for l in report.loci] == [1] * 6

    def test_involutions(self, report):
        assert report.closed_under_involutions

    def test_bound_note(self, report):
        assert report.coleman_bound is None
        assert "Strassman" in report.bound_note

    def test_json_round_trip(self, report):
        data = report.to_json()
        assert json.loads(json.dumps(data)) == data
        assert data["total_zeros"] == 6

    def test_infinite_disks_are_reported(self):
        # -1 is a square mod 5, so X0(37) has two infinite disks there
        rep = run(X0_37, 5, MW, A, 6, 8)
        assert rep.partial
        assert any("UnsupportedDisk" in msg for msg in rep.errors.values())
