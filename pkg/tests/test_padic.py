from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from padic_chabauty.errors import (DivisionByZero, InvalidPrime, NoSquareRoot, NotAUnit,
                                   PrecisionExhausted, PrimeMismatch)
from padic_chabauty.padic import (PadicNumber, from_rational, hensel_sqrt,
                                  rational_reconstruction, teichmuller, valuation)

PRIMES = st.sampled_from([3, 5, 7, 11])
nonzero_rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: q != 0)


def pad(q, p=3, N=10):
    return PadicNumber.from_rational(q, p, N)


class TestConstruction:
    def test_37_digits(self):
        assert from_rational(37, 1, 3, 4).digits() == [1, 0, 1, 1]

    def test_minus_half_is_geometric(self):
        assert from_rational(-1, 2, 3, 5).digits() == [1, 1, 1, 1, 1]

    def test_nine(self):
        x = from_rational(9, 1, 3, 6)
        assert (x.valuation, x.unit) == (2, 1)

    def test_negative_valuation(self):
        x = from_rational(1, 9, 3, 4)
        assert x.valuation == -2 and x.unit == 1

    def test_collapses_to_zero(self):
        x = from_rational(27, 1, 3, 3)
        assert x.is_zero() and x.precision == 3

    @pytest.mark.parametrize("p", [2, 4, 1, 0, -3, 9])
    def test_rejects_bad_primes(self, p):
        with pytest.raises(InvalidPrime):
            from_rational(1, 1, p, 5)

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZero):
            from_rational(1, 0, 3, 5)

    def test_display(self):
        assert str(from_rational(37, 1, 3, 5)) == "1 + 3^2 + 3^3 + O(3^5)"
        assert str(PadicNumber.zero(3, 9)) == "O(3^9)"


class TestArithmetic:
    def test_add_takes_minimum_precision(self):
        a = PadicNumber(3, 0, 1, 5)
        b = PadicNumber(3, 0, 2, 3)
        s = a + b
        assert s.valuation == 1 and s.precision == 3

    def test_mul_rule(self):
        a = PadicNumber(3, 1, 1, 4)
        c = a * a
        assert c.lift() == 9 and c.precision == 5

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            pad(1) / PadicNumber.zero(3, 5)

    def test_prime_mismatch(self):
        with pytest.raises(PrimeMismatch):
            pad(1, 3) + pad(1, 5)

    def test_with_precision_never_raises(self):
        with pytest.raises(PrecisionExhausted):
            pad(1, 3, 5).with_precision(6)

    def test_zero_products_stay_bounded(self):
        z = PadicNumber.zero(3, 10)
        for _ in range(50):
            z = z * 0
        assert z.precision < 100

    @given(st.integers(1, 10 ** 9).filter(lambda n: n % 3), PRIMES)
    def test_inverse(self, n, p):
        assume(n % p)
        x = pad(n, p, 12)
        assert (x * x.inverse() - 1).is_zero()


class TestHenselSqrt:
    def test_sqrt37(self):
        r = hensel_sqrt(pad(37, 3, 10), branch=1)
        assert str(r) == "1 + 2*3^2 + 3^4 + 2*3^5 + 3^7 + 2*3^8 + 2*3^9 + O(3^10)"

    def test_sqrt4(self):
        r = hensel_sqrt(pad(4, 3, 10), branch=2)
        assert r.digits() == [2] + [0] * 9

    def test_nonresidue(self):
        with pytest.raises(NoSquareRoot):
            hensel_sqrt(pad(-1, 3, 10))

    def test_odd_valuation(self):
        with pytest.raises(NoSquareRoot):
            hensel_sqrt(pad(3, 3, 10))


class TestTeichmuller:
    def test_one(self):
        assert teichmuller(pad(4, 3, 8)) == 1

    def test_minus_one(self):
        t = teichmuller(pad(2, 3, 8))
        assert t.digits() == [2] * 8

    def test_order_six_mod_7(self):
        t = teichmuller(pad(3, 7, 4))
        assert t.residue() == 3
        assert (t ** 6 - 1).is_zero() and t.precision == 4

    def test_nonunit(self):
        with pytest.raises(NotAUnit):
            teichmuller(pad(3, 3, 5))

    @settings(max_examples=200)
    @given(st.integers(1, 10 ** 6), PRIMES, st.integers(2, 15))
    def test_root_of_unity(self, n, p, N):
        assume(n % p)
        t = teichmuller(pad(n, p, N))
        assert (t ** (p - 1) - 1).is_zero() and t.residue() == n % p


def test_rational_reconstruction_round_trip():
    for q in (Fraction(-1, 4), Fraction(37), Fraction(-11, 7), Fraction(0)):
        assert rational_reconstruction(pad(q, 3, 30)) == q


# -- properties ---------------------------------------------------------------

OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


@settings(max_examples=1000, deadline=None)
@given(nonzero_rationals, nonzero_rationals, PRIMES, st.integers(8, 20), st.integers(1, 10),
       st.sampled_from(sorted(OPS)))
def test_precision_coherence(a, b, p, N, extra, op):
    """Lower-precision results agree with higher-precision ones and with the exact value,
    and never claim more precision than the propagation rules allow."""
    f = OPS[op]
    va, vb = valuation(a, p), valuation(b, p)
    if op == "div" and vb >= N:
        # b is O(p^N): indistinguishable from zero, so division must refuse
        with pytest.raises(DivisionByZero):
            f(pad(a, p, N), pad(b, p, N))
        return
    low = f(pad(a, p, N), pad(b, p, N))
    high = f(pad(a, p, N + extra), pad(b, p, N + extra))
    exact = f(a, b)
    assert (low - high).is_zero()
    if exact != 0:
        assert (low - pad(exact, p, N + extra + 40)).is_zero()
    bound = {
        "add": N, "sub": N,
        "mul": min(N + vb, N + va),
        "div": min(N - vb, N + va - 2 * vb),
    }[op]
    assert low.precision <= bound


@settings(max_examples=1000, deadline=None)
@given(st.fractions(max_denominator=10 ** 5).filter(lambda q: q != 0), PRIMES, st.integers(8, 24))
def test_hensel_sqrt_squares_back(r, p, N):
    a = pad(r * r, p, N)
    root = hensel_sqrt(a)
    assert (root * root - a).is_zero()
    assert root.precision - root.valuation == a.precision - a.valuation


@settings(max_examples=300, deadline=None)
@given(nonzero_rationals, nonzero_rationals, PRIMES)
def test_from_rational_is_a_ring_homomorphism(a, b, p):
    N = 20
    assert pad(a, p, N) + pad(b, p, N) == pad(a + b, p, N)
    assert pad(a, p, N) * pad(b, p, N) == pad(a * b, p, N + 40)
