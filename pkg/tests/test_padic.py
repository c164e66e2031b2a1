import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_lambda.errors import NotPrime, OutOfDomain, PadicZeroDivision, PrecisionExhausted
from padic_lambda.padic import (NormValue, PAdicBall, PAdicNumber, exp_p, in_Ep, in_Zp,
                                in_unit_sphere, is_prime, parse_literal, parse_rational,
                                valuation_rational)

PRIMES = [2, 3, 5, 7, 13]


def rationals(max_value=10 ** 6):
    nums = st.integers(-max_value, max_value).filter(bool)
    dens = st.integers(1, max_value)
    return st.builds(Fraction, nums, dens)


# -- oracle values -----------------------------------------------------------------

def test_norm_of_three_quarters_at_two():
    n = parse_literal("3/4", 2).norm()
    assert n.exponent == -2
    assert n.as_fraction() == 4


def test_digits_of_one_third_in_Q5():
    # 1/3 = 2 + 3*5 + 1*5^2 + 3*5^3 + 1*5^4 + ...
    x = PAdicNumber.from_rational(Fraction(1, 3), 5)
    assert x.digits[:7] == [2, 3, 1, 3, 1, 3, 1]


def test_minus_one_is_all_top_digits():
    x = PAdicNumber.from_rational(-1, 7, precision=10)
    assert x.digits == [6] * 10


def test_valuation_of_rationals():
    assert valuation_rational(Fraction(50, 3), 5) == 2
    assert valuation_rational(Fraction(3, 125), 5) == -3
    assert PAdicNumber.from_rational(Fraction(1, 5), 5).norm() == 5


def test_literal_rendering():
    assert PAdicNumber.from_rational(Fraction(3, 4), 2).literal(3) == "2^-2*(1+1*2+...)"
    assert PAdicNumber.zero(5).literal() == "0"


def test_zero_and_nonprime_errors():
    with pytest.raises(NotPrime):
        parse_rational(1, 2, 4)
    with pytest.raises(PadicZeroDivision):
        parse_rational(1, 0, 5)
    with pytest.raises(ZeroDivisionError):
        PAdicNumber.from_rational(3, 5) / PAdicNumber.zero(5)


def test_full_cancellation_raises():
    x = PAdicNumber.from_rational(Fraction(2, 7), 5)
    with pytest.raises(PrecisionExhausted):
        x - x


def test_partial_cancellation_loses_precision():
    x = PAdicNumber.from_rational(1, 5, precision=20)
    y = PAdicNumber.from_rational(1 + 5 ** 3, 5, precision=20)
    d = y - x
    assert d.valuation == 3
    assert d.absolute_precision == 20


def test_fuzzy_equality_at_precision():
    x = PAdicNumber.from_rational(1, 3, precision=10)
    assert x == 1 + 3 ** 12
    assert x != 1 + 3 ** 9


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_region_predicates():
    p = 5
    assert in_Zp(PAdicNumber.from_rational(Fraction(10, 3), p))
    assert not in_Zp(PAdicNumber.from_rational(Fraction(1, 5), p))
    assert in_unit_sphere(PAdicNumber.from_rational(7, p))
    assert in_Ep(PAdicNumber.from_rational(6, p))
    assert not in_Ep(PAdicNumber.from_rational(2, p))
    # at p = 2 the domain is 1 + 4 Z_2
    assert in_Ep(PAdicNumber.from_rational(5, 2))
    assert not in_Ep(PAdicNumber.from_rational(3, 2))


def test_exp_of_p_matches_series_at_low_precision():
    # exp(5) mod 5^4 from sum 5^n/n! with enough terms, computed exactly
    x = PAdicNumber.from_rational(5, 5, precision=4)
    exact = sum(Fraction(5) ** n / math.factorial(n) for n in range(40))
    assert exp_p(x) == PAdicNumber.from_rational(exact, 5, precision=4)


def test_exp_out_of_domain():
    with pytest.raises(OutOfDomain):
        exp_p(PAdicNumber.from_rational(3, 5))
    with pytest.raises(OutOfDomain):
        exp_p(PAdicNumber.from_rational(2, 2))


def test_ball_membership_open_and_closed():
    c = PAdicNumber.from_rational(1, 5)
    open_ball = PAdicBall(c, -1)  # |x - 1| < 1/5
    closed_ball = PAdicBall(c, -1, closed=True)  # |x - 1| <= 1/5
    assert 1 + 25 in open_ball
    assert 1 + 5 not in open_ball
    assert 1 + 5 in closed_ball
    assert 2 not in closed_ball
    assert open_ball.min_valuation == 2 and closed_ball.min_valuation == 1


def test_norm_value_ordering_and_serialisation():
    assert NormValue(5, 1) < NormValue(5, 0) < NormValue(5, -1)
    assert NormValue(5, None) < NormValue(5, 10)
    assert NormValue(3, -2).to_dict() == {"exponent": -2, "value": "9"}


# -- properties ----------------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), rationals(), rationals())
def test_strong_triangle_inequality(p, a, b):
    x, y = PAdicNumber.from_rational(a, p), PAdicNumber.from_rational(b, p)
    if a + b == 0:
        return
    s = PAdicNumber.from_rational(a + b, p)
    assert s.norm() <= max(x.norm(), y.norm())
    if x.norm() != y.norm():
        assert s.norm() == max(x.norm(), y.norm())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), rationals(), rationals())
def test_norm_is_multiplicative(p, a, b):
    x, y = PAdicNumber.from_rational(a, p), PAdicNumber.from_rational(b, p)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y) == PAdicNumber.from_rational(a * b, p)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), rationals(), rationals())
def test_arithmetic_agrees_with_rationals(p, a, b):
    x, y = PAdicNumber.from_rational(a, p), PAdicNumber.from_rational(b, p)
    assert x / y == PAdicNumber.from_rational(a / b, p)
    if a != b:
        assert x - y == PAdicNumber.from_rational(a - b, p)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), rationals())
def test_serialisation_round_trip(p, a):
    x = PAdicNumber.from_rational(a, p)
    y = PAdicNumber.from_dict(x.to_dict())
    assert (y.valuation, y.unit, y.precision) == (x.valuation, x.unit, x.precision)
    assert parse_literal(str(a), p) == x


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PRIMES), rationals(), st.integers(-4, 4), st.integers(0, 4))
def test_ball_nesting(p, a, e, shrink):
    big = PAdicBall(PAdicNumber.from_rational(a, p), e)
    inner_center = PAdicNumber.from_rational(a + Fraction(p) ** (-e + 1 + shrink), p)
    small = PAdicBall(inner_center, e - shrink)
    assert big.contains_ball(small)
    assert inner_center in big


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), rationals(10 ** 4).filter(lambda q: q != 0), st.integers(1, 3))
def test_exp_identities(p, a, shift):
    unit = a / Fraction(p) ** valuation_rational(a, p)
    x = PAdicNumber.from_rational(unit * p ** shift, p)
    e = exp_p(x)
    assert e.norm() == 1
    assert (e - 1).norm() == x.norm()
