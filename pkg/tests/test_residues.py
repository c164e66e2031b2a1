from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from padic_lambda.errors import BadParameter, NotARoot, NotPrime, NotSimpleRoot
from padic_lambda.padic import PAdicNumber
from padic_lambda.residues import (Polynomial, exists_kth_root_minus_one_Fp,
                                   exists_kth_root_minus_one_Qp, hensel_lift, is_square_Qp,
                                   kth_roots_of_minus_one_mod_p, newton_polygon,
                                   newton_window, poly_roots_Qp)


def test_square_roots_of_minus_one_mod_5():
    r = kth_roots_of_minus_one_mod_p(5, 2)
    assert r.roots_mod_p == [2, 3]
    assert r.sol_set == [2, 3]
    assert r.kappa_p == 2 and r.n_kp == 2
    assert r.exists_in_Fp and r.exists_in_Qp


def test_no_square_root_of_minus_one_mod_7():
    r = kth_roots_of_minus_one_mod_p(7, 2)
    assert r.roots_mod_p == [] and r.n_kp is None and not r.exists_in_Fp


def test_odd_k_always_has_minus_one():
    r = kth_roots_of_minus_one_mod_p(7, 3)
    assert r.roots_mod_p == [3, 5, 6]
    assert r.sol_set == [3, 5]
    assert r.kappa_p == r.n_kp - 1


def test_k_divisible_by_p():
    # x^5 = -1 in Q_5 has the root -1 itself
    assert exists_kth_root_minus_one_Qp(5, 5)
    # x^6 = -1 needs a square root of -1; none in F_3
    assert not exists_kth_root_minus_one_Qp(3, 6)


def test_residue_guards():
    with pytest.raises(NotPrime):
        kth_roots_of_minus_one_mod_p(9, 2)
    with pytest.raises(BadParameter):
        kth_roots_of_minus_one_mod_p(5, 0)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 101])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 6])
def test_counting_formula_for_odd_primes(p, k):
    r = kth_roots_of_minus_one_mod_p(p, k)
    d = gcd(k, p - 1)
    assert len(r.roots_mod_p) == (d if (p - 1) // d % 2 == 0 else 0)
    assert r.exists_in_Fp == exists_kth_root_minus_one_Fp(p, k)


def test_squares_in_Qp():
    assert is_square_Qp(-1, 5)
    assert not is_square_Qp(-1, 7)
    assert is_square_Qp(-25, 5)
    assert not is_square_Qp(5, 5)
    assert is_square_Qp(17, 2) and not is_square_Qp(3, 2) and not is_square_Qp(5, 2)
    assert is_square_Qp(Fraction(9, 4), 3)


def test_hensel_lift_square_root_of_minus_one():
    x = hensel_lift(Polynomial([1, 0, 1]), 2, 5, 30)
    assert x.residue() == 2
    assert x * x == PAdicNumber.from_rational(-1, 5, 30)
    # 2 + 1*5 + 2*5^2 + 1*5^3 + ... is the standard expansion
    assert x.digits[:4] == [2, 1, 2, 1]


def test_hensel_errors():
    with pytest.raises(NotARoot):
        hensel_lift(Polynomial([1, 0, 1]), 1, 5, 10)
    with pytest.raises(NotSimpleRoot):
        hensel_lift(Polynomial([1, -2, 1]), 1, 5, 10)


def test_newton_polygon_slopes():
    # x^2 - 5: two roots of valuation 1/2
    assert newton_polygon(Polynomial([-5, 0, 1]), 5) == [(Fraction(1, 2), 2)]
    # (x - 5)(x - 1/25) has root valuations 1 and -2
    poly = Polynomial([-5, 1]) * Polynomial([Fraction(-1, 25), 1])
    assert sorted(newton_polygon(poly, 5)) == [(Fraction(-2), 1), (Fraction(1), 1)]
    assert newton_window(poly, 5) == [-2, 1]


def test_poly_roots_of_product():
    poly = Polynomial([-1, 1]) * Polynomial([-10, 1]) * Polynomial([Fraction(-3, 25), 1])
    found = poly_roots_Qp(poly, 5)
    assert len(found) == 3 and not found.inconclusive
    assert [r.valuation for r in found] == [-2, 0, 1]
    assert found[0] == Fraction(3, 25) and found[1] == 1 and found[2] == 10


def test_poly_roots_zero_root_and_window():
    poly = Polynomial([0, -1, 0, 1])  # x^3 - x
    found = poly_roots_Qp(poly, 7)
    assert len(found) == 3
    assert found[0].is_zero
    assert len(poly_roots_Qp(poly, 7, valuation_window=[1])) == 1


def test_poly_roots_separates_close_roots():
    # roots 1 and 1 + 5^3 share residues up to the third digit
    poly = Polynomial([-1, 1]) * Polynomial([-(1 + 125), 1])
    found = poly_roots_Qp(poly, 5)
    assert len(found) == 2
    assert found[0].distance_valuation(found[1]) == 3


def test_double_root_is_inconclusive():
    found = poly_roots_Qp(Polynomial([1, -2, 1]), 5, precision=8)
    assert len(found) == 0
    assert found.inconclusive and found.inconclusive[0].approximation % 5 == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]),
       st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30),
                min_size=1, max_size=4, unique=True))
def test_roots_of_split_polynomials_are_found(p, roots):
    poly = Polynomial([1])
    for r in roots:
        poly = poly * Polynomial([-r, 1])
    found = poly_roots_Qp(poly, p, precision=40)
    if found.inconclusive:
        return  # roots too close to separate inside the budget
    assert len(found) == len(roots)
    for r in roots:
        assert any(x == PAdicNumber.from_rational(r, p, 40) for x in found)
