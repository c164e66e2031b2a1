import warnings
from fractions import Fraction

import pytest

from padic_lambda.dynamics import (FixedPointClass, Termination, classify_fixed_point,
                                   composition_polynomials, derivative_at, evaluate,
                                   exact_period, fixed_point_polynomial, fixed_points,
                                   iterate_map, iterate_orbit, make_Ep_regime_g,
                                   make_ising_potts, make_lambda_TI, make_small_rho_f,
                                   periodic_points, points_of_period_dividing)
from padic_lambda.errors import BadParameter, NotFixed, PoleHit, RegimeWarning
from padic_lambda.padic import PAdicNumber, valuation_rational
from padic_lambda.residues import Polynomial

A, R, N = FixedPointClass.ATTRACTIVE, FixedPointClass.REPELLING, FixedPointClass.NEUTRAL


def test_ising_map_values():
    f = make_ising_potts(5, 2, 2, 1)  # theta = 4
    # f(0) = (1/theta)^2, f(1) = 1
    assert evaluate(f, 0) == Fraction(1, 16)
    assert evaluate(f, 1) == 1
    assert evaluate(f, Fraction(1, 2)) == ((4 * Fraction(1, 2) + 1) / (Fraction(1, 2) + 4)) ** 2


def test_derivative_formula():
    f = make_ising_potts(7, 3, 2, 1)
    x = Fraction(2)
    th = Fraction(4)
    expected = 3 * ((th * x + 1) / (x + th)) ** 2 * (th * th - 1) / (x + th) ** 2
    assert derivative_at(f, x) == expected


def test_pole_is_reported():
    f = make_ising_potts(5, 2, 2, 1)
    with pytest.raises(PoleHit):
        evaluate(f, -4)


def test_degenerate_rho_rejected():
    with pytest.raises(BadParameter):
        make_ising_potts(5, 2, 1, 1)
    with pytest.raises(BadParameter):
        make_ising_potts(5, 2, 0, 1)


def test_fixed_point_polynomial_of_ising():
    f = make_ising_potts(5, 2, Fraction(1, 5), 1)
    poly = fixed_point_polynomial(f)
    th = Fraction(1, 25)
    expected = Polynomial([1, th]) ** 2 - Polynomial([0, 1]) * Polynomial([th, 1]) ** 2
    assert poly == expected


def test_point_one_is_attractive_for_rho_in_Ep():
    search = fixed_points(make_ising_potts(7, 2, 6, 1))
    assert len(search) == 1
    assert search[0].point == 1 and search[0].classification is A
    assert search[0].in_Ep


def test_repelling_pair_near_minus_one():
    search = fixed_points(make_ising_potts(5, 2, 6, 1))
    classes = sorted(r.classification.value for r in search)
    assert classes == ["attractive", "repelling", "repelling"]
    for r in search:
        if r.classification is R:
            assert r.point.distance_valuation(-1) == 1


def test_large_theta_fixed_point_valuations():
    # (5, 2, 1/5, 1): -(x - 1)(625 x^2 + 674 x + 625)/625
    search = fixed_points(make_ising_potts(5, 2, Fraction(1, 5), 1))
    assert sorted(r.valuation for r in search) == [-4, 0, 4]
    assert search.window == [-4, 0, 4]
    for r in search:
        assert evaluate(make_ising_potts(5, 2, Fraction(1, 5), 1), r.point) == r.point


def test_regime_and_newton_windows_agree_for_large_theta():
    f = make_ising_potts(5, 3, Fraction(1, 5), 1)
    a = [r.point for r in fixed_points(f)]
    b = [r.point for r in fixed_points(f, None)]
    assert len(a) == len(b) == 4
    assert all(any(x == y for y in b) for x in a)


def test_not_fixed():
    with pytest.raises(NotFixed):
        classify_fixed_point(make_ising_potts(5, 2, 6, 1), 2)


def test_orbit_converges_to_attracting_point():
    f = make_ising_potts(5, 2, 6, 1)
    trace = iterate_orbit(f, 3, max_steps=200, stop_tolerance_exponent=30, target=1)
    assert trace.reason is Termination.CONVERGED
    assert trace.iterates[-1].distance_valuation(1) >= 30


def test_orbit_budget_and_pole():
    f = make_ising_potts(5, 2, 6, 1)
    assert iterate_orbit(f, 3, max_steps=4).reason is Termination.BUDGET
    assert len(iterate_orbit(f, 3, max_steps=4).iterates) == 5
    assert iterate_orbit(f, -36, max_steps=4).reason is Termination.POLE


def test_composition_matches_iteration():
    f = make_ising_potts(7, 2, 2, 1)
    A2, B2 = composition_polynomials(f, 2)
    x = PAdicNumber.from_rational(Fraction(3, 2), 7)
    assert A2(x) / B2(x) == iterate_map(f, x, 2)


def test_two_cycle_in_repeller_regime():
    f = make_ising_potts(5, 2, 6, 1)
    cycles = periodic_points(f, 2)
    assert len(cycles) == 1
    x, y = cycles[0]
    assert evaluate(f, x) == y and evaluate(f, y) == x
    assert exact_period(f, x, 2) == 2
    assert len(points_of_period_dividing(f, 2)) == 5


def test_period_guard():
    with pytest.raises(BadParameter):
        periodic_points(make_ising_potts(5, 2, 6, 1), 4)


def test_small_rho_fixed_point_pattern():
    # A = 5, C = 125 at p = 5: norms 1, |A|/|C| = 25, 1/|A| = 5
    f = make_small_rho_f(5, 5, 125)
    pts = {r.valuation: r.classification for r in fixed_points(f)}
    assert pts == {0: A, -2: A, -1: N}


def test_small_rho_warnings():
    with pytest.warns(RegimeWarning):
        make_small_rho_f(5, 1, 125)
    with pytest.warns(RegimeWarning):
        make_small_rho_f(5, 5, 10)


def test_Ep_regime_counts():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        g5 = make_Ep_regime_g(5, 1, 6, 36)
        g7 = make_Ep_regime_g(7, 1, 8, 64)
    assert len(fixed_points(g5)) == 3
    assert len(fixed_points(g7)) == 1


def test_Ep_regime_warning_outside_domain():
    with pytest.warns(RegimeWarning):
        make_Ep_regime_g(5, 2, 6, 36)


def test_lambda_map_specialises_to_ising():
    lam = make_lambda_TI(5, 2, 6, (1, -1, -1, 1))
    ising = make_ising_potts(5, 2, 6, 1)
    x = PAdicNumber.from_rational(Fraction(7, 3), 5)
    assert evaluate(lam, x) == evaluate(ising, x)
    assert valuation_rational(lam.params["rho"], 5) == 0
