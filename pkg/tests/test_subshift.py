from fractions import Fraction

import pytest

from padic_lambda.dynamics import make_ising_potts
from padic_lambda.errors import IdenticalPrefix, RegimeViolation
from padic_lambda.padic import PAdicBall, PAdicNumber
from padic_lambda.subshift import (IncidenceMatrix, RepellerSetup, build_ising_repeller,
                                   classify_taus, df_distance, incidence_matrix,
                                   is_irreducible, itinerary, periodic_points_in_X,
                                   sampled_incidence_matrix, scaling_exponents,
                                   verify_shift_conjugacy)
from padic_lambda.dynamics import periodic_points


@pytest.fixture(scope="module")
def setup():
    s = build_ising_repeller(5, 2, 6, 1)
    scaling_exponents(s, sample_count=32, seed=7)
    return s


def test_repeller_balls(setup):
    # theta = 36, theta - 1 = 35 = 5 * 7; centers -1 + 35 * eta
    assert len(setup.balls) == 2
    assert setup.radius_exponent == -2 and setup.closed
    centers = sorted(b.center.to_integer_mod(3) for b in setup.balls)
    # eta solves eta (xi - 1) + xi + 1 = 0 mod 5 for xi in {2, 3}: eta = 2, 3
    assert centers == sorted([(-1 + 35 * 2) % 125, (-1 + 35 * 3) % 125])
    assert setup.kappa(0, 1) == 1


def test_scaling_exponents_and_class(setup):
    assert setup.scaling_exponents == [1, 1]
    assert setup.repeller_class == "repeller"
    assert setup.witness is None


def test_incidence_is_full_shift(setup):
    inc = incidence_matrix(setup)
    assert inc.rows == [[1, 1], [1, 1]]
    assert inc.irreducible
    assert sampled_incidence_matrix(setup, samples=50, seed=1) == inc.rows


def test_trace_powers():
    inc = IncidenceMatrix([[1, 1], [1, 1]], True)
    assert [inc.trace_power(m) for m in (1, 2, 3)] == [2, 4, 8]
    assert inc.power(2) == [[2, 2], [2, 2]]


def test_irreducibility():
    assert is_irreducible([[0, 1], [1, 0]])
    assert not is_irreducible([[1, 1], [0, 1]])
    assert not is_irreducible([[1, 0], [0, 1]])


def test_classify_taus():
    assert classify_taus([1, 2]) == "repeller"
    assert classify_taus([0, 2]) == "weak_repeller"
    assert classify_taus([0, 0]) == "neither"
    assert classify_taus([-1, 3]) == "neither"


def test_two_cycle_alternates(setup):
    (x, y), = periodic_points(setup.map, 2)
    seq = itinerary(setup, x, 6)
    assert seq.escape_step is None
    assert seq.symbols[0] != seq.symbols[1]
    assert seq.symbols == [seq.symbols[0], seq.symbols[1]] * 3


def test_attracting_point_escapes(setup):
    assert itinerary(setup, 1, 5).escape_step == 0


def test_df_distance(setup):
    # first difference at n = 1: p^-(tau_0 + kappa) = 5^-2
    assert df_distance(setup, [0, 1, 0], [0, 0, 1]).as_fraction() == Fraction(1, 25)
    assert df_distance(setup, [0], [1]).as_fraction() == Fraction(1, 5)
    with pytest.raises(IdenticalPrefix):
        df_distance(setup, [0, 1], [0, 1, 1])


def test_conjugacy_table(setup):
    report = verify_shift_conjugacy(setup, 3)
    assert [(r.m, r.trace, r.periodic_points_in_X) for r in report.rows] == \
        [(1, 2, 2), (2, 4, 4), (3, 8, 8)]
    assert report.verdict
    assert len(periodic_points_in_X(setup, 1)) == 2


def test_regime_violations():
    with pytest.raises(RegimeViolation) as info:
        build_ising_repeller(7, 2, 6, 1)
    assert any("E_p" in f for f in info.value.failed)
    assert any("kappa" in f for f in info.value.failed)
    with pytest.raises(RegimeViolation) as info:
        build_ising_repeller(2, 2, 5, 1)
    assert "p >= 3" in info.value.failed


def test_setup_validates_balls():
    f = make_ising_potts(5, 2, 6, 1)
    c = PAdicNumber.from_rational(1, 5)
    with pytest.raises(ValueError):
        RepellerSetup(f, [PAdicBall(c, -1), PAdicBall(c + 25, -1)])
    with pytest.raises(ValueError):
        RepellerSetup(f, [PAdicBall(c, -1), PAdicBall(c + 1, -2)])
