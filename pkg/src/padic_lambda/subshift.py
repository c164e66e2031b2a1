"""Weak repellers, incidence matrices and the symbolic coding of Julia sets.

A :class:`RepellerSetup` is a finite cover of X by disjoint balls of a common
radius on which the map multiplies distances by ``p**tau_j``.  The incidence
matrix records which balls each image ball covers; periodic points of the
map in X are compared against ``trace(A**m)``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dynamics import (RationalMapOnQp, derivative_at, evaluate, make_ising_potts,
                       points_of_period_dividing)
from .errors import (IdenticalPrefix, PoleHit, PrecisionExhausted,
                     RegimeViolation)
from .padic import (DEFAULT_PRECISION, NormValue, PAdicBall, PAdicNumber,
                    Rational, in_Ep, valuation_int, valuation_rational)
from .residues import kth_roots_of_minus_one_mod_p

DEFAULT_SAMPLES = 64


@dataclass
class IncidenceMatrix:
    rows: list[list[int]]
    irreducible: bool

    @property
    def size(self) -> int:
        return len(self.rows)

    def power(self, m: int) -> list[list[int]]:
        n = self.size
        result = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(m):
            result = [[sum(result[i][l] * self.rows[l][j] for l in range(n))
                       for j in range(n)] for i in range(n)]
        return result

    def trace_power(self, m: int) -> int:
        a = self.power(m)
        return sum(a[i][i] for i in range(self.size))

    def to_dict(self) -> dict:
        return {"rows": self.rows, "irreducible": self.irreducible}


def is_irreducible(rows: Sequence[Sequence[int]]) -> bool:
    """Every state reaches every state along a path of length 1..n."""
    n = len(rows)
    reach = [[bool(rows[i][j]) for j in range(n)] for i in range(n)]
    step = [row[:] for row in reach]
    for _ in range(n - 1):
        step = [[any(step[i][l] and rows[l][j] for l in range(n)) for j in range(n)]
                for i in range(n)]
        reach = [[reach[i][j] or step[i][j] for j in range(n)] for i in range(n)]
    return all(all(row) for row in reach)


@dataclass
class SymbolSequence:
    symbols: list[int]
    escape_step: int | None = None

    def to_dict(self) -> dict:
        return {"symbols": self.symbols, "escape_step": self.escape_step}


@dataclass
class ScalingWitness:
    ball: int
    x: PAdicNumber
    y: PAdicNumber
    expected: int
    observed: float


@dataclass
class RepellerSetup:
    """Ball cover ``X`` of a map together with its scaling exponents."""

    map: RationalMapOnQp
    balls: list[PAdicBall]
    scaling_exponents: list[int] = field(default_factory=list)
    repeller_class: str = "neither"
    witness: ScalingWitness | None = None
    seed: int = 0

    def __post_init__(self):
        if not self.balls:
            raise ValueError("a repeller needs at least one ball")
        e, closed = self.balls[0].radius_exponent, self.balls[0].closed
        if any(b.radius_exponent != e or b.closed != closed for b in self.balls):
            raise ValueError("balls must share one radius and one convention")
        for i, a in enumerate(self.balls):
            for b in self.balls[i + 1:]:
                if not a.is_disjoint(b):
                    raise ValueError("balls must be pairwise disjoint")
        if not self.scaling_exponents:
            self.scaling_exponents = [_tau_at_center(self.map, b) for b in self.balls]
            self.repeller_class = classify_taus(self.scaling_exponents)

    @property
    def prime(self) -> int:
        return self.map.prime

    @property
    def radius_exponent(self) -> int:
        return self.balls[0].radius_exponent

    @property
    def closed(self) -> bool:
        return self.balls[0].closed

    def ball_index(self, x: PAdicNumber) -> int | None:
        for i, b in enumerate(self.balls):
            if x in b:
                return i
        return None

    def kappa(self, i: int, j: int) -> int:
        """``|a_i - a_j|_p = p**(-kappa(i, j))`` for distinct balls."""
        return int(self.balls[i].center.distance_valuation(self.balls[j].center))

    def to_dict(self) -> dict:
        return {"balls": [b.to_dict() for b in self.balls],
                "tau": self.scaling_exponents, "repeller_class": self.repeller_class}


def classify_taus(taus: Sequence[int]) -> str:
    if all(t > 0 for t in taus):
        return "repeller"
    if all(t >= 0 for t in taus) and any(t > 0 for t in taus):
        return "weak_repeller"
    return "neither"


def _tau_at_center(fmap: RationalMapOnQp, ball: PAdicBall) -> int:
    d = derivative_at(fmap, ball.center)
    if d.is_zero:
        raise ValueError("derivative vanishes at a ball center")
    return -d.valuation


def build_ising_repeller(p: int, k: int, rho: Rational, N: int,
                         precision: int = DEFAULT_PRECISION) -> RepellerSetup:
    """Cover of the repelling part of the Ising-Potts map for ``rho`` in E_p.

    Centers are ``-1 + (theta - 1) eta_i`` with ``eta_i (xi_i - 1) + xi_i + 1 = 0``
    mod p for ``xi_i`` in Sol_p(x^k + 1); the radius is ``r = |p (theta - 1)|_p``.
    The balls are closed: writing ``x = -1 + (theta - 1) y``, orbits stay near
    -1 exactly when ``y = eta_i mod p``, i.e. ``|x - x_i|_p <= r``.
    """
    rho = Fraction(rho)
    failed = []
    if p < 3:
        failed.append("p >= 3")
    rho_p = PAdicNumber.from_rational(rho, p, precision) if rho else None
    if rho_p is None or not in_Ep(rho_p):
        failed.append("rho in E_p")
    theta = rho ** (2 * N)
    report = kth_roots_of_minus_one_mod_p(p, k)
    if report.kappa_p < 2:
        failed.append(f"kappa_p >= 2 (kappa_{p} = {report.kappa_p})")
    if theta == 1:
        failed.append("theta != 1")
    elif valuation_rational(theta - 1, p) <= valuation_int(k, p):
        failed.append("|theta - 1|_p < |k|_p")
    if failed:
        raise RegimeViolation(failed)
    fmap = make_ising_potts(p, k, rho, N, precision)
    balls = []
    for xi in report.sol_set:
        eta = (-(xi + 1) * pow(xi - 1, -1, p)) % p
        center = -1 + (theta - 1) * eta
        balls.append(PAdicBall(PAdicNumber.from_rational(center, p, precision),
                               -(1 + valuation_rational(theta - 1, p)), closed=True))
    return RepellerSetup(fmap, balls)


def _sample_ball(ball: PAdicBall, rng: random.Random, digits: int) -> PAdicNumber:
    p = ball.prime
    offset = rng.randrange(p ** digits)
    step = PAdicNumber.from_rational(Fraction(p) ** ball.min_valuation, p,
                                     ball.center.precision)
    if offset == 0:
        return ball.center
    return ball.center + step * offset


def scaling_exponents(setup: RepellerSetup, sample_count: int = DEFAULT_SAMPLES,
                      seed: int | None = None) -> list[int]:
    """Derivative-based exponents, verified on random pairs of each ball.

    A failed equality downgrades the class to ``neither`` and stores the pair.
    """
    rng = random.Random(setup.seed if seed is None else seed)
    p = setup.prime
    taus = [_tau_at_center(setup.map, b) for b in setup.balls]
    setup.scaling_exponents = taus
    setup.repeller_class = classify_taus(taus)
    setup.witness = None
    for j, ball in enumerate(setup.balls):
        for _ in range(sample_count):
            x = _sample_ball(ball, rng, 12)
            gap = rng.randrange(12)
            unit = rng.randrange(1, p ** 4)
            while unit % p == 0:
                unit = rng.randrange(1, p ** 4)
            y = x + PAdicNumber.from_rational(
                Fraction(p) ** (ball.min_valuation + gap) * unit, p, x.precision)
            try:
                dfx = evaluate(setup.map, x).distance_valuation(evaluate(setup.map, y))
            except (PoleHit, PrecisionExhausted):
                dfx = math.inf
            dxy = x.distance_valuation(y)
            if dfx != dxy - taus[j]:
                setup.repeller_class = "neither"
                setup.witness = ScalingWitness(j, x, y, int(dxy - taus[j]), dfx)
                return taus
    return taus


def incidence_matrix(setup: RepellerSetup) -> IncidenceMatrix:
    """``a_ij = 1`` iff ball j lies in the image ball of radius ``p**tau_i r`` about ``f(a_i)``."""
    e = setup.radius_exponent
    rows = []
    for i, ball in enumerate(setup.balls):
        image = PAdicBall(evaluate(setup.map, ball.center), e + setup.scaling_exponents[i],
                          setup.closed)
        rows.append([int(b.center in image) for b in setup.balls])
    return IncidenceMatrix(rows, is_irreducible(rows))


def sampled_incidence_matrix(setup: RepellerSetup, samples: int = 200,
                             seed: int | None = None) -> list[list[int]]:
    """Incidence rows estimated by mapping random points of each ball."""
    rng = random.Random(setup.seed if seed is None else seed)
    rows = []
    for ball in setup.balls:
        hit = [0] * len(setup.balls)
        for _ in range(samples):
            x = _sample_ball(ball, rng, 12)
            try:
                j = setup.ball_index(evaluate(setup.map, x))
            except (PoleHit, PrecisionExhausted):
                continue
            if j is not None:
                hit[j] = 1
        rows.append(hit)
    return rows


def itinerary(setup: RepellerSetup, x, n_steps: int) -> SymbolSequence:
    x = setup.map.lift(x)
    seq = SymbolSequence([])
    for t in range(n_steps):
        j = setup.ball_index(x)
        if j is None:
            seq.escape_step = t
            return seq
        seq.symbols.append(j)
        try:
            x = evaluate(setup.map, x)
        except (PoleHit, PrecisionExhausted):
            seq.escape_step = t + 1
            return seq
    return seq


def df_distance(setup: RepellerSetup, s: SymbolSequence | Sequence[int],
                t: SymbolSequence | Sequence[int]) -> NormValue:
    """Dynamical distance between two admissible symbol sequences."""
    a = s.symbols if isinstance(s, SymbolSequence) else list(s)
    b = t.symbols if isinstance(t, SymbolSequence) else list(t)
    n = next((i for i, (u, v) in enumerate(zip(a, b)) if u != v), None)
    if n is None:
        raise IdenticalPrefix(f"sequences agree on their first {min(len(a), len(b))} symbols")
    expo = sum(setup.scaling_exponents[a[i]] for i in range(n)) + setup.kappa(a[n], b[n])
    return NormValue(setup.prime, expo)


@dataclass
class ConjugacyRow:
    m: int
    trace: int
    periodic_points_in_X: int

    @property
    def match(self) -> bool:
        return self.trace == self.periodic_points_in_X


@dataclass
class ConjugacyReport:
    rows: list[ConjugacyRow]
    irreducible: bool
    repeller_class: str

    @property
    def verdict(self) -> bool:
        return self.irreducible and self.repeller_class != "neither" \
            and all(r.match for r in self.rows)

    def to_dict(self) -> dict:
        return {"table": [dict(m=r.m, trace=r.trace, periodic_points_in_X=r.periodic_points_in_X,
                               match=r.match) for r in self.rows],
                "irreducible": self.irreducible, "repeller_class": self.repeller_class,
                "verdict": self.verdict}


def periodic_points_in_X(setup: RepellerSetup, m: int) -> list[PAdicNumber]:
    return [x for x in points_of_period_dividing(setup.map, m)
            if setup.ball_index(x) is not None]


def verify_shift_conjugacy(setup: RepellerSetup, m: int = 3) -> ConjugacyReport:
    """Compare ``#{x in X : f^j(x) = x}`` with ``trace(A^j)`` for j <= m."""
    inc = incidence_matrix(setup)
    rows = [ConjugacyRow(j, inc.trace_power(j), len(periodic_points_in_X(setup, j)))
            for j in range(1, m + 1)]
    return ConjugacyReport(rows, inc.irreducible, setup.repeller_class)
