"""Rational maps on Q_p: evaluation, multipliers, fixed and periodic points.

A map is ``x -> (num(x)/den(x))**outer_power`` with exact rational
coefficients.  Fixed-point and periodic-point equations are cleared to
integer polynomials and handed to :func:`poly_roots_Qp`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .errors import (BadParameter, NotFixed, PoleHit, PrecisionExhausted,
                     RegimeWarning)
from .padic import (DEFAULT_PRECISION, NormValue, PAdicNumber, Rational,
                    check_prime, in_Ep, in_unit_sphere, valuation_rational)
from .residues import (DegenerateRoot, Polynomial, newton_window,
                       poly_roots_Qp)

MAX_PERIOD = 3


class FixedPointClass(str, Enum):
    ATTRACTIVE = "attractive"
    NEUTRAL = "neutral"
    REPELLING = "repelling"


def _rational_param(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


def _check_rho(rho: Fraction) -> None:
    if rho in (-1, 0, 1):
        raise BadParameter(f"rho must avoid -1, 0, 1 (got {rho})")


@dataclass(frozen=True)
class RationalMapOnQp:
    """``x -> (numerator(x) / denominator(x)) ** outer_power`` over Q_p."""

    numerator: Polynomial
    denominator: Polynomial
    prime: int
    outer_power: int = 1
    precision: int = DEFAULT_PRECISION
    name: str = "rational"
    # parameters recorded by the named constructors, used for regime windows
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        check_prime(self.prime)
        if self.denominator.is_zero():
            raise BadParameter("denominator is identically zero")
        if self.outer_power < 1:
            raise BadParameter("outer power must be >= 1")

    def __call__(self, x) -> PAdicNumber:
        return evaluate(self, x)

    def lift(self, x) -> PAdicNumber:
        if isinstance(x, PAdicNumber):
            return x
        return PAdicNumber.from_rational(x, self.prime, self.precision)

    def cleared(self) -> tuple[Polynomial, Polynomial]:
        """Numerator and denominator of the map as a single fraction."""
        k = self.outer_power
        return self.numerator ** k, self.denominator ** k

    def to_dict(self) -> dict:
        return {"name": self.name, "prime": self.prime, "outer_power": self.outer_power,
                "numerator": [str(c) for c in self.numerator.coeffs],
                "denominator": [str(c) for c in self.denominator.coeffs],
                "params": {k: str(v) for k, v in self.params.items()}}


# -- named constructors -------------------------------------------------------

def make_ising_potts(p: int, k: int, rho: Rational, N: int,
                     precision: int = DEFAULT_PRECISION) -> RationalMapOnQp:
    """The map ``x -> ((theta*x + 1)/(x + theta))**k`` with ``theta = rho**(2N)``."""
    rho = _rational_param(rho)
    _check_rho(rho)
    if k < 1:
        raise BadParameter("k must be >= 1")
    theta = rho ** (2 * N)
    if theta in (-1, 0, 1):
        raise BadParameter(f"theta = rho^(2N) = {theta} is degenerate")
    return RationalMapOnQp(Polynomial([1, theta]), Polynomial([theta, 1]), p, k,
                           precision, "ising_potts",
                           {"k": k, "rho": rho, "N": N, "theta": theta})


def make_lambda_TI(p: int, k: int, rho: Rational, lambda_table: Iterable[int],
                   precision: int = DEFAULT_PRECISION) -> RationalMapOnQp:
    """Translation-invariant boundary recursion of the lambda-model.

    ``lambda_table`` lists lambda(1,1), lambda(1,-1), lambda(-1,1), lambda(-1,-1).
    """
    rho = _rational_param(rho)
    _check_rho(rho)
    l11, l1m, lm1, lmm = (int(v) for v in lambda_table)
    num = Polynomial([rho ** l1m, rho ** l11])
    den = Polynomial([rho ** lmm, rho ** lm1])
    return RationalMapOnQp(num, den, p, k, precision, "lambda_ti",
                           {"k": k, "rho": rho, "lambda": (l11, l1m, lm1, lmm)})


def make_small_rho_f(p: int, A: Rational, C: Rational,
                     precision: int = DEFAULT_PRECISION) -> RationalMapOnQp:
    """``x -> (A x^2 + 1)/(C x^2 + 1)``, studied for ``|A|,|C| < 1``, ``|A| != |C|``."""
    A, C = Fraction(A), Fraction(C)
    if A == C:
        warnings.warn("A == C: the map is the constant 1", RegimeWarning, stacklevel=2)
    elif A == 0 or C == 0:
        warnings.warn("A or C vanishes", RegimeWarning, stacklevel=2)
    else:
        vA, vC = valuation_rational(A, p), valuation_rational(C, p)
        if vA < 1 or vC < 1:
            warnings.warn("expected |A|_p, |C|_p < 1", RegimeWarning, stacklevel=2)
        if vA == vC:
            warnings.warn("expected |A|_p != |C|_p", RegimeWarning, stacklevel=2)
    return RationalMapOnQp(Polynomial([1, 0, A]), Polynomial([1, 0, C]), p, 1,
                           precision, "small_rho_f", {"A": A, "C": C})


def make_Ep_regime_g(p: int, a: Rational, b: Rational, c: Rational,
                     precision: int = DEFAULT_PRECISION) -> RationalMapOnQp:
    """``u -> a (b u^2 + 1)/(u^2 + c)``, studied for ``a, b, c`` in E_p."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    for name, val in (("a", a), ("b", b), ("c", c)):
        if val == 0 or not in_Ep(PAdicNumber.from_rational(val, p, precision)):
            warnings.warn(f"{name} = {val} is not in E_p", RegimeWarning, stacklevel=2)
    if b == 1 and c == 1:
        warnings.warn("|b-1|_p + |c-1|_p = 0: the equation is trivial",
                      RegimeWarning, stacklevel=2)
    return RationalMapOnQp(Polynomial([a, 0, a * b]), Polynomial([c, 0, 1]), p, 1,
                           precision, "Ep_regime_g", {"a": a, "b": b, "c": c})


# -- evaluation -----------------------------------------------------------------

def _nonzero(value: PAdicNumber, what: str) -> PAdicNumber:
    if value.is_zero:
        raise PoleHit(f"{what} vanishes")
    return value


def evaluate(fmap: RationalMapOnQp, x) -> PAdicNumber:
    x = fmap.lift(x)
    try:
        den = _nonzero(fmap.denominator(x), "denominator")
    except PrecisionExhausted as exc:
        raise PoleHit("denominator vanishes at working precision") from exc
    return (fmap.numerator(x) / den) ** fmap.outer_power


def derivative_at(fmap: RationalMapOnQp, x) -> PAdicNumber:
    """``k (N/D)^(k-1) (N'D - N D') / D^2`` evaluated at ``x``."""
    x = fmap.lift(x)
    k = fmap.outer_power
    num, den = fmap.numerator, fmap.denominator
    try:
        d = _nonzero(den(x), "denominator")
    except PrecisionExhausted as exc:
        raise PoleHit("denominator vanishes at working precision") from exc
    wronskian = num.derivative() * den - num * den.derivative()
    inner = wronskian(x) / (d * d)
    if k == 1:
        return inner
    return k * (num(x) / d) ** (k - 1) * inner


def iterate_map(fmap: RationalMapOnQp, x, n: int) -> PAdicNumber:
    x = fmap.lift(x)
    for _ in range(n):
        x = evaluate(fmap, x)
    return x


# -- fixed points ------------------------------------------------------------------

@dataclass
class FixedPointReport:
    point: PAdicNumber
    multiplier: PAdicNumber
    multiplier_norm: NormValue
    classification: FixedPointClass
    valuation: int | None
    in_Zp_star: bool
    in_Ep: bool

    def to_dict(self) -> dict:
        return {"point": self.point.literal(), "point_digits": self.point.to_dict(),
                "valuation": self.valuation,
                "multiplier_norm": self.multiplier_norm.to_dict(),
                "class": self.classification.value,
                "in_Zp_star": self.in_Zp_star, "in_Ep": self.in_Ep}


@dataclass
class FixedPointSearch:
    points: list[FixedPointReport] = field(default_factory=list)
    inconclusive: list[DegenerateRoot] = field(default_factory=list)
    window: list[int] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def to_dict(self) -> dict:
        return {"window": self.window, "fixed_points": [r.to_dict() for r in self.points],
                "inconclusive": [d.to_dict() for d in self.inconclusive]}


def classify_multiplier(norm_value: NormValue) -> FixedPointClass:
    if norm_value.is_zero or norm_value.exponent > 0:
        return FixedPointClass.ATTRACTIVE
    if norm_value.exponent == 0:
        return FixedPointClass.NEUTRAL
    return FixedPointClass.REPELLING


def fixed_point_tolerance(fmap: RationalMapOnQp) -> int:
    return (fmap.precision + 1) // 2


def classify_fixed_point(fmap: RationalMapOnQp, x) -> FixedPointReport:
    x = fmap.lift(x)
    fx = evaluate(fmap, x)
    dist = fx.distance_valuation(x)
    # distances are compared relative to the size of the point
    scale = 0 if x.is_zero else min(x.valuation, 0)
    if dist - scale < fixed_point_tolerance(fmap):
        raise NotFixed(f"|f(x) - x|_p = p^{-dist} exceeds the tolerance")
    lam = derivative_at(fmap, x)
    lam_norm = lam.norm()
    return FixedPointReport(
        point=x, multiplier=lam, multiplier_norm=lam_norm,
        classification=classify_multiplier(lam_norm),
        valuation=None if x.is_zero else x.valuation,
        in_Zp_star=in_unit_sphere(x), in_Ep=in_Ep(x))


def regime_window(fmap: RationalMapOnQp) -> list[int] | None:
    """Valuation window supplied by norm bounds for the named maps, else None."""
    p = fmap.prime
    if fmap.name == "ising_potts":
        theta, k = fmap.params["theta"], fmap.params["k"]
        vt = valuation_rational(theta, p)
        if vt >= 0:
            return [0]
        # |theta| > 1: fixed points lie in theta^(k t) Z_p^*, t in {-1, 0, 1}
        return sorted({-k * vt, 0, k * vt})
    if fmap.name == "small_rho_f":
        vA = valuation_rational(fmap.params["A"], p)
        vC = valuation_rational(fmap.params["C"], p)
        window = {0, vA - vC, -vA}
        if vC % 2 == 0:
            window.add(-vC // 2)
        return sorted(window)
    if fmap.name == "Ep_regime_g":
        # all coefficients of u^3 - ab u^2 + c u - a are units
        return [0]
    return None


def fixed_point_polynomial(fmap: RationalMapOnQp) -> Polynomial:
    num, den = fmap.cleared()
    return num - Polynomial.x() * den


def fixed_points(fmap: RationalMapOnQp, window: Iterable[int] | str | None = "regime"
                 ) -> FixedPointSearch:
    """Fixed points of ``fmap`` with valuation in ``window``.

    ``window="regime"`` uses the norm bounds known for the named maps and
    falls back to the Newton polygon; ``None`` always uses the Newton polygon.
    """
    poly = fixed_point_polynomial(fmap)
    if poly.is_zero():
        raise BadParameter("every point is fixed")
    if window == "regime":
        window = regime_window(fmap)
    if window is None:
        window = newton_window(poly, fmap.prime)
    window = sorted(set(window))
    roots = poly_roots_Qp(poly, fmap.prime, window, fmap.precision)
    out = FixedPointSearch(inconclusive=list(roots.inconclusive), window=window)
    for r in roots:
        try:
            out.points.append(classify_fixed_point(fmap, r))
        except PoleHit:
            continue
    return out


# -- orbits ----------------------------------------------------------------------

class Termination(str, Enum):
    BUDGET = "step_budget"
    CONVERGED = "converged"
    POLE = "denominator_hit"
    PRECISION = "precision_exhausted"


@dataclass
class OrbitTrace:
    start: PAdicNumber
    iterates: list[PAdicNumber]
    reason: Termination
    distances: list[float] = field(default_factory=list)

    @property
    def norms(self) -> list[NormValue]:
        return [x.norm() for x in self.iterates]

    def to_dict(self) -> dict:
        return {"start": self.start.literal(),
                "iterates": [{"value": x.literal(), "norm_exponent": x.norm().exponent}
                             for x in self.iterates],
                "distance_valuations": [None if d == math.inf else d
                                        for d in self.distances],
                "termination": self.reason.value}


def iterate_orbit(fmap: RationalMapOnQp, x0, max_steps: int = 100,
                  stop_tolerance_exponent: int | None = None,
                  target=None) -> OrbitTrace:
    """Iterate from ``x0``; stop on the budget, a pole, lost precision, or
    when ``|x_n - target|_p < p**(-stop_tolerance_exponent)``."""
    x = fmap.lift(x0)
    target = None if target is None else fmap.lift(target)
    trace = OrbitTrace(x, [x], Termination.BUDGET)

    def close(y):
        if target is None:
            return False
        d = y.distance_valuation(target)
        trace.distances.append(d)
        return stop_tolerance_exponent is not None and d > stop_tolerance_exponent

    if close(x):
        trace.reason = Termination.CONVERGED
        return trace
    for _ in range(max_steps):
        try:
            x = evaluate(fmap, x)
        except PoleHit:
            trace.reason = Termination.POLE
            return trace
        except PrecisionExhausted:
            trace.reason = Termination.PRECISION
            return trace
        trace.iterates.append(x)
        if close(x):
            trace.reason = Termination.CONVERGED
            return trace
    return trace


# -- periodic points -----------------------------------------------------------

def composition_polynomials(fmap: RationalMapOnQp, m: int) -> tuple[Polynomial, Polynomial]:
    """Exact numerator and denominator of the m-fold iterate."""
    a1, b1 = fmap.cleared()
    d = max(a1.degree, b1.degree)
    a, b = a1, b1
    for _ in range(m - 1):
        pa = [a ** i for i in range(d + 1)]
        pb = [b ** (d - i) for i in range(d + 1)]
        terms = [pa[i] * pb[i] for i in range(d + 1)]
        na = sum((c * t for c, t in zip(a1.coeffs, terms)), Polynomial([0]))
        nb = sum((c * t for c, t in zip(b1.coeffs, terms)), Polynomial([0]))
        a, b = na, nb
    return a, b


def periodic_polynomial(fmap: RationalMapOnQp, m: int) -> Polynomial:
    a, b = composition_polynomials(fmap, m)
    return a - Polynomial.x() * b


def _period_guard(m: int) -> None:
    if not 1 <= m <= MAX_PERIOD:
        raise BadParameter(f"period must be between 1 and {MAX_PERIOD}")


def points_of_period_dividing(fmap: RationalMapOnQp, m: int,
                              window: Iterable[int] | None = None) -> list[PAdicNumber]:
    """Points with ``f^m(x) = x`` whose orbit avoids poles."""
    _period_guard(m)
    poly = periodic_polynomial(fmap, m)
    if window is None:
        window = newton_window(poly, fmap.prime)
    roots = poly_roots_Qp(poly, fmap.prime, window, fmap.precision)
    tol = fixed_point_tolerance(fmap)
    out = []
    for r in roots:
        try:
            y = iterate_map(fmap, r, m)
        except (PoleHit, PrecisionExhausted):
            continue
        if y.distance_valuation(r) - min(0, r.valuation) >= tol:
            out.append(r)
    return out


def exact_period(fmap: RationalMapOnQp, x, m: int) -> int:
    """Least d dividing m with ``f^d(x) = x`` at tolerance."""
    tol = fixed_point_tolerance(fmap)
    x = fmap.lift(x)
    scale = 0 if x.is_zero else min(0, x.valuation)
    y = x
    for d in range(1, m + 1):
        y = evaluate(fmap, y)
        if m % d == 0 and y.distance_valuation(x) - scale >= tol:
            return d
    return m


def periodic_points(fmap: RationalMapOnQp, m: int, window: Iterable[int] | None = None,
                    exact: bool = True) -> list[tuple[PAdicNumber, ...]]:
    """Cycles ``(x, f(x), ..., f^(m-1)(x))`` of exact period ``m``.

    With ``exact=False`` every cycle whose period divides ``m`` is returned.
    """
    pts = points_of_period_dividing(fmap, m, window)
    tol = fixed_point_tolerance(fmap)
    seen: list[PAdicNumber] = []
    cycles = []
    for x in pts:
        if any(x.distance_valuation(s) - min(0, x.valuation) >= tol for s in seen):
            continue
        d = exact_period(fmap, x, m)
        if exact and d != m:
            seen.append(x)
            continue
        orbit = [x]
        for _ in range(d - 1):
            orbit.append(evaluate(fmap, orbit[-1]))
        # represent each orbit member by the matching root (full precision)
        members = []
        for y in orbit:
            match = next((r for r in pts
                          if r.distance_valuation(y) - min(0, r.valuation) >= tol), y)
            members.append(match)
        seen.extend(members)
        cycles.append(tuple(members))
    return cycles
