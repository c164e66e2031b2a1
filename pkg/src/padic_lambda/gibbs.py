"""Finite-volume p-adic quasi Gibbs measures of the lambda-model on Cayley trees.

Vertices of the rooted tree of order ``k`` are tuples of coordinates in
``1..k`` (the root is the empty tuple).  Boundary fields are normalised so
that the weight of spin -1 is 1 and the weight of spin +1 is ``h``.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from .dynamics import (FixedPointReport, RationalMapOnQp, fixed_points,
                       make_Ep_regime_g, make_ising_potts, make_lambda_TI,
                       make_small_rho_f, periodic_points)
from .errors import (BadField, BadParameter, EnumerationGuard, PoleHit,
                     PrecisionExhausted, ZeroPartition)
from .padic import (DEFAULT_PRECISION, PAdicNumber, Rational, check_prime,
                    in_Ep, valuation_int, valuation_rational)
from .residues import is_square_Qp, kth_roots_of_minus_one_mod_p

MAX_ENUMERATED_VERTICES = 20
PROFILE_DEPTH = 8
# depth within which the valuation recursion must settle to count as bounded
STABILISATION_DEPTH = 64

Path = tuple


# -- tree ----------------------------------------------------------------------

@dataclass(frozen=True)
class TreeAddress:
    path: Path
    k: int

    def __post_init__(self):
        if any(not 1 <= i <= self.k for i in self.path):
            raise ValueError(f"coordinates must lie in 1..{self.k}")

    @property
    def level(self) -> int:
        return len(self.path)

    def successors(self) -> list[TreeAddress]:
        return [TreeAddress(self.path + (i,), self.k) for i in range(1, self.k + 1)]

    def __str__(self) -> str:
        return "(0)" if not self.path else "(" + ",".join(map(str, self.path)) + ")"


@dataclass
class LevelSets:
    k: int
    n: int
    W: list[Path]
    V: list[Path]


def level_sets(k: int, n: int) -> LevelSets:
    if k < 1 or n < 0:
        raise BadParameter("need k >= 1 and n >= 0")
    levels = [[()]]
    for _ in range(n):
        levels.append([x + (i,) for x in levels[-1] for i in range(1, k + 1)])
    return LevelSets(k, n, levels[-1], [x for lev in levels for x in lev])


def successors(x: TreeAddress) -> list[TreeAddress]:
    return x.successors()


def concat(x: TreeAddress, y: TreeAddress) -> TreeAddress:
    return TreeAddress(x.path + y.path, x.k)


def translate(g: TreeAddress, x: TreeAddress) -> TreeAddress:
    return concat(g, x)


def in_Gm(x: TreeAddress, m: int) -> bool:
    return x.level % m == 0


def edge_count(k: int, n: int) -> int:
    """``|L_n| = k + k^2 + ... + k^n``."""
    return sum(k ** j for j in range(1, n + 1))


# -- model -----------------------------------------------------------------------

@dataclass(frozen=True)
class InteractionSpec:
    """Integer interaction lambda on {-1, +1}^2."""

    l11: int
    l1m: int
    lm1: int
    lmm: int
    ising_N: int | None = None

    @classmethod
    def ising(cls, N: int) -> InteractionSpec:
        return cls(N, -N, -N, N, ising_N=N)

    @classmethod
    def from_table(cls, table: Sequence[int]) -> InteractionSpec:
        l11, l1m, lm1, lmm = (int(v) for v in table)
        return cls(l11, l1m, lm1, lmm)

    @property
    def table(self) -> tuple[int, int, int, int]:
        return (self.l11, self.l1m, self.lm1, self.lmm)

    @property
    def is_ising(self) -> bool:
        return self.ising_N is not None

    def __call__(self, u: int, v: int) -> int:
        if u == 1:
            return self.l11 if v == 1 else self.l1m
        return self.lm1 if v == 1 else self.lmm

    def to_dict(self) -> dict:
        return {"lambda": list(self.table), "ising_N": self.ising_N}


@dataclass(frozen=True)
class ModelParams:
    prime: int
    k: int
    rho: Fraction
    interaction: InteractionSpec
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "rho", Fraction(self.rho))
        if self.rho in (-1, 0, 1):
            raise BadParameter("rho must avoid -1, 0, 1")
        if self.k < 1:
            raise BadParameter("k must be >= 1")

    @classmethod
    def ising(cls, p: int, k: int, rho: Rational, N: int,
              precision: int = DEFAULT_PRECISION) -> ModelParams:
        return cls(p, k, Fraction(rho), InteractionSpec.ising(N), precision)

    @property
    def theta(self) -> Fraction:
        if not self.interaction.is_ising:
            raise BadParameter("theta is defined for the Ising interaction only")
        return self.rho ** (2 * self.interaction.ising_N)

    @property
    def rho_valuation(self) -> int:
        return valuation_rational(self.rho, self.prime)

    def rho_power(self, e: int) -> PAdicNumber:
        return PAdicNumber.from_rational(self.rho ** e, self.prime, self.precision)

    def recursion_map(self) -> RationalMapOnQp:
        """The translation-invariant recursion ``h -> F(h)``."""
        if self.interaction.is_ising:
            return make_ising_potts(self.prime, self.k, self.rho,
                                    self.interaction.ising_N, self.precision)
        return make_lambda_TI(self.prime, self.k, self.rho, self.interaction.table,
                              self.precision)

    def to_dict(self) -> dict:
        return {"p": self.prime, "k": self.k, "rho": str(self.rho),
                **self.interaction.to_dict(), "precision": self.precision}


# -- boundary fields --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TranslationInvariant:
    """Field ``(h_{-1}, h_{+1}) = (minus, h)`` on every vertex."""

    h: PAdicNumber
    minus: PAdicNumber | None = None

    def at_level(self, level: int) -> tuple[PAdicNumber | None, PAdicNumber]:
        return self.minus, self.h

    def to_dict(self) -> dict:
        return {"type": "translation_invariant", "h": self.h.literal(),
                "h_digits": self.h.to_dict()}


@dataclass(frozen=True, eq=False)
class LevelPeriodic:
    """Field whose ratio at level ``l`` is ``cycle[l % m]``."""

    cycle: tuple[PAdicNumber, ...]

    @property
    def period(self) -> int:
        return len(self.cycle)

    def at_level(self, level: int) -> tuple[PAdicNumber | None, PAdicNumber]:
        return None, self.cycle[level % len(self.cycle)]

    def to_dict(self) -> dict:
        return {"type": "level_periodic", "cycle": [h.literal() for h in self.cycle]}


BoundaryField = Union[TranslationInvariant, LevelPeriodic]


def _as_field(params: ModelParams, fld) -> BoundaryField:
    if isinstance(fld, (TranslationInvariant, LevelPeriodic)):
        return fld
    return TranslationInvariant(_lift(params, fld))


def _lift(params: ModelParams, x) -> PAdicNumber:
    if isinstance(x, PAdicNumber):
        return x
    return PAdicNumber.from_rational(x, params.prime, params.precision)


# -- Hamiltonian and enumeration --------------------------------------------------

def hamiltonian(config: Mapping[Path, int], spec: InteractionSpec) -> int:
    """Sum of lambda over the edges of the finite tree carrying ``config``."""
    total = 0
    for x, s in config.items():
        if x:
            total += spec(config[x[:-1]], s)
    return total


def _check_guard(k: int, n: int) -> None:
    size = sum(k ** j for j in range(n + 1))
    if size > MAX_ENUMERATED_VERTICES:
        raise EnumerationGuard(f"|V_{n}| = {size} exceeds {MAX_ENUMERATED_VERTICES}")


@lru_cache(maxsize=32)
def _census(k: int, n: int, table: tuple) -> dict:
    """Multiplicities of (prefix on V_{n-1}, H_n, #plus on W_n) over all configs."""
    _check_guard(k, n)
    spec = InteractionSpec.from_table(table)
    sets = level_sets(k, n)
    index = {x: i for i, x in enumerate(sets.V)}
    parents = [(index[x[:-1]], i) for i, x in enumerate(sets.V) if x]
    inner = len(sets.V) - len(sets.W)
    lam = {(u, v): spec(u, v) for u in (-1, 1) for v in (-1, 1)}
    out: dict = defaultdict(lambda: defaultdict(int))
    for sigma in itertools.product((-1, 1), repeat=len(sets.V)):
        H = sum(lam[sigma[a], sigma[b]] for a, b in parents)
        plus = sum(1 for s in sigma[inner:] if s == 1)
        out[sigma[:inner]][(H, plus)] += 1
    return {key: dict(v) for key, v in out.items()}


def _config_tuple(config: Mapping[Path, int] | Sequence[int], k: int, n: int) -> tuple:
    if isinstance(config, Mapping):
        return tuple(config[x] for x in level_sets(k, n).V)
    return tuple(config)


def _weight(params: ModelParams, H: int, plus: int, count: int, level: int,
            fld: BoundaryField) -> PAdicNumber:
    minus, h = fld.at_level(level)
    w = params.rho_power(H) * h ** plus
    if minus is not None:
        w = w * minus ** count
    return w


def _sum(terms: Iterable[PAdicNumber], prime: int, precision: int) -> PAdicNumber:
    total = PAdicNumber.zero(prime, precision)
    for t in terms:
        total = total + t
    return total


def partition_function(params: ModelParams, n: int, fld) -> PAdicNumber:
    """Sum of ``rho^H * prod h_{x, sigma(x)}`` over every configuration on V_n."""
    fld = _as_field(params, fld)
    k = params.k
    width = k ** n
    groups = _census(k, n, params.interaction.table)
    counts: dict = defaultdict(int)
    for g in groups.values():
        for key, mult in g.items():
            counts[key] += mult
    try:
        Z = _sum((_weight(params, H, plus, width - plus, n, fld) * mult
                  for (H, plus), mult in counts.items()), params.prime, params.precision)
    except PrecisionExhausted as exc:
        raise ZeroPartition("partition function vanishes at working precision") from exc
    if Z.is_zero:
        raise ZeroPartition("partition function is zero: no measure for this field")
    return Z


def cylinder_measure(params: ModelParams, n: int, fld, config) -> PAdicNumber:
    fld = _as_field(params, fld)
    sigma = _config_tuple(config, params.k, n)
    sets = level_sets(params.k, n)
    conf = dict(zip(sets.V, sigma))
    H = hamiltonian(conf, params.interaction)
    plus = sum(1 for x in sets.W if conf[x] == 1)
    Z = partition_function(params, n, fld)
    return _weight(params, H, plus, len(sets.W) - plus, n, fld) / Z


def all_cylinder_measures(params: ModelParams, n: int, fld) -> dict[tuple, PAdicNumber]:
    """Measure of every configuration on V_n (keys follow ``level_sets(k, n).V``)."""
    fld = _as_field(params, fld)
    sets = level_sets(params.k, n)
    _check_guard(params.k, n)
    Z = partition_function(params, n, fld)
    index = {x: i for i, x in enumerate(sets.V)}
    parents = [(index[x[:-1]], i) for i, x in enumerate(sets.V) if x]
    inner = len(sets.V) - len(sets.W)
    lam = params.interaction
    out = {}
    for sigma in itertools.product((-1, 1), repeat=len(sets.V)):
        H = sum(lam(sigma[a], sigma[b]) for a, b in parents)
        plus = sum(1 for s in sigma[inner:] if s == 1)
        out[sigma] = _weight(params, H, plus, len(sets.W) - plus, n, fld) / Z
    return out


@dataclass
class CompatibilityReport:
    n: int
    holds: bool
    worst_discrepancy_valuation: int | None
    witness: tuple | None
    checked_to: float
    configurations: int

    def to_dict(self) -> dict:
        return {"n": self.n, "holds": self.holds,
                "worst_discrepancy_valuation": self.worst_discrepancy_valuation,
                "witness": list(self.witness) if self.witness else None,
                "checked_to_valuation": None if self.checked_to == math.inf
                else int(self.checked_to),
                "configurations": self.configurations}


def check_compatibility(params: ModelParams, n: int, fld) -> CompatibilityReport:
    """Brute-force both sides of the marginal consistency condition at level n."""
    if n < 1:
        raise BadParameter("compatibility compares levels n-1 and n >= 1")
    fld = _as_field(params, fld)
    k = params.k
    groups = _census(k, n, params.interaction.table)
    Zn = partition_function(params, n, fld)
    if n == 1:
        Zprev = _level0_partition(params, fld)
    else:
        Zprev = partition_function(params, n - 1, fld)
    prev_sets = level_sets(k, n - 1)
    prev_index = {x: i for i, x in enumerate(prev_sets.V)}
    prev_parents = [(prev_index[x[:-1]], i) for i, x in enumerate(prev_sets.V) if x]
    prev_inner = len(prev_sets.V) - len(prev_sets.W)
    lam = params.interaction
    worst: float = math.inf
    witness = None
    checked = math.inf
    width = k ** n
    for prefix, g in groups.items():
        lhs = _sum((_weight(params, H, plus, width - plus, n, fld) * mult
                    for (H, plus), mult in g.items()), params.prime, params.precision) / Zn
        H0 = sum(lam(prefix[a], prefix[b]) for a, b in prev_parents)
        plus0 = sum(1 for s in prefix[prev_inner:] if s == 1)
        rhs = _weight(params, H0, plus0, len(prev_sets.W) - plus0, n - 1, fld) / Zprev
        checked = min(checked, lhs.absolute_precision, rhs.absolute_precision)
        d = lhs.distance_valuation(rhs)
        if d < worst:
            worst, witness = d, prefix
    return CompatibilityReport(n, worst == math.inf,
                               None if worst == math.inf else int(worst),
                               witness, checked, len(groups))


def _level0_partition(params: ModelParams, fld: BoundaryField) -> PAdicNumber:
    minus, h = fld.at_level(0)
    Z = h + (1 if minus is None else minus)
    if Z.is_zero:
        raise ZeroPartition("level-0 partition function vanishes")
    return Z


# -- recursion and closed forms ----------------------------------------------------

def recurrence_rhs(spec: InteractionSpec, rho: Rational,
                   children_fields: Sequence[PAdicNumber]) -> PAdicNumber:
    """``prod_y (rho^l11 h_y + rho^l1m) / (rho^lm1 h_y + rho^lmm)``."""
    if not children_fields:
        raise BadParameter("need at least one child")
    rho = Fraction(rho)
    out = None
    for h in children_fields:
        den = h * rho ** spec.lm1 + rho ** spec.lmm
        if den.is_zero:
            raise PoleHit("recursion denominator vanishes")
        factor = (h * rho ** spec.l11 + rho ** spec.l1m) / den
        out = factor if out is None else out * factor
    return out


def _L_factor(params: ModelParams, h: PAdicNumber) -> PAdicNumber:
    lam = params.interaction
    return (h * params.rho ** lam.lm1 + params.rho ** lam.lmm) ** params.k


def closed_form_measure(params: ModelParams, n: int, h, config) -> PAdicNumber:
    """Cylinder measure of a compatible translation-invariant field, without enumeration.

    ``rho^H h^(#plus on W_n) / ((1 + h) L^((k^n - 1)/(k - 1)))`` with
    ``L = (rho^lm1 h + rho^lmm)^k``.
    """
    h = _lift(params, h)
    if h == -1:
        raise BadField("h = -1 admits no measure")
    k = params.k
    sigma = _config_tuple(config, k, n)
    sets = level_sets(k, n)
    conf = dict(zip(sets.V, sigma))
    H = hamiltonian(conf, params.interaction)
    plus = sum(1 for x in sets.W if conf[x] == 1)
    levels = edge_count(k, n) // k
    return params.rho_power(H) * h ** plus / ((1 + h) * _L_factor(params, h) ** levels)


def ti_closed_form(params: ModelParams, n: int, h, config) -> PAdicNumber:
    """Ising closed form ``rho^H h^plus / ((rho^-N h + rho^N)^|L_n| (h + 1))``."""
    if not params.interaction.is_ising:
        raise BadParameter("ti_closed_form is stated for the Ising interaction")
    h = _lift(params, h)
    if h == -1:
        raise BadField("h = -1 admits no measure")
    N = params.interaction.ising_N
    k = params.k
    sigma = _config_tuple(config, k, n)
    sets = level_sets(k, n)
    conf = dict(zip(sets.V, sigma))
    H = hamiltonian(conf, params.interaction)
    plus = sum(1 for x in sets.W if conf[x] == 1)
    base = h * params.rho ** (-N) + params.rho ** N
    return params.rho_power(H) * h ** plus / (base ** edge_count(k, n) * (h + 1))


# -- boundedness --------------------------------------------------------------------

def _val(x: PAdicNumber) -> int:
    if x.is_zero:
        raise BadField("zero appears where a valuation is needed")
    return x.valuation


def norm_profile(params: ModelParams, h, depth: int = PROFILE_DEPTH) -> list[int]:
    """Valuation of the largest cylinder measure at levels 1..depth.

    Pure valuation arithmetic on the closed form: the minimum over configurations
    of ``v(rho) H + v(h) #plus`` is found by dynamic programming on the tree.
    """
    h = _lift(params, h)
    if h == -1:
        raise BadField("h = -1 admits no measure")
    lam, k = params.interaction, params.k
    vr = params.rho_valuation
    vh = _val(h)
    v1h = _val(1 + h)
    vL = _val(_L_factor(params, h))
    out = []
    for n in range(1, depth + 1):
        cost = {s: (vh if s == 1 else 0) for s in (-1, 1)}
        for _ in range(n):
            cost = {s: k * min(lam(s, t) * vr + cost[t] for t in (-1, 1)) for s in (-1, 1)}
        levels = edge_count(k, n) // k
        out.append(min(cost.values()) - v1h - levels * vL)
    return out


def kernel_valuations(params: ModelParams, h) -> dict[tuple[int, int], int]:
    """Valuations of the transition weights ``rho^lambda(s,t) h_t / M_s``."""
    h = _lift(params, h)
    lam = params.interaction
    hs = {1: h, -1: PAdicNumber.from_rational(1, params.prime, params.precision)}
    out = {}
    for s in (-1, 1):
        M = hs[1] * params.rho ** lam(s, 1) + params.rho ** lam(s, -1)
        for t in (-1, 1):
            out[s, t] = lam(s, t) * params.rho_valuation + _val(hs[t]) - _val(M)
    return out


def bounded_by_kernel(params: ModelParams, h) -> bool:
    """Exact boundedness test for a compatible translation-invariant field.

    The cylinder measures factor through transition weights whose valuations
    ``w(s,t)`` give subtree minima ``D_d(s) = k min_t(w(s,t) + D_{d-1}(t))``.
    Since some weight in each row has valuation <= 0 the sequence is
    non-increasing; the measure is bounded iff it reaches a fixed point.
    """
    w = kernel_valuations(params, h)
    D = {1: 0, -1: 0}
    for _ in range(STABILISATION_DEPTH):
        nxt = {s: params.k * min(w[s, t] + D[t] for t in (-1, 1)) for s in (-1, 1)}
        if nxt == D:
            return True
        D = nxt
    return False


def profile_diverges(profile: Sequence[int]) -> bool:
    """Empirical reading of a profile: strictly falling to below ``-len``."""
    return all(b <= a for a, b in zip(profile, profile[1:])) and profile[-1] < -len(profile) \
        and profile[-1] < profile[0]


@dataclass
class BoundednessReport:
    h: PAdicNumber
    verdict: str
    criterion_path: str
    profile: list[int]
    empirical_verdict: str

    @property
    def bounded(self) -> bool:
        return self.verdict == "Bounded"

    def to_dict(self) -> dict:
        return {"h": self.h.literal(), "verdict": self.verdict,
                "criterion_path": self.criterion_path,
                "profile": [{"n": i + 1, "valuation_of_measure_norm": v}
                            for i, v in enumerate(self.profile)],
                "empirical_verdict": self.empirical_verdict}


def boundedness_classify(params: ModelParams, h, depth: int = PROFILE_DEPTH) -> BoundednessReport:
    """Ising verdict from the norm criterion, with an empirical valuation profile."""
    if not params.interaction.is_ising:
        raise BadParameter("boundedness_classify is stated for the Ising interaction")
    h = _lift(params, h)
    if h == -1:
        raise BadField("h = -1 admits no measure")
    if params.rho_valuation != 0:
        verdict, path = "Bounded", "|rho|_p != 1"
    else:
        d = h.distance_valuation(-params.theta)
        if 0 < d < math.inf:
            verdict, path = "Unbounded", "|rho|_p = 1 and 0 < |h + theta|_p < 1"
        else:
            verdict, path = "Bounded", "|rho|_p = 1 and |h + theta|_p not in (0, 1)"
    profile = norm_profile(params, h, depth)
    empirical = "Unbounded" if profile_diverges(profile) else "Bounded"
    return BoundednessReport(h, verdict, path, profile, empirical)


def boundedness_generic(params: ModelParams, h, depth: int = PROFILE_DEPTH) -> BoundednessReport:
    """Verdict from the exact kernel recursion; valid for any interaction."""
    h = _lift(params, h)
    if h == -1:
        raise BadField("h = -1 admits no measure")
    verdict = "Bounded" if bounded_by_kernel(params, h) else "Unbounded"
    profile = norm_profile(params, h, depth)
    empirical = "Unbounded" if profile_diverges(profile) else "Bounded"
    return BoundednessReport(h, verdict, "transition-kernel valuation recursion",
                             profile, empirical)


# -- census -------------------------------------------------------------------------

@dataclass
class CensusEntry:
    h: PAdicNumber
    boundedness: BoundednessReport
    fixed_point: FixedPointReport | None = None
    regime_point: PAdicNumber | None = None

    def to_dict(self) -> dict:
        out = {"h": self.h.literal(), "h_digits": self.h.to_dict(),
               "bounded": self.boundedness.bounded,
               "boundedness": self.boundedness.to_dict()}
        if self.fixed_point is not None:
            out["class"] = self.fixed_point.classification.value
            out["multiplier_norm"] = self.fixed_point.multiplier_norm.to_dict()
        if self.regime_point is not None:
            out["regime_fixed_point"] = self.regime_point.literal()
        return out


@dataclass
class MeasureCensus:
    params: ModelParams
    entries: list[CensusEntry] = field(default_factory=list)
    excluded: list[dict] = field(default_factory=list)
    theorem_comparison: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def bounded(self) -> list[CensusEntry]:
        return [e for e in self.entries if e.boundedness.bounded]

    @property
    def unbounded(self) -> list[CensusEntry]:
        return [e for e in self.entries if not e.boundedness.bounded]

    @property
    def phase_transition(self) -> bool:
        return bool(self.bounded) and bool(self.unbounded)

    @property
    def quasi_phase_transition(self) -> bool:
        return len(self.bounded) >= 2

    @property
    def verdict(self) -> str:
        if self.phase_transition:
            return "phase transition"
        if self.quasi_phase_transition:
            return "quasi phase transition"
        return "no phase transition"

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(),
                "fixed_points": [e.to_dict() for e in self.entries],
                "excluded": self.excluded,
                "counts": {"total": self.count, "bounded": len(self.bounded),
                           "unbounded": len(self.unbounded)},
                "theorem_comparison": self.theorem_comparison,
                "phase_transition": self.phase_transition,
                "quasi_phase_transition": self.quasi_phase_transition,
                "verdict": self.verdict, "notes": self.notes}


def _measure_level_duplicates(params: ModelParams, entries: Sequence[CensusEntry]) -> list:
    """Pairs of bounded entries whose level-1 cylinder measures coincide."""
    dupes = []
    bounded = [e for e in entries if e.boundedness.bounded]
    configs = list(itertools.product((-1, 1), repeat=1 + params.k))
    for i, a in enumerate(bounded):
        for b in bounded[i + 1:]:
            try:
                same = all(closed_form_measure(params, 1, a.h, c)
                           == closed_form_measure(params, 1, b.h, c) for c in configs)
            except (PrecisionExhausted, BadField):
                continue
            if same:
                dupes.append((a.h.literal(), b.h.literal()))
    return dupes


def _count_comparison(params: ModelParams, observed: int) -> dict:
    p, k = params.prime, params.k
    N = params.interaction.ising_N
    vrN = N * params.rho_valuation
    out = {"rule": "ising translation-invariant count", "observed": observed}
    if k < 2:
        out["hypotheses_hold"] = False
        return out
    report = kth_roots_of_minus_one_mod_p(p, k)
    n_kp = report.n_kp or 0
    odd = k % 2
    if vrN < 0 and -vrN > valuation_int(k - 1, p):
        # unit fixed points solve x^(k-1) = 1 mod p; two more sit off the unit sphere
        out.update(item="(i)", hypotheses_hold=True,
                   expected=n_kp + (1 if odd else 2),
                   expected_alt=math.gcd(k - 1, p - 1) + 2 - odd)
    elif vrN > 0 and vrN > valuation_int(k + 1, p):
        # unit fixed points solve x^(k+1) = 1 mod p
        out.update(item="(ii)", hypotheses_hold=True,
                   expected=n_kp + (0 if odd else 1),
                   expected_alt=math.gcd(k + 1, p - 1) - odd)
    else:
        out["hypotheses_hold"] = False
    if out.get("hypotheses_hold"):
        out["match"] = out["expected"] == observed
        out["match_alt"] = out["expected_alt"] == observed
    return out


def ti_census_ising(params: ModelParams) -> MeasureCensus:
    """All translation-invariant measures of the Ising model found by the root finder."""
    if not params.interaction.is_ising:
        raise BadParameter("ti_census_ising needs the Ising interaction")
    fmap = params.recursion_map()
    search = fixed_points(fmap)
    census = MeasureCensus(params)
    for report in search:
        h = report.point
        if h == -1:
            census.excluded.append({"h": h.literal(), "reason": "h = -1"})
            continue
        try:
            partition_function(params, 1, h)
        except ZeroPartition:
            census.excluded.append({"h": h.literal(), "reason": "zero partition function"})
            continue
        census.entries.append(CensusEntry(h, boundedness_classify(params, h), report))
    for d in search.inconclusive:
        census.notes.append(f"inconclusive residue cluster {d.approximation} at valuation {d.valuation}")
    census.theorem_comparison = _count_comparison(params, census.count)
    for a, b in _measure_level_duplicates(params, census.entries):
        census.notes.append(f"fields {a} and {b} give equal level-1 cylinder measures")
    return census


def hm_periodic_fields(params: ModelParams, m: int, verify_depth: int = 2
                       ) -> list[BoundaryField]:
    """Level-periodic fields from the m-cycles of the Ising-Potts map.

    ``cycle[l] = f(cycle[l+1])`` so that the field at level l is the recursion
    image of the field one level deeper.
    """
    if not params.interaction.is_ising:
        raise BadParameter("hm_periodic_fields needs the Ising interaction")
    if m == 1:
        return [TranslationInvariant(e.h) for e in ti_census_ising(params).entries]
    fmap = params.recursion_map()
    out: list[BoundaryField] = []
    for orbit in periodic_points(fmap, m):
        if any(x == -1 for x in orbit):
            continue
        cycle = tuple(orbit[(-i) % m] for i in range(m))
        fld = LevelPeriodic(cycle)
        if verify_depth:
            rep = check_compatibility(params, min(verify_depth, 3), fld)
            if not rep.holds:
                raise PrecisionExhausted(f"cycle failed compatibility at n={rep.n}")
        out.append(fld)
    return out


# -- lambda-model, k = 2 ---------------------------------------------------------------

def _detect_regime(params: ModelParams) -> str:
    lam = params.interaction
    p = params.prime
    if params.rho_valuation > 0 and lam.l1m == 0 and lam.lmm == 0 \
            and lam.l11 > 0 and lam.lm1 > 0 and lam.l11 != lam.lm1:
        return "small_rho"
    rho_p = PAdicNumber.from_rational(params.rho, p, params.precision)
    if p >= 3 and in_Ep(rho_p):
        b = params.rho ** (lam.l11 - lam.l1m)
        c = params.rho ** (lam.lmm - lam.lm1)
        if b != 1 or c != 1:
            return "E_p"
    return "generic"


def lambda_k2_analysis(params: ModelParams) -> MeasureCensus:
    """Translation-invariant measures of the lambda-model on the binary tree.

    The regime maps act on ``x`` with ``h = x^2``: for ``|rho| < 1`` the map is
    ``(A x^2 + 1)/(C x^2 + 1)``; for ``rho`` in E_p it is ``a (b u^2 + 1)/(u^2 + c)``.
    """
    if params.k != 2:
        raise BadParameter("lambda_k2_analysis needs k = 2")
    p, rho, lam = params.prime, params.rho, params.interaction
    regime = _detect_regime(params)
    census = MeasureCensus(params)
    comparison: dict = {"regime": regime}
    if regime == "small_rho":
        A, C = rho ** lam.l11, rho ** lam.lm1
        rmap = make_small_rho_f(p, A, C, params.precision)
        if 2 * lam.l11 > lam.lm1:
            exists = is_square_Qp(-rho ** lam.lm1, p)
            comparison.update(rule="small rho, 2 l11 > lm1", sqrt_exists=exists,
                              expected=3 if exists else 1,
                              expected_verdict="phase transition" if exists else None)
        else:
            comparison.update(rule="small rho, 2 l11 <= lm1", expected=3,
                              expected_verdict="quasi phase transition")
    elif regime == "E_p":
        a = rho ** (lam.l1m - lam.lm1)
        b = rho ** (lam.l11 - lam.l1m)
        c = rho ** (lam.lmm - lam.lm1)
        rmap = make_Ep_regime_g(p, a, b, c, params.precision)
        three = p % 4 == 1
        comparison.update(rule="rho in E_p, three points iff p = 1 mod 4", expected=3 if three else 1,
                          expected_verdict="phase transition" if three else None)
    else:
        rmap = params.recursion_map()
        comparison.update(rule=None)
    search = fixed_points(rmap, "regime" if regime != "generic" else None)
    for report in search:
        x = report.point
        h = x if regime == "generic" else x * x
        if h == -1:
            census.excluded.append({"h": h.literal(), "reason": "h = -1"})
            continue
        try:
            partition_function(params, 1, h)
        except ZeroPartition:
            census.excluded.append({"h": h.literal(), "reason": "zero partition function"})
            continue
        census.entries.append(CensusEntry(h, boundedness_generic(params, h), report,
                                          None if regime == "generic" else x))
    for d in search.inconclusive:
        census.notes.append(f"inconclusive residue cluster {d.approximation} at valuation {d.valuation}")
    comparison["observed"] = census.count
    if comparison.get("expected") is not None:
        comparison["match"] = comparison["expected"] == census.count
        if comparison.get("expected_verdict"):
            comparison["verdict_match"] = comparison["expected_verdict"] == census.verdict
    census.theorem_comparison = comparison
    for a_, b_ in _measure_level_duplicates(params, census.entries):
        census.notes.append(f"fields {a_} and {b_} give equal level-1 cylinder measures")
    return census
