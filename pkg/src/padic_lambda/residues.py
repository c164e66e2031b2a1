"""Residues mod p, roots of ``x^k + 1``, Hensel lifting and Q_p root finding.

Polynomials carry exact rational coefficients.  Root finding works on the
integer polynomial obtained after substituting ``x = p^v u`` and clearing
content, so every residue test and every lifting step is exact integer
arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadParameter, NotARoot, NotSimpleRoot
from .padic import (DEFAULT_PRECISION, PAdicNumber, Rational, check_prime,
                    valuation_int, valuation_rational)

MAX_ENUMERATION_PRIME = 10 ** 6
# extra digits lifted beyond the requested precision
LIFT_GUARD = 8


class Polynomial:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [Fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs) if cs else (Fraction(0),)

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Rational) -> Polynomial:
        return cls([c])

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def _lift(self, other) -> Polynomial:
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        other = self._lift(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        result, base = Polynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs[1:], start=1)) \
            if len(self.coeffs) > 1 else Polynomial([0])

    def __call__(self, x):
        """Horner evaluation at a rational or a PAdicNumber."""
        if isinstance(x, PAdicNumber):
            acc = PAdicNumber.zero(x.prime, x.precision)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_variable(self, s: Rational) -> Polynomial:
        """The polynomial ``x -> self(s*x)``."""
        s = Fraction(s)
        return Polynomial(c * s ** i for i, c in enumerate(self.coeffs))

    def primitive_integer(self) -> list[int]:
        """Integer coefficients with gcd 1 proportional to ``self``."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        return [c // g for c in ints] if g else ints


def _eval_int(coeffs: Sequence[int], x: int, mod: int | None = None) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
        if mod:
            acc %= mod
    return acc


def _deriv_int(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [0]


def _taylor_shift(coeffs: Sequence[int], t: int, p: int) -> list[int]:
    """Coefficients of ``y -> P(t + p*y)``."""
    n = len(coeffs)
    out = list(coeffs)
    # synthetic division repeated: out becomes coefficients of P(t + y)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += t * out[j + 1]
    return [c * p ** i for i, c in enumerate(out)]


def _content_valuation(coeffs: Sequence[int], p: int) -> int:
    return min(valuation_int(c, p) for c in coeffs if c)


# -- residue layer ----------------------------------------------------------

@dataclass
class ResidueReport:
    prime: int
    degree: int
    roots_mod_p: list[int]
    sol_set: list[int]
    kappa_p: int
    n_kp: int | None
    exists_in_Fp: bool
    exists_in_Qp: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def kth_roots_of_minus_one_mod_p(p: int, k: int) -> ResidueReport:
    """Enumerate the solutions of ``x^k = -1`` in F_p."""
    check_prime(p)
    if k < 1:
        raise BadParameter("k must be >= 1")
    if p > MAX_ENUMERATION_PRIME:
        raise BadParameter(f"residue enumeration limited to p <= {MAX_ENUMERATION_PRIME}")
    roots = [x for x in range(1, p) if pow(x, k, p) == p - 1]
    sol = [x for x in roots if x != p - 1]
    exists = bool(roots)
    return ResidueReport(
        prime=p, degree=k, roots_mod_p=roots, sol_set=sol, kappa_p=len(sol),
        n_kp=math.gcd(k, p - 1) if exists else None,
        exists_in_Fp=exists,
        exists_in_Qp=exists_kth_root_minus_one_Qp(p, k),
    )


def exists_kth_root_minus_one_Fp(p: int, k: int) -> bool:
    """Criterion ``(p-1)/gcd(k, p-1)`` even; for p = 2 the root 1 always exists."""
    if p == 2:
        return True
    return ((p - 1) // math.gcd(k, p - 1)) % 2 == 0


def exists_kth_root_minus_one_Qp(p: int, k: int) -> bool:
    check_prime(p)
    if k < 1:
        raise BadParameter("k must be >= 1")
    q = k
    while q % p == 0:
        q //= p
    return exists_kth_root_minus_one_Fp(p, q)


def is_square_Qp(q: Rational, p: int) -> bool:
    """Whether the nonzero rational ``q`` is a square in Q_p."""
    q = Fraction(q)
    if q == 0:
        return True
    v = valuation_rational(q, p)
    if v % 2:
        return False
    u = q / Fraction(p) ** v
    unit = u.numerator * pow(u.denominator, -1, 8 if p == 2 else p)
    if p == 2:
        return unit % 8 == 1
    return pow(unit % p, (p - 1) // 2, p) == 1


# -- lifting and root finding ----------------------------------------------

def _newton_lift(coeffs: Sequence[int], root: int, p: int, target: int) -> int:
    """Lift a simple root mod p of an integer polynomial to ``p**target``."""
    dcoeffs = _deriv_int(coeffs)
    prec = 1
    x = root % p
    while prec < target:
        prec = min(2 * prec, target)
        mod = p ** prec
        fx = _eval_int(coeffs, x, mod)
        dfx = _eval_int(dcoeffs, x, mod)
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return x


def hensel_lift(poly: Polynomial | Sequence[int], root_mod_p: int, prime: int,
                target_precision: int = DEFAULT_PRECISION) -> PAdicNumber:
    """Lift a simple root modulo p of an integer polynomial to a root in Z_p."""
    check_prime(prime)
    coeffs = list(poly.primitive_integer() if isinstance(poly, Polynomial) else poly)
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise BadParameter("hensel_lift needs integer coefficients")
    coeffs = [int(c) for c in coeffs]
    if _eval_int(coeffs, root_mod_p, prime) != 0:
        raise NotARoot(f"{root_mod_p} is not a root modulo {prime}")
    if _eval_int(_deriv_int(coeffs), root_mod_p, prime) == 0:
        raise NotSimpleRoot(f"derivative vanishes modulo {prime} at {root_mod_p}")
    x = _newton_lift(coeffs, root_mod_p, prime, target_precision)
    if x == 0:
        return PAdicNumber.zero(prime, target_precision)
    return PAdicNumber.from_unit(prime, 0, x, target_precision)


def newton_polygon(poly: Polynomial, p: int) -> list[tuple[Fraction, int]]:
    """Root valuations with multiplicities read off the lower convex hull.

    Zero roots (vanishing low coefficients) are not included.
    """
    pts = [(i, valuation_rational(c, p)) for i, c in enumerate(poly.coeffs) if c]
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        out.append((-slope, x2 - x1))
    return out


def newton_window(poly: Polynomial, p: int) -> list[int]:
    """Integral root valuations predicted by the Newton polygon."""
    return sorted({int(v) for v, _ in newton_polygon(poly, p) if v.denominator == 1})


@dataclass(frozen=True)
class DegenerateRoot:
    """A residue cluster that could not be separated within the depth budget."""

    valuation: int
    approximation: int
    depth: int

    def to_dict(self) -> dict:
        return dict(self.__dict__, inconclusive=True)


@dataclass
class RootSearch:
    roots: list[PAdicNumber] = field(default_factory=list)
    inconclusive: list[DegenerateRoot] = field(default_factory=list)

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def to_dict(self) -> dict:
        return {"roots": [r.to_dict() for r in self.roots],
                "literals": [r.literal() for r in self.roots],
                "inconclusive": [d.to_dict() for d in self.inconclusive]}


def _unit_roots(coeffs: list[int], p: int, precision: int, valuation: int,
                max_depth: int) -> tuple[list[tuple[int, int]], list[DegenerateRoot]]:
    """Roots of an integer polynomial among the p-adic units.

    Returns (approximation, absolute precision) pairs.  Residues that are
    multiple roots mod p are refined by ``x = t + p*y`` until they split.
    """
    found: list[tuple[int, int]] = []
    stuck: list[DegenerateRoot] = []
    # stack entries: (coeffs in y, base, depth) meaning x = base + p**depth * y
    stack = [(coeffs, 0, 0)]
    while stack:
        cs, base, depth = stack.pop()
        residues = range(1, p) if depth == 0 else range(p)
        dcs = _deriv_int(cs)
        for t in residues:
            if _eval_int(cs, t, p):
                continue
            here = base + t * p ** depth
            if _eval_int(dcs, t, p):
                target = max(precision - depth, 1)
                y = _newton_lift(cs, t, p, target)
                found.append((base + y * p ** depth, depth + target))
                continue
            if depth + 1 >= max_depth:
                stuck.append(DegenerateRoot(valuation, here, depth + 1))
                continue
            shifted = _taylor_shift(cs, t, p)
            c = _content_valuation(shifted, p)
            stack.append(([s // p ** c for s in shifted], here, depth + 1))
    return found, stuck


def poly_roots_Qp(poly: Polynomial, prime: int, valuation_window: Iterable[int] | None = None,
                  precision: int = DEFAULT_PRECISION) -> RootSearch:
    """All roots of ``poly`` in Q_p whose valuation lies in the window.

    With no window the integral slopes of the Newton polygon are used, which
    makes the search complete.  Roots are returned ordered by valuation and
    then by residue.
    """
    check_prime(prime)
    if prime > MAX_ENUMERATION_PRIME:
        raise BadParameter(f"residue enumeration limited to p <= {MAX_ENUMERATION_PRIME}")
    if poly.is_zero():
        raise BadParameter("zero polynomial")
    result = RootSearch()
    cs = list(poly.coeffs)
    zero_mult = 0
    while cs[0] == 0 and len(cs) > 1:
        cs.pop(0)
        zero_mult += 1
    if zero_mult:
        result.roots.append(PAdicNumber.zero(prime, precision))
    core = Polynomial(cs)
    if core.degree < 1:
        return result
    window = newton_window(core, prime) if valuation_window is None \
        else sorted(set(valuation_window))
    work = precision + LIFT_GUARD
    for v in window:
        scaled = core.scale_variable(Fraction(prime) ** v).primitive_integer()
        found, stuck = _unit_roots(scaled, prime, work, v, max_depth=work)
        entries = []
        for approx, prec in found:
            entries.append((approx % prime, approx % prime ** prec,
                            PAdicNumber.from_unit(prime, v, approx, prec)))
        entries.sort(key=lambda e: (e[0], e[1]))
        result.roots.extend(e[2] for e in entries)
        result.inconclusive.extend(stuck)
    return result
