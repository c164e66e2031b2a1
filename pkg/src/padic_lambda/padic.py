"""Finite precision p-adic numbers with exact valuations.

A nonzero element is stored as ``p**valuation * unit`` where ``unit`` is an
integer coprime to ``p`` known modulo ``p**precision``.  Valuations are never
rounded: an operation whose result would lose every carried digit raises
:class:`PrecisionExhausted` instead of guessing.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

from .errors import NotPrime, OutOfDomain, PadicZeroDivision, PrecisionExhausted

DEFAULT_PRECISION = int(os.environ.get("PADIC_LAMBDA_PRECISION", "64"))
DISPLAY_DIGITS = 8

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def valuation_int(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_rational(q: Rational, p: int) -> int:
    q = Fraction(q)
    return valuation_int(q.numerator, p) - valuation_int(q.denominator, p)


@total_ordering
@dataclass(frozen=True)
class NormValue:
    """The value ``p**(-exponent)``, or zero when ``exponent`` is None."""

    prime: int
    exponent: int | None

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def _key(self):
        return (0, 0) if self.exponent is None else (1, -self.exponent)

    def __lt__(self, other: NormValue) -> bool:
        if not isinstance(other, NormValue):
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other) -> bool:
        if isinstance(other, NormValue):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __mul__(self, other: NormValue) -> NormValue:
        if self.exponent is None or other.exponent is None:
            return NormValue(self.prime, None)
        return NormValue(self.prime, self.exponent + other.exponent)

    def as_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return Fraction(self.prime) ** (-self.exponent)

    def __str__(self) -> str:
        return str(self.as_fraction())

    def to_dict(self) -> dict:
        return {"exponent": self.exponent, "value": str(self)}


@dataclass(frozen=True, eq=False)
class PAdicNumber:
    """An element of Q_p carried to ``precision`` significant base-p digits.

    ``unit`` is coprime to ``prime`` and lies in ``[1, prime**precision)``.
    The zero element is exact and carries ``is_zero=True``.
    """

    prime: int
    valuation: int = 0
    unit: int = 0
    precision: int = DEFAULT_PRECISION
    is_zero: bool = False

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, prime: int, precision: int = DEFAULT_PRECISION) -> PAdicNumber:
        return cls(prime, 0, 0, precision, True)

    @classmethod
    def from_rational(cls, q: Rational, prime: int,
                      precision: int = DEFAULT_PRECISION) -> PAdicNumber:
        q = Fraction(q)
        if precision < 1:
            raise ValueError("precision must be >= 1")
        if q == 0:
            return cls.zero(prime, precision)
        num, den = q.numerator, q.denominator
        vn = valuation_int(num, prime)
        vd = valuation_int(den, prime)
        num //= prime ** vn
        den //= prime ** vd
        mod = prime ** precision
        unit = num * pow(den, -1, mod) % mod
        return cls(prime, vn - vd, unit, precision)

    @classmethod
    def from_unit(cls, prime: int, valuation: int, unit: int,
                  precision: int) -> PAdicNumber:
        """Normalise an arbitrary integer ``unit`` (which may contain factors of p)."""
        unit %= prime ** precision
        if unit == 0:
            raise PrecisionExhausted("no significant digits left")
        w = valuation_int(unit, prime)
        if w:
            unit //= prime ** w
            precision -= w
        return cls(prime, valuation + w, unit % prime ** precision, precision)

    def coerce(self, other) -> PAdicNumber:
        if isinstance(other, PAdicNumber):
            if other.prime != self.prime:
                raise ValueError(f"mixed primes {self.prime} and {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdicNumber.from_rational(other, self.prime, self.precision)
        raise TypeError(f"cannot combine PAdicNumber with {type(other).__name__}")

    # -- views ----------------------------------------------------------
    @property
    def digits(self) -> list[int]:
        if self.is_zero:
            return []
        out, u = [], self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.prime)
            out.append(d)
        return out

    @property
    def absolute_precision(self) -> float:
        """Power of p modulo which the number is known (inf for exact zero)."""
        return math.inf if self.is_zero else self.valuation + self.precision

    def norm(self) -> NormValue:
        return NormValue(self.prime, None if self.is_zero else self.valuation)

    def residue(self) -> int:
        """Image in F_p of an element of Z_p."""
        if self.is_zero or self.valuation > 0:
            return 0
        if self.valuation < 0:
            raise OutOfDomain("residue of a non-integral p-adic number")
        return self.unit % self.prime

    def to_integer_mod(self, n: int) -> int:
        """Representative of ``self`` modulo ``p**n`` (requires self in Z_p)."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise OutOfDomain("not a p-adic integer")
        if n > self.absolute_precision:
            raise PrecisionExhausted(f"only {self.absolute_precision} digits known")
        return self.unit * self.prime ** self.valuation % self.prime ** n

    def with_precision(self, precision: int) -> PAdicNumber:
        if self.is_zero:
            return PAdicNumber.zero(self.prime, precision)
        precision = min(precision, self.precision)
        return PAdicNumber(self.prime, self.valuation,
                           self.unit % self.prime ** precision, precision)

    def to_rational_approx(self) -> Fraction:
        """Rational number agreeing with ``self`` to every carried digit."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    # -- arithmetic -----------------------------------------------------
    def __neg__(self) -> PAdicNumber:
        if self.is_zero:
            return self
        mod = self.prime ** self.precision
        return PAdicNumber(self.prime, self.valuation, (-self.unit) % mod, self.precision)

    def __add__(self, other) -> PAdicNumber:
        other = self.coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.prime
        vm = min(self.valuation, other.valuation)
        top = min(self.valuation + self.precision, other.valuation + other.precision)
        s = (self.unit * p ** (self.valuation - vm)
             + other.unit * p ** (other.valuation - vm)) % p ** (top - vm)
        if s == 0:
            raise PrecisionExhausted(
                f"cancellation consumed all digits (difference below p^{top})")
        w = valuation_int(s, p)
        return PAdicNumber(p, vm + w, s // p ** w, top - vm - w)

    __radd__ = __add__

    def __sub__(self, other) -> PAdicNumber:
        return self + (-self.coerce(other))

    def __rsub__(self, other) -> PAdicNumber:
        return self.coerce(other) - self

    def __mul__(self, other) -> PAdicNumber:
        other = self.coerce(other)
        if self.is_zero or other.is_zero:
            return PAdicNumber.zero(self.prime, min(self.precision, other.precision))
        prec = min(self.precision, other.precision)
        return PAdicNumber(self.prime, self.valuation + other.valuation,
                           self.unit * other.unit % self.prime ** prec, prec)

    __rmul__ = __mul__

    def inverse(self) -> PAdicNumber:
        if self.is_zero:
            raise PadicZeroDivision("inverse of zero")
        mod = self.prime ** self.precision
        return PAdicNumber(self.prime, -self.valuation, pow(self.unit, -1, mod),
                           self.precision)

    def __truediv__(self, other) -> PAdicNumber:
        return self * self.coerce(other).inverse()

    def __rtruediv__(self, other) -> PAdicNumber:
        return self.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> PAdicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if self.is_zero:
            if n < 0:
                raise PadicZeroDivision("negative power of zero")
            return PAdicNumber.from_rational(1, self.prime, self.precision) if n == 0 else self
        base = self if n >= 0 else self.inverse()
        mod = self.prime ** self.precision
        return PAdicNumber(self.prime, base.valuation * abs(n),
                           pow(base.unit, abs(n), mod), self.precision)

    # -- comparison -----------------------------------------------------
    def distance_valuation(self, other) -> float:
        """Valuation of ``self - other``; ``inf`` if they agree on all carried digits."""
        try:
            d = self - other
        except PrecisionExhausted:
            return math.inf
        return math.inf if d.is_zero else d.valuation

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PAdicNumber, int, Fraction)):
            return NotImplemented
        other = self.coerce(other)
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.distance_valuation(other) == math.inf

    __hash__ = None

    # -- text -----------------------------------------------------------
    def literal(self, ndigits: int = DISPLAY_DIGITS) -> str:
        """Render as ``p^v*(d0+d1*p+d2*p^2+...)``."""
        if self.is_zero:
            return "0"
        p = self.prime
        terms = []
        for i, d in enumerate(self.digits[:ndigits]):
            if i == 0:
                terms.append(str(d))
            elif d:
                terms.append(f"{d}*{p}" if i == 1 else f"{d}*{p}^{i}")
        tail = "+..." if self.precision > ndigits else ""
        return f"{p}^{self.valuation}*(" + "+".join(terms) + tail + ")"

    def __repr__(self) -> str:
        return f"PAdicNumber({self.literal()}, prec={self.precision})"

    __str__ = literal

    def to_dict(self) -> dict:
        if self.is_zero:
            return {"zero": True, "prime": self.prime}
        return {"prime": self.prime, "valuation": self.valuation,
                "digits": self.digits, "precision": self.precision}

    @classmethod
    def from_dict(cls, data: dict) -> PAdicNumber:
        p = data["prime"]
        if data.get("zero"):
            return cls.zero(p)
        unit = sum(d * p ** i for i, d in enumerate(data["digits"]))
        return cls(p, data["valuation"], unit, data["precision"])


@dataclass(frozen=True)
class PAdicBall:
    """Open ball ``|x - center|_p < p**radius_exponent`` (closed when ``closed``)."""

    center: PAdicNumber
    radius_exponent: int
    closed: bool = False

    @property
    def prime(self) -> int:
        return self.center.prime

    @property
    def radius(self) -> Fraction:
        return Fraction(self.prime) ** self.radius_exponent

    @property
    def min_valuation(self) -> int:
        """Smallest valuation of ``x - center`` for points of the ball."""
        return -self.radius_exponent + (0 if self.closed else 1)

    def __contains__(self, x) -> bool:
        return ball_contains(self, x)

    def contains_ball(self, other: PAdicBall) -> bool:
        return (other.min_valuation >= self.min_valuation
                and ball_contains(self, other.center))

    def is_disjoint(self, other: PAdicBall) -> bool:
        return not (ball_contains(self, other.center) or ball_contains(other, self.center))

    def to_dict(self) -> dict:
        return {"center": self.center.literal(), "center_digits": self.center.to_dict(),
                "radius_exponent": self.radius_exponent, "closed": self.closed}


# -- module level operations ----------------------------------------------

def parse_rational(numerator: int, denominator: int, prime: int,
                   precision: int = DEFAULT_PRECISION) -> PAdicNumber:
    check_prime(prime)
    if denominator == 0:
        raise PadicZeroDivision("zero denominator")
    return PAdicNumber.from_rational(Fraction(numerator, denominator), prime, precision)


def parse_literal(text: str, prime: int, precision: int = DEFAULT_PRECISION) -> PAdicNumber:
    """Parse an exact rational written as ``m/n`` or ``m``."""
    q = Fraction(text.strip())
    return parse_rational(q.numerator, q.denominator, prime, precision)


def add(x: PAdicNumber, y: PAdicNumber) -> PAdicNumber:
    return x + y


def sub(x: PAdicNumber, y: PAdicNumber) -> PAdicNumber:
    return x - y


def mul(x: PAdicNumber, y: PAdicNumber) -> PAdicNumber:
    return x * y


def div(x: PAdicNumber, y: PAdicNumber) -> PAdicNumber:
    return x / y


def pow_int(x: PAdicNumber, n: int) -> PAdicNumber:
    return x ** n


def norm(x: PAdicNumber) -> NormValue:
    return x.norm()


def exp_p(x: PAdicNumber) -> PAdicNumber:
    """p-adic exponential, summed from the constant term."""
    p = x.prime
    one = PAdicNumber.from_rational(1, p, x.precision)
    if x.is_zero:
        return one
    if x.valuation < (2 if p == 2 else 1):
        raise OutOfDomain(f"exp_p diverges for |x|_p = {x.norm()}")
    target = x.precision
    total, term, n = one, one, 0
    # v(x^n/n!) >= n*(v - 1/(p-1)); stop once that bound passes the target
    while n * (x.valuation * (p - 1) - 1) < target * (p - 1):
        n += 1
        term = term * x / n
        if term.valuation < target:
            total = total + term
    return total.with_precision(target)


def in_Zp(x: PAdicNumber) -> bool:
    return x.is_zero or x.valuation >= 0


def in_unit_sphere(x: PAdicNumber) -> bool:
    return not x.is_zero and x.valuation == 0


def in_Ep(x: PAdicNumber) -> bool:
    """``|x|=1`` and ``|x-1| < p**(-1/(p-1))``."""
    if not in_unit_sphere(x):
        return False
    return x.distance_valuation(1) >= (2 if x.prime == 2 else 1)


def ball_contains(ball: PAdicBall, x: PAdicNumber) -> bool:
    x = ball.center.coerce(x)
    return x.distance_valuation(ball.center) >= ball.min_valuation
