"""Rigorous fixed-point interval arithmetic with dyadic endpoints.

An Interval holds integer endpoints lo <= hi scaled by 2**-bits; every operation
rounds outward, so the result always contains the exact real value. Precision is
escalated (never reduced) within an evaluation; escalation past the configured
bit cap raises PrecisionCapExceeded.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt

from .errors import PrecisionCapExceeded

DEFAULT_CAP_BITS = 16384


def _floor_div(a, b):
    return a // b


def _ceil_div(a, b):
    return -((-a) // b)


@dataclass(frozen=True)
class Precision:
    """Working precision in bits plus the requested decimal accuracy."""

    bits: int
    target_digits: int
    cap_bits: int = DEFAULT_CAP_BITS

    def __post_init__(self):
        if self.bits < 64:
            raise ValueError("working precision below 64 bits")
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")

    @staticmethod
    def for_digits(digits: int, cap_bits: int = DEFAULT_CAP_BITS) -> "Precision":
        bits = max(64, (digits + 12) * 10 // 3 + 32)
        return Precision(bits=bits, target_digits=digits, cap_bits=cap_bits)

    def escalated(self) -> "Precision":
        if self.bits >= self.cap_bits:
            raise PrecisionCapExceeded(f"cannot escalate past {self.cap_bits} bits")
        return replace(self, bits=min(2 * self.bits, self.cap_bits))

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 10 ** self.target_digits)


@dataclass(frozen=True)
class Interval:
    """[lo, hi] * 2**-bits, guaranteed to contain the exact value."""

    lo: int
    hi: int
    bits: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_fraction(fr: Fraction, bits: int) -> "Interval":
        n, d = fr.numerator, fr.denominator
        return Interval(_floor_div(n << bits, d), _ceil_div(n << bits, d), bits)

    @staticmethod
    def from_int(v: int, bits: int) -> "Interval":
        return Interval(v << bits, v << bits, bits)

    @staticmethod
    def zero(bits: int) -> "Interval":
        return Interval(0, 0, bits)

    @staticmethod
    def from_endpoints(lo: Fraction, hi: Fraction, bits: int) -> "Interval":
        n, d = lo.numerator, lo.denominator
        l = _floor_div(n << bits, d)
        n, d = hi.numerator, hi.denominator
        h = _ceil_div(n << bits, d)
        return Interval(l, h, bits)

    # -- views -------------------------------------------------------------

    @property
    def lo_fraction(self) -> Fraction:
        return Fraction(self.lo, 1 << self.bits)

    @property
    def hi_fraction(self) -> Fraction:
        return Fraction(self.hi, 1 << self.bits)

    @property
    def width(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.bits)

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.lo + self.hi, 2 << self.bits)

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return f"Interval({float(self.lo_fraction)!r}, {float(self.hi_fraction)!r}, bits={self.bits})"

    # -- predicates ----------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def contains_fraction(self, fr: Fraction) -> bool:
        return self.lo_fraction <= fr <= self.hi_fraction

    def contains(self, other: "Interval") -> bool:
        return self.lo_fraction <= other.lo_fraction and other.hi_fraction <= self.hi_fraction

    def intersects(self, other: "Interval") -> bool:
        return self.lo_fraction <= other.hi_fraction and other.lo_fraction <= self.hi_fraction

    def gap_to(self, other: "Interval") -> Fraction:
        """Distance between disjoint intervals (0 if they intersect)."""
        if self.intersects(other):
            return Fraction(0)
        if self.hi_fraction < other.lo_fraction:
            return other.lo_fraction - self.hi_fraction
        return self.lo_fraction - other.hi_fraction

    # -- arithmetic ----------------------------------------------------------

    def _same(self, other: "Interval"):
        if self.bits != other.bits:
            raise ValueError(f"mixed working precision: {self.bits} vs {other.bits} bits")

    def __add__(self, other: "Interval") -> "Interval":
        self._same(other)
        return Interval(self.lo + other.lo, self.hi + other.hi, self.bits)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.bits)

    def __sub__(self, other: "Interval") -> "Interval":
        return self + (-other)

    def __mul__(self, other: "Interval") -> "Interval":
        self._same(other)
        ps = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps) >> self.bits, _ceil_div(max(ps), 1 << self.bits), self.bits)

    def divide(self, other: "Interval") -> "Interval":
        self._same(other)
        if other.contains_zero():
            raise ZeroDivisionError("interval division by interval containing 0")
        qs = []
        shift = 1 << self.bits
        for x in (self.lo, self.hi):
            for y in (other.lo, other.hi):
                qs.append(_floor_div(x * shift, y))
                qs.append(_ceil_div(x * shift, y))
        return Interval(min(qs), max(qs), self.bits)

    def scale(self, fr: Fraction | int) -> "Interval":
        """Exact multiplication by a rational scalar, rounded outward."""
        fr = Fraction(fr)
        n, d = fr.numerator, fr.denominator
        cands = (
            _floor_div(n * self.lo, d),
            _floor_div(n * self.hi, d),
            _ceil_div(n * self.lo, d),
            _ceil_div(n * self.hi, d),
        )
        return Interval(min(cands), max(cands), self.bits)

    def widen(self, bound: Fraction) -> "Interval":
        """Expand both endpoints outward by a nonnegative rational bound."""
        if bound < 0:
            raise ValueError("widen bound must be nonnegative")
        d = _ceil_div(bound.numerator << self.bits, bound.denominator)
        return Interval(self.lo - d, self.hi + d, self.bits)

    def sqrt(self) -> "Interval":
        """Square root of a nonnegative interval (endpoints clamped at 0)."""
        if self.hi < 0:
            raise ValueError("sqrt of negative interval")
        lo = max(self.lo, 0)
        l = isqrt(lo << self.bits)
        h = isqrt(self.hi << self.bits)
        if h * h != self.hi << self.bits:
            h += 1
        return Interval(l, h, self.bits)

    def to_bits(self, bits: int) -> "Interval":
        """Re-round to another working precision (outward when coarsening)."""
        if bits == self.bits:
            return self
        if bits > self.bits:
            s = bits - self.bits
            return Interval(self.lo << s, self.hi << s, bits)
        s = self.bits - bits
        return Interval(self.lo >> s, _ceil_div(self.hi, 1 << s), bits)


def decimal_lower(iv: Interval, digits: int) -> str:
    """Decimal string <= iv.lo with the given number of fractional digits."""
    return _decimal_directed(iv.lo, iv.bits, digits, up=False)

def decimal_upper(iv: Interval, digits: int) -> str:
    return _decimal_directed(iv.hi, iv.bits, digits, up=True)


def _decimal_directed(v: int, bits: int, digits: int, up: bool) -> str:
    scaled = v * 10 ** digits
    q = _ceil_div(scaled, 1 << bits) if up else _floor_div(scaled, 1 << bits)
    sign = "-" if q < 0 else ""
    q = abs(q)
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def certified_decimal(iv: Interval, max_digits: int) -> tuple[str, int]:
    """Largest decimal prefix on which lo and hi agree (truncation, never rounding).

    Returns (decimal string, certified fractional digit count); a zero-straddling
    interval certifies 0 digits.
    """
    for d in range(max_digits, -1, -1):
        p = 10 ** d
        lo_t = _floor_div(iv.lo * p, 1 << iv.bits)
        hi_t = _floor_div(iv.hi * p, 1 << iv.bits)
        if lo_t == hi_t:
            sign = "-" if lo_t < 0 else ""
            s = str(abs(lo_t)).rjust(d + 1, "0")
            return (f"{sign}{s[:-d]}.{s[-d:]}" if d else f"{sign}{s}"), d
    return "0", 0
