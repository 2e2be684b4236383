"""Certified constants: pi, ln k, sqrt k, and logs of arbitrary positive rationals.

pi comes from the Machin decomposition 16*arctan(1/5) - 4*arctan(1/239) with the
alternating-series remainder added outward; logarithms use the inverse-hyperbolic-
tangent series after range reduction into [2/3, 4/3], with a geometric remainder
bound. Every function returns an Interval at the requested working precision and
escalates bits until the interval is narrower than 10**-target_digits.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import PrecisionCapExceeded
from .intervals import Interval, Precision

_GUARD_BITS = 8


def _bit_size(fr: Fraction) -> int:
    """Approximate log2 of a positive rational (within 1)."""
    return fr.numerator.bit_length() - fr.denominator.bit_length()


def _atanh_times2(z: Fraction, bits: int) -> Interval:
    """2*atanh(z) for |z| <= 1/3, as sum 2 z^(2i+1)/(2i+1) with geometric tail."""
    assert abs(z) <= Fraction(1, 3)
    acc = Interval.zero(bits)
    zz = z * z
    p = z
    i = 0
    while True:
        acc = acc + Interval.from_fraction(Fraction(2, 2 * i + 1) * p, bits)
        i += 1
        p *= zz
        nxt = Fraction(2, 2 * i + 1) * abs(p)
        if nxt == 0 or _bit_size(nxt) < -(bits + _GUARD_BITS):
            # remaining tail <= nxt / (1 - z^2) <= nxt * 9/8
            return acc.widen(nxt * Fraction(9, 8))


def _arctan_inv(x: int, bits: int) -> Interval:
    """arctan(1/x) for integer x >= 2; alternating series, remainder <= next term."""
    acc = Interval.zero(bits)
    p = x
    i = 0
    while True:
        acc = acc + Interval.from_fraction(Fraction((-1) ** i, (2 * i + 1) * p), bits)
        i += 1
        p *= x * x
        nxt = Fraction(1, (2 * i + 1) * p)
        if _bit_size(nxt) < -(bits + _GUARD_BITS):
            return acc.widen(nxt)


@lru_cache(maxsize=None)
def _pi_bits(bits: int) -> Interval:
    return _arctan_inv(5, bits).scale(16) - _arctan_inv(239, bits).scale(4)


@lru_cache(maxsize=None)
def _ln2_bits(bits: int) -> Interval:
    return _atanh_times2(Fraction(1, 3), bits)


@lru_cache(maxsize=None)
def _ln_prime_bits(p: int, bits: int) -> Interval:
    if p == 2:
        return _ln2_bits(bits)
    return _ln_fraction_bits(Fraction(p), bits)


def _ln_fraction_bits(fr: Fraction, bits: int) -> Interval:
    """ln of an exact positive rational: fr = 2^e * y, y in [2/3, 4/3]."""
    assert fr > 0
    e = _bit_size(fr)
    y = fr / Fraction(2) ** e
    while y > Fraction(4, 3):
        y /= 2
        e += 1
    while y < Fraction(2, 3):
        y *= 2
        e -= 1
    core = _atanh_times2((y - 1) / (y + 1), bits)
    if e == 0:
        return core
    return core + _ln2_bits(bits).scale(e)


def _refine(make, prec: Precision) -> Interval:
    """Evaluate at escalating bits until width <= 10**-target_digits."""
    p = prec
    while True:
        iv = make(p.bits)
        if iv.width <= p.eps:
            return iv
        p = p.escalated()  # raises PrecisionCapExceeded at the cap


def const_pi(prec: Precision) -> Interval:
    """Interval containing pi."""
    return _refine(_pi_bits, prec)


def _factorize(k: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            out[d] = out.get(d, 0) + 1
            k //= d
        d += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def const_ln(k: int, prec: Precision) -> Interval:
    """Interval containing ln k for integer k >= 2, assembled from prime logs."""
    if k < 2:
        raise ValueError("const_ln needs k >= 2")
    fac = _factorize(k)

    def make(bits: int) -> Interval:
        acc = Interval.zero(bits)
        for p, e in fac.items():
            acc = acc + _ln_prime_bits(p, bits).scale(e)
        return acc

    return _refine(make, prec)


def ln_fraction(fr: Fraction, prec: Precision) -> Interval:
    """Interval containing ln of an exact positive rational."""
    if fr <= 0:
        raise ValueError("ln of nonpositive rational")
    return _refine(lambda bits: _ln_fraction_bits(fr, bits), prec)


def interval_ln(iv: Interval, prec: Precision) -> Interval:
    """ln of a strictly positive interval (monotone: ln at the exact endpoints)."""
    if iv.lo <= 0:
        raise ValueError("interval_ln requires a strictly positive interval")
    lo = _ln_fraction_bits(iv.lo_fraction, prec.bits)
    hi = _ln_fraction_bits(iv.hi_fraction, prec.bits)
    return Interval(lo.lo, hi.hi, prec.bits)


def const_sqrt(k: int, prec: Precision) -> Interval:
    """Interval containing sqrt(k), exact when k is a perfect square."""
    if k < 0:
        raise ValueError("const_sqrt needs k >= 0")

    def make(bits: int) -> Interval:
        v = k << (2 * bits)
        r = isqrt(v)
        return Interval(r, r if r * r == v else r + 1, bits)

    return _refine(make, prec)
