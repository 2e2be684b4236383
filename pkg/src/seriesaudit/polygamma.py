"""Certified digamma/polygamma at positive rational arguments.

Strategy: shift the argument upward with the recurrence
psi^(k)(x) = psi^(k)(x+1) - (-1)^k k!/x^(k+1) until it clears a threshold, then
apply the Euler-Maclaurin asymptotic expansion with exact Bernoulli coefficients.
The remainder is bounded in magnitude by the first omitted term (classical for
real positive argument) and added outward on both ends. If the expansion's terms
start growing before reaching the target width, the shift is doubled and the
expansion retried.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .constants import _bit_size, _ln_fraction_bits
from .errors import NonPositiveArgument
from .intervals import Interval, Precision

_GUARD_BITS = 8


class BernoulliTable:
    """Even-index Bernoulli numbers B_2, B_4, ... as exact rationals, grown on demand.

    Values satisfy the defining recurrence sum_j C(m+1, j) B_j = 0 (with B_1 = -1/2).
    """

    def __init__(self):
        self._even: list[Fraction] = [Fraction(1)]  # B_0
        self._lock = threading.Lock()

    def even(self, i: int) -> Fraction:
        """B_{2i}."""
        with self._lock:
            while len(self._even) <= i:
                m = len(self._even)
                n = 2 * m
                s = sum(comb(n + 1, 2 * j) * self._even[j] for j in range(m))
                s += comb(n + 1, 1) * Fraction(-1, 2)  # the lone odd contribution, B_1
                self._even.append(-s / (n + 1))
            return self._even[i]


_BERNOULLI = BernoulliTable()


def bernoulli_even(i: int) -> Fraction:
    """B_{2i} from the shared table."""
    return _BERNOULLI.even(i)


def _em_expansion(k: int, a: Fraction, eps: Fraction) -> tuple[bool, Fraction, Fraction]:
    """Euler-Maclaurin tail at argument a > 0.

    Returns (converged, rational part, remainder bound). For k = 0 the rational
    part excludes the leading ln(a); for k >= 1 the whole main part is rational.
    """
    if k == 0:
        main = -Fraction(1, 2) / a
        sgn = 1
    else:
        sgn = (-1) ** (k - 1)
        main = sgn * (Fraction(factorial(k - 1)) / a ** k + Fraction(factorial(k), 2) / a ** (k + 1))
    a2 = a * a
    apow = a ** k if k else Fraction(1)
    prev_mag = None
    i = 1
    while i <= 512:
        apow *= a2
        b = bernoulli_even(i)
        if k == 0:
            t = -b / (2 * i * apow)
        else:
            t = sgn * b * Fraction(factorial(2 * i + k - 1), factorial(2 * i)) / apow
        mag = abs(t)
        if mag <= eps:
            return True, main, mag
        if prev_mag is not None and mag >= prev_mag:
            return False, main, mag  # asymptotic floor reached; need a larger argument
        main += t
        prev_mag = mag
        i += 1
    return False, main, prev_mag if prev_mag is not None else Fraction(1)


def _polygamma_bits(k: int, x: Fraction, bits: int, digits: int) -> Interval:
    eps = Fraction(1, 10 ** (digits + 3))
    threshold = max(10, (4 * digits + 9) // 10)  # ceil(0.4 * digits), floor 10
    shift = max(0, threshold - int(x) if x >= 1 else threshold)
    while x + shift < threshold:
        shift += 1
    while True:
        a = x + shift
        ok, main, rem = _em_expansion(k, a, eps)
        if ok:
            break
        shift = max(2 * shift, shift + threshold)
    res = Interval.from_fraction(main, bits)
    if k == 0:
        res = res + _ln_fraction_bits(a, bits)
    res = res.widen(rem)
    if shift:
        fk = factorial(k)
        ssum = Fraction(0)
        for i in range(shift):
            y = x + i
            ssum += Fraction((-1) ** k * fk) / y ** (k + 1)
        res = res - Interval.from_fraction(ssum, bits)
    return res


def polygamma(k: int, x: Fraction, prec: Precision) -> Interval:
    """Interval containing psi^(k)(x) for k >= 0 and rational x > 0."""
    if k < 0:
        raise ValueError("polygamma order must be >= 0")
    x = Fraction(x)
    if x <= 0:
        raise NonPositiveArgument(f"polygamma argument must be positive, got {x}")
    p = prec
    while True:
        iv = _polygamma_bits(k, x, p.bits, p.target_digits)
        if iv.width <= p.eps:
            return iv
        p = p.escalated()


def const_gamma(prec: Precision) -> Interval:
    """Euler-Mascheroni constant as -psi(1)."""
    return -polygamma(0, Fraction(1), prec)


def zeta3(prec: Precision) -> Interval:
    """Apery's constant zeta(3) = -psi''(1)/2."""
    return polygamma(2, Fraction(1), prec).scale(Fraction(-1, 2))


def hurwitz_tail(k: int, x: Fraction, prec: Precision) -> Interval:
    """Sum over n >= 1 of 1/(n+x)^k for k >= 2, i.e. the Hurwitz zeta value
    zeta(k, 1+x) = (-1)^k psi^(k-1)(1+x) / (k-1)!."""
    if k < 2:
        raise ValueError("hurwitz_tail needs k >= 2")
    iv = polygamma(k - 1, Fraction(x) + 1, prec)
    return iv.scale(Fraction((-1) ** k, factorial(k - 1)))
