"""Direct numeric evaluation of series with certified tails, plus the benchmark.

The numeric channel is independent of the closed-form machinery: it combines an
exact rational prefix sum with certified tail enclosures. Tail enclosures come in
two strengths: the integral-test bracket (int_{N+1}..inf <= tail <= int_N..inf,
antiderivative taken symbolically from the partial-fraction form), and the
Euler-Maclaurin pole-term tails used by eval_series to reach arbitrary digit
targets. eval_series cross-checks the sharp tail against the integral bracket.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .constants import ln_fraction, _ln_fraction_bits
from .errors import DivergentSeries, OddArgument
from .exact import PartialFractionForm, PoleTerm, Summand, partial_fractions
from .intervals import Interval, Precision
from .polygamma import polygamma

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency, but stay usable
    _mpq = Fraction

_LEAF = 64


def _tree_sum(term, lo: int, hi: int):
    """Balanced exact summation of term(n) over [lo, hi); keeps bignums shallow."""
    if hi - lo <= _LEAF:
        s = _mpq(0)
        for n in range(lo, hi):
            s += term(n)
        return s
    mid = (lo + hi) // 2
    return _tree_sum(term, lo, mid) + _tree_sum(term, mid, hi)


def _sum_to_fraction(q) -> Fraction:
    # Fraction(numbers.Rational) copies numerator/denominator without re-reducing
    return q if isinstance(q, Fraction) else Fraction(q)


def partial_sum(s: Summand, n_terms: int) -> Fraction:
    """Exact sum of the first n_terms terms."""
    if n_terms < 1:
        raise ValueError("need at least one term")
    num = _mpq(s.numerator.numerator, s.numerator.denominator)
    facs = tuple((f.a, f.b, f.m) for f in s.factors)

    def term(n):
        d = 1
        for a, b, m in facs:
            d *= (a * n + b) ** m
        return num / d

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 1000 + n_terms.bit_length() * 50))
    try:
        return _sum_to_fraction(_tree_sum(term, 1, n_terms + 1))
    finally:
        sys.setrecursionlimit(old)


def harmonic(n: int) -> Fraction:
    """Exact harmonic number H_n."""
    if n < 1:
        raise ValueError("harmonic needs n >= 1")
    return _sum_to_fraction(_tree_sum(lambda k: _mpq(1, k), 1, n + 1))


def odd_window_sum(n: int) -> Fraction:
    """Exact 1/(n+1) + 1/(n+3) + ... + 1/(2n-1) for even n >= 2."""
    if n % 2:
        raise OddArgument(f"window end must be even, got {n}")
    if n < 2:
        raise ValueError("need n >= 2")
    return _sum_to_fraction(_tree_sum(lambda j: _mpq(1, 2 * j + 1), n // 2, n))


@dataclass(frozen=True)
class TailBracket:
    """Integral-test enclosure of the tail sum past index n_cut."""

    n_cut: int
    lower: Interval
    upper: Interval

    @property
    def enclosure(self) -> Interval:
        return Interval(min(self.lower.lo, self.upper.lo), max(self.lower.hi, self.upper.hi), self.lower.bits)


def _pf_antiderivative_tail(pf: PartialFractionForm, t: Fraction, bits: int) -> Interval:
    """int_t^inf of the partial-fraction form (order-1 logs combine because the
    residues cancel; order-k >= 2 terms integrate to rationals)."""
    acc = Interval.zero(bits)
    rat = Fraction(0)
    for term in pf.terms:
        if term.k == 1:
            # -c * ln((t + x)/t); the ln t parts cancel across the group
            acc = acc - _ln_fraction_bits((t + term.x) / t, bits).scale(term.coeff)
        else:
            rat += term.coeff / ((term.k - 1) * (t + term.x) ** (term.k - 1))
    return acc + Interval.from_fraction(rat, bits)


def tail_bracket(s: Summand, n_cut: int, prec: Precision) -> TailBracket:
    """Certified integral-test bracket for the tail past n_cut.

    Sound because the term is positive (after sign normalization) and decreasing
    for n >= 1: every factor is positive and increasing there.
    """
    if s.degree < 2:
        raise DivergentSeries("tail bracket needs total degree >= 2")
    if n_cut < 1:
        raise ValueError("cutoff must be >= 1")
    pf = partial_fractions(s)
    sign = 1 if s.numerator > 0 else -1
    if sign < 0:
        pf = PartialFractionForm(tuple(PoleTerm(t.x, t.k, -t.coeff) for t in pf.terms))
    bits = prec.bits
    upper = _pf_antiderivative_tail(pf, Fraction(n_cut), bits)
    lower = _pf_antiderivative_tail(pf, Fraction(n_cut + 1), bits)
    if sign < 0:
        lower, upper = -upper, -lower
    return TailBracket(n_cut, lower, upper)


def _em_tail(pf: PartialFractionForm, n_cut: int, digits: int, bits: int, cap_bits: int) -> Interval:
    """Sharp tail past n_cut via polygamma values at shifted arguments:
    order-1 group -> -sum c_j psi(N+1+x_j); order-k -> c_j (-1)^k psi^(k-1)(N+1+x_j)/(k-1)!."""
    prec = Precision(bits=bits, target_digits=digits, cap_bits=max(cap_bits, 2 * bits))
    acc = Interval.zero(bits)
    for t in pf.terms:
        a = Fraction(n_cut + 1) + t.x
        if t.k == 1:
            acc = acc - polygamma(0, a, prec).to_bits(bits).scale(t.coeff)
        else:
            iv = polygamma(t.k - 1, a, prec).to_bits(bits)
            acc = acc + iv.scale(t.coeff * Fraction((-1) ** t.k, factorial(t.k - 1)))
    return acc


def eval_series(s: Summand, digits: int, prec: Precision | None = None) -> Interval:
    """Certified interval of width <= 10**-digits for sum over n >= 1.

    Exact partial sum to a modest power-of-two cutoff plus Euler-Maclaurin tails of
    the pole terms, escalating cutoff and precision together; the sharp tail is
    cross-checked against the integral-test bracket at the same cutoff.
    """
    if s.degree < 2:
        raise DivergentSeries("series of total degree < 2 diverges")
    pf = partial_fractions(s)
    # margin for the coefficient mass of the pole terms
    cmass = sum(abs(t.coeff) for t in pf.terms) + 1
    extra = len(str(int(cmass))) + 6
    if prec is None:
        prec = Precision.for_digits(digits)
    work = Precision.for_digits(digits + extra, prec.cap_bits)
    n_cut = 64
    target = Fraction(1, 10 ** digits)
    while True:
        prefix = Interval.from_fraction(partial_sum(s, n_cut), work.bits)
        tail = _em_tail(pf, n_cut, work.target_digits, work.bits, prec.cap_bits)
        bracket = tail_bracket(s, n_cut, work)
        if not tail.intersects(bracket.enclosure):
            raise AssertionError("certified tails disagree; arithmetic fault")
        out = prefix + tail
        if out.width <= target:
            return out
        n_cut *= 4
        work = work.escalated()


@dataclass(frozen=True)
class BenchmarkRow:
    """Certified error bound when truncating after n_terms terms."""

    n_terms: int
    error_bound: Fraction
    digits: int


def _digits_of(err: Fraction) -> int:
    if err <= 0:
        return 0
    d = 0
    while err <= Fraction(1, 10 ** (d + 1)):
        d += 1
        if d > 100000:
            break
    return d


def benchmark_summand(s: Summand, schedule: list[int], prec: Precision | None = None) -> list[BenchmarkRow]:
    """Certified truncation-error bounds (upper integral bound) along a schedule."""
    prec = prec or Precision.for_digits(30)
    rows = []
    for n in schedule:
        br = tail_bracket(s, n, prec)
        err = br.upper.hi_fraction
        rows.append(BenchmarkRow(n, err, _digits_of(err)))
    return rows


def loglog_slope(rows: list[BenchmarkRow]) -> float:
    """Least-squares slope of log10(error bound) against log10(N)."""
    import math

    xs = [math.log10(r.n_terms) for r in rows]
    ys = [math.log10(float(r.error_bound)) for r in rows]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    num = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    den = sum((x - mx) ** 2 for x in xs)
    return num / den
