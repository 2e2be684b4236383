"""Exact summand model and partial-fraction decomposition.

A summand is c / prod_i (a_i*n + b_i)^(m_i) with integer a_i >= 1, integer b_i,
a_i + b_i > 0 (so every factor is strictly positive for n >= 1) and rational c.
Partial fractions are kept in monic form: terms coeff/(n + x)^k with rational
pole offset x > -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import NonPositiveFactor, ZeroNumerator

Rational = Fraction


@dataclass(frozen=True, order=True)
class LinearFactor:
    """(a*n + b)^m with a >= 1 and a + b > 0."""

    a: int
    b: int
    m: int = 1

    def __post_init__(self):
        if self.a < 1:
            raise NonPositiveFactor(f"leading coefficient must be >= 1, got {self.a}")
        if self.a + self.b <= 0:
            raise NonPositiveFactor(f"factor {self.a}n{self.b:+d} is not positive at n = 1")
        if self.m < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.m}")

    @property
    def root(self) -> Fraction:
        return Fraction(-self.b, self.a)

    def value(self, n) -> Fraction:
        return (Fraction(self.a) * n + self.b) ** self.m


@dataclass(frozen=True)
class Summand:
    """Canonical series term numerator / prod factors; build via normalize()."""

    numerator: Fraction
    factors: tuple[LinearFactor, ...]

    @property
    def degree(self) -> int:
        return sum(f.m for f in self.factors)

    def term(self, n) -> Fraction:
        v = self.numerator
        for f in self.factors:
            v /= f.value(n)
        return v


@dataclass(frozen=True, order=True)
class PoleTerm:
    """coeff / (n + x)^k; monic normalization, coeff != 0, x > -1."""

    x: Fraction
    k: int
    coeff: Fraction


@dataclass(frozen=True)
class PartialFractionForm:
    """Monic pole terms sorted by (pole, order); at most one term per pair."""

    terms: tuple[PoleTerm, ...]

    def evaluate(self, n) -> Fraction:
        v = Fraction(0)
        for t in self.terms:
            v += t.coeff / (Fraction(n) + t.x) ** t.k
        return v

    @property
    def total_degree(self) -> int:
        by_pole: dict[Fraction, int] = {}
        for t in self.terms:
            by_pole[t.x] = max(by_pole.get(t.x, 0), t.k)
        return sum(by_pole.values())


def normalize(raw_numerator: Fraction | int, raw_factors: Iterable[tuple[int, int, int]]) -> Summand:
    """Canonicalize: reduce each factor to primitive (gcd(a, b) = 1) form, folding the
    cofactor into the numerator, and merge factors sharing a root."""
    num = Fraction(raw_numerator)
    if num == 0:
        raise ZeroNumerator("summand numerator is zero")
    merged: dict[tuple[int, int], int] = {}
    for a, b, m in raw_factors:
        if m < 1:
            raise ValueError(f"multiplicity must be >= 1, got {m}")
        f = LinearFactor(a, b, m)  # validates a >= 1, a + b > 0
        g = gcd(f.a, f.b) if f.b else f.a
        num /= Fraction(g) ** m
        key = (f.a // g, f.b // g)
        merged[key] = merged.get(key, 0) + m
    factors = tuple(
        sorted((LinearFactor(a, b, m) for (a, b), m in merged.items()), key=lambda f: f.root)
    )
    return Summand(num, factors)


def evaluate_term(s: Summand, n: int) -> Fraction:
    """Exact value of the term at index n >= 1."""
    if n < 1:
        raise ValueError("summation index starts at 1")
    return s.term(n)


def partial_fractions(s: Summand) -> PartialFractionForm:
    """Exact monic decomposition.

    Simple poles come out of the residue formula; a pole of multiplicity m gets the
    order-m Taylor coefficients of the reduced cofactor, all in exact rationals
    (the m = 1 residue is the order-0 Taylor coefficient, so both paths coincide).
    """
    lead = 1
    for f in s.factors:
        lead *= f.a ** f.m
    c0 = s.numerator / lead
    poles = [(Fraction(f.b, f.a), f.m) for f in s.factors]
    terms: list[PoleTerm] = []
    for i, (xi, mi) in enumerate(poles):
        # Taylor expansion of c0 / prod_{l != i} (u + (x_l - x_i))^(m_l) at u = 0,
        # where u = n + x_i; coefficient of u^t feeds order m_i - t.
        coeffs = [c0] + [Fraction(0)] * (mi - 1)
        for l, (xl, ml) in enumerate(poles):
            if l == i:
                continue
            d = xl - xi
            ser = [Fraction((-1) ** t * comb(ml + t - 1, t), 1) / d ** (ml + t) for t in range(mi)]
            nxt = [Fraction(0)] * mi
            for t1 in range(mi):
                if coeffs[t1] == 0:
                    continue
                for t2 in range(mi - t1):
                    nxt[t1 + t2] += coeffs[t1] * ser[t2]
            coeffs = nxt
        for t in range(mi):
            if coeffs[t] != 0:
                terms.append(PoleTerm(xi, mi - t, coeffs[t]))
    terms.sort(key=lambda t: (t.x, t.k))
    return PartialFractionForm(tuple(terms))


def residue_sum(pf: PartialFractionForm) -> Fraction:
    """Sum of all order-1 coefficients; exactly 0 whenever total degree >= 2."""
    return sum((t.coeff for t in pf.terms if t.k == 1), Fraction(0))


def summand_from_pf_check(s: Summand, pf: PartialFractionForm, points: Sequence[Fraction]) -> bool:
    """Reconstruction check at given non-pole points (test support)."""
    return all(s.term(p) == pf.evaluate(p) for p in points)
