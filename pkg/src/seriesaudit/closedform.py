"""Symbolic summation over a fixed constant-atom basis.

A closed form is a finite map from atoms (1, gamma, pi, pi^2, zeta(3), ln p,
ln sin(pi p/q), psi^(k)(p/q)) to SurdRational coefficients. Partial-fraction
forms are summed with the Gauss digamma theorem and tabulated polygamma special
values; untabulated psi values degrade to opaque numeric atoms rather than
failing, so every convergent series still gets a certified interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
from typing import Iterator

from .constants import const_ln, const_pi, const_sqrt, interval_ln, _factorize
from .errors import DivergentSeries, PrecisionCapExceeded, UnsupportedModulus
from .exact import PartialFractionForm, residue_sum
from .intervals import Interval, Precision
from .polygamma import const_gamma, polygamma, zeta3
from .surd import SQRT2, SQRT3, SQRT6, SurdRational

_KIND_ORDER = {"one": 0, "pi": 1, "pi2": 2, "gamma": 3, "zeta3": 4, "ln": 5, "lnsin": 6, "psi": 7}


@dataclass(frozen=True, order=False)
class Atom:
    """A basis constant; args depend on kind: ln -> (p,), lnsin -> (p, q), psi -> (k, p, q)."""

    kind: str
    args: tuple[int, ...] = ()

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.args)

    def __str__(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "pi":
            return "pi"
        if self.kind == "pi2":
            return "pi^2"
        if self.kind == "gamma":
            return "gamma"
        if self.kind == "zeta3":
            return "zeta3"
        if self.kind == "ln":
            return f"ln{self.args[0]}"
        if self.kind == "lnsin":
            return f"lnsin({self.args[0]}/{self.args[1]})"
        return f"psi{self.args[0]}({self.args[1]}/{self.args[2]})"


ONE = Atom("one")
PI = Atom("pi")
PI_SQ = Atom("pi2")
GAMMA = Atom("gamma")
ZETA3 = Atom("zeta3")

_NUMERIC_ONLY_KINDS = frozenset({"lnsin", "psi"})


def ln_prime(p: int) -> Atom:
    return Atom("ln", (p,))


def ln_sin_atom(p: int, q: int) -> Atom:
    """Canonical log-sine atom for sin(pi p/q): lowest terms, p <= q - p."""
    g = gcd(p, q)
    p, q = p // g, q // g
    if p > q - p:
        p = q - p
    return Atom("lnsin", (p, q))


def psi_atom(k: int, x: Fraction) -> Atom:
    return Atom("psi", (k, x.numerator, x.denominator))


class ConstantExpression:
    """Immutable finite map Atom -> SurdRational; zero coefficients are dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Atom, SurdRational] | None = None):
        clean = {a: c for a, c in (terms or {}).items() if c}
        object.__setattr__(self, "_terms", tuple(sorted(clean.items(), key=lambda kv: kv[0].sort_key())))

    def __setattr__(self, *a):
        raise AttributeError("ConstantExpression is immutable")

    @staticmethod
    def of(atom: Atom, coeff: SurdRational | Fraction | int = 1) -> "ConstantExpression":
        c = coeff if isinstance(coeff, SurdRational) else SurdRational.from_rational(Fraction(coeff))
        return ConstantExpression({atom: c})

    @staticmethod
    def rational(x: Fraction | int) -> "ConstantExpression":
        return ConstantExpression.of(ONE, Fraction(x))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def atoms(self) -> tuple[Atom, ...]:
        return tuple(a for a, _ in self._terms)

    def items(self) -> Iterator[tuple[Atom, SurdRational]]:
        return iter(self._terms)

    def coeff(self, atom: Atom) -> SurdRational:
        for a, c in self._terms:
            if a == atom:
                return c
        return SurdRational()

    def __add__(self, other: "ConstantExpression") -> "ConstantExpression":
        m = dict(self._terms)
        for a, c in other._terms:
            m[a] = m.get(a, SurdRational()) + c
        return ConstantExpression(m)

    def __sub__(self, other: "ConstantExpression") -> "ConstantExpression":
        return self + other.scale(Fraction(-1))

    def scale(self, c: SurdRational | Fraction | int) -> "ConstantExpression":
        cs = c if isinstance(c, SurdRational) else SurdRational.from_rational(Fraction(c))
        return ConstantExpression({a: co * cs for a, co in self._terms})

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstantExpression) and self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    @property
    def numeric_only(self) -> bool:
        """True when every atom is one that lacks a tabulated symbolic reduction."""
        return all(a.kind in _NUMERIC_ONLY_KINDS for a, _ in self._terms)

    @property
    def fully_symbolic(self) -> bool:
        """True when no opaque numeric atoms remain."""
        return all(a.kind not in _NUMERIC_ONLY_KINDS for a, _ in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = []
        for a, c in self._terms:
            neg = False
            lead = next((v for v in (c.c1, c.c2, c.c3, c.c6) if v), None)
            if lead is not None and lead < 0:
                neg = True
                c = -c
            cs = str(c)
            if a.kind == "one":
                body = cs
            elif cs == "1":
                body = str(a)
            else:
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                body = f"{cs}*{a}"
            rendered.append((neg, body))
        out = ("-" if rendered[0][0] else "") + rendered[0][1]
        for neg, body in rendered[1:]:
            out += f" - {body}" if neg else f" + {body}"
        return out

    def __repr__(self) -> str:
        return f"ConstantExpression({self})"


# ---------------------------------------------------------------------------
# exact trigonometric tables on the pi/12 grid (everything needed for q | 24)
# ---------------------------------------------------------------------------

_H = Fraction(1, 2)
_COS12: dict[int, SurdRational] = {}


def _build_cos_table():
    base = {
        0: SurdRational.from_rational(1),
        1: (SQRT6 + SQRT2) * Fraction(1, 4),  # cos 15
        2: SQRT3 * _H,                        # cos 30
        3: SQRT2 * _H,                        # cos 45
        4: SurdRational.from_rational(_H),    # cos 60
        5: (SQRT6 - SQRT2) * Fraction(1, 4),  # cos 75
        6: SurdRational(),                    # cos 90
    }
    for j in range(7, 13):
        base[j] = -base[12 - j]
    for j in range(13, 24):
        base[j] = base[24 - j]
    _COS12.update(base)


_build_cos_table()

_COT_MODULI = (1, 2, 3, 4, 6, 8, 12, 24)


def cos_2pi(p: int, q: int) -> SurdRational:
    """Exact cos(2*pi*p/q) for q | 24."""
    if 24 % q:
        raise UnsupportedModulus(f"cos(2 pi p/q) not in Q[sqrt2, sqrt3] for q = {q}")
    return _COS12[(24 * p // q) % 24]


def cot_pi(p: int, q: int) -> SurdRational:
    """Exact cot(pi*p/q) for q | 24, q >= 2, q not dividing 2p."""
    if 24 % q:
        raise UnsupportedModulus(f"cot(pi p/q) not in Q[sqrt2, sqrt3] for q = {q}")
    if q == 2:
        return SurdRational()
    # cot t = (1 + cos 2t)/sin 2t, with 2t on the pi/12 grid
    u = (24 * p // q) % 24
    cos2 = _COS12[u]
    sin2 = _COS12[(6 - u) % 24]
    if not sin2:
        raise ValueError(f"cot(pi*{p}/{q}) undefined here")
    return (SurdRational.from_rational(1) + cos2) / sin2


# ---------------------------------------------------------------------------
# log-sine rewrites and the Gauss digamma theorem
# ---------------------------------------------------------------------------


def _ln_int_expr(k: int) -> ConstantExpression:
    """ln k decomposed over prime-log atoms."""
    e = ConstantExpression()
    for p, m in _factorize(k).items():
        e = e + ConstantExpression.of(ln_prime(p), m)
    return e


def log_sin_expr(p: int, q: int) -> ConstantExpression:
    """ln sin(pi p/q) rewritten over the atom basis where a table entry exists.

    Table: sin(pi/2)=1, sin(pi/4)=sqrt2/2, sin(pi/3)=sqrt3/2, sin(pi/6)=1/2, and
    the product identity sin(pi/8) sin(3pi/8) = sqrt2/4 eliminating the (3,8) atom.
    """
    atom = ln_sin_atom(p, q)
    p, q = atom.args
    if (p, q) == (1, 2):
        return ConstantExpression()
    if (p, q) == (1, 4):
        return ConstantExpression.of(ln_prime(2), Fraction(-1, 2))
    if (p, q) == (1, 3):
        return ConstantExpression.of(ln_prime(3), Fraction(1, 2)) + ConstantExpression.of(ln_prime(2), -1)
    if (p, q) == (1, 6):
        return ConstantExpression.of(ln_prime(2), -1)
    if (p, q) == (3, 8):
        return ConstantExpression.of(ln_prime(2), Fraction(-3, 2)) - ConstantExpression.of(ln_sin_atom(1, 8), 1)
    return ConstantExpression.of(atom, 1)


def digamma_closed(p: int, q: int) -> ConstantExpression:
    """Gauss digamma theorem: exact psi(p/q) for q | 24 (q = 1 means psi(1) = -gamma).

    psi(p/q) = -gamma - ln(2q) - (pi/2) cot(pi p/q)
               + 2 sum_{k=1}^{floor((q-1)/2)} cos(2 pi k p/q) ln sin(pi k/q)
    """
    if q < 1 or p < 1 or (q > 1 and p >= q) or gcd(p, q) != 1:
        raise ValueError(f"need p/q in lowest terms with 1 <= p < q (or 1/1), got {p}/{q}")
    if q not in _COT_MODULI:
        raise UnsupportedModulus(f"no exact cot/cos table for modulus {q}")
    if q == 1:
        return ConstantExpression.of(GAMMA, -1)
    e = ConstantExpression.of(GAMMA, -1) - _ln_int_expr(2 * q)
    cot = cot_pi(p, q)
    if cot:
        e = e + ConstantExpression.of(PI, cot * Fraction(-1, 2))
    for k in range(1, (q - 1) // 2 + 1):
        c = cos_2pi(k * p % q, q)
        if c:
            e = e + log_sin_expr(k, q).scale(c * 2)
    return e


_POLYGAMMA_TABLE: dict[tuple[int, Fraction], ConstantExpression] = {
    (1, Fraction(1)): ConstantExpression.of(PI_SQ, Fraction(1, 6)),
    (1, Fraction(1, 2)): ConstantExpression.of(PI_SQ, Fraction(1, 2)),
    (2, Fraction(1)): ConstantExpression.of(ZETA3, -2),
    (2, Fraction(1, 2)): ConstantExpression.of(ZETA3, -14),
}


def polygamma_closed(k: int, x: Fraction) -> ConstantExpression:
    """Exact psi^(k)(x) for k >= 1 over the atom basis.

    Arguments above 1 are reduced by the shift recurrence; untabulated (k, x)
    pairs return an opaque psi atom instead of failing.
    """
    if k < 1:
        raise ValueError("polygamma_closed needs k >= 1")
    x = Fraction(x)
    if x <= 0:
        raise ValueError("argument must be positive")
    shift = Fraction(0)
    fk = factorial(k)
    while x > 1:
        x -= 1
        shift += Fraction((-1) ** k * fk) / x ** (k + 1)
    base = _POLYGAMMA_TABLE.get((k, x))
    if base is None:
        base = ConstantExpression.of(psi_atom(k, x), 1)
    if shift:
        base = base + ConstantExpression.rational(shift)
    return base


def digamma_expr(x: Fraction) -> ConstantExpression:
    """Exact psi(x) for rational x > 0, via shift reduction plus the Gauss theorem."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("argument must be positive")
    shift = Fraction(0)
    while x > 1:
        x -= 1
        shift += Fraction(1) / x
    try:
        base = digamma_closed(x.numerator, x.denominator)
    except UnsupportedModulus:
        base = ConstantExpression.of(psi_atom(0, x), 1)
    if shift:
        base = base + ConstantExpression.rational(shift)
    return base


def sum_closed_form(pf: PartialFractionForm) -> ConstantExpression:
    """Exact value of sum over n >= 1 of a convergent partial-fraction form.

    The order-1 group contributes -sum_j c_j psi(1 + x_j) (well defined because the
    residues sum to zero, which cancels the gamma and divergent parts); an order-k
    term contributes c_j (-1)^k psi^(k-1)(1 + x_j)/(k-1)!.
    """
    if pf.total_degree < 2:
        raise DivergentSeries(f"total degree {pf.total_degree} < 2")
    if residue_sum(pf) != 0:
        raise DivergentSeries("order-1 coefficients do not cancel")
    acc = ConstantExpression()
    for t in pf.terms:
        arg = 1 + t.x
        if t.k == 1:
            acc = acc + digamma_expr(arg).scale(-t.coeff)
        else:
            c = t.coeff * Fraction((-1) ** t.k, factorial(t.k - 1))
            acc = acc + polygamma_closed(t.k - 1, arg).scale(c)
    return acc


def simplify(e: ConstantExpression) -> ConstantExpression:
    """Apply the log-sine rewrite table and drop zero coefficients; idempotent."""
    out = ConstantExpression()
    for a, c in e.items():
        if a.kind == "lnsin":
            out = out + log_sin_expr(a.args[0], a.args[1]).scale(c)
        else:
            out = out + ConstantExpression.of(a, c)
    return out


# ---------------------------------------------------------------------------
# numeric evaluation and comparison
# ---------------------------------------------------------------------------


def surd_to_interval(s: SurdRational, prec: Precision) -> Interval:
    bits = prec.bits
    acc = Interval.from_fraction(s.c1, bits)
    for coeff, k in ((s.c2, 2), (s.c3, 3), (s.c6, 6)):
        if coeff:
            acc = acc + const_sqrt(k, prec).to_bits(bits).scale(coeff)
    return acc


def _sin_interval(p: int, q: int, prec: Precision) -> Interval:
    """sin(pi p/q) = sqrt((1 - cos(2 pi p/q))/2) for q | 24."""
    c2 = cos_2pi(p, q)
    half = (SurdRational.from_rational(1) - c2) * Fraction(1, 2)
    return surd_to_interval(half, prec).sqrt()


def _atom_interval(a: Atom, prec: Precision) -> Interval:
    if a.kind == "one":
        return Interval.from_int(1, prec.bits)
    if a.kind == "pi":
        return const_pi(prec).to_bits(prec.bits)
    if a.kind == "pi2":
        pi = const_pi(prec).to_bits(prec.bits)
        return pi * pi
    if a.kind == "gamma":
        return const_gamma(prec).to_bits(prec.bits)
    if a.kind == "zeta3":
        return zeta3(prec).to_bits(prec.bits)
    if a.kind == "ln":
        return const_ln(a.args[0], prec).to_bits(prec.bits)
    if a.kind == "lnsin":
        return interval_ln(_sin_interval(a.args[0], a.args[1], prec), prec)
    if a.kind == "psi":
        k, p, q = a.args
        return polygamma(k, Fraction(p, q), prec).to_bits(prec.bits)
    raise ValueError(f"unknown atom kind {a.kind}")


def expr_to_interval(e: ConstantExpression, prec: Precision) -> Interval:
    """Certified interval for the expression's real value, width <= 10**-target_digits."""
    p = prec
    while True:
        acc = Interval.zero(p.bits)
        for a, c in e.items():
            acc = acc + _atom_interval(a, p) * surd_to_interval(c, p)
        if acc.width <= p.eps:
            return acc
        p = p.escalated()


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity comparison at a requested decimal accuracy."""

    kind: str  # verified | refuted | inconclusive
    digits: int | None = None          # certified agreement digits (verified)
    exact: bool = False                # symbolic atom-map equality
    separation: Fraction | None = None # certified gap (refuted)
    overlap: Fraction | None = None    # residual width (inconclusive)

    @property
    def is_verified(self) -> bool:
        return self.kind == "verified"


_ESCALATION_CAP_DIGITS = 200


def expr_equal(e1: ConstantExpression, e2: ConstantExpression, digits: int,
               cap_digits: int = _ESCALATION_CAP_DIGITS,
               cap_bits: int | None = None) -> Verdict:
    """Compare two expressions: exact map equality after simplify, otherwise a
    certified interval decision with precision escalation up to the cap."""
    diff = simplify(e1 - e2)
    if diff.is_zero:
        return Verdict("verified", digits=digits, exact=True)
    tol = Fraction(1, 10 ** digits)
    d = digits
    while True:
        prec = Precision.for_digits(d) if cap_bits is None else Precision.for_digits(d, cap_bits)
        try:
            iv = expr_to_interval(diff, prec)
        except PrecisionCapExceeded:
            return Verdict("inconclusive", overlap=None)
        if not iv.contains_zero():
            return Verdict("refuted", separation=min(abs(iv.lo_fraction), abs(iv.hi_fraction)))
        if diff.numeric_only and -tol <= iv.lo_fraction and iv.hi_fraction <= tol:
            return Verdict("verified", digits=digits)
        if d >= cap_digits:
            return Verdict("inconclusive", overlap=iv.width)
        d = min(2 * d, cap_digits)
