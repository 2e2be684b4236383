"""Exact arithmetic in the field Q[sqrt2, sqrt3].

Elements are stored on the basis (1, sqrt2, sqrt3, sqrt6); the basis is linearly
independent over Q, so equality is component-wise and representations are unique.
This field contains every cot(pi*p/q) and cos(2*pi*p/q) for q | 24, which is all
the closed-form machinery needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rationalish = Union[int, Fraction]


def _fr(x: Rationalish) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class SurdRational:
    """c1 + c2*sqrt2 + c3*sqrt3 + c6*sqrt6 with rational components."""

    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)
    c6: Fraction = Fraction(0)

    @staticmethod
    def from_rational(x: Rationalish) -> "SurdRational":
        return SurdRational(_fr(x))

    def __bool__(self) -> bool:
        return bool(self.c1 or self.c2 or self.c3 or self.c6)

    @property
    def is_rational(self) -> bool:
        return not (self.c2 or self.c3 or self.c6)

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.c1

    def _coerce(self, other) -> "SurdRational | None":
        if isinstance(other, SurdRational):
            return other
        if isinstance(other, (int, Fraction)):
            return SurdRational.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SurdRational(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3, self.c6 + o.c6)

    __radd__ = __add__

    def __neg__(self) -> "SurdRational":
        return SurdRational(-self.c1, -self.c2, -self.c3, -self.c6)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, a2, a3, a6 = self.c1, self.c2, self.c3, self.c6
        b1, b2, b3, b6 = o.c1, o.c2, o.c3, o.c6
        return SurdRational(
            a1 * b1 + 2 * a2 * b2 + 3 * a3 * b3 + 6 * a6 * b6,
            a1 * b2 + a2 * b1 + 3 * (a3 * b6 + a6 * b3),
            a1 * b3 + a3 * b1 + 2 * (a2 * b6 + a6 * b2),
            a1 * b6 + a6 * b1 + a2 * b3 + a3 * b2,
        )

    __rmul__ = __mul__

    def _conj_sqrt2(self) -> "SurdRational":
        return SurdRational(self.c1, -self.c2, self.c3, -self.c6)

    def inverse(self) -> "SurdRational":
        """Multiplicative inverse via successive conjugation over sqrt2 then sqrt3."""
        if not self:
            raise ZeroDivisionError("inverse of zero SurdRational")
        z2 = self._conj_sqrt2()
        w = self * z2  # lands in Q[sqrt3]: components c2 = c6 = 0
        norm = w.c1 * w.c1 - 3 * w.c3 * w.c3
        w3 = SurdRational(w.c1, Fraction(0), -w.c3, Fraction(0))
        return z2 * w3 * (Fraction(1) / norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __str__(self) -> str:
        parts = []
        for coeff, tag in ((self.c1, ""), (self.c2, "sqrt2"), (self.c3, "sqrt3"), (self.c6, "sqrt6")):
            if not coeff:
                continue
            sign = "-" if coeff < 0 else ("+" if parts else "")
            mag = abs(coeff)
            if tag and mag == 1:
                parts.append(f"{sign}{tag}")
            elif tag:
                parts.append(f"{sign}{mag}*{tag}")
            else:
                parts.append(f"{sign}{mag}")
        return "".join(parts) if parts else "0"


ZERO = SurdRational()
ONE_S = SurdRational.from_rational(1)
SQRT2 = SurdRational(c2=Fraction(1))
SQRT3 = SurdRational(c3=Fraction(1))
SQRT6 = SurdRational(c6=Fraction(1))


def surd_from_str(text: str) -> SurdRational:
    """Parse the rendering produced by str(): signed terms like 1/24+1/12*sqrt2."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty surd literal")
    # split into signed terms
    terms: list[str] = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-/*":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = SurdRational()
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"bad surd term in {text!r}")
        tag = ""
        for name in ("sqrt2", "sqrt3", "sqrt6"):
            if t.endswith(name):
                tag = name
                t = t[: -len(name)]
                if t.endswith("*"):
                    t = t[:-1]
                break
        coeff = Fraction(t) if t else Fraction(1)
        coeff *= sign
        base = {"": SurdRational.from_rational(1), "sqrt2": SQRT2, "sqrt3": SQRT3, "sqrt6": SQRT6}[tag]
        out = out + base * coeff
    return out
