"""Catalog of the audited series identities and the two-channel audit engine.

Each record stores the series' summand, the printed right-hand side both as a
structured claim (atom map) and as the verbatim source text, a citation label,
and a free-text note. The printed claims are hypotheses, not ground truth: the
audit compares them against an independently derived symbolic closed form and a
certified numeric enclosure, and issues verified/refuted/inconclusive verdicts.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .closedform import (
    GAMMA,
    ONE,
    PI,
    PI_SQ,
    ZETA3,
    Atom,
    ConstantExpression,
    Verdict,
    expr_equal,
    expr_to_interval,
    ln_prime,
    ln_sin_atom,
    psi_atom,
    simplify,
    sum_closed_form,
)
from .errors import PrecisionCapExceeded, UnknownSeriesId
from .exact import Summand, normalize, partial_fractions
from .intervals import DEFAULT_CAP_BITS, Interval, Precision
from .sums import eval_series
from .surd import SQRT2, SurdRational, surd_from_str

_CLAIM_ATOMS = frozenset({"one", "pi", "pi2", "ln"})
_AUDIT_CAP_DIGITS = 200


@dataclass(frozen=True)
class IdentityRecord:
    """One printed identity: series summand plus the claimed closed form."""

    id: str
    summand: Summand
    claimed: ConstantExpression
    paper_label: str
    paper_rhs: str
    note: str = ""


def _expr(*terms: tuple[Atom, Fraction | SurdRational]) -> ConstantExpression:
    e = ConstantExpression()
    for atom, coeff in terms:
        e = e + ConstantExpression.of(atom, coeff)
    return e


_LN2 = ln_prime(2)
_LN3 = ln_prime(3)
_F = Fraction


def _rec(rid, factors, claimed, label, rhs, note=""):
    return IdentityRecord(rid, normalize(1, factors), claimed, label, rhs, note)


@lru_cache(maxsize=1)
def builtin_registry() -> tuple[IdentityRecord, ...]:
    """The 31 cataloged identities, in source order."""
    recs = (
        _rec("thm1", [(1, 0, 1), (2, -1, 1), (4, -3, 1)],
             _expr((PI, _F(1, 3))), "Theorem 1", r"\frac{\pi}{3}"),
        _rec("eq2r", [(2, 0, 1), (2, -1, 1)],
             _expr((_LN2, _F(1))), "Eq. (2) rewrite", r"\operatorname{ln} 2",
             "positive-product pairing of the alternating harmonic series"),
        _rec("eq3", [(4, 0, 1), (4, -2, 1)],
             _expr((_LN2, _F(1, 4))), "Eq. (3)", r"\frac{1}{4}\operatorname{ln} 2"),
        _rec("eq10", [(4, -2, 1), (4, -3, 1)],
             _expr((PI, _F(1, 8)), (_LN2, _F(1, 4))), "Eq. (10)",
             r"\frac{\pi}{8}+\frac{1}{4}\operatorname{ln} 2"),
        _rec("eq11", [(2, -1, 1), (2, 1, 1)],
             _expr((ONE, _F(1, 2))), "Eq. (11)", r"\frac{1}{2}",
             "telescoping"),
        _rec("eq12", [(1, 1, 1), (2, 1, 1)],
             _expr((_LN2, _F(2))), "Eq. (12)", r"2\operatorname{ln} 2",
             "printed value matches summation from n = 0; from n = 1 the audit finds 2ln2 - 1"),
        _rec("eq13", [(4, -1, 1), (4, -3, 1)],
             _expr((PI, _F(1, 8))), "Eq. (13)", r"\frac{\pi}{8}",
             "positive-product pairing of the arctangent series at 1"),
        _rec("eq14", [(2, -1, 1), (4, -3, 1)],
             _expr((PI, _F(1, 4)), (_LN2, _F(1, 2))), "Eq. (14)",
             r"\frac{\pi+2\operatorname{ln}2}{4}"),
        _rec("eq15", [(1, 0, 1), (4, -3, 1)],
             _expr((PI, _F(1, 6)), (_LN2, _F(1))), "Eq. (15)",
             r"\frac{\pi+6\operatorname{ln}2}{6}"),
        _rec("eq16", [(1, 0, 1), (4, -1, 1)],
             _expr((_LN2, _F(3)), (PI, _F(-1, 2))), "Eq. (16)",
             r"\frac{6\operatorname{ln}2-\pi}{2}"),
        _rec("eq17", [(2, -1, 1), (4, -1, 1), (4, -3, 1)],
             _expr((_LN2, _F(1, 2))), "Eq. (17)", r"\frac{\operatorname{ln}2}{2}"),
        _rec("eq18", [(1, 0, 1), (1, 1, 1), (2, 1, 1)],
             _expr((_LN2, _F(1)), (ONE, _F(-1, 2))), "Eq. (18)",
             r"\frac{2\operatorname{ln} 2-1}{2}",
             "audit finds 3 - 4ln2; printed value looks like a transcription slip"),
        _rec("eq19", [(4, 1, 1), (4, -1, 1), (4, -3, 1)],
             _expr((PI, _F(1, 16)), (ONE, _F(-1, 8))), "Eq. (19)", r"\frac{\pi-2}{16}"),
        _rec("eq20", [(1, 0, 2), (2, -1, 1)],
             _expr((_LN2, _F(4)), (PI_SQ, _F(-1, 6))), "Eq. (20)",
             r"\frac{24\operatorname{ln}2-\pi^2}{6}"),
        _rec("eq21", [(1, 0, 2), (4, -1, 1)],
             _expr((_LN2, _F(12)), (PI, _F(-2)), (PI_SQ, _F(-1, 6))), "Eq. (21)",
             r"\frac{72\operatorname{ln}2-12\pi-\pi^2}{6}"),
        _rec("eq22", [(1, 0, 1), (1, 1, 2)],
             _expr((ONE, _F(2)), (PI_SQ, _F(-1, 6))), "Eq. (22)", r"\frac{12-\pi^2}{6}"),
        _rec("eq23", [(1, 0, 2), (2, 1, 1)],
             _expr((PI_SQ, _F(1, 6)), (_LN2, _F(4)), (ONE, _F(-4))), "Eq. (23)",
             r"\frac{\pi^2+24\operatorname{ln} 2 - 24}{6}"),
        _rec("eq24", [(1, 0, 2), (1, 1, 1)],
             _expr((PI_SQ, _F(1, 6)), (ONE, _F(-1))), "Eq. (24)", r"\frac{\pi^2-6}{6}"),
        _rec("eq25", [(1, 0, 2), (1, 1, 2)],
             _expr((PI_SQ, _F(1, 3)), (ONE, _F(-3))), "Eq. (25)", r"\frac{\pi^2-9}{3}"),
        _rec("eq26", [(2, 1, 1), (2, -1, 1), (4, 1, 1), (4, -1, 1)],
             _expr((PI, _F(1, 6)), (ONE, _F(-1, 2))), "Eq. (26)", r"\frac{\pi-3}{6}"),
        _rec("eq27", [(4, 1, 1), (4, -1, 1), (8, 1, 1), (8, -1, 1)],
             _expr((PI, (SurdRational.from_rational(1) + SQRT2 * 2) * _F(1, 24)), (ONE, _F(-1, 2))),
             "Eq. (27)", r"\frac{\pi (1+2\sqrt{2})-12}{24}"),
        _rec("eq28", [(1, 0, 1), (2, -1, 1), (4, -1, 1), (4, -3, 1)],
             _expr((_LN2, _F(2)), (PI, _F(-1, 3))), "Eq. (28)",
             r"\frac{6\operatorname{ln}2-\pi}{3}"),
        _rec("eq29", [(1, 0, 2), (1, 1, 1), (2, 1, 1)],
             _expr((PI_SQ, _F(1, 6)), (_LN2, _F(-2))), "Eq. (29)",
             r"\frac{\pi^2-12\operatorname{ln} 2}{6}",
             "audit finds pi^2/6 + 8ln2 - 7; printed value looks like a transcription slip"),
        _rec("eq30", [(1, 0, 2), (2, -1, 1), (4, -3, 1)],
             _expr((PI_SQ, _F(1, 18)), (PI, _F(4, 9)), (_LN2, _F(-4, 3))), "Eq. (30)",
             r"\frac{\pi^2+8\pi-24\operatorname{ln}2}{18}"),
        _rec("eq31", [(1, 0, 2), (2, -1, 1), (4, -1, 1)],
             _expr((PI_SQ, _F(1, 6)), (PI, _F(4)), (_LN2, _F(-20))), "Eq. (31)",
             r"\frac{\pi^2+24\pi-120\operatorname{ln}2}{6}"),
        _rec("eq32", [(1, 0, 2), (2, -1, 1), (4, -1, 1), (4, -3, 1)],
             _expr((_LN2, _F(28, 3)), (PI, _F(-16, 9)), (PI_SQ, _F(-1, 18))), "Eq. (32)",
             r"\frac{168\operatorname{ln}2-32\pi-\pi^2}{18}"),
        _rec("eq33", [(1, 0, 1), (2, 1, 1), (2, -1, 1), (6, 1, 1), (6, -1, 1)],
             _expr((ONE, _F(13, 4)), (_LN2, _F(-2)), (_LN3, _F(-27, 16))), "Eq. (33)",
             r"\frac{52-32\operatorname{ln}2-27\operatorname{ln}3}{16}"),
        _rec("eq34", [(1, 0, 1), (2, 1, 1), (2, -1, 1), (3, 1, 1), (3, -1, 1)],
             _expr((ONE, _F(19, 10)), (_LN2, _F(8, 5)), (_LN3, _F(-27, 10))), "Eq. (34)",
             r"\frac{19+16\operatorname{ln}2-27\operatorname{ln}3}{10}"),
        _rec("eq35", [(1, 0, 3), (1, 1, 3)],
             _expr((ONE, _F(10)), (PI_SQ, _F(-1))), "Eq. (35)", r"10-\pi^2"),
        _rec("eq36", [(2, 1, 1), (2, -1, 1), (4, 1, 1), (4, -1, 1), (8, 1, 1), (8, -1, 1)],
             _expr((ONE, _F(15, 2)), (PI, (SurdRational.from_rational(3) + SQRT2 * 8) * _F(-1, 6))),
             "Eq. (36)", r"\frac{45-\pi (3+8\sqrt{2})}{6}",
             "audit finds denominator 90, not 6; printed value looks like a transcription slip"),
        _rec("eq37", [(1, 0, 1), (2, 1, 1), (2, -1, 1), (3, 1, 1), (3, -1, 1), (6, 1, 1), (6, -1, 1)],
             _expr((_LN2, _F(16, 5)), (_LN3, _F(27, 20)), (ONE, _F(-37, 10))), "Eq. (37)",
             r"\frac{64\operatorname{ln}2+27\operatorname{ln}3-74}{20}"),
    )
    ids = [r.id for r in recs]
    assert len(set(ids)) == len(ids) == 31
    for r in recs:
        assert r.summand.degree >= 2, r.id
        assert all(a.kind in _CLAIM_ATOMS for a in r.claimed.atoms()), r.id
    return recs


def get_record(rid: str, registry: tuple[IdentityRecord, ...] | None = None) -> IdentityRecord:
    for r in registry or builtin_registry():
        if r.id == rid:
            return r
    raise UnknownSeriesId(f"no identity with id {rid!r}")


# ---------------------------------------------------------------------------
# audit engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    """Verdict and evidence for one identity."""

    id: str
    verdict: Verdict
    symbolic: ConstantExpression | None
    numeric: Interval
    claimed_value: Interval
    correction: ConstantExpression | None
    digits: int
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    digits: int
    numeric_only: bool
    entries: tuple[AuditEntry, ...]

    def by_id(self) -> dict[str, AuditEntry]:
        return {e.id: e for e in self.entries}

    @property
    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for e in self.entries:
            out[e.verdict.kind] = out.get(e.verdict.kind, 0) + 1
        return out


def audit(rid: str | IdentityRecord, digits: int = 50, numeric_only: bool = False,
          registry: tuple[IdentityRecord, ...] | None = None,
          cap_bits: int = DEFAULT_CAP_BITS) -> AuditEntry:
    """Run both channels on one identity and compare against the printed claim.

    Verified needs the claim to match the symbolic channel (exact atom map or
    numerically-void difference) and the numeric channel (certified intervals in
    agreement at the requested digits); Refuted needs the certified numeric
    enclosure to separate from the claim's enclosure. With numeric_only the
    symbolic derivation is skipped and the verdict rests on the numeric channel.
    """
    rec = rid if isinstance(rid, IdentityRecord) else get_record(rid, registry)
    prec = Precision.for_digits(digits, cap_bits)
    numeric = eval_series(rec.summand, digits, prec)
    claimed_iv = expr_to_interval(rec.claimed, prec)
    symbolic: ConstantExpression | None = None
    sym_verdict: Verdict | None = None
    if not numeric_only:
        symbolic = simplify(sum_closed_form(partial_fractions(rec.summand)))
        sym_iv = expr_to_interval(symbolic, prec)
        if not sym_iv.intersects(numeric):
            return AuditEntry(rec.id, Verdict("inconclusive", overlap=None), symbolic,
                              numeric, claimed_iv, None, digits,
                              note="internal channel cross-check failed")
        sym_verdict = expr_equal(rec.claimed, symbolic, digits,
                                 cap_digits=_AUDIT_CAP_DIGITS, cap_bits=cap_bits)

    tol = Fraction(1, 10 ** digits)
    d = digits
    cur_numeric, cur_claimed = numeric, claimed_iv
    while True:
        if not cur_claimed.intersects(cur_numeric):
            correction = symbolic if symbolic is not None and symbolic.fully_symbolic else None
            return AuditEntry(rec.id, Verdict("refuted", separation=cur_claimed.gap_to(cur_numeric)),
                              symbolic, numeric, claimed_iv, correction, digits, note=rec.note)
        agree = cur_claimed.width <= tol and cur_numeric.width <= tol
        if agree and (numeric_only or sym_verdict.is_verified):
            exact = bool(sym_verdict.exact) if sym_verdict else False
            return AuditEntry(rec.id, Verdict("verified", digits=digits, exact=exact),
                              symbolic, numeric, claimed_iv, None, digits, note=rec.note)
        # numeric agreement but the symbolic channel disputes (or cannot decide):
        # escalate the numeric side to force a separation before giving up.
        if sym_verdict is not None and sym_verdict.kind == "refuted" and d < _AUDIT_CAP_DIGITS:
            d = min(2 * d, _AUDIT_CAP_DIGITS)
            try:
                p2 = Precision.for_digits(d, cap_bits)
                cur_numeric = eval_series(rec.summand, d, p2)
                cur_claimed = expr_to_interval(rec.claimed, p2)
                continue
            except PrecisionCapExceeded:
                pass
        overlap = max(cur_claimed.width, cur_numeric.width)
        return AuditEntry(rec.id, Verdict("inconclusive", overlap=overlap), symbolic,
                          numeric, claimed_iv, None, digits, note=rec.note)


def audit_all(digits: int = 50, numeric_only: bool = False,
              registry: tuple[IdentityRecord, ...] | None = None,
              cap_bits: int = DEFAULT_CAP_BITS) -> AuditReport:
    """Audit every registry entry; entries independent, output in registry order."""
    recs = registry or builtin_registry()
    entries = tuple(audit(r, digits, numeric_only, registry, cap_bits) for r in recs)
    return AuditReport(digits, numeric_only, entries)


# ---------------------------------------------------------------------------
# claim parsing (LaTeX subset used by the printed right-hand sides)
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<frac>\\frac)|(?P<pi>\\pi)|(?P<ln>\\operatorname\{ln\})|(?P<sqrt>\\sqrt)"
    r"|(?P<int>\d+)|(?P<sym>[{}()+^-]))"
)


def _tokenize_latex(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot tokenize claim text at {text[pos:pos+12]!r}")
        pos = m.end()
        for key in ("frac", "pi", "ln", "sqrt", "int", "sym"):
            v = m.group(key)
            if v is not None:
                out.append(v if key != "sym" else v)
                break
    return out


class _ClaimParser:
    """Recursive descent over the token list; values are ConstantExpressions."""

    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise ValueError(f"claim parse error near token {self.i} (have {t!r}, want {expect!r})")
        self.i += 1
        return t

    def parse(self) -> ConstantExpression:
        e = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens in claim: {self.toks[self.i:]}")
        return e

    def expr(self) -> ConstantExpression:
        neg = False
        if self.peek() == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = acc.scale(-1)
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            acc = acc + (t if op == "+" else t.scale(-1))
        return acc

    def term(self) -> ConstantExpression:
        acc = self.factor()
        while self.peek() is not None and self.peek() not in ("+", "-", "}", ")"):
            acc = _expr_mul(acc, self.factor())
        return acc

    def group(self) -> ConstantExpression:
        self.take("{")
        e = self.expr()
        self.take("}")
        return e

    def factor(self) -> ConstantExpression:
        t = self.peek()
        if t == r"\frac":
            self.take()
            num = self.group()
            den = self.group()
            if den.atoms() != (ONE,) or not den.coeff(ONE).is_rational:
                raise ValueError("nonscalar denominator in claim")
            return num.scale(1 / den.coeff(ONE).as_fraction())
        if t == r"\pi":
            self.take()
            if self.peek() == "^":
                self.take()
                if self.take() != "2":
                    raise ValueError("only pi^2 is supported")
                return ConstantExpression.of(PI_SQ, 1)
            return ConstantExpression.of(PI, 1)
        if t == r"\operatorname{ln}":
            self.take()
            k = int(self.take())
            from .closedform import _ln_int_expr

            return _ln_int_expr(k)
        if t == r"\sqrt":
            self.take()
            self.take("{")
            k = int(self.take())
            self.take("}")
            surd = {2: SQRT2}.get(k)
            if surd is None:
                from .surd import SQRT3, SQRT6

                surd = {3: SQRT3, 6: SQRT6}.get(k)
            if surd is None:
                raise ValueError(f"unsupported radicand {k}")
            return ConstantExpression.of(ONE, surd)
        if t == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if t is not None and t.isdigit():
            self.take()
            return ConstantExpression.rational(int(t))
        raise ValueError(f"unexpected token {t!r} in claim")


def _expr_mul(e1: ConstantExpression, e2: ConstantExpression) -> ConstantExpression:
    for a, b in ((e1, e2), (e2, e1)):
        if a.is_zero:
            return ConstantExpression()
        if all(at == ONE for at in a.atoms()):
            return b.scale(a.coeff(ONE))
    raise ValueError("claim parser cannot multiply two non-scalar expressions")


def parse_claim_latex(text: str) -> ConstantExpression:
    """Parse a printed right-hand side into a structured claim expression."""
    return _ClaimParser(_tokenize_latex(text)).parse()


# ---------------------------------------------------------------------------
# JSON import/export
# ---------------------------------------------------------------------------

_ATOM_KEY_RE = re.compile(r"^(?:one|gamma|pi|pi\^2|zeta3|ln(\d+)|lnsin\((\d+)/(\d+)\)|psi(\d+)\((\d+)/(\d+)\))$")


def atom_key(a: Atom) -> str:
    if a.kind == "one":
        return "one"
    if a.kind == "pi":
        return "pi"
    if a.kind == "pi2":
        return "pi^2"
    if a.kind == "gamma":
        return "gamma"
    if a.kind == "zeta3":
        return "zeta3"
    if a.kind == "ln":
        return f"ln{a.args[0]}"
    if a.kind == "lnsin":
        return f"lnsin({a.args[0]}/{a.args[1]})"
    return f"psi{a.args[0]}({a.args[1]}/{a.args[2]})"


def atom_from_key(key: str) -> Atom:
    m = _ATOM_KEY_RE.match(key)
    if not m:
        raise ValueError(f"bad atom key {key!r}")
    if key == "one":
        return ONE
    if key == "pi":
        return PI
    if key == "pi^2":
        return PI_SQ
    if key == "gamma":
        return GAMMA
    if key == "zeta3":
        return ZETA3
    if m.group(1):
        return ln_prime(int(m.group(1)))
    if m.group(2):
        return ln_sin_atom(int(m.group(2)), int(m.group(3)))
    return psi_atom(int(m.group(4)), Fraction(int(m.group(5)), int(m.group(6))))


def expr_to_json(e: ConstantExpression) -> dict[str, str]:
    return {atom_key(a): str(c) for a, c in e.items()}


def expr_from_json(doc: dict[str, str]) -> ConstantExpression:
    out = ConstantExpression()
    for k, v in doc.items():
        out = out + ConstantExpression.of(atom_from_key(k), surd_from_str(v))
    return out


def registry_to_json(registry: tuple[IdentityRecord, ...] | None = None) -> dict:
    from .cli import render_summand  # rendering lives with the surface syntax

    recs = registry or builtin_registry()
    return {
        "version": 1,
        "entries": [
            {
                "id": r.id,
                "lhs": render_summand(r.summand),
                "claimed": expr_to_json(r.claimed),
                "paper_label": r.paper_label,
                "paper_rhs": r.paper_rhs,
                "note": r.note,
            }
            for r in recs
        ],
    }


def registry_from_json(doc: dict) -> tuple[IdentityRecord, ...]:
    from .cli import parse_summand

    recs = []
    seen = set()
    for entry in doc["entries"]:
        rid = entry["id"]
        if rid in seen:
            raise ValueError(f"duplicate registry id {rid!r}")
        seen.add(rid)
        summand = parse_summand(entry["lhs"])
        if summand.degree < 2:
            raise ValueError(f"registry entry {rid!r} has total degree < 2")
        recs.append(IdentityRecord(
            id=rid,
            summand=summand,
            claimed=expr_from_json(entry["claimed"]),
            paper_label=entry.get("paper_label", ""),
            paper_rhs=entry.get("paper_rhs", ""),
            note=entry.get("note", ""),
        ))
    return tuple(recs)


def load_registry_file(path: str) -> tuple[IdentityRecord, ...]:
    with open(path, "r", encoding="utf-8") as fh:
        return registry_from_json(json.load(fh))
