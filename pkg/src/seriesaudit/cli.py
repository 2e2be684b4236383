"""Command-line front end: summand surface syntax, commands, JSON reports.

Surface grammar (whitespace-insensitive):

    summand  := rational "/" denom
    denom    := product | "(" product ")"
    product  := factor { factor }
    factor   := "n" ["^" int] | "(" [int] "n" [sign int] ")" ["^" int]
    rational := ["-"] int ["/" int]

Exit codes: 0 success; 1 any refuted verdict under `verify`; 2 usage or parse
error; 3 inconclusive verdict or precision-cap exhaustion. JSON goes to stdout,
diagnostics to stderr, never interleaved.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .closedform import ConstantExpression, expr_to_interval, simplify, sum_closed_form
from .errors import (
    DivergentSeries,
    NonPositiveFactor,
    ParseError,
    PrecisionCapExceeded,
    UnknownSeriesId,
    ZeroNumerator,
)
from .exact import LinearFactor, Summand, normalize, partial_fractions, residue_sum
from .intervals import DEFAULT_CAP_BITS, Interval, Precision, certified_decimal, decimal_lower, decimal_upper
from .registry import (
    AuditEntry,
    AuditReport,
    audit,
    audit_all,
    builtin_registry,
    get_record,
    load_registry_file,
    registry_to_json,
)
from .sums import benchmark_summand, eval_series, loglog_slope

REPORT_VERSION = 1


# ---------------------------------------------------------------------------
# surface-syntax parser
# ---------------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"unexpected {self.peek()!r}", self.i, expected=repr(ch))
        self.i += 1

    def integer(self, what: str = "integer") -> int:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            raise ParseError(f"missing {what}", start, expected="digit")
        return int(self.text[start:self.i])

    def at_end(self) -> bool:
        self._skip_ws()
        return self.i >= len(self.text)


def _parse_exponent(sc: _Scanner) -> int:
    if sc.peek() != "^":
        return 1
    sc.take("^")
    pos = sc.i
    m = sc.integer("exponent")
    if m < 1:
        raise ParseError("multiplicity must be >= 1", pos)
    return m


def _parse_factor(sc: _Scanner) -> tuple[int, int, int]:
    start = sc.i
    ch = sc.peek()
    if ch == "n":
        sc.take("n")
        return (1, 0, _parse_exponent(sc))
    if ch != "(":
        raise ParseError(f"unexpected {ch!r}", sc.i, expected="factor")
    sc.take("(")
    a = sc.integer("coefficient") if sc.peek().isdigit() else 1
    sc.take("n")
    b = 0
    if sc.peek() in "+-":
        sign = -1 if sc.peek() == "-" else 1
        sc.i += 1
        b = sign * sc.integer("constant term")
    sc.take(")")
    m = _parse_exponent(sc)
    if a < 1:
        raise ParseError("leading coefficient must be >= 1", start)
    if a + b <= 0:
        span = sc.text[start:sc.i]
        raise NonPositiveFactor(f"factor {span!r} (offset {start}) is not positive for n >= 1")
    return (a, b, m)


def _parse_product(sc: _Scanner) -> list[tuple[int, int, int]]:
    factors = [_parse_factor(sc)]
    while sc.peek() in ("n", "("):
        factors.append(_parse_factor(sc))
    return factors


def parse_summand(text: str) -> Summand:
    """Parse surface syntax like 1/(n(2n-1)(4n-3)) into a canonical Summand."""
    sc = _Scanner(text)
    num_start = sc.i
    neg = False
    if sc.peek() == "-":
        sc.take("-")
        neg = True
    num = sc.integer("numerator")
    den = 1
    if sc.peek() == "/":
        # lookahead: "3/8/(...)" has a rational numerator, "1/(...)" does not
        save = sc.i
        sc.take("/")
        if sc.peek().isdigit():
            den = sc.integer("numerator denominator")
        else:
            sc.i = save
    numerator = Fraction(-num if neg else num, den)
    if numerator == 0:
        raise ZeroNumerator(f"zero numerator at offset {num_start}")
    sc.take("/")
    if sc.peek() == "(":
        # try a parenthesized factor first; fall back to a wrapping paren
        save = sc.i
        try:
            factors = [_parse_factor(sc)]
            while sc.peek() in ("n", "("):
                factors.append(_parse_factor(sc))
        except ParseError:
            sc.i = save
            sc.take("(")
            factors = _parse_product(sc)
            sc.take(")")
    else:
        factors = _parse_product(sc)
    if not sc.at_end():
        raise ParseError(f"trailing input {sc.text[sc.i:]!r}", sc.i, expected="end of input")
    return normalize(numerator, factors)


def render_factor(f: LinearFactor) -> str:
    if f.a == 1 and f.b == 0:
        body = "n"
        return body if f.m == 1 else f"{body}^{f.m}"
    coef = "" if f.a == 1 else str(f.a)
    const = f"{f.b:+d}" if f.b else ""
    body = f"({coef}n{const})"
    return body if f.m == 1 else f"{body}^{f.m}"


def render_summand(s: Summand) -> str:
    """Canonical surface form; parse(render(s)) == s."""
    num = s.numerator
    num_str = str(num.numerator) if num.denominator == 1 else f"{num.numerator}/{num.denominator}"
    bodies = [render_factor(f) for f in s.factors]
    if len(s.factors) == 1 and s.factors[0].a == 1 and s.factors[0].b == 0:
        return f"{num_str}/{bodies[0]}"
    return f"{num_str}/({''.join(bodies)})"


def render_pole_term(x: Fraction, k: int, coeff: Fraction) -> str:
    """Display a monic pole term back in integer-coefficient form."""
    q = x.denominator
    denom = "n" if (q == 1 and x == 0) else (f"(n{'+' if x > 0 else '-'}{abs(x.numerator)})" if q == 1 else f"({q}n{'+' if x > 0 else '-'}{abs(x.numerator)})")
    c = coeff * Fraction(q) ** k
    cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    power = "" if k == 1 else f"^{k}"
    return f"{cs} * 1/{denom}{power}"


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _interval_doc(iv: Interval, digits: int) -> dict:
    return {
        "lo": decimal_lower(iv, digits + 2),
        "hi": decimal_upper(iv, digits + 2),
        "digits": digits + 2,
    }


def _fraction_decimal_up(fr: Fraction, sig: int = 6) -> str:
    """Directed (upper) scientific rendering of a positive rational bound."""
    if fr <= 0:
        return "0"
    e = 0
    x = fr
    while x >= 10:
        x /= 10
        e += 1
    while x < 1:
        x *= 10
        e -= 1
    scaled = fr / Fraction(10) ** (e - sig + 1)
    mant = -((-scaled.numerator) // scaled.denominator)  # ceil
    if mant >= 10 ** sig:
        mant //= 10
        e += 1
    ms = str(mant)
    return f"{ms[0]}.{ms[1:]}e{e:+03d}"


def _expr_str(e: ConstantExpression | None) -> str | None:
    return None if e is None else str(e)


def _report_doc(report: AuditReport, registry) -> dict:
    recs = {r.id: r for r in registry}
    entries = []
    for e in report.entries:
        rec = recs[e.id]
        entries.append({
            "id": e.id,
            "paper_label": rec.paper_label,
            "lhs": render_summand(rec.summand),
            "claimed": str(rec.claimed),
            "computed_symbolic": _expr_str(e.symbolic),
            "numeric": _interval_doc(e.numeric, report.digits),
            "verdict": e.verdict.kind,
            "correction": _expr_str(e.correction),
            "note": e.note,
        })
    return {
        "kind": "verify",
        "version": REPORT_VERSION,
        "precision_digits": report.digits,
        "numeric_only": report.numeric_only,
        "entries": entries,
    }


def _print_json(doc: dict):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _verify_text(report: AuditReport, registry):
    recs = {r.id: r for r in registry}
    for e in report.entries:
        rec = recs[e.id]
        value, cd = certified_decimal(e.numeric, report.digits)
        line = f"{e.id:6s} {e.verdict.kind.upper():12s} {rec.paper_label:16s} value={value} ({cd} digits)"
        if e.verdict.kind == "refuted" and e.correction is not None:
            line += f"  correction: {e.correction}"
        print(line)
    counts = report.counts
    print(f"-- {len(report.entries)} audited: " +
          ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_decompose(args) -> int:
    s = parse_summand(args.expr)
    pf = partial_fractions(s)
    rs = residue_sum(pf)
    if args.format == "json":
        _print_json({
            "kind": "decompose",
            "lhs": render_summand(s),
            "terms": [
                {"pole": str(t.x), "order": t.k, "coeff": str(t.coeff),
                 "display": render_pole_term(t.x, t.k, t.coeff)}
                for t in pf.terms
            ],
            "residue_sum": str(rs),
        })
    else:
        out = ""
        for t in pf.terms:
            piece = render_pole_term(t.x, t.k, abs(t.coeff))
            out += (" - " if t.coeff < 0 else " + ") if out else ("-" if t.coeff < 0 else "")
            out += piece
        print(out)
        print(f"residue sum: {rs}")
    return 0


def _cmd_closed_form(args) -> int:
    s = parse_summand(args.expr)
    expr = simplify(sum_closed_form(partial_fractions(s)))
    prec = Precision.for_digits(args.digits, args.precision_cap)
    iv = expr_to_interval(expr, prec)
    value, cd = certified_decimal(iv, args.digits)
    if args.format == "json":
        from .registry import expr_to_json

        _print_json({
            "kind": "closed-form",
            "lhs": render_summand(s),
            "expression": str(expr),
            "atoms": expr_to_json(expr),
            "value": value,
            "certified_digits": cd,
        })
    else:
        print(str(expr))
        print(f"= {value} ({cd} digits)")
    return 0


def _cmd_eval(args) -> int:
    s = parse_summand(args.expr)
    prec = Precision.for_digits(args.digits, args.precision_cap)
    iv = eval_series(s, args.digits, prec)
    value, cd = certified_decimal(iv, args.digits)
    if args.format == "json":
        _print_json({
            "kind": "eval",
            "lhs": render_summand(s),
            "digits": args.digits,
            "interval": _interval_doc(iv, args.digits),
            "value": value,
            "certified_digits": cd,
        })
    else:
        print(f"{value} ({cd} certified digits)")
        print(f"interval: [{decimal_lower(iv, args.digits + 2)}, {decimal_upper(iv, args.digits + 2)}]")
    return 0


def _cmd_verify(args) -> int:
    registry = load_registry_file(args.registry) if args.registry else builtin_registry()
    if args.all:
        report = audit_all(args.digits, args.numeric_only, registry, args.precision_cap)
    else:
        entry = audit(args.id, args.digits, args.numeric_only, registry, args.precision_cap)
        report = AuditReport(args.digits, args.numeric_only, (entry,))
    if args.format == "json":
        _print_json(_report_doc(report, registry))
    else:
        _verify_text(report, registry)
    kinds = {e.verdict.kind for e in report.entries}
    if "refuted" in kinds:
        return 1
    if "inconclusive" in kinds:
        return 3
    return 0


def _cmd_bench(args) -> int:
    registry = load_registry_file(args.registry) if args.registry else builtin_registry()
    ids = [t for t in args.ids.split(",") if t]
    schedule = sorted(int(t) for t in args.schedule.split(",") if t)
    if not ids or not schedule:
        raise UnknownSeriesId("bench needs --ids and --schedule")
    out = []
    for rid in ids:
        rec = get_record(rid, registry)
        rows = benchmark_summand(rec.summand, schedule)
        out.append((rid, rows, loglog_slope(rows) if len(rows) >= 2 else None))
    if args.format == "json":
        _print_json({
            "kind": "bench",
            "schedule": schedule,
            "entries": [
                {
                    "id": rid,
                    "slope": (f"{slope:.4f}" if slope is not None else None),
                    "rows": [
                        {"n": r.n_terms, "error_bound": _fraction_decimal_up(r.error_bound),
                         "digits": r.digits}
                        for r in rows
                    ],
                }
                for rid, rows, slope in out
            ],
        })
    else:
        for rid, rows, slope in out:
            print(f"{rid}:")
            for r in rows:
                print(f"  N={r.n_terms:>9d}  error<= {_fraction_decimal_up(r.error_bound)}  digits={r.digits}")
            if slope is not None:
                print(f"  log-log slope: {slope:.4f}")
    return 0


def _cmd_selftest(args) -> int:
    from . import selftest

    results = selftest.run_all(seed=args.seed, cases=args.cases)
    ok = all(r.passed for r in results)
    if args.format == "json":
        _print_json({
            "kind": "selftest",
            "seed": args.seed,
            "suites": [{"name": r.name, "cases": r.cases, "passed": r.passed, "detail": r.detail}
                       for r in results],
            "ok": ok,
        })
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name} ({r.cases} cases)" +
                  (f"  {r.detail}" if r.detail else ""))
    return 0 if ok else 1


def _cmd_export_registry(args) -> int:
    doc = registry_to_json()
    doc = {"kind": "registry", **doc}
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--precision-cap", type=int, default=DEFAULT_CAP_BITS, metavar="BITS")
    common.add_argument("--seed", type=int, default=0)

    top = argparse.ArgumentParser(prog="seriesaudit",
                                  description="Exact symbolic + certified numeric audit of "
                                              "series of reciprocal linear-factor products.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="partial-fraction decomposition")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("closed-form", parents=[common], help="symbolic value of the series")
    p.add_argument("expr")
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=_cmd_closed_form)

    p = sub.add_parser("eval", parents=[common], help="certified numeric value of the series")
    p.add_argument("expr")
    p.add_argument("--digits", type=int, default=50)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="audit registry identities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--id")
    p.add_argument("--digits", type=int, default=50)
    p.add_argument("--numeric-only", action="store_true")
    p.add_argument("--registry", metavar="FILE")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="certified convergence benchmark")
    p.add_argument("--ids", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--registry", metavar="FILE")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("selftest", parents=[common], help="randomized property suites")
    p.add_argument("--cases", type=int, default=200)
    p.set_defaults(func=_cmd_selftest)

    p = sub.add_parser("export-registry", parents=[common], help="write the registry as JSON")
    p.add_argument("-o", "--output", metavar="FILE")
    p.set_defaults(func=_cmd_export_registry)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ZeroNumerator, NonPositiveFactor, DivergentSeries, UnknownSeriesId,
            ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionCapExceeded as exc:
        print(f"precision cap exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
