#!/usr/bin/env python3
"""Re-derive the corrected closed forms for the four refuted registry entries.

Independent of the audit engine: exact partial sums to N = 1e5 plus an
integral-test tail bracket evaluated with interval logs decide, for each entry,
whether the printed value or the symbolic channel's correction lies inside the
certified enclosure. Run before trusting any hard-coded correction.
"""

from __future__ import annotations

import sys
from fractions import Fraction

sys.path.insert(0, "src")

from seriesaudit import (
    Precision,
    audit,
    builtin_registry,
    expr_to_interval,
    get_record,
    partial_sum,
    tail_bracket,
)
from seriesaudit.intervals import Interval, certified_decimal

N = 10 ** 5
SUSPECTS = ("eq12", "eq18", "eq29", "eq36")


def enclosure(rid: str, n: int) -> Interval:
    rec = get_record(rid)
    prec = Precision.for_digits(30)
    prefix = Interval.from_fraction(partial_sum(rec.summand, n), prec.bits)
    br = tail_bracket(rec.summand, n, prec)
    return prefix + br.enclosure


def main() -> int:
    ok = True
    for rid in SUSPECTS:
        rec = get_record(rid)
        env = enclosure(rid, N)
        prec = Precision.for_digits(30)
        claimed_iv = expr_to_interval(rec.claimed, prec)
        printed_in = env.intersects(claimed_iv)
        entry = audit(rid, digits=50)
        corr = entry.correction
        corr_in = corr is not None and env.intersects(expr_to_interval(corr, prec))
        val, digits = certified_decimal(env, 20)
        print(f"{rid}: bracket value {val} ({digits} digits at N={N})")
        print(f"    printed   {rec.claimed}  -> in bracket: {printed_in}")
        print(f"    corrected {corr}  -> in bracket: {corr_in}")
        if printed_in or not corr_in:
            ok = False
    print("RESULT:", "corrections confirmed" if ok else "MISMATCH - do not trust corrections")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
