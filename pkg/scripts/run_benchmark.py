#!/usr/bin/env python3
"""Convergence benchmark: certified digits per term count for selected series.

Compares the error-bound decay of the slow pi/8 series (tail ~ 1/N) against the
degree-3 pi/3 series (tail ~ 1/N^2) on a log-log schedule and prints the fitted
slopes. Error bounds are the certified upper integral-test tails, so the table
is machine-independent.
"""

from __future__ import annotations

import sys

sys.path.insert(0, "src")

from seriesaudit import benchmark_summand, builtin_registry, get_record, loglog_slope

SCHEDULE = [10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5]
IDS = ("eq13", "thm1", "eq35")


def main() -> int:
    for rid in IDS:
        rec = get_record(rid)
        rows = benchmark_summand(rec.summand, SCHEDULE)
        print(f"{rid} ({rec.paper_label}):")
        for row in rows:
            print(f"  N={row.n_terms:>8d}  certified digits: {row.digits}")
        print(f"  log-log slope of the error bound: {loglog_slope(rows):+.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
