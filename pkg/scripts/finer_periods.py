"""Search for periods finer than p^{N-1}(p-1) in the double-index congruences.

Writes one JSON record per (p, N, k_1, k_2) and prints a summary table.
Usage: python scripts/finer_periods.py [--primes 2 3 5 7] [--exponents 1 2] [--kmax 3] [--out FILE]
"""

from __future__ import annotations

import argparse
import itertools
import json

from polybern.congruence import proven_period, search_finer_period
from polybern.report import jsonable


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--exponents", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--kmax", type=int, default=3)
    ap.add_argument("--span", type=int, default=4, help="range length in multiples of the proven period")
    ap.add_argument("--out")
    args = ap.parse_args()

    records = []
    print(f"{'p':>3} {'N':>2} {'k':>7} {'proven':>6} {'first':>6} {'second':>6}")
    for p, N in itertools.product(args.primes, args.exponents):
        q = proven_period(p, N)
        rng = (N, N + args.span * q)
        for k in itertools.product(range(1, args.kmax + 1), repeat=2):
            rec = search_finer_period(p, N, *k, rng)
            records.append(rec)
            a = rec["assertions"]
            print(f"{p:>3} {N:>2} {str(k):>7} {q:>6} {a['first']['minimal_period']:>6} {a['second']['minimal_period']:>6}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(jsonable(records), fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
