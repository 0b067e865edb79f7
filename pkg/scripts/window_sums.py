"""Tabulate phi(p^N)-window sums of B_{n_1,n_2}^{(-k_1,-k_2)} mod p^N along each index.

Shows which (p, N, k) give nonvanishing sums along the second index.
Usage: python scripts/window_sums.py [--primes 2 3 5 7] [--exponents 1 2] [--kmax 3]
"""

from __future__ import annotations

import argparse
import itertools

from polybern.congruence import proven_period, sweep_sum_vanishing


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--exponents", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--kmax", type=int, default=3)
    args = ap.parse_args()
    print(f"{'p':>3} {'N':>2} {'k':>7} {'cells':>6} {'n1-window bad':>14} {'n2-window bad':>14}")
    for p, N in itertools.product(args.primes, args.exponents):
        rng = (N, N + proven_period(p, N))
        for k in itertools.product(range(1, args.kmax + 1), repeat=2):
            first, second = sweep_sum_vanishing(p, N, *k, rng)
            print(f"{p:>3} {N:>2} {str(k):>7} {first.cells:>6} {len(first.failures):>14} {len(second.failures):>14}")


if __name__ == "__main__":
    main()
