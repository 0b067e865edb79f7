"""Compare the one-term and binomial forms of the star/non-star relations.

For each weight tuple, counts the cells of the cleared generating function that
each form reproduces, and prints the first disagreement of the one-term form.
Usage: python scripts/star_relation_audit.py [--max 4] [--caps 3]
"""

from __future__ import annotations

import argparse
import itertools

from polybern.star import check_star_double, star_triple_solve, verify_triple_relation


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=4, help="depth-2 index bound")
    ap.add_argument("--caps", type=int, default=3, help="depth-3 box size")
    args = ap.parse_args()

    print("depth 2")
    for s in itertools.product(range(-2, 2), repeat=2):
        row = []
        for form in ("one-term", "binomial"):
            rep = check_star_double(args.max, [s], form)
            row.append(f"{form}: {rep.cells - len(rep.failures)}/{rep.cells}")
        first = check_star_double(args.max, [s], "one-term").failures[:1]
        print(f"  s={s!s:<9} " + "  ".join(row) + (f"  first miss {first[0]}" if first else ""))

    print("depth 3")
    caps = (args.caps,) * 3
    for w in [(-1, -1, -1), (-2, -1, 0), (1, -1, 0), (0, 0, -1)]:
        sol = star_triple_solve(caps, *w)
        row = []
        for form in ("one-term", "binomial"):
            rep = verify_triple_relation(caps, *w, form=form, solution=sol)
            row.append(f"{form}: {rep.cells - len(rep.failures)}/{rep.cells}")
        print(f"  s={w!s:<12} " + "  ".join(row) + f"  unsolvable cells {len(sol.mismatches)}")


if __name__ == "__main__":
    main()
