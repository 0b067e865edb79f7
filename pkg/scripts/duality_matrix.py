"""Print the matrix B_n^{(-k)} and a depth-2 duality slice, and check symmetry.

Usage: python scripts/duality_matrix.py [--max 6] [--csv FILE]
"""

from __future__ import annotations

import argparse
import csv

from polybern.polybernoulli import duality_grid, pb_single


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=6)
    ap.add_argument("--csv")
    args = ap.parse_args()
    n = args.max
    mat = [[pb_single(i, -j) for j in range(n + 1)] for i in range(n + 1)]
    width = max(len(str(v)) for row in mat for v in row)
    for row in mat:
        print(" ".join(str(v).rjust(width) for v in row))
    sym = all(mat[i][j] == mat[j][i] for i in range(n + 1) for j in range(n + 1))
    print(f"symmetric: {sym}")
    grid = duality_grid(2, min(n, 4))
    print(f"depth-2 duality cells: {len(grid)}, unequal: {sum(not d.equal for d in grid)}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["m_1", "m_2", "value_num", "value_den"])
            for i in range(n + 1):
                for j in range(n + 1):
                    w.writerow([i, j, mat[i][j].numerator, mat[i][j].denominator])


if __name__ == "__main__":
    main()
