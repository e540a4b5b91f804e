"""Oriented-cactus y-polynomials o_n(y), with the oracle refinement where it is cheap."""

from __future__ import annotations

import argparse

from blockforest import oracle, unlabeled


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=8)
    ap.add_argument("--oracle-max", type=int, default=5)
    args = ap.parse_args()
    b = unlabeled.bundle("oriented", args.order)
    for n in range(1, args.order + 1):
        line = f"o_{n} = {b.unrooted[n]}"
        if n <= args.oracle_max:
            same = unlabeled.weight_table(b.unrooted[n], n) == oracle.count_unlabeled("oriented", n, by_distribution=True)
            line += "   [oracle " + ("agrees" if same else "DISAGREES") + "]"
        print(line)


if __name__ == "__main__":
    main()
