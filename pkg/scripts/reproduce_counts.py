"""Print labelled and unlabelled count tables next to their oracle values.

    python scripts/reproduce_counts.py --labeled-max 10 --oracle-max 6
"""

from __future__ import annotations

import argparse
import time

from blockforest import labeled, oracle, unlabeled


def labelled_table(n_max: int, oracle_max: int):
    print("species\tn\tformula\toracle")
    for species in labeled.SPECIES:
        for n in range(1, n_max + 1):
            total = labeled.labeled_total(species, n)
            check = oracle.count_labeled(species, n, limit=oracle_max) if n <= oracle_max else "-"
            print(f"{species}\t{n}\t{total}\t{check}")


def unlabelled_table(order: int):
    print("species\tn\trooted\tunrooted")
    for species in unlabeled.UNLABELED_SPECIES:
        b = unlabeled.bundle(species, order)
        rooted = unlabeled.at_ones(b.rooted) if species == "oriented" else b.rooted
        unrooted = unlabeled.at_ones(b.unrooted) if species == "oriented" else b.unrooted
        for n in range(1, order + 1):
            print(f"{species}\t{n}\t{rooted[n]}\t{unrooted[n]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--labeled-max", type=int, default=10)
    ap.add_argument("--oracle-max", type=int, default=5)
    ap.add_argument("--order", type=int, default=12)
    args = ap.parse_args()
    t = time.perf_counter()
    labelled_table(args.labeled_max, args.oracle_max)
    print()
    unlabelled_table(args.order)
    print(f"\n# {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
