"""Gaussian-model virial coefficients in reduced units, with both verification routes.

    python scripts/virial_table.py --n-max 5 --precision 40 --alpha 2
"""

from __future__ import annotations

import argparse

import mpmath

from blockforest import mayer


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--precision", type=int, default=30)
    ap.add_argument("--alpha", type=float, default=None, help="default pi, so u = 1")
    args = ap.parse_args()
    alpha = None if args.alpha is None else mpmath.mpf(args.alpha)
    print("n\t2-connected\tgamma_n / u^(n-1) (exact)\tgamma_n")
    for n in range(2, args.n_max + 1):
        cs = mayer.virial_coefficient_sum(n)
        value = cs.evaluate(alpha, args.precision)
        print(f"{n}\t{cs.graphs}\t{cs.exact()}\t{mpmath.nstr(value, args.precision)}")
    r = mayer.verify_density_fixed_point(args.n_max, args.precision, alpha)
    print(f"\ndensity fixed point: exact={r['density_agree']} residual={mpmath.nstr(r['density_residual'], 3)}")
    print(f"virial vs reversion: exact={r['virial_agree']} residual={mpmath.nstr(r['virial_residual'], 3)}")
    for n in range(1, args.n_max + 1):
        print(f"block multiplicativity n={n}: {mayer.block_multiplicativity_check(n)['passed']}")


if __name__ == "__main__":
    main()
