"""Named invariant checks behind ``blockforest selftest``.

Each check raises on failure; :func:`run` collects the outcome per name.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Callable, Optional

from . import labeled, mayer, oracle, prufer, unlabeled
from .errors import ConsistencyError


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _require(cond: bool, what: str):
    if not cond:
        raise ConsistencyError(what)


def check_unlabeled_recurrences():
    # each bundle compares recurrence and functional equation internally
    for species in unlabeled.UNLABELED_SPECIES:
        unlabeled.bundle(species, 12)


def check_cayley():
    for n in range(2, 13):
        d = labeled.BlockSizeDistribution({2: n - 1})
        _require(labeled.husimi_labeled_by_distribution(d) == n ** (n - 2), f"Cayley at n={n}")


def check_formula_identities():
    for n in range(1, 11):
        for d in labeled.distributions(n):
            hu = labeled.husimi_labeled_by_distribution(d)
            oc = labeled.oriented_cacti_by_distribution(d)
            ca = labeled.cacti_by_distribution(d)
            _require(oc == prod(factorial(i - 1) ** c for i, c in d.counts) * hu, f"Oc/Hu at {d}")
            _require(oc == 2 ** sum(c for i, c in d.counts if i >= 3) * ca, f"Oc/Ca at {d}")
        for s in labeled.SPECIES:
            table = labeled.distribution_table(s, n)
            _require(table.total == labeled.labeled_total(s, n), f"{s} table sum at n={n}")


def check_lagrange():
    for s in labeled.SPECIES:
        A = labeled.rooted_egf(s, 10)
        for n in range(1, 11):
            _require(n * labeled.labeled_total(s, n) == factorial(n) * A[n], f"{s} rooted EGF at n={n}")
            _require(A[n] == labeled.rooted_count_by_lagrange(s, n), f"{s} Lagrange inversion at n={n}")


def check_prufer(n_max: int = 4):
    def run():
        for n in range(1, n_max + 1):
            for g in oracle.labeled_structures("husimi", n):
                h = prufer.husimi_from_graph(g)
                _require(prufer.prufer_decode(prufer.prufer_encode(h), n) == h, f"decode(encode) at n={n}")
            for c in prufer.all_codes(n):
                _require(prufer.prufer_encode(prufer.prufer_decode(c, n)) == c, f"encode(decode) at n={n}")

    return run


def check_virial(N: int):
    def run():
        r = mayer.verify_density_fixed_point(N)
        _require(r["density_agree"] and r["density_residual"] < 1e-12, "density fixed point")
        _require(r["virial_agree"] and r["virial_residual"] < 1e-12, "virial dual route")
        _require(mayer.virial_coefficient_sum(2).grouped() == {1: mayer.Fraction(1, 2)}, "gamma_2 = u/2")

    return run


def check_labeled_oracle(n_max: int):
    def run():
        for s in labeled.SPECIES:
            for n in range(1, n_max + 1):
                got = oracle.count_labeled_by_distribution(s, n)
                _require(got == labeled.distribution_table(s, n), f"{s} labelled table vs oracle at n={n}")

    return run


def check_unlabeled_oracle(limits: dict[str, int]):
    def run():
        for s, n_max in limits.items():
            b = unlabeled.bundle(s, n_max)
            for n in range(1, n_max + 1):
                if s == "oriented":
                    table = oracle.count_unlabeled(s, n, by_distribution=True)
                    _require(unlabeled.weight_table(b.unrooted[n], n) == table, f"oriented o_{n}(y) vs oracle")
                    rooted = oracle.count_unlabeled(s, n, rooted=True, by_distribution=True)
                    _require(unlabeled.weight_table(b.rooted[n], n) == rooted, f"oriented O_{n}(y) vs oracle")
                else:
                    _require(oracle.count_unlabeled(s, n) == b.unrooted[n], f"{s} unrooted vs oracle at n={n}")
                    _require(oracle.count_unlabeled(s, n, rooted=True) == b.rooted[n], f"{s} rooted vs oracle at n={n}")

    return run


def check_burnside(n_max: int):
    def run():
        for n in range(1, n_max + 1):
            _require(oracle.burnside_count("husimi", n) == oracle.count_unlabeled("husimi", n), f"Burnside at n={n}")

    return run


def check_multiplicativity(n_max: int):
    def run():
        for n in range(1, n_max + 1):
            _require(mayer.block_multiplicativity_check(n)["passed"], f"block multiplicativity at n={n}")
        _require(mayer.component_multiplicativity_check(n_max)["passed"], "G_w = exp(Gamma_w)")

    return run


def checks(level: str, limit: Optional[int] = None) -> list[tuple[str, Callable[[], None]]]:
    fast = [
        ("unlabeled-recurrence-vs-functional", check_unlabeled_recurrences),
        ("cayley-specialization", check_cayley),
        ("labeled-formula-identities", check_formula_identities),
        ("lagrange-inversion", check_lagrange),
        ("prufer-roundtrip", check_prufer(4)),
        ("virial-dual-route", check_virial(4)),
    ]
    if level == "fast":
        return fast
    lim = oracle.oracle_limit() if limit is None else limit
    small = min(lim, 6)
    return fast + [
        ("labeled-vs-oracle", check_labeled_oracle(small)),
        ("unlabeled-vs-oracle", check_unlabeled_oracle(
            {"triangular": 9 if lim >= oracle.DEFAULT_ORACLE_LIMIT else lim, "husimi": small, "oriented": min(lim, 5)})),
        ("burnside", check_burnside(min(lim, 5))),
        ("prufer-roundtrip-5", check_prufer(min(lim, 5))),
        ("virial-dual-route-5", check_virial(min(lim, 5))),
        ("gaussian-multiplicativity", check_multiplicativity(min(lim, 5))),
    ]


def run(level: str = "fast", limit: Optional[int] = None) -> list[CheckResult]:
    out = []
    for name, fn in checks(level, limit):
        try:
            fn()
        except (ConsistencyError, AssertionError, ArithmeticError) as e:
            out.append(CheckResult(name, False, str(e)))
        else:
            out.append(CheckResult(name, True))
    return out
