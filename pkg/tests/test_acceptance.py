"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear even under capture).
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial, prod

import mpmath
import pytest

from blockforest import labeled, mayer, oracle, prufer, unlabeled
from blockforest.labeled import BlockSizeDistribution


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def check(number: int, title: str, budget: float):
        start = time.perf_counter()
        status, note = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed > budget:
                note = f" over budget {budget:g}s"
                raise AssertionError(f"criterion {number} took {elapsed:.1f}s, budget {budget:g}s")
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s){note}")

    return check


def test_c01_cayley(criterion):
    with criterion(1, "Cayley specialization n=2..12", 1):
        for n in range(2, 13):
            assert labeled.husimi_labeled_by_distribution({2: n - 1}) == n ** (n - 2)


def test_c02_formulas_vs_oracle(criterion):
    with criterion(2, "labelled totals and tables vs exhaustive oracle, n<=6", 300):
        for species in labeled.SPECIES:
            for n in range(1, 7):
                assert oracle.count_labeled(species, n, limit=6) == labeled.labeled_total(species, n)
                got = oracle.count_labeled_by_distribution(species, n, limit=6)
                assert got == labeled.distribution_table(species, n)


def test_c03_inter_formula_identities(criterion):
    with criterion(3, "Oc = prod (i-1)!^n_i Hu and Oc = 2^(polygons) Ca, n<=10", 60):
        checked = 0
        for n in range(1, 11):
            for d in labeled.distributions(n):
                hu = labeled.husimi_labeled_by_distribution(d)
                oc = labeled.oriented_cacti_by_distribution(d)
                ca = labeled.cacti_by_distribution(d)
                assert oc == prod(factorial(i - 1) ** c for i, c in d.counts) * hu
                assert oc == 2 ** sum(c for i, c in d.counts if i >= 3) * ca
                checked += 1
        assert checked == sum(1 for n in range(1, 11) for _ in labeled.distributions(n))


def test_c04_lagrange(criterion):
    with criterion(4, "n * total = n! [x^n] rooted fixed point, n<=10", 60):
        for species in labeled.SPECIES:
            a = labeled.rooted_egf(species, 10)
            for n in range(1, 11):
                assert n * labeled.labeled_total(species, n) == factorial(n) * a[n]
                assert a[n] == labeled.rooted_count_by_lagrange(species, n)


def test_c05_prufer(criterion):
    with criterion(5, "Pruefer decode.encode on graphs n<=5, encode.decode on codes n<=4", 120):
        sizes = []
        for n in range(1, 6):
            graphs = [prufer.husimi_from_graph(g) for g in oracle.labeled_structures("husimi", n)]
            sizes.append(len(graphs))
            for h in graphs:
                assert prufer.prufer_decode(prufer.prufer_encode(h), n) == h
        assert sizes == [1, 1, 4, 29, oracle.count_labeled("husimi", 5)]
        for n in range(1, 5):
            for c in prufer.all_codes(n):
                assert prufer.prufer_encode(prufer.prufer_decode(c, n)) == c


def test_c06_recurrences_vs_functional(criterion):
    with criterion(6, "unlabelled recurrences equal functional-equation fixed points to order 12", 60):
        assert unlabeled.triangular_rooted_recurrence(12) == unlabeled.triangular_rooted_functional(12)
        assert unlabeled.husimi_rooted_recurrence(12) == unlabeled.husimi_rooted_functional(12)
        assert unlabeled.oriented_rooted_recurrence(12) == unlabeled.oriented_rooted_functional(12)
        for species in unlabeled.UNLABELED_SPECIES:
            unlabeled.bundle(species, 12)  # raises ConsistencyError on any mismatch


def test_c07_unlabelled_vs_canonical_forms(criterion):
    with criterion(7, "d_n, D_n (n<=9), h_n, H_n (n<=6), o_n(y), O_n(y) (n<=5) vs oracle", 600):
        tri = unlabeled.bundle("triangular", 9)
        for n in range(1, 10):
            assert oracle.count_unlabeled("triangular", n) == tri.unrooted[n]
            assert oracle.count_unlabeled("triangular", n, rooted=True) == tri.rooted[n]
        hu = unlabeled.bundle("husimi", 6)
        for n in range(1, 7):
            assert oracle.count_unlabeled("husimi", n) == hu.unrooted[n]
            assert oracle.count_unlabeled("husimi", n, rooted=True) == hu.rooted[n]
        oc = unlabeled.bundle("oriented", 5)
        for n in range(1, 6):
            assert unlabeled.weight_table(oc.unrooted[n], n) == oracle.count_unlabeled("oriented", n, by_distribution=True)
            assert unlabeled.weight_table(oc.rooted[n], n) == oracle.count_unlabeled(
                "oriented", n, rooted=True, by_distribution=True)


def test_c08_burnside(criterion):
    with criterion(8, "Burnside orbit counts equal canonical-form counts, Husimi n<=5", 120):
        for n in range(1, 6):
            assert oracle.burnside_count("husimi", n) == oracle.count_unlabeled("husimi", n)


def test_c09_gaussian_virial(criterion):
    with criterion(9, "gamma_2 = u/2 exactly; dual-route virial residual < 1e-12 at 30 digits; block multiplicativity", 600):
        g2 = mayer.virial_coefficient_sum(2)
        assert g2.grouped() == {1: Fraction(1, 2)} and g2.volume_power == 1
        with mpmath.workdps(50):
            for alpha in (mpmath.pi, 4 * mpmath.pi, mpmath.mpf(2)):
                u = (mpmath.pi / alpha) ** mpmath.mpf(1.5)
                assert abs(mayer.virial_coefficient(2, alpha, 30) - u / 2) < mpmath.mpf(10) ** -28
        for alpha in (None, mpmath.mpf(2)):
            r = mayer.verify_density_fixed_point(5, 30, alpha)
            assert r["density_agree"] and r["virial_agree"]
            assert r["density_residual"] < 1e-12 and r["virial_residual"] < 1e-12
        for n in range(1, 6):
            assert mayer.block_multiplicativity_check(n)["passed"]


def test_c10_nine_weighted_types(criterion):
    with criterion(10, "size-5 unlabelled Husimi graphs fall into 9 weighted types", 60):
        table = oracle.count_unlabeled("husimi", 5, by_distribution=True)
        assert table.total == 9
        assert table.as_dict() == {
            BlockSizeDistribution(n_2=4): 3,
            BlockSizeDistribution(n_2=2, n_3=1): 3,
            BlockSizeDistribution(n_3=2): 1,
            BlockSizeDistribution(n_2=1, n_4=1): 1,
            BlockSizeDistribution(n_5=1): 1,
        }
        assert unlabeled.bundle("husimi", 5).unrooted[5] == 9
