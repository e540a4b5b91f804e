from __future__ import annotations

from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockforest.errors import DomainError
from blockforest.labeled import (
    SPECIES,
    BlockSizeDistribution,
    CountTable,
    cacti_by_distribution,
    distribution_table,
    distributions,
    husimi_labeled_by_distribution,
    husimi_labeled_total,
    labeled_total,
    oriented_cacti_by_distribution,
    oriented_cacti_labeled_total,
    rooted_count_by_lagrange,
    rooted_egf,
    stirling2,
)

# labelled totals, n = 1..7
HUSIMI = [1, 1, 4, 29, 311, 4447, 79745]
CACTI = [1, 1, 4, 31, 362, 5676, 111982]
ORIENTED = [1, 1, 5, 46, 629, 11496]


def test_known_totals():
    assert [husimi_labeled_total(n) for n in range(1, 8)] == HUSIMI
    assert [labeled_total("cacti", n) for n in range(1, 8)] == CACTI
    assert [oriented_cacti_labeled_total(n) for n in range(1, 7)] == ORIENTED


def test_spec_examples():
    assert husimi_labeled_by_distribution({2: 3}) == 16
    assert husimi_labeled_by_distribution(BlockSizeDistribution(n_3=1)) == 1
    assert husimi_labeled_total(1) == 1
    assert husimi_labeled_total(4) == 29
    t = distribution_table("cacti", 3)
    assert [(str(d), c) for d, c in t.rows] == [("n_2=2", 3), ("n_3=1", 1)]


@pytest.mark.parametrize("n", range(2, 13))
def test_cayley(n):
    assert husimi_labeled_by_distribution({2: n - 1}) == n ** (n - 2)


def test_stirling():
    assert [stirling2(5, k) for k in range(6)] == [0, 1, 15, 25, 10, 1]


@pytest.mark.parametrize("n", range(1, 11))
def test_inter_formula_identities(n):
    for d in distributions(n):
        hu, oc, ca = (f(d) for f in (husimi_labeled_by_distribution, oriented_cacti_by_distribution, cacti_by_distribution))
        assert oc == prod(factorial(i - 1) ** c for i, c in d.counts) * hu
        assert oc == 2 ** sum(c for i, c in d.counts if i >= 3) * ca


@pytest.mark.parametrize("species", SPECIES)
@pytest.mark.parametrize("n", range(1, 9))
def test_table_sums_to_total(species, n):
    assert distribution_table(species, n).total == labeled_total(species, n)


@pytest.mark.parametrize("species", SPECIES)
def test_rooted_egf_against_lagrange(species):
    a = rooted_egf(species, 10)
    for n in range(1, 11):
        assert n * labeled_total(species, n) == factorial(n) * a[n]
        assert a[n] == rooted_count_by_lagrange(species, n)


@given(st.integers(1, 12))
def test_distributions_partition_n_minus_one(n):
    ds = list(distributions(n))
    assert all(d.n == n for d in ds)
    assert len(set(ds)) == len(ds)
    keys = [d.sort_key() for d in ds]
    assert keys == sorted(keys, reverse=True)


@given(st.dictionaries(st.integers(2, 6), st.integers(0, 3), max_size=4))
def test_distribution_n_and_k(counts):
    d = BlockSizeDistribution(counts)
    assert d.n == 1 + sum(c * (i - 1) for i, c in counts.items())
    assert d.k == sum(counts.values())


def test_distribution_validation():
    with pytest.raises(DomainError):
        BlockSizeDistribution({1: 2})
    with pytest.raises(DomainError):
        BlockSizeDistribution({2: -1})
    with pytest.raises(DomainError):
        husimi_labeled_by_distribution({2: 2}, n=4)
    with pytest.raises(DomainError):
        labeled_total("trees", 3)
    with pytest.raises(DomainError):
        husimi_labeled_total(0)


def test_empty_distribution_is_one_vertex():
    d = BlockSizeDistribution()
    assert d.n == 1 and d.k == 0 and str(d) == "()"
    assert husimi_labeled_by_distribution(d) == 1


def test_count_table_rejects_duplicates():
    d = BlockSizeDistribution(n_2=1)
    with pytest.raises(DomainError):
        CountTable(2, [(d, 1), (d, 2)])
