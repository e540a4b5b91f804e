from __future__ import annotations

import pytest

from blockforest import unlabeled
from blockforest.algebra import Series, WeightPoly
from blockforest.errors import ConsistencyError, DomainError
from blockforest.oracle import count_unlabeled
from blockforest.unlabeled import (
    at_ones,
    bundle,
    euler_totient,
    husimi_recurrence_tables,
    husimi_rooted_functional,
    husimi_rooted_recurrence,
    oriented_rooted_functional,
    oriented_rooted_recurrence,
    triangular_rooted_functional,
    triangular_rooted_recurrence,
    weight_table,
)

y2, y3, y4 = (WeightPoly.marker(i) for i in (2, 3, 4))


def test_triangular_series():
    b = bundle("triangular", 12)
    assert list(b.rooted) == [0, 1, 0, 1, 0, 2, 0, 5, 0, 13, 0, 37, 0]
    assert list(b.unrooted) == [0, 1, 0, 1, 0, 1, 0, 2, 0, 4, 0, 8, 0]


def test_husimi_series():
    b = bundle("husimi", 8)
    assert list(b.rooted)[1:] == [1, 1, 3, 8, 25, 77, 258, 871]
    assert list(b.unrooted)[1:] == [1, 1, 2, 4, 9, 22, 59, 165]


def test_oriented_series():
    b = bundle("oriented", 7)
    assert list(at_ones(b.rooted))[1:] == [1, 1, 3, 9, 32, 117, 460]
    assert list(at_ones(b.unrooted))[1:] == [1, 1, 2, 4, 9, 26, 78]
    assert b.rooted[3] == y3 + y2 * y2 * 2
    assert b.unrooted[3] == y3 + y2 * y2
    assert b.unrooted[4] == y4 + y2 * y3 + y2 * y2 * y2 * 2


@pytest.mark.parametrize("rec,fp", [
    (triangular_rooted_recurrence, triangular_rooted_functional),
    (husimi_rooted_recurrence, husimi_rooted_functional),
    (oriented_rooted_recurrence, oriented_rooted_functional),
])
def test_recurrence_equals_functional_equation(rec, fp):
    assert rec(12) == fp(12)


def test_husimi_b_is_divisor_sum_of_phi():
    H, phi, b = husimi_recurrence_tables(12)
    for n in range(1, 12):
        assert b[n] == sum(d * phi[d + 1] for d in range(1, n + 1) if n % d == 0)


def test_tree_specialisation():
    # keeping only y2 leaves the unlabelled free trees
    o = bundle("oriented", 7).unrooted
    trees = [o[n].restrict({2}).at_ones() for n in range(1, 8)]
    assert trees == [1, 1, 1, 2, 3, 6, 11]


@pytest.mark.parametrize("n", range(1, 10))
def test_triangular_against_oracle(n):
    b = bundle("triangular", 9)
    assert count_unlabeled("triangular", n) == b.unrooted[n]
    assert count_unlabeled("triangular", n, rooted=True) == b.rooted[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_oriented_monomials_against_oracle(n):
    b = bundle("oriented", 5)
    assert weight_table(b.unrooted[n], n) == count_unlabeled("oriented", n, by_distribution=True)
    assert weight_table(b.rooted[n], n) == count_unlabeled("oriented", n, rooted=True, by_distribution=True)


def test_husimi_five_has_nine_weighted_types():
    t = count_unlabeled("husimi", 5, by_distribution=True)
    assert len(t.rows) == 5 and t.total == 9
    assert {str(d): c for d, c in t.rows} == {
        "n_2=4": 3, "n_2=2,n_3=1": 3, "n_3=2": 1, "n_2=1,n_4=1": 1, "n_5=1": 1}


def test_corrupted_recurrence_is_reported(monkeypatch):
    good = unlabeled.triangular_rooted_recurrence

    def broken(N):
        s = list(good(N))
        s[7] += 1
        return Series(s, N)

    monkeypatch.setattr(unlabeled, "triangular_rooted_recurrence", broken)
    with pytest.raises(ConsistencyError, match="x\\^7"):
        bundle("triangular", 9)


def test_totient():
    assert [euler_totient(m) for m in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


def test_unknown_species():
    with pytest.raises(DomainError):
        bundle("cacti", 5)
