from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockforest.errors import DomainError, OracleLimitError
from blockforest.labeled import distribution_table, labeled_total
from blockforest.oracle import (
    LabeledGraph,
    block_decompose,
    burnside_count,
    canonical_form,
    canonical_form_bruteforce,
    classify,
    complete_graph,
    count_labeled,
    count_labeled_by_distribution,
    count_unlabeled,
    cycle_graph,
    direct_oriented_cacti,
    dissymmetry_counts,
    enumerate_graphs,
    is_two_connected,
    oracle_limit,
    root_colors,
    unlabeled_by_extension,
)


@st.composite
def graphs(draw, n_max=7, connected=False):
    n = draw(st.integers(1, n_max))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    edges = set(chosen)
    if connected:
        # thread a random spanning path through the vertices
        order = draw(st.permutations(range(1, n + 1)))
        edges |= {tuple(sorted(p)) for p in zip(order, order[1:])}
    return LabeledGraph.from_edges(n, edges)


def _nx(g: LabeledGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    return h


@given(graphs(connected=True))
def test_blocks_match_networkx(g):
    dec = block_decompose(g)
    h = _nx(g)
    expected = {frozenset(c) for c in nx.biconnected_components(h)}
    assert set(dec.blocks) == expected
    assert set(dec.cutpoints) == set(nx.articulation_points(h))
    assert sum(len(b) - 1 for b in dec.blocks) == g.n - 1 or len(dec.blocks) == 0


def test_decompose_disconnected():
    with pytest.raises(DomainError):
        block_decompose(LabeledGraph.from_edges(3, [(1, 2)]))


def test_classify_examples():
    assert classify(complete_graph(range(1, 5))) >= {"husimi"}
    assert "cactus" not in classify(complete_graph(range(1, 5)))
    c5 = cycle_graph([1, 2, 3, 4, 5])
    assert "cactus" in classify(c5) and "husimi" not in classify(c5)
    assert "tree" in classify(LabeledGraph.from_edges(3, [(1, 2), (2, 3)]))
    bowtie = LabeledGraph.from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    assert {"husimi", "cactus", "triangular-cactus"} <= classify(bowtie)
    k4_minus = LabeledGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    assert classify(k4_minus) == {"other"}


@given(graphs(connected=True))
def test_classification_consistency(g):
    flags = classify(g)
    if "tree" in flags:
        assert {"husimi", "cactus"} <= flags
    if "triangular-cactus" in flags:
        assert {"husimi", "cactus"} <= flags
    if "husimi" in flags and "cactus" in flags:
        # only edges and triangles are both cliques and polygons
        assert all(len(b) <= 3 for b in block_decompose(g).blocks)


@given(graphs(n_max=6), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rnd):
    perm = list(range(1, g.n + 1))
    rnd.shuffle(perm)
    h = g.relabel(dict(zip(range(1, g.n + 1), perm)))
    assert canonical_form(g) == canonical_form(h)


@given(graphs(n_max=5), graphs(n_max=5))
def test_canonical_form_matches_bruteforce(g, h):
    assert (canonical_form(g) == canonical_form(h)) == (canonical_form_bruteforce(g) == canonical_form_bruteforce(h))
    assert (canonical_form(g) == canonical_form(h)) == nx.is_isomorphic(_nx(g), _nx(h))


def test_rooted_canonical_form():
    path = LabeledGraph.from_edges(3, [(1, 2), (2, 3)])
    ends = canonical_form(path, root_colors(3, 1))
    assert ends == canonical_form(path, root_colors(3, 3))
    assert ends != canonical_form(path, root_colors(3, 2))


@pytest.mark.parametrize("species", ["husimi", "cacti", "oriented"])
@pytest.mark.parametrize("n", range(1, 6))
def test_labelled_oracle_matches_formulas(species, n):
    assert count_labeled(species, n) == labeled_total(species, n)
    assert count_labeled_by_distribution(species, n) == distribution_table(species, n)


@pytest.mark.parametrize("n", range(1, 6))
def test_direct_oriented_scan(n):
    assert sum(1 for _ in direct_oriented_cacti(n)) == count_labeled("oriented", n)


# oriented enumeration is kept to n <= 5 for speed
@pytest.mark.parametrize("species,n", [
    (s, n) for s in ("husimi", "cacti", "oriented", "triangular", "trees") for n in range(1, 7)
    if not (s == "oriented" and n > 5)
])
def test_dissymmetry(species, n):
    c = dissymmetry_counts(species, n)
    assert c["vertex"] + c["block"] == c["unrooted"] + c["vertex_block"]


@pytest.mark.parametrize("n", range(1, 6))
def test_burnside(n):
    assert burnside_count("husimi", n) == count_unlabeled("husimi", n)


@pytest.mark.parametrize("species", ["husimi", "cacti", "trees"])
def test_extension_matches_exhaustive(species):
    ext = unlabeled_by_extension(species, 6)
    for n in range(1, 7):
        assert len(ext[n]) == count_unlabeled(species, n, method="exhaustive")


def test_unlabelled_trees():
    # unlabelled free trees, n = 1..8
    assert [count_unlabeled("trees", n) for n in range(1, 9)] == [1, 1, 1, 2, 3, 6, 11, 23]


def test_two_connected():
    assert is_two_connected(LabeledGraph.from_edges(2, [(1, 2)]))
    assert not is_two_connected(LabeledGraph.from_edges(3, [(1, 2), (2, 3)]))
    assert sum(1 for _ in enumerate_graphs(4, is_two_connected)) == 10


def test_oracle_limit(monkeypatch):
    monkeypatch.setenv("BLOCKFOREST_ORACLE_LIMIT", "4")
    assert oracle_limit() == 4
    with pytest.raises(OracleLimitError):
        next(enumerate_graphs(5, limit=oracle_limit()))
