from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import mpmath
import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockforest.algebra import RootSum
from blockforest.errors import DomainError
from blockforest.mayer import (
    GaussianWeight,
    block_multiplicativity_check,
    component_multiplicativity_check,
    edge_weight,
    gaussian_weight,
    reduced_volume,
    spanning_tree_count,
    spanning_tree_count_deletion_contraction,
    two_connected_weight_sum,
    verify_density_fixed_point,
    virial_coefficient,
    virial_coefficient_sum,
)
from blockforest.oracle import LabeledGraph, complete_graph, cycle_graph


@st.composite
def small_graphs(draw, max_edges=8):
    n = draw(st.integers(1, 6))
    pairs = list(combinations(range(1, n + 1), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges) if pairs else st.just([]))
    return LabeledGraph.from_edges(n, edges)


def test_spanning_tree_examples():
    assert spanning_tree_count(complete_graph(range(1, 5))) == 16
    assert spanning_tree_count(cycle_graph([1, 2, 3, 4, 5])) == 5
    assert spanning_tree_count(LabeledGraph.from_edges(3, [(1, 2)])) == 0
    assert spanning_tree_count(LabeledGraph(1, frozenset())) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_cayley_via_matrix_tree(n):
    assert spanning_tree_count(complete_graph(range(1, n + 1))) == n ** (n - 2)


@given(small_graphs())
def test_matrix_tree_against_deletion_contraction(g):
    assert spanning_tree_count(g) == spanning_tree_count_deletion_contraction(g)


@given(small_graphs(max_edges=15))
def test_matrix_tree_against_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    expected = round(nx.number_of_spanning_trees(h)) if nx.is_connected(h) else 0
    assert spanning_tree_count(g) == expected


def test_two_connected_sums():
    assert two_connected_weight_sum(2).grouped() == {1: -1}
    assert two_connected_weight_sum(3).grouped() == {3: -1}
    b4 = two_connected_weight_sum(4)
    assert b4.graphs == 10
    assert b4.grouped() == {4: 3, 8: -6, 16: 1}
    assert two_connected_weight_sum(5).graphs == 238


def test_gamma_two_exact():
    g2 = virial_coefficient_sum(2)
    assert g2.grouped() == {1: Fraction(1, 2)} and g2.volume_power == 1
    assert g2.exact() == Fraction(1, 2)


@pytest.mark.parametrize("alpha,expected", [
    (None, "0.5"),
    ("pi", "0.5"),
    ("4pi", "0.0625"),
])
def test_gamma_two_numeric(alpha, expected):
    with mpmath.workdps(40):
        a = {None: None, "pi": mpmath.pi, "4pi": 4 * mpmath.pi}[alpha]
        val = virial_coefficient(2, a, precision=30)
    assert abs(val - mpmath.mpf(expected)) < mpmath.mpf(10) ** -29


def test_gamma_three_is_direct_integral():
    # (1/3) * int int f12 f13 f23 dr2 dr3 = (1/3) 3^(-3/2) u^2
    assert virial_coefficient_sum(3).exact() == RootSum.inverse_power_three_halves(3, Fraction(1, 3))


def test_precision_bounds():
    with pytest.raises(DomainError):
        virial_coefficient(2, precision=0)
    with pytest.raises(DomainError):
        reduced_volume(-1)


@given(st.integers(2, 5))
def test_error_bound_small(n):
    cs = virial_coefficient_sum(n)
    assert cs.error_bound(precision=30) < mpmath.mpf(10) ** -25


def test_weight_multiplication():
    w = GaussianWeight(-1, 1, 1) * GaussianWeight(-1, 2, 3)
    assert w == GaussianWeight(1, 3, 3)
    with pytest.raises(DomainError):
        gaussian_weight(LabeledGraph.from_edges(3, [(1, 2)]))


@pytest.mark.parametrize("n", range(1, 6))
def test_block_multiplicativity(n):
    assert block_multiplicativity_check(n)["passed"]


def test_component_multiplicativity():
    assert component_multiplicativity_check(5)["passed"]


@pytest.mark.parametrize("alpha", [None, 2, 10])
def test_density_and_virial_routes_agree(alpha):
    r = verify_density_fixed_point(5, 30, alpha)
    assert r["density_agree"] and r["virial_agree"]
    assert r["density_residual"] < 1e-12
    assert r["virial_residual"] < 1e-12


def test_residual_tracks_precision():
    lo = verify_density_fixed_point(4, 20)
    hi = verify_density_fixed_point(4, 50)
    assert lo["virial_residual"] < mpmath.mpf(10) ** -12
    assert hi["virial_residual"] < mpmath.mpf(10) ** -40


def test_degenerate_weight_gives_rho_equal_z():
    r = verify_density_fixed_point(5, weight=edge_weight(0), zero=Fraction(0))
    assert list(r["rho"]) == [0, 1, 0, 0, 0, 0]
    assert r["density_agree"] and r["virial_agree"]


def test_edge_weight_one_counts_graphs():
    # y = 1: Gamma is the EGF of connected graphs, rho = z exp(B'(rho)) still holds
    r = verify_density_fixed_point(5, weight=edge_weight(1), zero=Fraction(0))
    assert r["density_agree"] and r["virial_agree"]
