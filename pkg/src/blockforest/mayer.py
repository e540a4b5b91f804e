"""Gaussian-model cluster sums and virial coefficients in reduced units.

For the Gaussian Mayer function ``f = -exp(-alpha r^2)`` a connected graph
``c`` on n vertices has weight ``(-1)^e(c) u^(n-1) gamma(c)^(-3/2)`` with
``u = (pi/alpha)^(3/2)`` and ``gamma`` the number of spanning trees.
Sums are kept grouped by ``gamma`` (exact) and, for series work, as exact
elements of Q(sqrt 2, sqrt 3, ...) with ``u = 1``; the coefficient of
``z^n`` is homogeneous of degree n-1 in ``u``, so nothing is lost.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

import mpmath

from .algebra import RootSum, Series, compose, revert, series_exp
from .errors import DomainError
from .oracle import (
    LabeledGraph,
    block_decompose,
    connected,
    enumerate_graphs,
    is_two_connected,
)

DEFAULT_PRECISION = 30
MAX_PRECISION = 10_000


# ---------------------------------------------------------------------------
# Spanning trees
# ---------------------------------------------------------------------------


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def laplacian(g: LabeledGraph) -> list[list[int]]:
    n = g.n
    L = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        L[u - 1][u - 1] += 1
        L[v - 1][v - 1] += 1
        L[u - 1][v - 1] -= 1
        L[v - 1][u - 1] -= 1
    return L


def spanning_tree_count(g: LabeledGraph) -> int:
    """Graph complexity by the Matrix-Tree theorem; 0 for a disconnected graph."""
    L = laplacian(g)
    minor = [row[1:] for row in L[1:]]
    return _bareiss_det(minor)


def spanning_tree_count_deletion_contraction(g: LabeledGraph) -> int:
    """``t(G) = t(G - e) + t(G / e)`` on multigraphs; independent of the Laplacian."""

    def rec(n_vertices: int, edges: tuple) -> int:
        if n_vertices == 1:
            return 1
        if not edges:
            return 0
        (u, v), rest = edges[0], edges[1:]
        deleted = rec(n_vertices, rest)
        # contract v into u, dropping the loops that appear
        merged = []
        for a, b in rest:
            a = u if a == v else a
            b = u if b == v else b
            if a != b:
                merged.append((min(a, b), max(a, b)))
        return deleted + rec(n_vertices - 1, tuple(merged))

    if not g.is_connected():
        return 0
    return rec(g.n, tuple(sorted(g.edges)))


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianWeight:
    """``sign * u^volume_power * complexity^(-3/2)``."""

    sign: int
    volume_power: int
    complexity: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.complexity < 1:
            raise DomainError("complexity of a connected graph is at least 1")

    def __mul__(self, other: GaussianWeight) -> GaussianWeight:
        return GaussianWeight(
            self.sign * other.sign,
            self.volume_power + other.volume_power,
            self.complexity * other.complexity,
        )

    def exact(self) -> RootSum:
        """Value at ``u = 1``."""
        return RootSum.inverse_power_three_halves(self.complexity, self.sign)

    def evaluate(self, alpha=None, precision: int = DEFAULT_PRECISION):
        with mpmath.workdps(precision):
            u = reduced_volume(alpha)
            return self.sign * u**self.volume_power * mpmath.mpf(self.complexity) ** mpmath.mpf(-1.5)


def gaussian_weight(g: LabeledGraph) -> GaussianWeight:
    if not g.is_connected():
        raise DomainError("Gaussian weight is defined for connected graphs")
    return GaussianWeight((-1) ** len(g.edges), g.n - 1, spanning_tree_count(g))


def reduced_volume(alpha=None):
    """``u = (pi/alpha)^(3/2)``; ``alpha`` defaults to pi (u = 1)."""
    if alpha is None:
        return mpmath.mpf(1)
    alpha = mpmath.mpf(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return (mpmath.pi / alpha) ** mpmath.mpf(1.5)


def _check_precision(precision: int):
    if not isinstance(precision, int) or precision < 1 or precision > MAX_PRECISION:
        raise DomainError(f"precision must be an integer in [1, {MAX_PRECISION}], got {precision!r}")


@dataclass
class ClusterSum:
    """``sum_gamma multiplicity * gamma^(-3/2)``, times ``u^(n-1)``."""

    n: int
    terms: dict[int, Fraction] = field(default_factory=dict)
    graphs: int = 0

    def add(self, w: GaussianWeight, times=1):
        self.terms[w.complexity] = self.terms.get(w.complexity, Fraction(0)) + w.sign * times
        if self.terms[w.complexity] == 0:
            del self.terms[w.complexity]
        self.graphs += 1

    @property
    def volume_power(self) -> int:
        return self.n - 1

    def grouped(self) -> dict[int, Fraction]:
        return dict(sorted(self.terms.items()))

    def exact(self) -> RootSum:
        total = RootSum()
        for gamma, mult in self.terms.items():
            total = total + RootSum.inverse_power_three_halves(gamma, mult)
        return total

    def scaled(self, factor) -> ClusterSum:
        return ClusterSum(self.n, {g: m * factor for g, m in self.terms.items() if m * factor}, self.graphs)

    def evaluate(self, alpha=None, precision: int = DEFAULT_PRECISION):
        _check_precision(precision)
        with mpmath.workdps(precision + 10):
            total = mpmath.mpf(0)
            for gamma, m in sorted(self.terms.items()):
                total += mpmath.mpf(m.numerator) / m.denominator * mpmath.mpf(gamma) ** mpmath.mpf(-1.5)
            value = total * reduced_volume(alpha) ** self.volume_power
        with mpmath.workdps(precision):
            return +value

    def error_bound(self, alpha=None, precision: int = DEFAULT_PRECISION):
        """Width of an interval enclosure of the value at the working precision."""
        _check_precision(precision)
        iv = mpmath.iv
        saved = iv.dps
        iv.dps = precision
        try:
            total = iv.mpf(0)
            for gamma, m in sorted(self.terms.items()):
                total += iv.mpf(m.numerator) / m.denominator / (iv.mpf(gamma) * iv.sqrt(iv.mpf(gamma)))
            u = iv.mpf(1) if alpha is None else (iv.pi / iv.mpf(alpha)) * iv.sqrt(iv.pi / iv.mpf(alpha))
            value = total * u**self.volume_power
            return mpmath.mpf(value.delta)
        finally:
            iv.dps = saved


def two_connected_weight_sum(n: int, limit: Optional[int] = None) -> ClusterSum:
    """``|B[n]|_w`` over all 2-connected labelled graphs on [n] (``beta_n``)."""
    if n < 2:
        raise DomainError("2-connected graphs need n >= 2")
    cs = ClusterSum(n)
    for g in enumerate_graphs(n, is_two_connected, limit):
        cs.add(gaussian_weight(g))
    return cs


def connected_weight_sum(n: int, limit: Optional[int] = None) -> ClusterSum:
    """``|C[n]|_w`` over all connected labelled graphs on [n]."""
    cs = ClusterSum(n)
    for g in enumerate_graphs(n, connected, limit):
        cs.add(gaussian_weight(g))
    return cs


def virial_coefficient_sum(n: int, limit: Optional[int] = None) -> ClusterSum:
    """``gamma_n = -(n-1)/n! * beta_n`` as a grouped sum."""
    return two_connected_weight_sum(n, limit).scaled(Fraction(-(n - 1), factorial(n)))


def virial_coefficient(n: int, alpha=None, precision: int = DEFAULT_PRECISION, limit: Optional[int] = None):
    if n < 2:
        raise DomainError("virial coefficients start at n = 2")
    return virial_coefficient_sum(n, limit).evaluate(alpha, precision)


# ---------------------------------------------------------------------------
# Formal-series identities
# ---------------------------------------------------------------------------


def _exact_weight(g: LabeledGraph):
    return gaussian_weight(g).exact()


def edge_weight(y) -> Callable[[LabeledGraph], object]:
    """Block-multiplicative weight ``y^e(c)``."""
    return lambda g: Fraction(y) ** len(g.edges)


def _graph_sums(N: int, weight: Callable, predicate, zero, limit) -> list:
    out = [zero]
    for n in range(1, N + 1):
        total = zero
        for g in enumerate_graphs(n, predicate, limit):
            total = total + weight(g)
        out.append(total)
    return out


def _egf(values: list, N: int, zero) -> Series:
    return Series([v / factorial(n) if n else v for n, v in enumerate(values)], N, zero)


def density_series(N: int, weight: Callable = _exact_weight, zero=RootSum(), limit=None) -> dict[str, Series]:
    """Series ``Gamma_w(z)``, ``rho(z) = z d/dz Gamma_w``, ``B_w(r)`` and ``B'_w(r)``."""
    conn = _graph_sums(N, weight, connected, zero, limit)
    bic = [zero, zero] + _graph_sums(N, weight, is_two_connected, zero, limit)[2:]
    Gamma = _egf(conn, N, zero)
    B = _egf(bic, N, zero)
    return {"Gamma": Gamma, "rho": Gamma.theta(), "B": B, "Bprime": B.derivative(), "beta": bic}


def _max_abs(values) -> mpmath.mpf:
    return max((abs(v) for v in values), default=mpmath.mpf(0))


def _numeric(s: Series, alpha, precision: int) -> Series:
    """Evaluate exact ``u = 1`` coefficients and restore ``u^(n-1)``."""
    with mpmath.workdps(precision):
        u = reduced_volume(alpha)
        sqrt = mpmath.sqrt
        coeffs = [mpmath.mpf(0)]
        for n in range(1, s.order + 1):
            c = s[n]
            val = c.evaluate(sqrt) if isinstance(c, RootSum) else mpmath.mpf(c.numerator) / c.denominator
            coeffs.append(mpmath.mpf(val) * u ** (n - 1))
    return Series(coeffs, s.order, mpmath.mpf(0))


def verify_density_fixed_point(N: int, precision: int = DEFAULT_PRECISION, alpha=None,
                               weight: Callable = _exact_weight, zero=RootSum(), limit=None) -> dict:
    """Check ``rho = z exp(B'_w(rho))`` and the virial expansion against series reversion.

    Both identities are checked exactly (coefficientwise equality in the
    exact ring) and numerically at ``precision`` digits with ``u`` from
    ``alpha``.
    """
    _check_precision(precision)
    if N < 1:
        raise DomainError("N must be at least 1")
    s = density_series(N, weight, zero, limit)
    rho, Bp, Gamma, beta = s["rho"], s["Bprime"], s["Gamma"], s["beta"]
    z = Series.x(N, zero)
    rhs = z * series_exp(compose(Bp, rho))
    # P/kT as a series in rho: Gamma(z(rho)) with z(rho) the reversion of rho(z)
    pressure = compose(Gamma, revert(rho))
    virial = Series([zero, zero + 1] + [beta[n] * Fraction(-(n - 1), factorial(n)) for n in range(2, N + 1)], N, zero)

    density_exact = [n for n in range(N + 1) if rho[n] != rhs[n]]
    virial_exact = [n for n in range(N + 1) if pressure[n] != virial[n]]

    report: dict = {"N": N, "precision": precision}
    if isinstance(zero, RootSum):
        # numeric route: redo the series algebra in floating point from the
        # numeric Gamma and beta coefficients, independent of the exact route
        with mpmath.workdps(precision):
            G = _numeric(Gamma, alpha, precision)
            Bn = _numeric(s["B"], alpha, precision)
            rho_n = G.theta()
            zn = Series.x(N, mpmath.mpf(0))
            rhs_n = zn * series_exp(compose(Bn.derivative(), rho_n))
            press_n = compose(G, revert(rho_n))
            vir_n = Series([mpmath.mpf(0), mpmath.mpf(1)]
                           + [Bn[n] * (1 - n) for n in range(2, N + 1)], N, mpmath.mpf(0))
            report["density_residual"] = _max_abs(a - b for a, b in zip(rho_n, rhs_n))
            report["virial_residual"] = _max_abs(a - b for a, b in zip(press_n, vir_n))
    report["density_exact_mismatch"] = density_exact
    report["virial_exact_mismatch"] = virial_exact
    report["density_agree"] = not density_exact
    report["virial_agree"] = not virial_exact
    report["rho"] = rho
    report["pressure"] = pressure
    return report


def block_multiplicativity_check(n: int, limit: Optional[int] = None) -> dict:
    """For every connected graph on [n]: weight equals the product of its block weights."""
    failures, checked = [], 0
    for g in enumerate_graphs(n, connected, limit):
        checked += 1
        w = gaussian_weight(g)
        dec = block_decompose(g)
        prod = GaussianWeight(1, 0, 1)
        for vs, es in zip(dec.blocks, dec.block_edges):
            relabel = {v: i + 1 for i, v in enumerate(sorted(vs))}
            block = LabeledGraph(len(vs), frozenset((relabel[a], relabel[b]) for a, b in es))
            prod = prod * gaussian_weight(block)
        if prod != w:
            failures.append((sorted(g.edges), w, prod))
    return {"n": n, "checked": checked, "failures": failures, "passed": not failures}


def component_multiplicativity_check(N: int, limit: Optional[int] = None) -> dict:
    """``G_w(z) = exp(Gamma_w(z))`` with ``w(g)`` the product over connected components."""
    zero = RootSum()

    def components(g: LabeledGraph):
        nb = g.neighbors()
        seen = set()
        for s in range(1, g.n + 1):
            if s in seen:
                continue
            comp, stack = {s}, [s]
            while stack:
                for w in nb[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            relabel = {v: i + 1 for i, v in enumerate(sorted(comp))}
            yield LabeledGraph(len(comp), frozenset((relabel[a], relabel[b]) for a, b in g.edges if a in comp))

    def graph_weight(g: LabeledGraph):
        total = zero + 1
        for c in components(g):
            total = total * _exact_weight(c)
        return total

    all_sums = [zero + 1] + _graph_sums(N, graph_weight, None, zero, limit)[1:]
    G = _egf(all_sums, N, zero)
    Gamma = _egf(_graph_sums(N, _exact_weight, connected, zero, limit), N, zero)
    lhs, rhs = G, series_exp(Gamma)
    bad = [n for n in range(N + 1) if lhs[n] != rhs[n]]
    return {"N": N, "mismatch": bad, "passed": not bad}


def complexity_histogram(n: int, predicate=is_two_connected, limit=None) -> Counter:
    return Counter(spanning_tree_count(g) for g in enumerate_graphs(n, predicate, limit))
