"""Closed-form labelled enumeration of Husimi graphs, cacti and oriented cacti.

Totals and counts by block-size distribution, plus the rooted exponential
generating functions ``A = x R(A)`` used to cross-check them by Lagrange
inversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator, Mapping, Union

from .algebra import Series, compose, fixed_point, lagrange_invert, series_exp
from .errors import DomainError

SPECIES = ("husimi", "cacti", "oriented")


@dataclass(frozen=True, order=False)
class BlockSizeDistribution:
    """Number of blocks of each size: ``counts[i] = n_i`` for ``i >= 2``.

    ``n`` (vertices) and ``k`` (blocks) are derived on access.
    """

    counts: tuple[tuple[int, int], ...] = ()

    def __init__(self, counts: Union[Mapping[int, int], "BlockSizeDistribution", None] = None, **named):
        if isinstance(counts, BlockSizeDistribution):
            counts = dict(counts.counts)
        merged = dict(counts or {})
        for key, v in named.items():
            if not key.startswith("n_"):
                raise TypeError(f"unexpected keyword {key}")
            i = int(key[2:])
            merged[i] = merged.get(i, 0) + v
        for i, c in merged.items():
            if i < 2:
                raise DomainError(f"block size must be >= 2, got {i}")
            if c < 0:
                raise DomainError(f"negative block count n_{i} = {c}")
        object.__setattr__(self, "counts", tuple(sorted((i, c) for i, c in merged.items() if c)))

    @property
    def n(self) -> int:
        return sum(c * (i - 1) for i, c in self.counts) + 1

    @property
    def k(self) -> int:
        return sum(c for _, c in self.counts)

    def get(self, i: int) -> int:
        return dict(self.counts).get(i, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def sort_key(self) -> tuple[int, ...]:
        top = max(self.n, 2)
        d = dict(self.counts)
        return tuple(d.get(i, 0) for i in range(2, top + 1))

    def __str__(self):
        if not self.counts:
            return "()"
        return ",".join(f"n_{i}={c}" for i, c in self.counts)


def _dist(d, n: int | None = None) -> BlockSizeDistribution:
    dist = d if isinstance(d, BlockSizeDistribution) else BlockSizeDistribution(d)
    if n is not None and dist.n != n:
        raise DomainError(f"distribution {dist} has {dist.n} vertices, not {n}")
    return dist


@dataclass
class CountTable:
    """Rows ``(distribution, count)``, descending lexicographic on ``(n_2, n_3, ...)``."""

    n: int
    rows: list[tuple[BlockSizeDistribution, int]] = field(default_factory=list)

    def __post_init__(self):
        self.rows = sorted(((d, c) for d, c in self.rows if c), key=lambda r: r[0].sort_key(), reverse=True)
        seen = set()
        for d, c in self.rows:
            if c < 0:
                raise DomainError("negative count in table")
            if d in seen:
                raise DomainError(f"duplicate distribution {d}")
            seen.add(d)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.rows)

    def as_dict(self) -> dict[BlockSizeDistribution, int]:
        return dict(self.rows)

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind ``S(m, k)``."""
    if m < 0 or k < 0:
        return 0
    if m == 0 and k == 0:
        return 1
    if m == 0 or k == 0:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)


def _exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{num}/{den} is not an integer")
    return q


def _nk1(n: int, k: int) -> Fraction:
    # n^(k-1); k = 0 only occurs for the one-vertex graph (n = 1)
    return Fraction(n) ** (k - 1)


def _check_n(n: int):
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def husimi_labeled_total(n: int) -> int:
    _check_n(n)
    if n == 1:
        return 1
    return sum(stirling2(n - 1, k) * n ** (k - 1) for k in range(1, n))


def husimi_labeled_by_distribution(d, n: int | None = None) -> int:
    d = _dist(d, n)
    n, k = d.n, d.k
    den = prod(factorial(i - 1) ** c * factorial(c) for i, c in d.counts)
    val = factorial(n - 1) * _nk1(n, k) / den
    if val.denominator != 1:
        raise ArithmeticError(f"non-integer Husimi count for {d}")
    return int(val)


def oriented_cacti_labeled_total(n: int) -> int:
    _check_n(n)
    if n == 1:
        return 1
    total = 0
    for k in range(1, n):
        total += _exact(factorial(n - 1) * comb(n - 2, k - 1) * n ** (k - 1), factorial(k))
    return total


def oriented_cacti_by_distribution(d, n: int | None = None) -> int:
    d = _dist(d, n)
    val = factorial(d.n - 1) * _nk1(d.n, d.k) / prod(factorial(c) for _, c in d.counts)
    if val.denominator != 1:
        raise ArithmeticError(f"non-integer oriented-cactus count for {d}")
    return int(val)


def cacti_by_distribution(d, n: int | None = None) -> int:
    d = _dist(d, n)
    polygons = sum(c for i, c in d.counts if i >= 3)
    val = factorial(d.n - 1) * _nk1(d.n, d.k) / (2**polygons * prod(factorial(c) for _, c in d.counts))
    if val.denominator != 1:
        raise ArithmeticError(f"non-integer cactus count for {d}")
    return int(val)


def cacti_labeled_total(n: int) -> int:
    _check_n(n)
    return sum(cacti_by_distribution(d) for d in distributions(n))


def distributions(n: int, sizes=None) -> Iterator[BlockSizeDistribution]:
    """All ``(n_2, n_3, ...)`` with ``sum n_i (i-1) = n - 1``, descending lexicographic order.

    ``sizes`` restricts the allowed block sizes (e.g. ``{3}`` for triangular cacti).
    """
    _check_n(n)
    allowed = sorted(set(sizes) if sizes is not None else range(2, n + 1))
    allowed = [s for s in allowed if 2 <= s <= n]

    def rec(idx: int, remaining: int):
        if idx == len(allowed):
            if remaining == 0:
                yield {}
            return
        size = allowed[idx]
        for c in range(remaining // (size - 1) + 1):
            for rest in rec(idx + 1, remaining - c * (size - 1)):
                out = dict(rest)
                if c:
                    out[size] = c
                yield out

    found = [BlockSizeDistribution(m) for m in rec(0, n - 1)]
    return iter(sorted(found, key=BlockSizeDistribution.sort_key, reverse=True))


_BY_DIST = {
    "husimi": husimi_labeled_by_distribution,
    "cacti": cacti_by_distribution,
    "oriented": oriented_cacti_by_distribution,
}

_TOTAL = {
    "husimi": husimi_labeled_total,
    "cacti": cacti_labeled_total,
    "oriented": oriented_cacti_labeled_total,
}


def _species(species: str) -> str:
    if species not in SPECIES:
        raise DomainError(f"unknown species {species!r}; expected one of {', '.join(SPECIES)}")
    return species


def labeled_total(species: str, n: int) -> int:
    return _TOTAL[_species(species)](n)


def labeled_by_distribution(species: str, d, n: int | None = None) -> int:
    return _BY_DIST[_species(species)](d, n)


def distribution_table(species: str, n: int) -> CountTable:
    fn = _BY_DIST[_species(species)]
    return CountTable(n, [(d, fn(d)) for d in distributions(n)])


# ---------------------------------------------------------------------------
# Rooted EGFs:  A(x) = x R(A(x))  with  R = exp(B'(x))
# ---------------------------------------------------------------------------


def derived_block_egf(species: str, order: int) -> Series:
    """EGF of ``B'`` for the block class of ``species`` (``trees`` also accepted)."""
    if species == "husimi":
        # B' = E_{>=1}: e^t - 1
        coeffs = [0] + [Fraction(1, factorial(m)) for m in range(1, order + 1)]
    elif species == "oriented":
        # B' = nonempty lists: t/(1-t)
        coeffs = [0] + [1] * order
    elif species == "cacti":
        # B' = t + t^2/(2(1-t)): an edge, or an m-gon opened at the root (m >= 3)
        coeffs = [0, 1] + [Fraction(1, 2)] * (order - 1)
    elif species == "trees":
        coeffs = [0, 1]
    else:
        raise DomainError(f"unknown species {species!r}")
    return Series(coeffs, order)


def root_series(species: str, order: int) -> Series:
    """``R(t) = exp(B'(t))``."""
    return series_exp(derived_block_egf(species, order))


def rooted_egf(species: str, order: int) -> Series:
    """Fixed point of ``A = x exp(B'(A))`` to the given order."""
    bprime = derived_block_egf(species, order)
    x = Series.x(order)

    def step(a: Series) -> Series:
        return x * series_exp(compose(bprime, a))

    return fixed_point(step, x)


def rooted_count_by_lagrange(species: str, n: int) -> Fraction:
    """``[x^n]`` of the rooted EGF by Lagrange inversion."""
    return lagrange_invert(root_series(species, max(n, 1)), n)
