"""Unlabelled enumeration through tilde generating functions.

Every rooted series is computed twice: by the coefficient recurrence and by
fixed-point iteration of the functional equation it comes from.  The two
must agree exactly; a disagreement raises :class:`ConsistencyError` rather
than silently picking one.  Unrooted series come from the dissymmetry
theorem, again by coefficient formula and by series arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import (
    Series,
    WeightPoly,
    fixed_point,
    plethysm_substitute,
    series_exp,
    series_pow,
)
from .errors import ConsistencyError, DomainError
from .labeled import BlockSizeDistribution, CountTable

UNLABELED_SPECIES = ("triangular", "husimi", "oriented")


def euler_totient(m: int) -> int:
    if m < 1:
        raise DomainError(f"totient needs m >= 1, got {m}")
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _check_order(N: int):
    if not isinstance(N, int) or N < 1:
        raise DomainError(f"order must be a positive integer, got {N!r}")


def _agree(name: str, recurrence: Series, functional: Series) -> Series:
    if recurrence != functional:
        bad = [n for n in range(recurrence.order + 1) if recurrence[n] != functional[n]]
        n = bad[0]
        raise ConsistencyError(
            f"{name}: recurrence and functional equation disagree at x^{n}: "
            f"{recurrence[n]} vs {functional[n]}"
        )
    return recurrence


@dataclass
class UnlabeledSeriesBundle:
    rooted: Series
    unrooted: Series
    auxiliaries: dict[str, Series] = field(default_factory=dict)

    def __post_init__(self):
        orders = {self.rooted.order, self.unrooted.order} | {s.order for s in self.auxiliaries.values()}
        if len(orders) != 1:
            raise DomainError(f"bundle series have different orders {sorted(orders)}")
        if self.rooted[0] != 0 or self.unrooted[0] != 0:
            raise DomainError("tilde series must have zero constant term")
        if self.rooted.order >= 1 and self.rooted[1] != 1:
            raise DomainError("rooted series must start with x")

    @property
    def order(self) -> int:
        return self.rooted.order


# ---------------------------------------------------------------------------
# Triangular cacti
# ---------------------------------------------------------------------------


def triangular_rooted_recurrence(N: int) -> Series:
    _check_order(N)
    D = [0, 1] + [0] * (N - 1)
    c: dict[int, int] = {}

    def weight(m: int) -> int:
        # sum over d | m, d >= 2, of sum_j j D_{d-j} D_j, plus (d/2) D_{d/2} for even d | m
        if m not in c:
            s = 0
            for d in divisors(m):
                if d >= 2:
                    s += sum(j * D[d - j] * D[j] for j in range(1, d + 1))
                if d % 2 == 0:
                    s += (d // 2) * D[d // 2]
            c[m] = s
        return c[m]

    for n in range(1, N):
        total = sum(D[n - m + 1] * weight(m) for m in range(1, n + 1))
        q, r = divmod(total, n)
        if r:
            raise ConsistencyError(f"D_{n + 1} is not an integer ({total}/{n})")
        D[n + 1] = q
    return Series(D[: N + 1], N)


def triangular_rooted_functional(N: int) -> Series:
    """Fixed point of ``D = x exp(sum_k (D(x^k)^2 + D(x^{2k})) / (2k))``."""
    _check_order(N)
    x = Series.x(N)

    def step(D: Series) -> Series:
        sq = D * D
        s = Series([], N)
        for k in range(1, N + 1):
            s = s + (plethysm_substitute(sq, k) + plethysm_substitute(D, 2 * k)) / (2 * k)
        return x * series_exp(s)

    return fixed_point(step, x)


def triangular_rooted(N: int) -> Series:
    """Rooted unlabelled triangular cacti ``D_n``, recurrence checked against the functional equation."""
    return _agree("triangular rooted", triangular_rooted_recurrence(N), triangular_rooted_functional(N))


def triangular_unrooted(N: int, rooted: Series | None = None) -> Series:
    """``d_n = D_n + (chi(3|n) D_{n/3} - sum_{i+j+k=n} D_i D_j D_k) / 3``."""
    D = rooted if rooted is not None else triangular_rooted(N)
    cube = series_pow(D, 3)
    coeffs = [Fraction(0)]
    for n in range(1, N + 1):
        ind = D[n // 3] if n % 3 == 0 else 0
        coeffs.append(D[n] + (ind - cube[n]) / 3)
    by_formula = Series(coeffs, N)
    by_series = D + (plethysm_substitute(D, 3) - cube) / 3
    return _agree("triangular unrooted", by_formula, by_series)


def triangular_bundle(N: int) -> UnlabeledSeriesBundle:
    D = triangular_rooted(N)
    return UnlabeledSeriesBundle(D, triangular_unrooted(N, D))


# ---------------------------------------------------------------------------
# Husimi graphs
# ---------------------------------------------------------------------------


def husimi_recurrence_tables(N: int) -> tuple[list[int], list[int], list[int]]:
    """``(H, phi, b)`` with ``H[1..N+1]``, ``phi[1..N+1]``, ``b[1..N]`` (index 0 unused)."""
    _check_order(N)
    H = [0] * (N + 2)
    phi = [0] * (N + 2)
    b = [0] * (N + 1)
    H[1] = phi[1] = 1
    for n in range(1, N + 1):
        # b_n uses phi_h for h <= n and H_l for l <= n
        b[n] = sum(
            l * H[l] * phi[h]
            for d in divisors(n)
            for h in range(1, d + 1)
            for l in divisors(d - h + 1)
        )
        tot = sum(H[n - k + 1] * b[k] for k in range(1, n + 1))
        q, r = divmod(tot, n)
        if r:
            raise ConsistencyError(f"H_{n + 1} is not an integer ({tot}/{n})")
        H[n + 1] = q
        tot = sum(phi[n - m + 1] * sum(d * H[d] for d in divisors(m)) for m in range(1, n + 1))
        q, r = divmod(tot, n)
        if r:
            raise ConsistencyError(f"phi_{n + 1} is not an integer ({tot}/{n})")
        phi[n + 1] = q
    return H, phi, b


def husimi_rooted_recurrence(N: int) -> Series:
    H, _, _ = husimi_recurrence_tables(N)
    return Series([0] + H[1 : N + 1], N)


def _pleth_sum(a: Series, N: int) -> Series:
    """``sum_{k>=1} a(x^k) / k``."""
    s = Series([], N, a.zero)
    for k in range(1, N + 1):
        s = s + plethysm_substitute(a, k) / k
    return s


def husimi_rooted_functional(N: int) -> Series:
    """Fixed point of ``H = x exp(sum_k (exp(sum_m H(x^{mk}) / m) - 1) / k)``."""
    _check_order(N)
    x = Series.x(N)

    def step(H: Series) -> Series:
        psi = series_exp(_pleth_sum(H, N)) - 1
        return x * series_exp(_pleth_sum(psi, N))

    return fixed_point(step, x)


def husimi_rooted(N: int) -> Series:
    """Rooted unlabelled Husimi graphs ``H_n``."""
    return _agree("husimi rooted", husimi_rooted_recurrence(N), husimi_rooted_functional(N))


def husimi_unrooted(N: int) -> Series:
    """``h_n = phi_{n+1} - sum_{k=1}^{n-1} phi_{k+1} H_{n-k}``, checked against ``(phi/x - 1)(1 - H)``."""
    H, phi, _ = husimi_recurrence_tables(N)
    coeffs = [0] + [phi[n + 1] - sum(phi[k + 1] * H[n - k] for k in range(1, n)) for n in range(1, N + 1)]
    by_formula = Series(coeffs, N)
    Hs = husimi_rooted(N)
    by_series = (series_exp(_pleth_sum(Hs, N)) - 1) * (1 - Hs)
    return _agree("husimi unrooted", by_formula, by_series)


def husimi_bundle(N: int) -> UnlabeledSeriesBundle:
    H, phi, b = husimi_recurrence_tables(N)
    rooted = husimi_rooted(N)
    return UnlabeledSeriesBundle(
        rooted,
        husimi_unrooted(N),
        {
            "phi": Series([0] + phi[1 : N + 1], N),
            "b": Series([0] + b[1 : N + 1], N),
        },
    )


# ---------------------------------------------------------------------------
# Oriented cacti weighted by cycle sizes
# ---------------------------------------------------------------------------

_WZERO = WeightPoly()


def _y(i: int) -> WeightPoly:
    return WeightPoly.marker(i)


class _Powers:
    """``O^{(j)}_t``: coefficients of powers of the rooted series, ``O^{(0)} = 1``."""

    def __init__(self, O: list[WeightPoly]):
        self.O = O
        self.memo: dict[tuple[int, int], WeightPoly] = {}

    def __call__(self, j: int, t: int) -> WeightPoly:
        if j == 0:
            return WeightPoly.const(1) if t == 0 else _WZERO
        if t < j:
            return _WZERO
        key = (j, t)
        if key not in self.memo:
            if j == 1:
                val = self.O[t]
            else:
                val = _WZERO
                for s in range(1, t - j + 2):
                    val = val + self.O[s] * self(j - 1, t - s)
            self.memo[key] = val
        return self.memo[key]


def oriented_rooted_recurrence(N: int) -> Series:
    """``O_{n+1} = (1/n) sum_m O_{n-m+1} b_m`` with ``b_m`` as a divisor/convolution sum."""
    _check_order(N)
    O: list[WeightPoly] = [_WZERO, WeightPoly.const(1)] + [_WZERO] * (N - 1)
    pw = _Powers(O)
    b: list[WeightPoly] = [_WZERO] * (N + 1)
    for n in range(1, N):
        m = n
        acc = _WZERO
        for d in divisors(m):
            k = m // d
            for i in range(1, d + 1):
                for j in range(1, d - i + 2):
                    term = pw(j - 1, d - i)
                    if term.is_zero():
                        continue
                    acc = acc + (_y(j + 1).power_markers(k) * O[i].power_markers(k) * term.power_markers(k)) * (i * j)
        b[m] = acc
        tot = _WZERO
        for mm in range(1, n + 1):
            tot = tot + O[n - mm + 1] * b[mm]
        O[n + 1] = (tot / n).truncate_markers(N)
    return Series(O, N, _WZERO)


def oriented_rooted_functional(N: int) -> Series:
    """Fixed point of ``O = x exp(sum_k (1/k) sum_j y_{j+1}^k O^j(x^k; y^k))``."""
    _check_order(N)
    x = Series.x(N, _WZERO)

    def step(O: Series) -> Series:
        inner = Series([], N, _WZERO)
        power = Series.constant(WeightPoly.const(1), N, _WZERO)
        for j in range(1, N + 1):
            power = power * O
            inner = inner + power * _y(j + 1)
        s = _pleth_sum(inner, N)
        return (x * series_exp(s)).map(lambda c: c.truncate_markers(N))

    return fixed_point(step, x)


def oriented_cacti_rooted(N: int) -> Series:
    """Rooted unlabelled oriented cacti ``O_n(y)`` by cycle-size distribution."""
    return _agree("oriented rooted", oriented_rooted_recurrence(N), oriented_rooted_functional(N))


def oriented_cacti_unrooted(N: int, rooted: Series | None = None) -> Series:
    """``o_n(y)`` from the weighted dissymmetry identity ``C_w(O) = o + L_{>=2,w}(O)``."""
    O = rooted if rooted is not None else oriented_cacti_rooted(N)
    pw = _Powers(list(O.coeffs))

    def y_or_one(i: int) -> WeightPoly:
        return WeightPoly.const(1) if i == 1 else _y(i)

    coeffs = [_WZERO]
    for n in range(1, N + 1):
        acc = _WZERO
        for d in divisors(n):
            for h in range(1, n // d + 1):
                acc = acc + y_or_one(d * h) * pw(h, n // d).power_markers(d) * Fraction(euler_totient(d), d * h)
        for m in range(2, n + 1):
            acc = acc - _y(m) * pw(m, n)
        coeffs.append(acc.truncate_markers(N))
    by_formula = Series(coeffs, N, _WZERO)

    by_series = Series([], N, _WZERO)
    for d in range(1, N + 1):
        Od = plethysm_substitute(O, d)
        power = Series.constant(WeightPoly.const(1), N, _WZERO)
        for h in range(1, N // d + 1):
            power = power * Od
            by_series = by_series + power * (y_or_one(d * h) * Fraction(euler_totient(d), d * h))
    power = O
    for m in range(2, N + 1):
        power = power * O
        by_series = by_series - power * _y(m)
    by_series = by_series.map(lambda c: c.truncate_markers(N))
    return _agree("oriented unrooted", by_formula, by_series)


def oriented_bundle(N: int) -> UnlabeledSeriesBundle:
    O = oriented_cacti_rooted(N)
    powers = {}
    p = O
    for j in range(1, N + 1):
        powers[f"O^{j}"] = p
        p = p * O
    return UnlabeledSeriesBundle(O, oriented_cacti_unrooted(N, O), powers)


def at_ones(s: Series) -> Series:
    """Substitute ``y_i = 1`` in a weighted series."""
    return s.map(lambda c: c.at_ones() if isinstance(c, WeightPoly) else c)


def bundle(species: str, N: int) -> UnlabeledSeriesBundle:
    if species == "triangular":
        return triangular_bundle(N)
    if species == "husimi":
        return husimi_bundle(N)
    if species == "oriented":
        return oriented_bundle(N)
    raise DomainError(f"no unlabelled series for {species!r}; expected one of {', '.join(UNLABELED_SPECIES)}")


def weight_table(poly: WeightPoly, n: int) -> CountTable:
    """Read a y-polynomial coefficient as counts keyed by block-size distribution."""
    rows = []
    for exps, c in poly.items():
        if c.denominator != 1:
            raise ConsistencyError(f"non-integer coefficient {c} at {exps} in degree {n}")
        rows.append((BlockSizeDistribution(WeightPoly.monomial_counts(exps)), int(c)))
    return CountTable(n, rows)
