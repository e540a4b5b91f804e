"""Exact scalars, block-size weight polynomials and truncated power series.

Scalars are :class:`fractions.Fraction`.  Series coefficients may be any
ring element that mixes with ``int``/``Fraction`` under ``+``, ``*`` and
division by a nonzero integer: ``Fraction``, :class:`WeightPoly` or
:class:`RootSum`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

from .errors import DomainError, OrderMismatchError

DEFAULT_ORDER = 12

Scalar = (int, Fraction)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


# ---------------------------------------------------------------------------
# Weight polynomials in y_2, y_3, ...
# ---------------------------------------------------------------------------


def _trim(exps: Iterable[int]) -> tuple[int, ...]:
    e = list(exps)
    while e and e[-1] == 0:
        e.pop()
    return tuple(e)


def _add_exps(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a))


class WeightPoly:
    """Polynomial in the block-size markers ``y_2, y_3, ...`` over the rationals.

    A monomial is an exponent tuple ``(e_2, e_3, ...)`` with trailing zeros
    trimmed, so ``()`` is the constant monomial.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            if any(e < 0 for e in exps):
                raise DomainError(f"negative exponent in {exps}")
            key = _trim(exps)
            acc[key] = acc.get(key, Fraction(0)) + _frac(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> WeightPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> WeightPoly:
        return cls({(): c})

    @classmethod
    def marker(cls, i: int, power: int = 1) -> WeightPoly:
        """The monomial ``y_i ** power`` (``y_1`` is the constant 1)."""
        if i < 1:
            raise DomainError(f"no marker y_{i}")
        if i == 1:
            return cls.const(1)
        e = [0] * (i - 1)
        e[-1] = power
        return cls({tuple(e): 1})

    @classmethod
    def from_distribution(cls, counts: Mapping[int, int], coeff=1) -> WeightPoly:
        """Monomial ``coeff * prod y_i^{n_i}`` for a block-size distribution."""
        if not counts:
            return cls.const(coeff)
        top = max(counts)
        e = [0] * (top - 1)
        for i, k in counts.items():
            if i < 2:
                raise DomainError(f"block size {i} < 2")
            e[i - 2] += k
        return cls({tuple(e): coeff})

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # ring operations -------------------------------------------------------

    def _coerce(self, other) -> WeightPoly | None:
        if isinstance(other, WeightPoly):
            return other
        if isinstance(other, Scalar):
            return WeightPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._terms)
        for k, v in o._terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return WeightPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return WeightPoly._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other == 0:
                return WeightPoly._raw({})
            return WeightPoly._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, WeightPoly):
            return NotImplemented
        t: dict[tuple[int, ...], Fraction] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = _add_exps(k1, k2)
                t[k] = t.get(k, 0) + v1 * v2
        return WeightPoly._raw({k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("WeightPoly division by zero")
        q = Fraction(1, 1) / other
        return self * q

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a weight polynomial")
        result, base = WeightPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # marker manipulations --------------------------------------------------

    def power_markers(self, k: int) -> WeightPoly:
        """Apply ``y_i -> y_i^k`` to every marker (plethystic action of p_k)."""
        return WeightPoly._raw({tuple(e * k for e in exps): v for exps, v in self._terms.items()})

    def truncate_markers(self, max_index: int) -> WeightPoly:
        """Drop every monomial that involves ``y_i`` with ``i > max_index``."""
        keep = max(max_index - 1, 0)
        return WeightPoly._raw({e: v for e, v in self._terms.items() if len(e) <= keep})

    def evaluate(self, values: Mapping[int, object] | None = None, default=1):
        """Substitute numbers for markers; unlisted markers take ``default``."""
        values = values or {}
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for idx, e in enumerate(exps):
                if e:
                    term = term * values.get(idx + 2, default) ** e
            total = total + term
        return total

    def at_ones(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def restrict(self, allowed: Iterable[int]) -> WeightPoly:
        """Keep only monomials using markers from ``allowed``."""
        ok = set(allowed)
        return WeightPoly._raw(
            {e: v for e, v in self._terms.items() if all(x == 0 or (i + 2) in ok for i, x in enumerate(e))}
        )

    @staticmethod
    def monomial_counts(exps: tuple[int, ...]) -> dict[int, int]:
        return {i + 2: e for i, e in enumerate(exps) if e}

    def __repr__(self):
        return f"WeightPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(
                f"y{i + 2}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Sums of square roots of integers with rational coefficients
# ---------------------------------------------------------------------------


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` squarefree."""
    if n <= 0:
        raise DomainError(f"squarefree_split needs a positive integer, got {n}")
    s, f, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            f *= p
        p += 1
    return s, f * n


class RootSum:
    """Element ``sum_f q_f * sqrt(f)`` of Q(sqrt 2, sqrt 3, ...), f squarefree.

    Square roots of distinct squarefree integers are linearly independent
    over Q, so the mapping representation is canonical and ``==`` is exact.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        acc: dict[int, Fraction] = {}
        for radicand, c in (terms or {}).items():
            s, f = squarefree_split(radicand)
            acc[f] = acc.get(f, Fraction(0)) + _frac(c) * s
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _raw(cls, terms):
        r = cls.__new__(cls)
        r._terms = terms
        return r

    @classmethod
    def inverse_power_three_halves(cls, g: int, coeff=1) -> RootSum:
        """``coeff * g^(-3/2)`` written as ``coeff / (s^3 f^2) * sqrt(f)``."""
        s, f = squarefree_split(g)
        return cls._raw({f: _frac(coeff) / (s**3 * f**2)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(sorted(self._terms.items()))

    def _coerce(self, other):
        if isinstance(other, RootSum):
            return other
        if isinstance(other, Scalar):
            return RootSum._raw({1: _frac(other)} if other else {})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._terms)
        for k, v in o._terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return RootSum._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return RootSum._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other == 0:
                return RootSum._raw({})
            return RootSum._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, RootSum):
            return NotImplemented
        t: dict[int, Fraction] = {}
        for f1, v1 in self._terms.items():
            for f2, v2 in other._terms.items():
                g = gcd(f1, f2)
                f = (f1 // g) * (f2 // g)
                t[f] = t.get(f, 0) + v1 * v2 * g
        return RootSum._raw({k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("RootSum division by zero")
        return self * (Fraction(1) / other)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def evaluate(self, sqrt: Callable = None):
        """Numeric value; ``sqrt`` lets the caller supply a high-precision root."""
        if sqrt is None:
            return float(sum(float(v) * f**0.5 for f, v in self._terms.items()))
        total = 0
        for f, v in sorted(self._terms.items()):
            total = total + sqrt(f) * v.numerator / v.denominator
        return total

    def __repr__(self):
        return f"RootSum({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for f, v in sorted(self._terms.items()):
            term = str(abs(v)) if f == 1 else f"{abs(v)}*sqrt({f})"
            if not out:
                out = term if v > 0 else "-" + term
            else:
                out += (" + " if v > 0 else " - ") + term
        return out


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------


def _raise_markers(c, k: int):
    return c.power_markers(k) if isinstance(c, WeightPoly) else c


def _is_zero(c) -> bool:
    return c == 0


class Series:
    """Power series in ``x`` truncated after ``x^order``.

    >>> s = Series([0, 1], order=4)
    >>> series_exp(s).coeffs
    (Fraction(1, 1), Fraction(1, 1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))
    """

    __slots__ = ("_coeffs", "_order", "_zero")

    def __init__(self, coeffs: Sequence = (), order: int = DEFAULT_ORDER, zero=None):
        if order < 0:
            raise DomainError("truncation order must be nonnegative")
        coeffs = list(coeffs)[: order + 1]
        if zero is None:
            zero = next((c * 0 for c in coeffs if not isinstance(c, int)), Fraction(0))
        conv = [Fraction(c) if isinstance(c, int) and isinstance(zero, Fraction) else c for c in coeffs]
        conv = [zero + c if isinstance(c, Scalar) and not isinstance(zero, Fraction) else c for c in conv]
        conv += [zero] * (order + 1 - len(conv))
        self._coeffs = tuple(conv)
        self._order = order
        self._zero = zero

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER, zero=Fraction(0)) -> Series:
        return cls([zero, zero + 1], order, zero)

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER, zero=None) -> Series:
        return cls([c], order, zero)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._zero + 1

    def __getitem__(self, n):
        return self._coeffs[n]

    def __len__(self):
        return self._order + 1

    def __iter__(self):
        return iter(self._coeffs)

    def _same(self, c: Iterable) -> Series:
        return Series(list(c), self._order, self._zero)

    def _check(self, other: Series):
        if other._order != self._order:
            raise OrderMismatchError(
                f"truncation orders differ: {self._order} vs {other._order}"
            )

    def __add__(self, other):
        if isinstance(other, Series):
            self._check(other)
            return self._same(a + b for a, b in zip(self._coeffs, other._coeffs))
        c = list(self._coeffs)
        c[0] = c[0] + other
        return self._same(c)

    __radd__ = __add__

    def __neg__(self):
        return self._same(-a for a in self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return series_mul(self, other)
        return self._same(a * other for a in self._coeffs)

    def __rmul__(self, other):
        return self._same(other * a for a in self._coeffs)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return series_div(self, other)
        return self._same(a / other for a in self._coeffs)

    def __pow__(self, k: int):
        return series_pow(self, k)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self._order == other._order and all(a == b for a, b in zip(self._coeffs, other._coeffs))

    def __hash__(self):
        return hash((self._order, self._coeffs))

    def __repr__(self):
        return f"Series({[str(c) for c in self._coeffs]}, order={self._order})"

    def valuation(self) -> int:
        for i, c in enumerate(self._coeffs):
            if not _is_zero(c):
                return i
        return self._order + 1

    def theta(self) -> Series:
        """``x d/dx``."""
        return self._same(a * n for n, a in enumerate(self._coeffs))

    def derivative(self) -> Series:
        c = [a * n for n, a in enumerate(self._coeffs)][1:]
        return self._same(c)

    def shift(self, k: int) -> Series:
        """Multiply by ``x^k`` (k >= 0) or divide by ``x^-k`` (k < 0, low terms must vanish)."""
        if k >= 0:
            return self._same([self._zero] * k + list(self._coeffs))
        if any(not _is_zero(c) for c in self._coeffs[:-k]):
            raise DomainError("cannot divide by x: low-order coefficients are nonzero")
        return self._same(self._coeffs[-k:])

    def map(self, fn: Callable) -> Series:
        out = [fn(c) for c in self._coeffs]
        zero = fn(self._zero)
        return Series(out, self._order, zero)

    def truncate(self, order: int) -> Series:
        return Series(self._coeffs, order, self._zero)


def series_mul(a: Series, b: Series) -> Series:
    a._check(b)
    n = a.order
    va, vb = a.valuation(), b.valuation()
    out = [a.zero] * (n + 1)
    for i in range(va, n + 1):
        ai = a[i]
        if _is_zero(ai):
            continue
        for j in range(vb, n + 1 - i):
            bj = b[j]
            if not _is_zero(bj):
                out[i + j] = out[i + j] + ai * bj
    return a._same(out)


def series_pow(a: Series, k: int) -> Series:
    if k < 0:
        raise DomainError("negative powers are not supported")
    result = Series.constant(a.one, a.order, a.zero)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def series_inverse(a: Series) -> Series:
    """Multiplicative inverse; the constant term must be a unit scalar."""
    c0 = a[0]
    if not isinstance(c0, Scalar) and isinstance(c0, WeightPoly):
        if len(c0) != 1 or () not in c0.terms:
            raise DomainError("constant term is not an invertible scalar")
        c0 = c0.terms[()]
    if c0 == 0:
        raise DomainError("series with zero constant term is not invertible")
    inv0 = Fraction(1) / c0
    out = [a.one * inv0]
    for n in range(1, a.order + 1):
        s = a.zero
        for k in range(1, n + 1):
            s = s + a[k] * out[n - k]
        out.append(-s * inv0)
    return a._same(out)


def series_div(a: Series, b: Series) -> Series:
    a._check(b)
    return series_mul(a, series_inverse(b))


def series_exp(a: Series) -> Series:
    """``exp(a)`` for ``a`` with zero constant term, from ``n b_n = sum k a_k b_{n-k}``."""
    if not _is_zero(a[0]):
        raise DomainError("exp needs a series with zero constant term")
    out = [a.one]
    for n in range(1, a.order + 1):
        s = a.zero
        for k in range(1, n + 1):
            if not _is_zero(a[k]):
                s = s + a[k] * out[n - k] * k
        out.append(s / n)
    return a._same(out)


def series_log(a: Series) -> Series:
    """``log(a)`` for ``a`` with constant term 1."""
    if a[0] != 1:
        raise DomainError("log needs a series with constant term 1")
    out = [a.zero]
    for n in range(1, a.order + 1):
        s = a[n] * n
        for k in range(1, n):
            s = s - out[k] * a[n - k] * k
        out.append(s / n)
    return a._same(out)


def compose(f: Series, g: Series) -> Series:
    """``f(g(x))`` by Horner's rule; ``g`` must have zero constant term."""
    f._check(g)
    if not _is_zero(g[0]):
        raise DomainError("composition needs an inner series with zero constant term")
    result = Series.constant(f[f.order], f.order, f.zero)
    for i in range(f.order - 1, -1, -1):
        result = series_mul(result, g) + f[i]
    return result


def plethysm_substitute(a: Series, k: int) -> Series:
    """``a(x^k)`` with every marker raised as ``y_i -> y_i^k``."""
    if k < 1:
        raise DomainError("plethystic substitution needs k >= 1")
    if k == 1:
        return a
    out = [a.zero] * (a.order + 1)
    for m in range(0, a.order // k + 1):
        out[k * m] = _raise_markers(a[m], k)
    return a._same(out)


def revert(f: Series) -> Series:
    """Compositional inverse ``g`` with ``f(g(x)) = x``; needs ``f = c x + ...``, c a nonzero scalar."""
    if not _is_zero(f[0]):
        raise DomainError("reversion needs zero constant term")
    c1 = f[1]
    if isinstance(c1, RootSum):
        c1 = c1.terms.get(1, 0) if set(c1.terms) <= {1} else None
    elif isinstance(c1, WeightPoly):
        c1 = c1.terms.get((), 0) if set(c1.terms) <= {()} else None
    if c1 is None or c1 == 0:
        raise DomainError("reversion needs a nonzero scalar linear coefficient")
    inv = Fraction(1) / c1 if isinstance(c1, Scalar) else f.one / c1
    x = Series.x(f.order, f.zero)
    g = x * inv
    for _ in range(f.order):
        g = g - (compose(f, g) - x) * inv
    return g


def fixed_point(step: Callable[[Series], Series], start: Series, iterations: int | None = None) -> Series:
    """Iterate ``A <- step(A)`` from ``start``.

    For equations of the form ``A = x * R(A)`` the coefficient of ``x^n`` is
    final after ``n`` iterations, so ``order`` iterations suffice.
    """
    it = start.order if iterations is None else iterations
    a = start
    for _ in range(it):
        a = step(a)
    return a


def lagrange_invert(r: Series, n: int) -> Fraction:
    """``[x^n] A`` where ``A = x R(A)``, i.e. ``(1/n) [t^(n-1)] R(t)^n``."""
    if n < 1 or n > r.order:
        raise DomainError(f"need 1 <= n <= order ({r.order}), got {n}")
    if _is_zero(r[0]):
        raise DomainError("Lagrange inversion needs R with nonzero constant term")
    return series_pow(r, n)[n - 1] / n


def egf(values: Sequence[int], order: int = DEFAULT_ORDER) -> Series:
    """Exponential generating function ``sum values[n] x^n / n!``."""
    out, fact = [], 1
    for n, v in enumerate(values[: order + 1]):
        if n:
            fact *= n
        out.append(Fraction(v, fact))
    return Series(out, order)

