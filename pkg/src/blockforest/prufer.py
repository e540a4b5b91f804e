"""Pruefer-type bijection between labelled Husimi graphs and pairs (lambda, pi).

A Husimi graph on [n] with k blocks is encoded as a sequence ``lambda`` of
k-1 vertices and a partition ``pi`` of ``[n] - {lambda[-1]}`` into k parts;
a block of size i becomes a part of size i-1.  Encoding repeatedly strips
the leaf block whose non-articulation vertices contain the smallest label.

Conventions for the degenerate cases: one block gives ``lambda = ()`` and
``pi = {that block}``; the one-vertex graph (no blocks) gives empty
``lambda`` and ``pi``.

Text formats (one item per line, ``#`` starts a comment)::

    graph:  3; {1,2},{2,3}
    code:   lambda: 2; pi: {1}|{3}
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional

from .errors import DecodeError, DomainError, StructureError


def _fs(xs: Iterable[int]) -> frozenset:
    return frozenset(xs)


@dataclass(frozen=True)
class HusimiGraph:
    """A Husimi graph stored as its set of blocks (vertex sets of the cliques)."""

    n: int
    blocks: frozenset

    def __post_init__(self):
        blocks = frozenset(_fs(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        validate_husimi(self.n, blocks)

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> HusimiGraph:
        return cls(n, frozenset(_fs(b) for b in blocks))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def edges(self) -> frozenset:
        return frozenset((u, v) for b in self.blocks for u in b for v in b if u < v)

    def articulation_points(self) -> frozenset:
        seen: dict[int, int] = {}
        for b in self.blocks:
            for v in b:
                seen[v] = seen.get(v, 0) + 1
        return frozenset(v for v, c in seen.items() if c >= 2)

    def sorted_blocks(self) -> list[list[int]]:
        return sorted(sorted(b) for b in self.blocks)

    def __str__(self):
        return format_graph(self)


def validate_husimi(n: int, blocks: frozenset) -> None:
    """Raise :class:`StructureError` unless ``blocks`` are the blocks of a Husimi graph on [n].

    The block/vertex incidence graph is built explicitly and must be a tree
    covering every vertex.
    """
    if n < 1:
        raise StructureError(f"n must be positive, got {n}")
    if not blocks:
        if n != 1:
            raise StructureError("only the one-vertex graph has no blocks")
        return
    for b in blocks:
        if len(b) < 2:
            raise StructureError(f"block {sorted(b)} has fewer than 2 vertices")
        if not all(isinstance(v, int) and 1 <= v <= n for v in b):
            raise StructureError(f"block {sorted(b)} has vertices outside [1, {n}]")
    covered = set().union(*blocks)
    if covered != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - covered)
        raise StructureError(f"vertices {missing} lie in no block")
    # incidence graph: nodes ('v', x) and ('b', i); union-find detects cycles
    parent: dict = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, b in enumerate(sorted(blocks, key=sorted)):
        for v in b:
            ra, rb = find(("b", i)), find(("v", v))
            if ra == rb:
                raise StructureError("block-cutpoint structure has a cycle (blocks overlap or form a ring)")
            parent[ra] = rb
    roots = {find(("v", v)) for v in range(1, n + 1)}
    if len(roots) != 1:
        raise StructureError("blocks do not form a connected graph")


@dataclass(frozen=True)
class PruferCode:
    lam: tuple[int, ...]
    pi: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "pi", frozenset(_fs(p) for p in self.pi))

    @property
    def k(self) -> int:
        return len(self.pi)

    @property
    def n(self) -> int:
        covered = sum(len(p) for p in self.pi)
        return covered + 1 if len(self.pi) >= 2 else max(covered, 1)

    def part_sizes(self) -> list[int]:
        return sorted(len(p) for p in self.pi)

    def sorted_parts(self) -> list[list[int]]:
        return sorted(sorted(p) for p in self.pi)

    def __str__(self):
        return format_code(self)


def leaf_block_select(h: HusimiGraph) -> tuple[frozenset, Optional[int]]:
    """The leaf block ``b`` minimising ``min(b - {j_b})`` and its articulation point ``j_b``.

    With a single block there is no articulation point and ``None`` is returned for it.
    """
    if not h.blocks:
        raise DomainError("graph has no blocks")
    if len(h.blocks) == 1:
        (b,) = h.blocks
        return b, None
    return _select(h.blocks)


def _select(blocks: frozenset) -> tuple[frozenset, int]:
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    best = None
    for b in blocks:
        arts = [v for v in b if count[v] >= 2]
        if len(arts) != 1:
            continue
        j = arts[0]
        key = min(b - {j})
        if best is None or key < best[0]:
            best = (key, b, j)
    if best is None:
        raise StructureError("no leaf block found")
    return best[1], best[2]


def prufer_encode(h: HusimiGraph) -> PruferCode:
    if h.k == 0:
        return PruferCode((), frozenset())
    if h.k == 1:
        return PruferCode((), h.blocks)
    blocks = set(h.blocks)
    lam, pi = [], []
    for _ in range(h.k - 1):
        b, j = _select(frozenset(blocks))
        lam.append(j)
        pi.append(b - {j})
        blocks.remove(b)
    (last,) = blocks
    pi.append(last - {lam[-1]})
    return PruferCode(tuple(lam), frozenset(pi))


def validate_code(c: PruferCode, n: Optional[int] = None) -> int:
    """Check the code invariants and return ``n``."""
    k = len(c.pi)
    if k == 0:
        if c.lam:
            raise DecodeError("empty partition needs an empty sequence")
        if n not in (None, 1):
            raise DecodeError("empty code describes the one-vertex graph only")
        return 1
    if len(c.lam) != k - 1:
        raise DecodeError(f"sequence length {len(c.lam)} does not match {k} parts (need {k - 1})")
    if any(not p for p in c.pi):
        raise DecodeError("partition has an empty part")
    total = sum(len(p) for p in c.pi)
    union = set().union(*c.pi)
    if len(union) != total:
        raise DecodeError("partition parts overlap")
    inferred = c.n
    if n is not None and n != inferred:
        raise DecodeError(f"code covers {inferred} vertices, not {n}")
    n = inferred
    expected = set(range(1, n + 1))
    if k >= 2:
        if not all(1 <= j <= n for j in c.lam):
            raise DecodeError(f"sequence entries must lie in [1, {n}]")
        expected.discard(c.lam[-1])
    if union != expected:
        raise DecodeError(f"parts must cover [1, {n}] minus the last sequence entry")
    if k == 1 and n < 2:
        raise DecodeError("a single block needs at least two vertices")
    return n


def prufer_decode(c: PruferCode, n: Optional[int] = None) -> HusimiGraph:
    """Inverse of :func:`prufer_encode`.

    At step i the removed block's part is the unused part, disjoint from the
    rest of the sequence, holding the smallest label; the block is that part
    plus ``lambda[i]``.
    """
    n = validate_code(c, n)
    k = len(c.pi)
    if k == 0:
        return HusimiGraph(1, frozenset())
    if k == 1:
        return HusimiGraph(n, c.pi)
    unused = set(c.pi)
    blocks = []
    for i, j in enumerate(c.lam):
        later = set(c.lam[i:])
        free = [p for p in unused if not (p & later)]
        if not free:
            raise DecodeError(f"no leaf part available at step {i + 1}")
        p = min(free, key=min)
        blocks.append(p | {j})
        unused.remove(p)
    (last,) = unused
    blocks.append(last | {c.lam[-1]})
    try:
        return HusimiGraph(n, frozenset(blocks))
    except StructureError as e:
        raise DecodeError(f"code does not decode to a Husimi graph: {e}") from None


# ---------------------------------------------------------------------------
# Exhaustive generation of codes and graphs (for round-trip checks)
# ---------------------------------------------------------------------------


def set_partitions(items: list, k: int) -> Iterator[list[list]]:
    """Partitions of ``items`` into exactly ``k`` nonempty blocks."""
    if k == 0:
        if not items:
            yield []
        return
    if len(items) < k:
        return
    first, rest = items[0], items[1:]
    # first alone
    for p in set_partitions(rest, k - 1):
        yield [[first]] + p
    # first joins an existing block
    for p in set_partitions(rest, k):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def all_codes(n: int) -> Iterator[PruferCode]:
    """Every valid code for Husimi graphs on [n]."""
    if n == 1:
        yield PruferCode((), frozenset())
        return
    yield PruferCode((), frozenset({frozenset(range(1, n + 1))}))
    for k in range(2, n):
        for lam in product(range(1, n + 1), repeat=k - 1):
            rest = [v for v in range(1, n + 1) if v != lam[-1]]
            for parts in set_partitions(rest, k):
                yield PruferCode(lam, frozenset(frozenset(p) for p in parts))


def husimi_from_graph(g) -> HusimiGraph:
    """Convert an oracle :class:`LabeledGraph` whose blocks are cliques."""
    from .oracle import block_decompose

    return HusimiGraph(g.n, frozenset(block_decompose(g).blocks))


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

_SET = re.compile(r"\{([^{}]*)\}")


def _ints(text: str, where: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise DomainError(f"{where}: expected comma-separated integers, got {text!r}") from None


def _sets(text: str, sep: str, where: str) -> list[list[int]]:
    text = text.strip()
    if not text:
        return []
    out = []
    for chunk in text.split(sep):
        m = _SET.fullmatch(chunk.strip())
        if not m:
            raise DomainError(f"{where}: expected {{a,b,...}}, got {chunk.strip()!r}")
        out.append(_ints(m.group(1), where))
    return out


def _split_sets(text: str) -> list[str]:
    # split "{1,2},{2,3}" on the commas between braces
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse_graph(line: str, lineno: int = 1) -> HusimiGraph:
    where = f"line {lineno}"
    if ";" not in line:
        raise DomainError(f"{where}: expected 'n; {{a,b}},...'")
    head, body = line.split(";", 1)
    try:
        n = int(head.strip())
    except ValueError:
        raise DomainError(f"{where}: bad vertex count {head.strip()!r}") from None
    blocks = [
        _sets(chunk, "|", where)[0] for chunk in _split_sets(body) if chunk.strip()
    ]
    try:
        return HusimiGraph.of(n, blocks)
    except StructureError as e:
        raise StructureError(f"{where}: {e}") from None


def format_graph(h: HusimiGraph) -> str:
    body = ",".join("{" + ",".join(map(str, b)) + "}" for b in h.sorted_blocks())
    return f"{h.n}; {body}" if body else f"{h.n};"


def parse_code(line: str, lineno: int = 1) -> PruferCode:
    where = f"line {lineno}"
    m = re.fullmatch(r"\s*lambda:\s*([^;]*);\s*pi:\s*(.*?)\s*", line)
    if not m:
        raise DomainError(f"{where}: expected 'lambda: ...; pi: {{..}}|{{..}}'")
    lam = _ints(m.group(1), where)
    parts = _sets(m.group(2), "|", where)
    return PruferCode(tuple(lam), frozenset(frozenset(p) for p in parts))


def format_code(c: PruferCode) -> str:
    lam = ",".join(map(str, c.lam))
    pi = "|".join("{" + ",".join(map(str, p)) + "}" for p in c.sorted_parts())
    return f"lambda: {lam}; pi: {pi}"


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def encode_text(text: str) -> str:
    return "\n".join(format_code(prufer_encode(parse_graph(line, i))) for i, line in _lines(text))


def decode_text(text: str) -> str:
    out = []
    for i, line in _lines(text):
        try:
            out.append(format_graph(prufer_decode(parse_code(line, i))))
        except DecodeError as e:
            raise DecodeError(f"line {i}: {e}") from None
    return "\n".join(out)
