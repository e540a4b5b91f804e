"""Brute-force ground truth for every count in the package.

Labelled structures come from exhaustive enumeration of edge subsets of the
complete graph.  Unlabelled counts come from canonical forms, computed by
individualization-refinement (colour refinement, then branching on the
first non-singleton cell and keeping the lexicographically least leaf).

Nothing here reads the closed formulas or generating functions; it is the
independent side of every cross-check.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial
from typing import Callable, Iterable, Iterator, Optional

from .errors import DomainError, OracleLimitError
from .labeled import BlockSizeDistribution, CountTable

DEFAULT_ORACLE_LIMIT = 7
# Unlabelled generation by leaf-block extension never touches the 2^(n choose 2)
# edge subsets, so it gets its own (larger) ceiling.
DEFAULT_EXTENSION_LIMIT = 10
DIRECT_DIGRAPH_LIMIT = 5

ORACLE_SPECIES = ("husimi", "cacti", "oriented", "triangular", "trees")


def oracle_limit() -> int:
    raw = os.environ.get("BLOCKFOREST_ORACLE_LIMIT")
    if raw is None:
        return DEFAULT_ORACLE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"BLOCKFOREST_ORACLE_LIMIT must be an integer, got {raw!r}") from None


def _check_limit(n: int, limit: Optional[int], what: str = "exhaustive enumeration"):
    lim = oracle_limit() if limit is None else limit
    if n > lim:
        raise OracleLimitError(f"n={n} exceeds the oracle limit {lim} for {what}")


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def _pair(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise DomainError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on vertices ``1..n``; ``arcs`` (optional) orients it into a digraph.

    When ``arcs`` is given every edge carries one arc or both opposite arcs
    (a 2-cycle), and ``edges`` is the underlying simple graph.
    """

    n: int
    edges: frozenset = frozenset()
    arcs: Optional[frozenset] = None

    def __post_init__(self):
        edges = frozenset(_pair(u, v) for u, v in self.edges)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise DomainError(f"edge {(u, v)} outside [1, {self.n}]")
        object.__setattr__(self, "edges", edges)
        if self.arcs is not None:
            arcs = frozenset(tuple(a) for a in self.arcs)
            if frozenset(_pair(u, v) for u, v in arcs) != edges:
                raise DomainError("arcs must orient exactly the edge set")
            object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> LabeledGraph:
        return cls(n, frozenset(edges))

    @classmethod
    def from_digraph(cls, n: int, arcs: Iterable) -> LabeledGraph:
        arcs = frozenset(tuple(a) for a in arcs)
        return cls(n, frozenset(_pair(u, v) for u, v in arcs), arcs)

    @property
    def directed(self) -> bool:
        return self.arcs is not None

    def neighbors(self) -> dict[int, set[int]]:
        nb = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return nb

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        nb = self.neighbors()
        seen, stack = {1}, [1]
        while stack:
            for w in nb[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def relabel(self, perm: dict[int, int]) -> LabeledGraph:
        edges = frozenset(_pair(perm[u], perm[v]) for u, v in self.edges)
        arcs = None if self.arcs is None else frozenset((perm[u], perm[v]) for u, v in self.arcs)
        return LabeledGraph(self.n, edges, arcs)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


def complete_graph(vertices: Iterable[int], n: Optional[int] = None) -> LabeledGraph:
    vs = sorted(vertices)
    return LabeledGraph(n or max(vs), frozenset(combinations(vs, 2)))


def cycle_graph(vertices: list[int], n: Optional[int] = None) -> LabeledGraph:
    m = len(vertices)
    edges = {_pair(vertices[i], vertices[(i + 1) % m]) for i in range(m)} if m > 2 else set()
    if m == 2:
        edges = {_pair(*vertices)}
    return LabeledGraph(n or max(vertices), frozenset(edges))


def enumerate_graphs(n: int, predicate: Optional[Callable[[LabeledGraph], bool]] = None,
                     limit: Optional[int] = None) -> Iterator[LabeledGraph]:
    """Every edge subset of K_n (vertices 1..n) passing ``predicate``, by increasing bitmask."""
    _check_limit(n, limit)
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        g = LabeledGraph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if predicate is None or predicate(g):
            yield g


def connected(g: LabeledGraph) -> bool:
    return g.is_connected()


# ---------------------------------------------------------------------------
# Blocks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset, ...]
    block_edges: tuple[frozenset, ...]
    cutpoints: frozenset
    tree_edges: frozenset = field(default=frozenset())

    def sizes(self) -> Counter:
        return Counter(len(b) for b in self.blocks)

    def distribution(self) -> BlockSizeDistribution:
        return BlockSizeDistribution(dict(self.sizes()))


def block_decompose(g: LabeledGraph) -> BlockDecomposition:
    """Biconnected components (bridges are blocks of size 2) and cutpoints."""
    if not g.is_connected():
        raise DomainError("block decomposition needs a connected graph")
    if g.n == 1:
        return BlockDecomposition((), (), frozenset(), frozenset())
    nb = {v: sorted(w) for v, w in g.neighbors().items()}
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    edge_stack: list[tuple[int, int]] = []
    comps: list[list[tuple[int, int]]] = []
    counter = 0
    root = 1
    disc[root] = low[root] = counter
    # frames: (vertex, parent, iterator position)
    stack = [(root, 0, 0)]
    while stack:
        v, parent, i = stack.pop()
        if i < len(nb[v]):
            stack.append((v, parent, i + 1))
            w = nb[v][i]
            if w not in disc:
                counter += 1
                disc[w] = low[w] = counter
                edge_stack.append((v, w))
                stack.append((w, v, 0))
            elif w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        else:
            if parent:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    comp = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (parent, v):
                            break
                    comps.append(comp)
    blocks, bedges = [], []
    for comp in comps:
        es = frozenset(_pair(*e) for e in comp)
        bedges.append(es)
        blocks.append(frozenset(x for e in es for x in e))
    order = sorted(range(len(blocks)), key=lambda i: sorted(blocks[i]))
    blocks = [blocks[i] for i in order]
    bedges = [bedges[i] for i in order]
    seen = Counter(v for b in blocks for v in b)
    cut = frozenset(v for v, c in seen.items() if c >= 2)
    tree = frozenset((i, v) for i, b in enumerate(blocks) for v in b if v in cut)
    return BlockDecomposition(tuple(blocks), tuple(bedges), cut, tree)


def _block_is_complete(vs: frozenset, es: frozenset) -> bool:
    k = len(vs)
    return len(es) == k * (k - 1) // 2


def _block_is_polygon(vs: frozenset, es: frozenset) -> bool:
    # a 2-connected graph with as many edges as vertices is a cycle
    return len(vs) == 2 or len(es) == len(vs)


def classify(g: LabeledGraph) -> frozenset:
    """Flags among ``husimi, cactus, oriented-cactus-underlying, triangular-cactus, tree``; ``other`` if none."""
    if not g.is_connected():
        return frozenset({"other"})
    dec = block_decompose(g)
    flags = set()
    pairs = list(zip(dec.blocks, dec.block_edges))
    if all(_block_is_complete(b, e) for b, e in pairs):
        flags.add("husimi")
    if all(_block_is_polygon(b, e) for b, e in pairs):
        flags.add("cactus")
        flags.add("oriented-cactus-underlying")
    if all(len(b) == 3 and len(e) == 3 for b, e in pairs):
        flags.add("triangular-cactus")
    if all(len(b) == 2 for b in dec.blocks):
        flags.add("tree")
    return frozenset(flags or {"other"})


def is_two_connected(g: LabeledGraph) -> bool:
    """Connected, at least one edge, and no cutpoint (K_2 counts as 2-connected)."""
    if g.n < 2 or not g.edges or not g.is_connected():
        return False
    return len(block_decompose(g).blocks) == 1


def _oriented_block_ok(vs: frozenset, es: frozenset, arcs) -> bool:
    inner = [a for a in arcs if a[0] in vs and a[1] in vs]
    if len(vs) == 2:
        return len(inner) == 2
    if len(es) != len(vs) or len(inner) != len(vs):
        return False
    outdeg = Counter(a[0] for a in inner)
    indeg = Counter(a[1] for a in inner)
    return all(outdeg[v] == 1 and indeg[v] == 1 for v in vs)


def is_oriented_cactus(g: LabeledGraph, dec: Optional[BlockDecomposition] = None) -> bool:
    """Digraph whose blocks are 2-cycles (both arcs) or directed cycles of length >= 3.

    ``dec`` may pass in the block decomposition of the underlying graph.
    """
    if g.arcs is None or not g.is_connected():
        return False
    if g.n == 1:
        return True
    dec = dec or block_decompose(g)
    return all(_oriented_block_ok(vs, es, g.arcs) for vs, es in zip(dec.blocks, dec.block_edges))


_PREDICATES = {
    "husimi": lambda g: "husimi" in classify(g),
    "cacti": lambda g: "cactus" in classify(g),
    "triangular": lambda g: "triangular-cactus" in classify(g),
    "trees": lambda g: "tree" in classify(g),
}


def _species(species: str) -> str:
    if species not in ORACLE_SPECIES:
        raise DomainError(f"unknown species {species!r}; expected one of {', '.join(ORACLE_SPECIES)}")
    return species


def orientations(g: LabeledGraph) -> Iterator[LabeledGraph]:
    """All oriented cacti whose underlying graph is the cactus ``g``."""
    dec = block_decompose(g)
    choices = []
    for vs, es in zip(dec.blocks, dec.block_edges):
        if len(vs) == 2:
            (u, v), = es
            choices.append([((u, v), (v, u))])
        else:
            nb = {v: [] for v in vs}
            for a, b in es:
                nb[a].append(b)
                nb[b].append(a)
            start = min(vs)
            cyc = [start, nb[start][0]]
            while len(cyc) < len(vs):
                nxt = [w for w in nb[cyc[-1]] if w != cyc[-2]][0]
                cyc.append(nxt)
            fwd = tuple((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
            bwd = tuple((b, a) for a, b in fwd)
            choices.append([fwd, bwd])
    for pick in product(*choices):
        yield LabeledGraph.from_digraph(g.n, [a for block in pick for a in block])


def labeled_structures(species: str, n: int, limit: Optional[int] = None) -> Iterator[LabeledGraph]:
    """Every labelled structure of ``species`` on [n] by exhaustive search."""
    _species(species)
    if species == "oriented":
        for g in enumerate_graphs(n, _PREDICATES["cacti"], limit):
            yield from orientations(g)
    else:
        yield from enumerate_graphs(n, _PREDICATES[species], limit)


def direct_oriented_cacti(n: int) -> Iterator[LabeledGraph]:
    """Oriented cacti found by scanning every digraph over connected underlying graphs.

    Independent of :func:`orientations`; each edge is tried as u->v, v->u and both.
    """
    if n > DIRECT_DIGRAPH_LIMIT:
        raise OracleLimitError(f"direct digraph scan is limited to n <= {DIRECT_DIGRAPH_LIMIT}")
    for g in enumerate_graphs(n, connected, limit=max(n, 1)):
        edges = sorted(g.edges)
        dec = block_decompose(g)
        # a block with more edges than vertices cannot carry a directed cycle
        if any(len(vs) > 2 and len(es) != len(vs) for vs, es in zip(dec.blocks, dec.block_edges)):
            continue
        for states in product(range(3), repeat=len(edges)):
            arcs = []
            for (u, v), s in zip(edges, states):
                if s in (0, 2):
                    arcs.append((u, v))
                if s in (1, 2):
                    arcs.append((v, u))
            d = LabeledGraph.from_digraph(n, arcs)
            if is_oriented_cactus(d, dec):
                yield d


def distribution_of(g: LabeledGraph) -> BlockSizeDistribution:
    return block_decompose(g).distribution()


def count_labeled(species: str, n: int, limit: Optional[int] = None) -> int:
    return sum(1 for _ in labeled_structures(species, n, limit))


def count_labeled_by_distribution(species: str, n: int, limit: Optional[int] = None) -> CountTable:
    tally = Counter(distribution_of(g) for g in labeled_structures(species, n, limit))
    return CountTable(n, list(tally.items()))


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def _refine(colors: list[int], out_nb: list[list[int]], in_nb: list[list[int]]) -> list[int]:
    """Stable colouring; new colour ranks sort by (old colour, neighbour colour multisets)."""
    n = len(colors)
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in out_nb[v])), tuple(sorted(colors[w] for w in in_nb[v])))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: LabeledGraph, colors: Optional[list[int]] = None) -> tuple:
    """Certificate equal for two (coloured) graphs iff they are isomorphic.

    ``colors[v-1]`` is an optional initial colour of vertex ``v`` (e.g. to
    mark a root); isomorphisms must preserve it.
    """
    n = g.n
    arcs = g.arcs if g.arcs is not None else {a for u, v in g.edges for a in ((u, v), (v, u))}
    arcs0 = [(u - 1, v - 1) for u, v in arcs]
    out_nb = [[] for _ in range(n)]
    in_nb = [[] for _ in range(n)]
    for u, v in arcs0:
        out_nb[u].append(v)
        in_nb[v].append(u)
    init = list(colors) if colors is not None else [0] * n
    base = _refine(_rerank(init), out_nb, in_nb)
    best: list = [None]

    def leaf(col: list[int]):
        cert = (tuple(init[v] for v in sorted(range(n), key=lambda v: col[v])),
                tuple(sorted((col[u], col[v]) for u, v in arcs0)))
        if best[0] is None or cert < best[0]:
            best[0] = cert

    def search(col: list[int]):
        cells = Counter(col)
        target = min((c for c, k in cells.items() if k > 1), default=None)
        if target is None:
            leaf(col)
            return
        for v in range(n):
            if col[v] == target:
                split = [(2 * c + (0 if w == v else 1)) if c == target else 2 * c for w, c in enumerate(col)]
                search(_refine(_rerank(split), out_nb, in_nb))

    search(base)
    return (n, g.directed, best[0])


def _rerank(colors: list[int]) -> list[int]:
    rank = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [rank[c] for c in colors]


def canonical_form_bruteforce(g: LabeledGraph, colors: Optional[list[int]] = None) -> tuple:
    """Minimum relabelled encoding over all n! permutations (tiny n only)."""
    n = g.n
    init = list(colors) if colors is not None else [0] * n
    arcs = g.arcs if g.arcs is not None else {a for u, v in g.edges for a in ((u, v), (v, u))}
    best = None
    for perm in permutations(range(n)):
        # perm[v] = new position of vertex v+1
        pos_to_v = sorted(range(n), key=lambda v: perm[v])
        cert = (tuple(init[v] for v in pos_to_v), tuple(sorted((perm[u - 1], perm[v - 1]) for u, v in arcs)))
        if best is None or cert < best:
            best = cert
    return (n, g.directed, best)


def root_colors(n: int, root: int) -> list[int]:
    return [1 if v == root else 0 for v in range(1, n + 1)]


# ---------------------------------------------------------------------------
# Unlabelled generation by leaf-block extension
# ---------------------------------------------------------------------------


def _block_shapes(species: str, max_size: int) -> list[int]:
    if species == "trees":
        sizes = [2]
    elif species == "triangular":
        sizes = [3]
    else:
        sizes = list(range(2, max_size + 1))
    return [s for s in sizes if s <= max_size]


def _attach(g: LabeledGraph, v: int, size: int, species: str) -> LabeledGraph:
    new = list(range(g.n + 1, g.n + size))
    verts = [v] + new
    n = g.n + size - 1
    if species == "oriented":
        if size == 2:
            extra = [(v, new[0]), (new[0], v)]
        else:
            extra = [(verts[i], verts[(i + 1) % size]) for i in range(size)]
        return LabeledGraph.from_digraph(n, set(g.arcs or ()) | set(extra))
    if species == "husimi":
        extra = set(combinations(verts, 2))
    else:
        extra = {_pair(verts[i], verts[(i + 1) % size]) for i in range(size)} if size > 2 else {(v, new[0])}
    return LabeledGraph(n, g.edges | frozenset(extra))


def unlabeled_by_extension(species: str, n_max: int, limit: Optional[int] = None) -> dict[int, list[LabeledGraph]]:
    """Isomorphism-class representatives on 1..n_max vertices.

    Every structure with at least one block has a leaf block; deleting it
    leaves a smaller structure of the same species, so attaching one block
    at every vertex of every smaller representative reaches all classes.
    """
    _species(species)
    _check_limit(n_max, DEFAULT_EXTENSION_LIMIT if limit is None else limit, "extension generation")
    one = LabeledGraph(1, frozenset(), frozenset() if species == "oriented" else None)
    reps: dict[int, dict[tuple, LabeledGraph]] = {1: {canonical_form(one): one}}
    for n in range(2, n_max + 1):
        reps[n] = {}
    for m in range(1, n_max + 1):
        for g in list(reps[m].values()):
            for size in _block_shapes(species, n_max - m + 1):
                for v in range(1, m + 1):
                    h = _attach(g, v, size, species)
                    cf = canonical_form(h)
                    reps[h.n].setdefault(cf, h)
    return {n: list(d.values()) for n, d in reps.items()}


def unlabeled_representatives(species: str, n: int, method: str = "auto",
                              limit: Optional[int] = None) -> list[LabeledGraph]:
    """One labelled representative per isomorphism class on n vertices."""
    _species(species)
    if method == "auto":
        method = "exhaustive" if n <= min(6, oracle_limit()) else "extension"
    if method == "extension":
        return unlabeled_by_extension(species, n, limit)[n]
    if method != "exhaustive":
        raise DomainError(f"unknown method {method!r}")
    seen: dict[tuple, LabeledGraph] = {}
    for g in labeled_structures(species, n, limit):
        seen.setdefault(canonical_form(g), g)
    return list(seen.values())


def vertex_orbit_reps(g: LabeledGraph) -> list[int]:
    """One vertex from each orbit of the automorphism group."""
    seen, out = set(), []
    for v in range(1, g.n + 1):
        cf = canonical_form(g, root_colors(g.n, v))
        if cf not in seen:
            seen.add(cf)
            out.append(v)
    return out


def count_unlabeled(species: str, n: int, rooted: bool = False, by_distribution: bool = False,
                    method: str = "auto", limit: Optional[int] = None):
    """Number of isomorphism classes (of vertex-rooted structures when ``rooted``).

    With ``by_distribution`` a :class:`CountTable` keyed by block-size
    distribution is returned instead of an integer.
    """
    reps = unlabeled_representatives(species, n, method, limit)
    tally: Counter = Counter()
    for g in reps:
        weight = len(vertex_orbit_reps(g)) if rooted else 1
        tally[distribution_of(g) if by_distribution else None] += weight
    if by_distribution:
        return CountTable(n, list(tally.items()))
    return tally[None]


def dissymmetry_counts(species: str, n: int, method: str = "auto") -> dict[str, int]:
    """Orbit counts of vertex-rooted, block-rooted, unrooted and (vertex in block)-rooted structures."""
    reps = unlabeled_representatives(species, n, method)
    out = Counter(vertex=0, block=0, unrooted=0, vertex_block=0)
    for g in reps:
        out["unrooted"] += 1
        out["vertex"] += len(vertex_orbit_reps(g))
        blocks = block_decompose(g).blocks
        bforms, vbforms = set(), set()
        for b in blocks:
            bforms.add(canonical_form(g, [1 if v in b else 0 for v in range(1, g.n + 1)]))
            for r in b:
                vbforms.add(canonical_form(g, [2 if v == r else 1 if v in b else 0 for v in range(1, g.n + 1)]))
        out["block"] += len(bforms)
        out["vertex_block"] += len(vbforms)
    return dict(out)


# ---------------------------------------------------------------------------
# Burnside
# ---------------------------------------------------------------------------


def _graph_key(g: LabeledGraph):
    return g.arcs if g.arcs is not None else g.edges


def burnside_count(species: str, n: int, limit: Optional[int] = None) -> int:
    """``(1/n!) sum_sigma |Fix(sigma)|`` over the labelled structures on [n]."""
    structures = [_graph_key(g) for g in labeled_structures(species, n, limit)]
    directed = species == "oriented"
    total = 0
    for perm in permutations(range(1, n + 1)):
        sigma = dict(zip(range(1, n + 1), perm))
        for s in structures:
            if directed:
                img = frozenset((sigma[u], sigma[v]) for u, v in s)
            else:
                img = frozenset(_pair(sigma[u], sigma[v]) for u, v in s)
            if img == s:
                total += 1
    q, r = divmod(total, factorial(n))
    if r:
        raise ArithmeticError("Burnside sum not divisible by n!")
    return q
