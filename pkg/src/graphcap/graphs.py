"""Finite simple graphs, the coding semimetric, and distance-truncated powers.

Vertices are integers ``0..n-1``. Adjacency is stored as one bitmask per
vertex, which keeps the exact combinatorial solvers fast with nothing beyond
the standard library. Distances take values in the nonnegative integers plus
``INF``: 0 for equal vertices, 1 across an edge, infinite otherwise, extended
additively (and saturating) to words.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from graphcap.caps import materialization_cap
from graphcap.errors import CapExceeded

INF = math.inf

Word = Sequence[int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` has bit ``w`` set iff ``{v, w}`` is an edge. No self-loops;
    adjacency is symmetric.
    """

    n: int
    adj: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency list length must equal vertex count")

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as ordered pairs (u, v) with u < v."""
        for u in range(self.n):
            upper = self.adj[u] >> (u + 1)
            for off in iter_bits(upper):
                yield (u, u + 1 + off)

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adj[v])

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def complement(self) -> "Graph":
        full = self.full_mask()
        masks = tuple((full ^ m ^ (1 << v)) for v, m in enumerate(self.adj))
        return Graph(self.n, masks, label=f"complement({self.label})" if self.label else "")

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def relabel(self, label: str) -> "Graph":
        return Graph(self.n, self.adj, label)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], label: str = "") -> Graph:
    """Build a validated Graph from an edge list (self-loops rejected, duplicates merged)."""
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
        if u == v:
            raise ValueError(f"self-loop at vertex {u} not allowed")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, tuple(masks), label)


# ---------------------------------------------------------------------------
# standard constructors


def complete(q: int) -> Graph:
    if q < 1:
        raise ValueError("clique size must be >= 1")
    full = (1 << q) - 1
    return Graph(q, tuple(full ^ (1 << v) for v in range(q)), label=f"K:{q}")


def cycle(m: int) -> Graph:
    if m < 1:
        raise ValueError("cycle length must be >= 1")
    if m == 1:
        return Graph(1, (0,), label="C:1")
    if m == 2:  # single edge
        return graph_from_edges(2, [(0, 1)], label="C:2")
    return graph_from_edges(m, [(v, (v + 1) % m) for v in range(m)], label=f"C:{m}")


def kneser(c: int, a: int) -> Graph:
    """Disjointness graph on the a-subsets of {1..c}, in lexicographic order."""
    if a < 1 or c < a:
        raise ValueError("kneser parameters require 1 <= a <= c")
    subsets = [frozenset(s) for s in itertools.combinations(range(1, c + 1), a)]
    edges = [
        (i, j)
        for i in range(len(subsets))
        for j in range(i + 1, len(subsets))
        if not (subsets[i] & subsets[j])
    ]
    return graph_from_edges(len(subsets), edges, label=f"kneser:{c},{a}")


def clique_sum(terms: Sequence[tuple[int, int]]) -> Graph:
    """Disjoint union of cliques: ``terms`` lists (multiplicity, clique_size)."""
    if not terms:
        raise ValueError("need at least one clique term")
    edges = []
    n = 0
    for mult, size in terms:
        if mult < 1 or size < 1:
            raise ValueError("multiplicities and clique sizes must be >= 1")
        for _ in range(mult):
            for u in range(n, n + size):
                for v in range(u + 1, n + size):
                    edges.append((u, v))
            n += size
    label = "sum:" + "+".join(f"{mult}xK{size}" for mult, size in terms)
    return graph_from_edges(n, edges, label)


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse the plain edge-list format: a ``p <n>`` line then ``e <u> <v>`` lines.

    Lines starting with ``#`` are comments; CRLF endings and duplicate edges
    are tolerated, self-loops are not.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate 'p' line")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: 'p' line needs exactly one count")
            n = int(parts[1])
            if n < 1:
                raise ValueError(f"line {lineno}: vertex count must be >= 1")
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: 'e' line before 'p' line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: 'e' line needs two endpoints")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ValueError("missing 'p' line")
    return n, edges


def from_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        n, edges = parse_edge_list(fh.read())
    return graph_from_edges(n, edges, label=f"file:{path}")


# ---------------------------------------------------------------------------
# semimetric and words


def semimetric(g: Graph, v: int, w: int):
    """Distance between vertices: 0 if equal, 1 if adjacent, INF otherwise."""
    if not (0 <= v < g.n and 0 <= w < g.n):
        raise ValueError(f"vertex index out of range: ({v},{w})")
    if v == w:
        return 0
    if g.has_edge(v, w):
        return 1
    return INF


def seq_distance(g: Graph, x: Word, y: Word):
    """Coordinatewise sum of the semimetric; saturates at INF."""
    if len(x) != len(y):
        raise ValueError(f"word length mismatch: {len(x)} vs {len(y)}")
    total = 0
    for a, b in zip(x, y):
        if a == b:
            continue
        if g.has_edge(a, b):
            total += 1
        else:
            return INF
    return total


def word_index(g: Graph, word: Word) -> int:
    """Positional encoding with the first coordinate most significant."""
    idx = 0
    for symbol in word:
        if not 0 <= symbol < g.n:
            raise ValueError(f"symbol {symbol} out of range")
        idx = idx * g.n + symbol
    return idx


def index_word(g: Graph, n: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, g.n)
        out.append(r)
    return tuple(reversed(out))


def all_words(g: Graph, n: int) -> Iterator[tuple[int, ...]]:
    """Words in index order (itertools.product varies the last coordinate fastest)."""
    return itertools.product(range(g.n), repeat=n)


# ---------------------------------------------------------------------------
# power graphs


def power_graph(g: Graph, n: int, d: int, max_vertices: int | None = None) -> Graph:
    """Explicit graph on words of length n, edges between words at distance 1..d."""
    if n < 1:
        raise ValueError("power exponent must be >= 1")
    if not 0 <= d <= n:
        raise ValueError(f"distance parameter must satisfy 0 <= d <= n, got {d}")
    cap = materialization_cap() if max_vertices is None else max_vertices
    size = g.n**n
    if size > cap:
        raise CapExceeded(f"power graph would have {size} vertices, cap is {cap}")

    words = np.array(list(all_words(g, n)), dtype=np.int64)  # row i is word i
    dist1 = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist1, 0.0)
    for u, v in g.edges():
        dist1[u, v] = dist1[v, u] = 1.0

    masks = []
    block = max(1, min(size, (1 << 22) // max(size, 1) + 1))
    for start in range(0, size, block):
        rows = words[start : start + block]
        total = np.zeros((rows.shape[0], size))
        for k in range(n):
            total += dist1[rows[:, k][:, None], words[:, k][None, :]]
        adj_rows = (total >= 1.0) & (total <= float(d))
        for row in adj_rows:
            packed = np.packbits(row, bitorder="little")
            masks.append(int.from_bytes(packed.tobytes(), "little"))
    label = f"{g.label or 'G'}({n},{d})"
    return Graph(size, tuple(masks), label)


def strong_power(g: Graph, r: int, max_vertices: int | None = None) -> Graph:
    """Words of length r, adjacent iff every coordinate is equal or adjacent."""
    out = power_graph(g, r, r, max_vertices=max_vertices)
    return out.relabel(f"pow:{g.label or 'G'},{r}")


def is_bipartite(g: Graph) -> tuple[bool, tuple[int, ...]]:
    """Two-color via BFS; returns (flag, colors). Colors meaningless when False."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for v in iter_bits(g.adj[u]):
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    queue.append(v)
                elif color[v] == color[u]:
                    return False, tuple(color)
    return True, tuple(color)
