"""Brute-force symmetry predicates and homomorphism search for small graphs.

Automorphism searches are capped at AUTOMORPHISM_VERTEX_CAP vertices; beyond
that the caller is responsible for symmetry claims. Homomorphism search is a
plain backtracking search with a node budget, reporting budget exhaustion
distinctly from definitive absence.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from graphcap.caps import AUTOMORPHISM_VERTEX_CAP, HOMOMORPHISM_NODE_CAP
from graphcap.errors import CapExceeded, SearchCapExceeded
from graphcap.graphs import Graph, iter_bits


def _check_aut_cap(g: Graph, cap: int | None):
    limit = AUTOMORPHISM_VERTEX_CAP if cap is None else cap
    if g.n > limit:
        raise CapExceeded(f"automorphism search capped at {limit} vertices, graph has {g.n}")


def _consistent(g: Graph, mapping: list[int], v: int, image: int) -> bool:
    # mapping must preserve both adjacency and non-adjacency against assigned vertices
    row = g.adj[v]
    img_row = g.adj[image]
    for u, mu in enumerate(mapping):
        if mu < 0 or u == v:
            continue
        if ((row >> u) & 1) != ((img_row >> mu) & 1):
            return False
    return True


def _search(g: Graph, order: Sequence[int], pos: int, mapping: list[int], used: int,
            collect: list | None) -> bool:
    """Extend a partial vertex mapping to a full automorphism.

    Returns True as soon as one exists when ``collect`` is None; otherwise
    records every completion and keeps searching.
    """
    if pos == len(order):
        if collect is not None:
            collect.append(tuple(mapping))
            return False
        return True
    v = order[pos]
    deg = g.degree(v)
    for image in range(g.n):
        if (used >> image) & 1:
            continue
        if g.degree(image) != deg:
            continue
        if not _consistent(g, mapping, v, image):
            continue
        mapping[v] = image
        if _search(g, order, pos + 1, mapping, used | (1 << image), collect):
            return True
        mapping[v] = -1
    return False


def _search_order(g: Graph, pinned: Sequence[int]) -> list[int]:
    # pinned vertices first, then grow by connectivity to keep pruning effective
    order = list(pinned)
    seen = set(order)
    while len(order) < g.n:
        best = None
        for v in range(g.n):
            if v in seen:
                continue
            attached = sum(1 for u in order if g.has_edge(u, v))
            key = (attached, g.degree(v), -v)
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        seen.add(best[1])
    return order


def exists_automorphism(g: Graph, pins: Sequence[tuple[int, int]], cap: int | None = None) -> bool:
    """Is there an automorphism sending each pinned source to its pinned image?"""
    _check_aut_cap(g, cap)
    mapping = [-1] * g.n
    used = 0
    for src, dst in pins:
        if g.degree(src) != g.degree(dst):
            return False
        if not _consistent(g, mapping, src, dst):
            return False
        if mapping[src] >= 0 and mapping[src] != dst:
            return False
        if (used >> dst) & 1 and mapping[src] != dst:
            return False
        mapping[src] = dst
        used |= 1 << dst
    unique_srcs = list(dict.fromkeys(src for src, _ in pins))
    order = _search_order(g, unique_srcs)
    return _search(g, order, len(unique_srcs), mapping, used, collect=None)


def automorphism_group(g: Graph, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every automorphism as a vertex permutation tuple (brute force, capped)."""
    _check_aut_cap(g, cap)
    collect: list[tuple[int, ...]] = []
    _search(g, _search_order(g, []), 0, [-1] * g.n, 0, collect)
    return collect


def is_vertex_transitive(g: Graph, cap: int | None = None) -> bool:
    _check_aut_cap(g, cap)
    degrees = {g.degree(v) for v in range(g.n)}
    if len(degrees) > 1:
        return False
    return all(exists_automorphism(g, [(0, w)], cap=cap) for w in range(1, g.n))


def is_edge_transitive(g: Graph, cap: int | None = None) -> bool:
    """True iff the automorphism group acts transitively on edges.

    Edgeless graphs are vacuously edge-transitive.
    """
    _check_aut_cap(g, cap)
    edges = list(g.edges())
    if not edges:
        return True
    u0, v0 = edges[0]
    for u, v in edges[1:]:
        if not (
            exists_automorphism(g, [(u0, u), (v0, v)], cap=cap)
            or exists_automorphism(g, [(u0, v), (v0, u)], cap=cap)
        ):
            return False
    return True


def is_isomorphic(g: Graph, h: Graph, cap: int | None = None) -> bool:
    """Brute-force isomorphism test for small graphs (used mainly by tests)."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    _check_aut_cap(g, cap)
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False

    def extend(pos: int, order: list[int], mapping: list[int], used: int) -> bool:
        if pos == g.n:
            return True
        v = order[pos]
        for image in range(h.n):
            if (used >> image) & 1 or h.degree(image) != g.degree(v):
                continue
            ok = True
            for u, mu in enumerate(mapping):
                if mu < 0 or u == v:
                    continue
                if g.has_edge(u, v) != h.has_edge(mu, image):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = image
            if extend(pos + 1, order, mapping, used | (1 << image)):
                return True
            mapping[v] = -1
        return False

    return extend(0, _search_order(g, []), [-1] * g.n, 0)


# ---------------------------------------------------------------------------
# homomorphisms


def is_homomorphism(g: Graph, h: Graph, f: Sequence[int]) -> bool:
    """Full edge scan: every edge of g must map to an edge of h."""
    if len(f) != g.n:
        return False
    if any(not 0 <= x < h.n for x in f):
        return False
    return all(h.has_edge(f[u], f[v]) for u, v in g.edges())


def find_homomorphism(g: Graph, h: Graph, node_cap: int | None = None) -> tuple[int, ...] | None:
    """Backtracking search for a homomorphism g -> h.

    Returns a verified map, or None when none exists. Raises SearchCapExceeded
    if the node budget runs out first.
    """
    budget = HOMOMORPHISM_NODE_CAP if node_cap is None else node_cap
    order = _search_order(g, [])
    mapping = [-1] * g.n
    nodes = 0

    def extend(pos: int) -> bool:
        nonlocal nodes
        if pos == g.n:
            return True
        v = order[pos]
        for image in range(h.n):
            nodes += 1
            if nodes > budget:
                raise SearchCapExceeded(
                    f"homomorphism search exceeded {budget} nodes without a verdict"
                )
            ok = True
            for u in iter_bits(g.adj[v]):
                mu = mapping[u]
                if mu >= 0 and not h.has_edge(mu, image):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = image
            if extend(pos + 1):
                return True
            mapping[v] = -1
        return False

    if extend(0):
        result = tuple(mapping)
        assert is_homomorphism(g, h, result)
        return result
    return None
