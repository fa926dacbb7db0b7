"""Exact combinatorial invariants: independence/clique/chromatic numbers,
fractional chromatic and clique-cover numbers, and sphere-counting bounds.

The workhorse is a bitset branch-and-bound maximum-clique solver with greedy
coloring bounds; the independence number runs it on the complement. Bipartite
graphs take a matching-based shortcut (the bound is exact there), which keeps
the sparse low-distance power graphs tractable.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction
from typing import Iterable, Sequence

from graphcap.errors import SolveTimeout
from graphcap.graphs import Graph, is_bipartite, iter_bits, power_graph
from graphcap.simplex import simplex_max_rational
from graphcap.caps import MAXIMAL_SET_ENUMERATION_CAP

# deep but bounded recursion: clique search descends one level per clique
# vertex, augmenting paths one level per matched edge
sys.setrecursionlimit(max(sys.getrecursionlimit(), 40_000))


# ---------------------------------------------------------------------------
# maximum clique / independent set


class _Deadline:
    __slots__ = ("t_end", "nodes")

    def __init__(self, timeout: float | None):
        self.t_end = None if timeout is None else time.monotonic() + timeout
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.t_end is not None and (self.nodes & 0xFFF) == 0:
            if time.monotonic() > self.t_end:
                raise SolveTimeout("branch-and-bound exceeded its time budget")


def _greedy_clique(adj: Sequence[int], order: Sequence[int]) -> int:
    best = 0
    for v in order:
        if best >> v & 1:
            continue
        mask = 1 << v
        cand = adj[v]
        while cand:
            w = (cand & -cand).bit_length() - 1
            mask |= 1 << w
            cand &= adj[w]
        if mask.bit_count() > best.bit_count():
            best = mask
    return best


def max_clique(
    adj: Sequence[int],
    *,
    timeout: float | None = None,
    lower_mask: int = 0,
) -> tuple[int, int]:
    """Exact maximum clique for bitmask adjacency; returns (size, vertex mask).

    Branching order is by descending degree (ties by index); pruning uses a
    greedy coloring bound. ``lower_mask`` may seed a known clique.
    """
    n = len(adj)
    if n == 0:
        return 0, 0
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    # relabel so vertex 0 is highest degree; B&B then scans low bits first
    radj = [0] * n
    for v in range(n):
        m = 0
        for w in iter_bits(adj[v]):
            m |= 1 << pos[w]
        radj[pos[v]] = m

    seed = _greedy_clique(radj, range(n))
    if lower_mask:
        relabeled = 0
        for v in iter_bits(lower_mask):
            relabeled |= 1 << pos[v]
        if relabeled.bit_count() > seed.bit_count():
            seed = relabeled
    best_size = seed.bit_count()
    best_mask = seed
    clock = _Deadline(timeout)

    def expand(r_mask: int, r_size: int, p: int):
        nonlocal best_size, best_mask
        clock.tick()
        # greedy coloring of p: vertices listed in nondecreasing color
        order_v: list[int] = []
        bounds: list[int] = []
        avail = p
        color = 0
        while avail:
            color += 1
            cand = avail
            while cand:
                v = (cand & -cand).bit_length() - 1
                bit = 1 << v
                order_v.append(v)
                bounds.append(color)
                avail ^= bit
                cand &= ~bit & ~radj[v]
        for i in range(len(order_v) - 1, -1, -1):
            if r_size + bounds[i] <= best_size:
                return
            v = order_v[i]
            bit = 1 << v
            new_p = p & radj[v]
            if r_size + 1 > best_size:
                best_size = r_size + 1
                best_mask = r_mask | bit
            if new_p:
                expand(r_mask | bit, r_size + 1, new_p)
            p ^= bit

    expand(0, 0, (1 << n) - 1)
    result = 0
    inv = {pos[v]: v for v in range(n)}
    for v in iter_bits(best_mask):
        result |= 1 << inv[v]
    return best_size, result


def _kuhn_matching(g: Graph, colors: Sequence[int]) -> tuple[int, list[int]]:
    """Maximum bipartite matching (augmenting paths); returns (size, match array)."""
    match = [-1] * g.n
    left = [v for v in range(g.n) if colors[v] == 0]

    def try_augment(u: int, visited: set) -> bool:
        for w in iter_bits(g.adj[u]):
            if w in visited:
                continue
            visited.add(w)
            if match[w] == -1 or try_augment(match[w], visited):
                match[w] = u
                match[u] = w
                return True
        return False

    size = 0
    for u in left:
        if match[u] == -1 and try_augment(u, set()):
            size += 1
    return size, match


def _koenig_independent_set(g: Graph, colors: Sequence[int], match: list[int]) -> int:
    """Max independent set mask of a bipartite graph from a maximum matching."""
    left = {v for v in range(g.n) if colors[v] == 0}
    unmatched = [v for v in left if match[v] == -1]
    reach = set(unmatched)
    frontier = list(unmatched)
    while frontier:
        u = frontier.pop()
        for w in iter_bits(g.adj[u]):  # non-matching edge into the right side
            if w in reach:
                continue
            reach.add(w)
            if match[w] != -1 and match[w] not in reach:
                reach.add(match[w])
                frontier.append(match[w])
    mask = 0
    for v in range(g.n):
        in_left = v in left
        if (in_left and v in reach) or (not in_left and v not in reach):
            mask |= 1 << v
    return mask


def max_independent_set(
    g: Graph, *, timeout: float | None = None, use_shortcuts: bool = True
) -> list[int]:
    """One maximum independent set, exactly."""
    if g.num_edges == 0:
        return list(range(g.n))
    if use_shortcuts:
        flag, colors = is_bipartite(g)
        if flag:
            _, match = _kuhn_matching(g, colors)
            mask = _koenig_independent_set(g, colors, match)
            assert _is_independent_mask(g, mask)
            return list(iter_bits(mask))
    comp = g.complement()
    _, mask = max_clique(comp.adj, timeout=timeout)
    return list(iter_bits(mask))


def _is_independent_mask(g: Graph, mask: int) -> bool:
    return all(g.adj[v] & mask == 0 for v in iter_bits(mask))


def independence_number(
    g: Graph, *, timeout: float | None = None, use_shortcuts: bool = True
) -> int:
    return len(max_independent_set(g, timeout=timeout, use_shortcuts=use_shortcuts))


def clique_number(g: Graph, *, timeout: float | None = None) -> int:
    size, _ = max_clique(g.adj, timeout=timeout)
    return size


# ---------------------------------------------------------------------------
# chromatic number (exact, small graphs)


def _greedy_coloring(g: Graph) -> int:
    colors = {}
    for v in sorted(range(g.n), key=lambda v: -g.degree(v)):
        used = {colors[w] for w in iter_bits(g.adj[v]) if w in colors}
        k = 0
        while k in used:
            k += 1
        colors[v] = k
    return 1 + max(colors.values(), default=-1)


def _colorable(g: Graph, k: int, timeout_end: float | None) -> bool:
    colors = [-1] * g.n

    def choose() -> int:
        best_v, best_key = -1, None
        for v in range(g.n):
            if colors[v] != -1:
                continue
            sat = len({colors[w] for w in iter_bits(g.adj[v]) if colors[w] != -1})
            key = (sat, g.degree(v))
            if best_key is None or key > best_key:
                best_key, best_v = key, v
        return best_v

    def descend(assigned: int) -> bool:
        if timeout_end is not None and time.monotonic() > timeout_end:
            raise SolveTimeout("coloring search exceeded its time budget")
        if assigned == g.n:
            return True
        v = choose()
        used = {colors[w] for w in iter_bits(g.adj[v]) if colors[w] != -1}
        fresh_tried = False
        for color in range(k):
            if color in used:
                continue
            is_fresh = color > max((c for c in colors if c != -1), default=-1)
            if is_fresh and fresh_tried:
                break  # new colors are interchangeable
            fresh_tried = fresh_tried or is_fresh
            colors[v] = color
            if descend(assigned + 1):
                return True
            colors[v] = -1
        return False

    return descend(0)


def chromatic_number(g: Graph, *, timeout: float | None = None) -> int:
    if g.num_edges == 0:
        return 1
    t_end = None if timeout is None else time.monotonic() + timeout
    low = clique_number(g, timeout=timeout)
    high = _greedy_coloring(g)
    for k in range(low, high):
        if _colorable(g, k, t_end):
            return k
    return high


# ---------------------------------------------------------------------------
# maximal independent sets and the fractional relaxations


def maximal_cliques(adj: Sequence[int], cap: int | None = None) -> list[int]:
    """All maximal cliques (Bron-Kerbosch with pivoting), as vertex masks."""
    limit = MAXIMAL_SET_ENUMERATION_CAP if cap is None else cap
    n = len(adj)
    out: list[int] = []

    def bk(r: int, p: int, x: int):
        if not p and not x:
            out.append(r)
            if len(out) > limit:
                raise SolveTimeout(f"more than {limit} maximal sets; enumeration capped")
            return
        pux = p | x
        pivot = max(iter_bits(pux), key=lambda v: (adj[v] & p).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            bk(r | bit, p & adj[v], x & adj[v])
            p ^= bit
            x |= bit

    bk(0, (1 << n) - 1, 0)
    return out


def maximal_independent_sets(g: Graph, cap: int | None = None) -> list[int]:
    return maximal_cliques(g.complement().adj, cap=cap)


def fractional_chromatic(g: Graph, cap: int | None = None) -> Fraction:
    """Exact fractional chromatic number via the packing LP over maximal
    independent sets, solved in rational arithmetic."""
    if g.num_edges == 0:
        return Fraction(1)
    sets = maximal_independent_sets(g, cap=cap)
    one = Fraction(1)
    a_ub = [[one if (s >> v) & 1 else Fraction(0) for v in range(g.n)] for s in sets]
    b_ub = [one] * len(sets)
    c = [one] * g.n
    value, _ = simplex_max_rational(a_ub, b_ub, c)
    return value


def theta_star_fractional(g: Graph, cap: int | None = None) -> Fraction:
    """Fractional clique-cover number: fractional chromatic of the complement."""
    return fractional_chromatic(g.complement(), cap=cap)


# ---------------------------------------------------------------------------
# counting bounds


def caro_wei(g: Graph) -> Fraction:
    """Degree-based independent set lower bound, exact rational."""
    return sum((Fraction(1, g.degree(v) + 1) for v in range(g.n)), Fraction(0))


def vt_counting_bound(g: Graph, t: Iterable[int]) -> Fraction:
    """|V| |T| / |N[T]| for an independent set T of a vertex-transitive graph."""
    t = list(t)
    mask = 0
    for v in t:
        mask |= 1 << v
    if not _is_independent_mask(g, mask):
        raise ValueError("T must be an independent set")
    closed = mask
    for v in t:
        closed |= g.adj[v]
    return Fraction(g.n * len(t), closed.bit_count())


def gv_sphere_count(g: Graph, s_size: int, n: int, d: int) -> float:
    """Sphere-counting lower bound on the size of a distance-d code built from
    an independent set of size s_size: |V|^n / sum_i C(n,i) (|V|/s - 1)^i."""
    if not 1 <= s_size <= g.n:
        raise ValueError("independent set size out of range")
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    if n <= 256:
        ratio = Fraction(g.n, s_size) - 1
        denom = sum(Fraction(math.comb(n, i)) * ratio**i for i in range(d + 1))
        return float(Fraction(g.n) ** n / denom)
    # log domain for large n
    log_ratio = math.log(g.n / s_size - 1) if g.n > s_size else -math.inf
    terms = [
        math.lgamma(n + 1)
        - math.lgamma(i + 1)
        - math.lgamma(n - i + 1)
        + (i * log_ratio if i else 0.0)
        for i in range(d + 1)
    ]
    peak = max(terms)
    log_denom = peak + math.log(sum(math.exp(t - peak) for t in terms))
    return math.exp(n * math.log(g.n) - log_denom)


def exact_alpha_power(
    g: Graph,
    n: int,
    d: int,
    *,
    timeout: float | None = None,
    max_vertices: int | None = None,
) -> int:
    """Brute-force independence number of the power graph: the oracle that
    every asymptotic bound is checked against at small n."""
    power = power_graph(g, n, d, max_vertices=max_vertices)
    return independence_number(power, timeout=timeout)
