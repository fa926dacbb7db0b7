"""Optional compiled kernel for the maximum-clique branch and bound.

Mirrors the pure-Python solver in invariants.py exactly: same branching
order, same greedy-coloring bound, so both paths return identical witnesses.
Bitsets are rows of uint64 words so numba can compile the whole search; the
budget is a node count, which keeps runs deterministic. Falls back cleanly
when numba is unavailable.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap(args[0]) if args and callable(args[0]) else wrap


@njit(cache=True)
def _first_bit(words, w):
    for i in range(w):
        word = words[i]
        if word:
            bit = 0
            while not (word >> np.uint64(bit)) & np.uint64(1):
                bit += 1
            return (i << 6) + bit
    return -1


@njit(cache=True)
def _color_sort(p, adj, order_out, bound_out, scratch_avail, scratch_cand, w):
    """Greedy coloring of the candidate set; vertices listed color-ascending."""
    for i in range(w):
        scratch_avail[i] = p[i]
    idx = 0
    color = 0
    while True:
        v0 = _first_bit(scratch_avail, w)
        if v0 < 0:
            break
        color += 1
        for i in range(w):
            scratch_cand[i] = scratch_avail[i]
        while True:
            v = _first_bit(scratch_cand, w)
            if v < 0:
                break
            order_out[idx] = v
            bound_out[idx] = color
            idx += 1
            word = v >> 6
            bit = np.uint64(v & 63)
            scratch_avail[word] &= ~(np.uint64(1) << bit)
            scratch_cand[word] &= ~(np.uint64(1) << bit)
            for i in range(w):
                scratch_cand[i] &= ~adj[v, i]
    return idx


@njit(cache=True)
def _search(adj, n, w, initial_best, node_budget):
    """Iterative branch and bound. Returns (best_size, best_vertices,
    nodes_used, completed)."""
    max_depth = n + 2
    stack_p = np.zeros((max_depth, w), dtype=np.uint64)
    stack_order = np.zeros((max_depth, n), dtype=np.int32)
    stack_bound = np.zeros((max_depth, n), dtype=np.int32)
    stack_pos = np.zeros(max_depth, dtype=np.int32)
    choice = np.zeros(max_depth, dtype=np.int32)
    scratch_a = np.zeros(w, dtype=np.uint64)
    scratch_c = np.zeros(w, dtype=np.uint64)

    best = initial_best
    best_verts = np.full(n, -1, dtype=np.int32)
    nodes = 0

    full_words = n >> 6
    for i in range(full_words):
        stack_p[0, i] = np.uint64(0xFFFFFFFFFFFFFFFF)
    rem = n & 63
    if rem:
        stack_p[0, full_words] = (np.uint64(1) << np.uint64(rem)) - np.uint64(1)

    length = _color_sort(stack_p[0], adj, stack_order[0], stack_bound[0], scratch_a, scratch_c, w)
    stack_pos[0] = length - 1
    depth = 0

    while depth >= 0:
        pos = stack_pos[depth]
        if pos < 0:
            depth -= 1
            continue
        nodes += 1
        if nodes > node_budget:
            return best, best_verts, nodes, False
        if depth + stack_bound[depth, pos] <= best:
            # bounds are color-ascending, everything left at this level prunes
            stack_pos[depth] = -1
            depth -= 1
            continue
        v = stack_order[depth, pos]
        stack_pos[depth] = pos - 1
        word = v >> 6
        bit = np.uint64(v & 63)
        stack_p[depth, word] &= ~(np.uint64(1) << bit)

        choice[depth] = v
        r_size = depth + 1
        if r_size > best:
            best = r_size
            for i in range(r_size):
                best_verts[i] = choice[i]
            for i in range(r_size, n):
                best_verts[i] = -1

        nonempty = False
        for i in range(w):
            new_word = stack_p[depth, i] & adj[v, i]
            stack_p[depth + 1, i] = new_word
            if new_word:
                nonempty = True
        if nonempty:
            length = _color_sort(
                stack_p[depth + 1],
                adj,
                stack_order[depth + 1],
                stack_bound[depth + 1],
                scratch_a,
                scratch_c,
                w,
            )
            stack_pos[depth + 1] = length - 1
            depth += 1

    return best, best_verts, nodes, True


def masks_to_words(adj_masks, n: int) -> np.ndarray:
    w = (n + 63) // 64
    out = np.zeros((n, w), dtype=np.uint64)
    mask64 = (1 << 64) - 1
    for v, m in enumerate(adj_masks):
        i = 0
        while m:
            out[v, i] = m & mask64
            m >>= 64
            i += 1
    return out


def kernel_max_clique(adj_masks, n: int, initial_best: int, node_budget: int):
    """Returns (size, vertex list, completed). Requires numba."""
    adj = masks_to_words(adj_masks, n)
    w = adj.shape[1]
    best, verts, nodes, completed = _search(adj, n, w, initial_best, node_budget)
    vertices = [int(v) for v in verts if v >= 0]
    return best, vertices, bool(completed)
