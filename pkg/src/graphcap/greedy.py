"""Randomized greedy construction of codes in distance-truncated powers.

Each round samples a random translate of S^n (independent automorphism images
of the seed set S per coordinate), keeps the translate's words that are not
yet blocked, and blocks the closed neighborhood of the whole translate. The
surviving union is independent by construction and is re-verified before it
is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from graphcap.caps import materialization_cap
from graphcap.errors import CapExceeded
from graphcap.graphs import Graph, iter_bits, seq_distance, word_index
from graphcap.automorphisms import automorphism_group
from graphcap.invariants import gv_sphere_count


@dataclass(frozen=True)
class GreedyRun:
    seed: int
    iterations: int
    final_set: tuple[tuple[int, ...], ...]
    bound_target: float


def _ball_indices(g: Graph, word: tuple[int, ...], d: int, place: list[int]) -> list[int]:
    """Indices of all words within distance d of ``word`` (including itself)."""
    base = word_index(g, word)
    out = [base]
    n = len(word)

    def walk(pos: int, budget: int, idx: int):
        if budget == 0 or pos == n:
            return
        walk(pos + 1, budget, idx)
        symbol = word[pos]
        for w in iter_bits(g.adj[symbol]):
            moved = idx + (w - symbol) * place[pos]
            out.append(moved)
            walk(pos + 1, budget - 1, moved)

    walk(0, d, base)
    return out


def randomized_greedy_code(
    g: Graph,
    n: int,
    d: int,
    s: tuple[int, ...] | list[int],
    seed: int,
    max_rounds: int = 100_000,
    stall_rounds: int | None = None,
    max_vertices: int | None = None,
) -> GreedyRun:
    """Run the random-translate greedy process on G(n, d) starting from the
    independent set ``s`` of G; deterministic for a fixed seed.

    Each translate draws a coordinate permutation plus one base-graph
    automorphism per coordinate. The process halts when the blocked set
    covers the whole space, after a stall (default: three times the
    productive prefix) or at ``max_rounds``.
    """
    s = tuple(sorted(s))
    if not s:
        raise ValueError("seed set must be nonempty")
    for i, u in enumerate(s):
        for v in s[i + 1 :]:
            if g.has_edge(u, v):
                raise ValueError(f"seed set is not independent: edge ({u},{v})")
    cap = materialization_cap() if max_vertices is None else max_vertices
    size = g.n**n
    if size > cap:
        raise CapExceeded(f"word space has {size} words, cap is {cap}")

    auts = automorphism_group(g)
    rng = random.Random(seed)
    place = [g.n ** (n - 1 - k) for k in range(n)]

    blocked = bytearray(size)
    blocked_count = 0
    chosen: list[tuple[int, ...]] = []
    rounds = 0
    stalled = 0
    productive = 0

    while rounds < max_rounds and blocked_count < size:
        rounds += 1
        perm = list(range(n))
        rng.shuffle(perm)
        sigmas = [rng.choice(auts) for _ in range(n)]
        images = [tuple(sorted(sigmas[perm[k]][v] for v in s)) for k in range(n)]
        translate = _product_words(images)
        survivors = [w for w in translate if not blocked[word_index(g, w)]]
        chosen.extend(survivors)
        grew = False
        for w in translate:
            for idx in _ball_indices(g, w, d, place):
                if not blocked[idx]:
                    blocked[idx] = 1
                    blocked_count += 1
                    grew = True
        if grew:
            stalled = 0
            productive = rounds
        else:
            stalled += 1
            limit = stall_rounds if stall_rounds is not None else 3 * max(8, productive)
            if stalled >= limit:
                break

    for i, x in enumerate(chosen):
        for y in chosen[i + 1 :]:
            dist = seq_distance(g, x, y)
            if dist <= d:
                raise AssertionError(f"greedy produced adjacent codewords {x}, {y}")

    return GreedyRun(
        seed=seed,
        iterations=rounds,
        final_set=tuple(chosen),
        bound_target=gv_sphere_count(g, len(s), n, d),
    )


def _product_words(images: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    words: list[tuple[int, ...]] = [()]
    for image in images:
        words = [w + (v,) for w in words for v in image]
    return words
