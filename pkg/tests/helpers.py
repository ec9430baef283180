"""Shared test utilities: graph builders, independent oracles, audits."""

from __future__ import annotations

import random

from arir import StaticGraph, build_graph


def gnp(n: int, p: float, rng: random.Random) -> StaticGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(edges, vertex_count_hint=n)


def path(n: int) -> StaticGraph:
    return build_graph([(i, i + 1) for i in range(n - 1)], vertex_count_hint=n)


def cycle(n: int) -> StaticGraph:
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> StaticGraph:
    return build_graph([(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> StaticGraph:
    return build_graph([(u, v) for u in range(n) for v in range(u + 1, n)])


def petersen() -> StaticGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner)


def random_tree(n: int, rng: random.Random) -> StaticGraph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return build_graph(edges, vertex_count_hint=n)


def is_independent(g: StaticGraph, sol: set[int]) -> bool:
    return all(u not in sol for v in sol for u in g.adjacency[v])


def is_maximal(g: StaticGraph, sol: set[int]) -> bool:
    return all(
        v in sol or any(u in sol for u in g.adjacency[v])
        for v in range(g.vertex_count)
    )


def neighbor_masks(g: StaticGraph) -> list[int]:
    masks = [0] * g.vertex_count
    for v, a in enumerate(g.adjacency):
        for u in a:
            masks[v] |= 1 << u
    return masks


def brute_alpha(g: StaticGraph) -> int:
    """Exhaustive sweep over all 2^n vertex subsets (n <= ~20)."""
    n = g.vertex_count
    masks = neighbor_masks(g)
    size = 1 << n
    indep = bytearray(size)
    indep[0] = 1
    best = 0
    for mask in range(1, size):
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        if indep[rest] and not masks[v] & rest:
            indep[mask] = 1
            pc = mask.bit_count()
            if pc > best:
                best = pc
    return best


def enumerate_swaps(g: StaticGraph, sol: set[int]) -> list[tuple[int, int, int]]:
    """All feasible (1,2)-swaps of a maximal solution, by brute force."""
    out = []
    n = g.vertex_count
    for x in sorted(sol):
        candidates = [
            u
            for u in range(n)
            if u not in sol and set(g.adjacency[u]) & sol == {x}
        ]
        for i, u in enumerate(candidates):
            for w in candidates[i + 1 :]:
                if not g.has_edge(u, w):
                    out.append((x, u, w))
    return out


class ScriptedRng:
    """random.Random look-alike that replays scripted draws.

    .random() pops from `uniforms` (falling back to 0.99), .randrange() pops
    from `indices` reduced modulo the bound (falling back to 0).
    """

    def __init__(self, uniforms=(), indices=()):
        self.uniforms = list(uniforms)
        self.indices = list(indices)

    def random(self) -> float:
        return self.uniforms.pop(0) if self.uniforms else 0.99

    def randrange(self, bound: int) -> int:
        if self.indices:
            return self.indices.pop(0) % bound
        return 0
