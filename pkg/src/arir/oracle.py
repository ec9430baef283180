"""Exact maximum-independent-set solver for small graphs (at most 64
vertices), used as ground truth in tests and exposed on the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import StaticGraph


@dataclass(frozen=True, slots=True)
class OracleResult:
    alpha: int
    witness: set[int]


def _clique_cover_bound(cand: int, masks: list[int]) -> int:
    """Greedy clique cover of the candidate set; the number of cliques bounds
    the independent set size from above."""
    cliques: list[int] = []
    m = cand
    while m:
        bit = m & -m
        v = bit.bit_length() - 1
        m ^= bit
        nv = masks[v]
        for i, cl in enumerate(cliques):
            if cl & ~nv == 0:
                cliques[i] = cl | bit
                break
        else:
            cliques.append(bit)
    return len(cliques)


def exact_mis(graph: StaticGraph) -> OracleResult:
    """Branch and bound over bitset neighborhoods.

    Branches on a maximum-degree candidate vertex (ties to the lowest id),
    include vs exclude; prunes with a greedy clique-cover bound; candidates of
    degree 0 or 1 are taken greedily before branching.
    """
    n = graph.vertex_count
    if n > 64:
        raise ValueError(f"exact solver handles at most 64 vertices, got {n}")
    masks = [0] * n
    for v, a in enumerate(graph.adjacency):
        m = 0
        for u in a:
            m |= 1 << u
        masks[v] = m

    best_size = 0
    best_set = 0

    def branch(cand: int, cur: int, size: int) -> None:
        nonlocal best_size, best_set
        # Peel forced candidates: isolated ones always join; a degree-1
        # candidate joins and drops its sole neighbor.
        changed = True
        while changed and cand:
            changed = False
            m = cand
            while m:
                bit = m & -m
                v = bit.bit_length() - 1
                m &= m - 1
                cd = masks[v] & cand
                if cd == 0:
                    cand &= ~bit
                    cur |= bit
                    size += 1
                    changed = True
                elif cd & (cd - 1) == 0:
                    cand &= ~(bit | cd)
                    cur |= bit
                    size += 1
                    changed = True
                    m &= cand
        if cand == 0:
            if size > best_size:
                best_size = size
                best_set = cur
            return
        if size + _clique_cover_bound(cand, masks) <= best_size:
            return
        # Max-degree candidate, lowest id on ties.
        pick = -1
        pick_deg = -1
        m = cand
        while m:
            bit = m & -m
            v = bit.bit_length() - 1
            m &= m - 1
            d = (masks[v] & cand).bit_count()
            if d > pick_deg:
                pick_deg = d
                pick = v
        bit = 1 << pick
        branch(cand & ~bit & ~masks[pick], cur | bit, size + 1)
        branch(cand & ~bit, cur, size)

    branch((1 << n) - 1 if n else 0, 0, 0)
    witness = {v for v in range(n) if best_set >> v & 1}
    return OracleResult(alpha=best_size, witness=witness)
