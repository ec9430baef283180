"""Graph containers: an immutable instance graph and a mutable working view
that supports vertex deletion and degree-2 folding."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass


class ContractError(RuntimeError):
    """An operation was invoked outside its stated precondition."""


class StaticGraph:
    """Immutable simple undirected graph with sorted adjacency lists.

    Vertices are 0-based contiguous ids. No self-loops, no parallel edges;
    adjacency is symmetric. Instances are safe to share between concurrent
    solver runs.
    """

    __slots__ = ("vertex_count", "edge_count", "adjacency", "max_degree")

    def __init__(self, adjacency: list[list[int]]):
        self.adjacency = adjacency
        self.vertex_count = len(adjacency)
        self.edge_count = sum(len(a) for a in adjacency) // 2
        self.max_degree = max((len(a) for a in adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adjacency[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def neighbors(self, v: int) -> list[int]:
        return self.adjacency[v]

    def audit(self) -> None:
        """Recompute every structural invariant from scratch; raise on breakage."""
        deg_sum = 0
        for v, a in enumerate(self.adjacency):
            if sorted(set(a)) != list(a):
                raise AssertionError(f"adjacency of {v} not sorted/deduplicated")
            if v in a:
                raise AssertionError(f"self-loop at {v}")
            for u in a:
                if not self.has_edge(u, v):
                    raise AssertionError(f"asymmetric edge {v}-{u}")
            deg_sum += len(a)
        if self.edge_count != deg_sum // 2:
            raise AssertionError("edge_count inconsistent with adjacency")
        if self.max_degree != max((len(a) for a in self.adjacency), default=0):
            raise AssertionError("max_degree inconsistent with adjacency")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StaticGraph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __repr__(self) -> str:
        return f"StaticGraph(n={self.vertex_count}, m={self.edge_count})"


def build_graph(edges, vertex_count_hint: int | None = None) -> StaticGraph:
    """Build a StaticGraph from raw edge pairs.

    Self-loops are dropped and duplicate edges collapsed. The vertex count is
    max(hint, largest id + 1); ids beyond the largest endpoint become isolated
    vertices.
    """
    max_id = -1
    pairs = []
    for u, v in edges:
        if u < 0 or v < 0:
            raise ValueError(f"negative vertex id in edge ({u}, {v})")
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
        if u != v:
            pairs.append((u, v))
    n = max_id + 1
    if vertex_count_hint is not None:
        n = max(n, vertex_count_hint)
    if n <= 0:
        raise ValueError("empty graph undefined")
    nbr: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        nbr[u].add(v)
        nbr[v].add(u)
    return StaticGraph([sorted(s) for s in nbr])


@dataclass(frozen=True, slots=True)
class FoldRecord:
    """Bookkeeping for one degree-2 fold: `folded` had exactly the two
    non-adjacent neighbors in `merged`, which were contracted into
    `new_vertex`."""

    new_vertex: int
    folded: int
    merged: tuple[int, int]


class WorkingGraph:
    """Mutable view over a StaticGraph supporting deletion and folding.

    Fold-created vertices get fresh contiguous ids starting at
    ``base.vertex_count``. Dead vertices never appear in neighborhood query
    results. Single-owner, single-threaded.
    """

    __slots__ = (
        "base",
        "alive",
        "live_degree",
        "alive_count",
        "extra_adj",
        "fold_adj",
        "touched",
        "check_steps",
    )

    def __init__(self, base: StaticGraph):
        self.base = base
        n = base.vertex_count
        self.alive = [True] * n
        self.live_degree = [len(a) for a in base.adjacency]
        self.alive_count = n
        # extra_adj[v]: fold vertices later attached to v (ascending ids).
        self.extra_adj: list[list[int]] = [[] for _ in range(n)]
        # fold_adj[j]: adjacency of fold vertex base.vertex_count + j at creation.
        self.fold_adj: list[list[int]] = []
        # Vertices whose live neighborhood changed since last drain; consumed
        # by the reduction fixpoint driver.
        self.touched: list[int] = []
        # Instrumentation: elementary steps spent in rule-applicability checks.
        self.check_steps = 0

    @property
    def universe_size(self) -> int:
        return len(self.alive)

    @property
    def extra_vertices(self) -> list[list[int]]:
        return self.fold_adj

    def reset_from(self, base: StaticGraph) -> None:
        """Reset to a fresh all-alive copy of `base`, clearing fold extensions."""
        self.__init__(base)

    def _adj_parts(self, v: int):
        nbase = self.base.vertex_count
        if v < nbase:
            return self.base.adjacency[v], self.extra_adj[v]
        return self.fold_adj[v - nbase], self.extra_adj[v]

    def alive_neighbors(self, v: int) -> list[int]:
        """Alive neighbors of v in ascending id order."""
        alive = self.alive
        first, second = self._adj_parts(v)
        out = [u for u in first if alive[u]]
        out.extend(u for u in second if alive[u])
        return out

    def adjacent(self, u: int, v: int) -> bool:
        first, second = self._adj_parts(u)
        i = bisect_left(first, v)
        if i < len(first) and first[i] == v:
            return True
        i = bisect_left(second, v)
        return i < len(second) and second[i] == v

    def kill(self, v: int) -> None:
        """Remove v; decrement surviving neighbors' live degrees."""
        if not self.alive[v]:
            raise ContractError(f"vertex {v} already dead")
        self.alive[v] = False
        self.alive_count -= 1
        alive = self.alive
        live_degree = self.live_degree
        touched = self.touched
        for part in self._adj_parts(v):
            for u in part:
                if alive[u]:
                    live_degree[u] -= 1
                    touched.append(u)

    def delete_closed_neighborhood(self, v: int) -> set[int]:
        """Delete v and all its alive neighbors; return the removed set."""
        if not self.alive[v]:
            raise ContractError(f"vertex {v} is dead")
        removed = self.alive_neighbors(v)
        for u in removed:
            self.kill(u)
        self.kill(v)
        removed.append(v)
        return set(removed)

    def fold_degree2(self, u: int) -> FoldRecord:
        """Contract degree-2 vertex u and its two non-adjacent neighbors into
        a fresh vertex adjacent to the union of their other neighbors."""
        if not self.alive[u]:
            raise ContractError(f"vertex {u} is dead")
        nbrs = self.alive_neighbors(u)
        if len(nbrs) != 2:
            raise ContractError(f"vertex {u} has live degree {len(nbrs)}, need 2")
        v, w = nbrs
        if self.adjacent(v, w):
            raise ContractError(
                f"neighbors {v},{w} of {u} are adjacent; triangle rule applies"
            )
        merged = set(self.alive_neighbors(v))
        merged.update(self.alive_neighbors(w))
        merged.discard(u)
        self.kill(u)
        self.kill(v)
        self.kill(w)
        x = len(self.alive)
        adj_x = sorted(merged)
        self.fold_adj.append(adj_x)
        self.extra_adj.append([])
        self.alive.append(True)
        self.live_degree.append(len(adj_x))
        self.alive_count += 1
        touched = self.touched
        for t in adj_x:
            self.extra_adj[t].append(x)
            self.live_degree[t] += 1
            touched.append(t)
        touched.append(x)
        return FoldRecord(new_vertex=x, folded=u, merged=(v, w))

    def alive_vertices(self) -> list[int]:
        return [v for v in range(len(self.alive)) if self.alive[v]]

    def live_edge_count(self) -> int:
        return sum(self.live_degree[v] for v in self.alive_vertices()) // 2

    def freeze(self) -> tuple[StaticGraph, list[int]]:
        """Compact the alive subgraph into a fresh StaticGraph.

        Returns the graph and the map from new ids to working-universe ids.
        """
        vertices = self.alive_vertices()
        remap = {v: i for i, v in enumerate(vertices)}
        adjacency = [[remap[u] for u in self.alive_neighbors(v)] for v in vertices]
        for a in adjacency:
            a.sort()
        return StaticGraph(adjacency), vertices

    def audit(self) -> None:
        """Recompute live degrees and symmetry from scratch; raise on breakage."""
        for v in range(len(self.alive)):
            if not self.alive[v]:
                continue
            nbrs = self.alive_neighbors(v)
            if len(set(nbrs)) != len(nbrs):
                raise AssertionError(f"duplicate live neighbor at {v}")
            if self.live_degree[v] != len(nbrs):
                raise AssertionError(
                    f"live_degree[{v}]={self.live_degree[v]} != recount {len(nbrs)}"
                )
            for u in nbrs:
                if v not in self.alive_neighbors(u):
                    raise AssertionError(f"asymmetric live edge {v}-{u}")
        if self.alive_count != sum(self.alive):
            raise AssertionError("alive_count out of sync")
