"""Perturbation-and-swap local search over a frozen working graph.

The search keeps a maximal independent set and improves it in blocks of
iterations. Each iteration forces one or more long-absent vertices into the
solution, evicts their solution neighbors, and then exhausts (1,2)-swaps: a
solution vertex leaves while two of its non-adjacent, singly-covered
neighbors join.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

from .graph import StaticGraph, WorkingGraph


class LiveView:
    """Frozen adjacency snapshot of the alive subgraph of a working graph.

    Arrays are indexed by working-universe vertex id; dead vertices keep an
    empty adjacency and are absent from `vertices`.
    """

    __slots__ = ("adj", "vertices", "edge_count", "universe")

    def __init__(self, adj: list[list[int]], vertices: list[int]):
        self.adj = adj
        self.vertices = vertices
        self.universe = len(adj)
        self.edge_count = sum(len(adj[v]) for v in vertices) // 2

    @classmethod
    def from_working(cls, W: WorkingGraph) -> "LiveView":
        adj: list[list[int]] = [[] for _ in range(W.universe_size)]
        vertices = []
        for v in range(W.universe_size):
            if W.alive[v]:
                vertices.append(v)
                adj[v] = W.alive_neighbors(v)
        return cls(adj, vertices)

    @classmethod
    def from_static(cls, G: StaticGraph) -> "LiveView":
        return cls([list(a) for a in G.adjacency], list(range(G.vertex_count)))

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v


class SolutionState:
    """Independent set plus the counters the search needs: per-vertex
    tightness (number of solution neighbors), last-removal timestamps, and a
    seeded RNG. Single-owner, single-threaded."""

    __slots__ = (
        "view",
        "rng",
        "in_sol",
        "tight",
        "last_out",
        "size",
        "iteration",
        "free_list",
        "free_pos",
        "touches",
        "max_iter_touches",
        "tournament_size",
        "force_cap",
        "_zero_heap",
        "_one_buf",
        "_queue",
        "_in_queue",
        "_mark",
        "_stamp",
    )

    def __init__(
        self,
        view: LiveView,
        rng: random.Random,
        tournament_size: int = 64,
        force_cap: int = 32,
    ):
        n = view.universe
        self.view = view
        self.rng = rng
        self.in_sol = bytearray(n)
        self.tight = [0] * n
        self.last_out = [0] * n
        self.size = 0
        self.iteration = 1
        self.free_list = list(view.vertices)
        self.free_pos = [-1] * n
        for i, v in enumerate(self.free_list):
            self.free_pos[v] = i
        self.touches = 0
        self.max_iter_touches = 0
        self.tournament_size = tournament_size
        self.force_cap = force_cap
        self._zero_heap: list[int] = []
        self._one_buf: list[int] = []
        self._queue: deque[int] = deque()
        self._in_queue = bytearray(n)
        self._mark = [0] * n
        self._stamp = 0

    def solution_set(self) -> set[int]:
        in_sol = self.in_sol
        return {v for v in self.view.vertices if in_sol[v]}

    def _free_remove(self, v: int) -> None:
        pos = self.free_pos[v]
        last = self.free_list[-1]
        self.free_list[pos] = last
        self.free_pos[last] = pos
        self.free_list.pop()
        self.free_pos[v] = -1

    def _free_add(self, v: int) -> None:
        self.free_pos[v] = len(self.free_list)
        self.free_list.append(v)

    def _insert(self, v: int) -> None:
        self.in_sol[v] = 1
        self.size += 1
        self._free_remove(v)
        adj = self.view.adj[v]
        self.touches += len(adj)
        tight = self.tight
        one_buf = self._one_buf
        for w in adj:
            t = tight[w] + 1
            tight[w] = t
            if t == 1:
                one_buf.append(w)

    def _remove(self, v: int) -> None:
        self.in_sol[v] = 0
        self.size -= 1
        self.last_out[v] = self.iteration
        self._free_add(v)
        adj = self.view.adj[v]
        self.touches += len(adj)
        tight = self.tight
        zero_heap = self._zero_heap
        one_buf = self._one_buf
        for w in adj:
            t = tight[w] - 1
            tight[w] = t
            if t == 0:
                heappush(zero_heap, w)
            elif t == 1:
                one_buf.append(w)

    def maintain_maximality(self, full_scan: bool = True) -> int:
        """Insert free 0-tight vertices, lowest id first, until none remain.

        Incremental callers (full_scan=False) rely on the candidate heap fed
        by prior removals; the public form rescans all free vertices.
        """
        if full_scan:
            self._zero_heap = [v for v in self.free_list if self.tight[v] == 0]
            heapify(self._zero_heap)
        zero_heap = self._zero_heap
        inserted = 0
        while zero_heap:
            v = heappop(zero_heap)
            if self.in_sol[v] or self.tight[v] != 0:
                continue
            self._insert(v)
            inserted += 1
        return inserted

    def _enqueue(self, x: int) -> None:
        if not self._in_queue[x]:
            self._in_queue[x] = 1
            self._queue.append(x)

    def _drain_one_buf(self) -> None:
        # A vertex that just became 1-tight joins the swap bucket of its sole
        # solution neighbor; requeue that neighbor.
        buf = self._one_buf
        in_sol = self.in_sol
        tight = self.tight
        adj = self.view.adj
        while buf:
            t = buf.pop()
            if in_sol[t] or tight[t] != 1:
                continue
            a = adj[t]
            self.touches += len(a)
            for y in a:
                if in_sol[y]:
                    self._enqueue(y)
                    break

    def _find_pair(self, x: int) -> tuple[int, int] | None:
        """Two non-adjacent 1-tight neighbors of solution vertex x, if any.

        Bucket members are exactly the free neighbors with tightness 1 (their
        sole solution neighbor is necessarily x). Costs O(d(x) + sum of
        bucket degrees), which keeps a full sweep within O(edge count).
        """
        view = self.view
        adj_x = view.adj[x]
        tight = self.tight
        self.touches += len(adj_x)
        bucket = [u for u in adj_x if tight[u] == 1]
        if len(bucket) < 2:
            return None
        mark = self._mark
        self._stamp += 1
        s = self._stamp
        for u in bucket:
            mark[u] = s
        need = len(bucket) - 1
        adj = view.adj
        for u in bucket:
            adj_u = adj[u]
            self.touches += len(adj_u)
            c = 0
            for y in adj_u:
                if mark[y] == s:
                    c += 1
            if c < need:
                self._stamp += 1
                s2 = self._stamp
                for y in adj_u:
                    mark[y] = s2
                for w in bucket:
                    if w != u and mark[w] != s2:
                        return (u, w)
        return None

    def exhaust_swaps(self, seed_all: bool = False) -> int:
        """Apply (1,2)-swaps until none applies to any queued solution vertex.

        With seed_all, every current solution vertex is examined, which makes
        the exhaustion complete from any starting state; afterwards the queue
        is fed incrementally by tightness transitions.
        """
        if seed_all:
            for v in self.view.vertices:
                if self.in_sol[v]:
                    self._enqueue(v)
        self._drain_one_buf()
        queue = self._queue
        in_queue = self._in_queue
        swaps = 0
        while queue:
            x = queue.popleft()
            in_queue[x] = 0
            if not self.in_sol[x]:
                continue
            pair = self._find_pair(x)
            if pair is None:
                continue
            u, w = pair
            self._remove(x)
            self._insert(u)
            self._insert(w)
            swaps += 1
            self.maintain_maximality(full_scan=False)
            self._drain_one_buf()
        return swaps

    def _tournament_pick(self, batch: list[int]) -> int | None:
        """Pick a free vertex biased toward the oldest removal timestamp:
        draw tournament_size uniform candidates, keep the smallest last_out.
        Redraw when the winner is adjacent to an already-forced vertex."""
        free_list = self.free_list
        rng = self.rng
        last_out = self.last_out
        view = self.view
        draws = self.tournament_size
        for _attempt in range(16):
            n_free = len(free_list)
            best = free_list[rng.randrange(n_free)]
            bo = last_out[best]
            for _ in range(draws - 1):
                u = free_list[rng.randrange(n_free)]
                if last_out[u] < bo:
                    best = u
                    bo = last_out[u]
            for b in batch:
                if view.has_edge(best, b):
                    break
            else:
                return best
        return None

    def perturb(self) -> set[int]:
        """Force one or more free vertices into the solution, evicting their
        solution neighbors, then restore maximality.

        The force count c follows P(c=k) = 2^-k (fair coin until tails),
        capped; forced vertices within a batch are pairwise non-adjacent.
        Returns the forced set; no-op when no free vertex exists.
        """
        if not self.free_list:
            return set()
        rng = self.rng
        c = 1
        while c < self.force_cap and rng.random() < 0.5:
            c += 1
        forced: list[int] = []
        for _ in range(c):
            if not self.free_list:
                break
            v = self._tournament_pick(forced)
            if v is None:
                break
            self._force_insert(v)
            forced.append(v)
        self.maintain_maximality(full_scan=False)
        return set(forced)

    def _force_insert(self, v: int) -> None:
        adj = self.view.adj[v]
        self.touches += len(adj)
        in_sol = self.in_sol
        evicted = [w for w in adj if in_sol[w]]
        for w in evicted:
            self._remove(w)
        self._insert(v)

    def audit(self) -> None:
        """Recompute tightness and independence from scratch; raise on breakage."""
        in_sol = self.in_sol
        size = 0
        for v in self.view.vertices:
            t = sum(1 for u in self.view.adj[v] if in_sol[u])
            if in_sol[v]:
                size += 1
                if t != 0:
                    raise AssertionError(f"solution vertex {v} has a solution neighbor")
            if self.tight[v] != t:
                raise AssertionError(f"tight[{v}]={self.tight[v]} != recount {t}")
        if size != self.size:
            raise AssertionError(f"size {self.size} != recount {size}")
        if sorted(self.free_list) != [v for v in self.view.vertices if not in_sol[v]]:
            raise AssertionError("free list out of sync")


def greedy_init(
    source: WorkingGraph | LiveView,
    rng: random.Random | None = None,
    tournament_size: int = 64,
    force_cap: int = 32,
) -> SolutionState:
    """Build a maximal solution by repeatedly taking a minimum-degree vertex
    and deleting its closed neighborhood (on scratch counters); ties go to
    the lowest id."""
    view = source if isinstance(source, LiveView) else LiveView.from_working(source)
    state = SolutionState(
        view,
        rng if rng is not None else random.Random(0),
        tournament_size=tournament_size,
        force_cap=force_cap,
    )
    adj = view.adj
    deg = [0] * view.universe
    status = bytearray(view.universe)  # 0 undecided, 1 selected, 2 deleted
    heap = []
    for v in view.vertices:
        deg[v] = len(adj[v])
        heap.append((deg[v], v))
    heapify(heap)
    while heap:
        d, v = heappop(heap)
        if status[v] != 0 or d != deg[v]:
            continue
        status[v] = 1
        for u in adj[v]:
            if status[u] == 0:
                status[u] = 2
                for t in adj[u]:
                    if status[t] == 0:
                        deg[t] -= 1
                        heappush(heap, (deg[t], t))
    for v in view.vertices:
        if status[v] == 1:
            state._insert(v)
    state._zero_heap.clear()
    state._one_buf.clear()
    return state


def find_one_two_swap(state: SolutionState) -> tuple[int, int, int] | None:
    """Full-sweep search: the first solution vertex (ascending id) owning two
    non-adjacent 1-tight neighbors, or None when no swap exists."""
    in_sol = state.in_sol
    for x in state.view.vertices:
        if in_sol[x]:
            pair = state._find_pair(x)
            if pair is not None:
                return (x, pair[0], pair[1])
    return None


@dataclass(slots=True)
class BestTracker:
    """Best solution observed during a search block; never below the input."""

    best_set: set[int]
    best_size: int


def arw_block(state: SolutionState, m: int) -> BestTracker:
    """Run m iterations of (perturb, exhaust swaps) and report the best
    solution observed, the input included. Tracks the largest per-iteration
    touch count in state.max_iter_touches."""
    best_mask = bytes(state.in_sol)
    best_size = state.size
    if m > 0 and state.size < len(state.view.vertices):
        state.exhaust_swaps(seed_all=True)
        if state.size > best_size:
            best_mask = bytes(state.in_sol)
            best_size = state.size
        max_iter = 0
        for _ in range(m):
            state.iteration += 1
            t0 = state.touches
            state.perturb()
            state.exhaust_swaps()
            dt = state.touches - t0
            if dt > max_iter:
                max_iter = dt
            if state.size > best_size:
                best_mask = bytes(state.in_sol)
                best_size = state.size
        state.max_iter_touches = max_iter
    best = {v for v in state.view.vertices if best_mask[v]}
    return BestTracker(best_set=best, best_size=best_size)
