"""Exhaustive search for the local antimagic chromatic number of small graphs.

Labelings are visited in lexicographic order of the label sequence (labels
listed in the graph's edge order). A branch is cut as soon as two adjacent
vertices with all incident edges labeled have equal weight, or when the
weights already fixed use too many distinct values. Both cuts only drop
labelings that cannot beat the best one found so far, so the witness is the
lexicographically first optimal labeling.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import BudgetExceeded
from .graphs import EdgeLabeling, PartiteGraph

DEFAULT_MAX_EDGES = 9
HARD_MAX_EDGES = 10


@dataclass(frozen=True)
class OracleResult:
    chi_la: Optional[int]              # None when no local antimagic labeling exists
    witness: Optional[EdgeLabeling]
    explored: int                      # search nodes visited
    budget_hit: bool


def chromatic_number(g: PartiteGraph) -> int:
    """Smallest k admitting a proper vertex colouring (backtracking)."""
    nv = len(g.vertices)
    adj = [set() for _ in range(nv)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    colour = [-1] * nv

    def fill(v, k):
        if v == nv:
            return True
        for c in range(k):
            if all(colour[u] != c for u in adj[v]):
                colour[v] = c
                if fill(v + 1, k):
                    return True
        colour[v] = -1
        return False

    k = 1
    while not fill(0, k):
        k += 1
    return k


def _check_budget(g: PartiteGraph, max_edges: int) -> None:
    if max_edges > HARD_MAX_EDGES:
        raise BudgetExceeded(f"max_edges={max_edges} exceeds the hard cap of {HARD_MAX_EDGES}")
    if len(g.edges) > max_edges:
        raise BudgetExceeded(f"graph has {len(g.edges)} edges; budget is {max_edges}")


class _Search:
    """Depth-first search with incremental weights."""

    def __init__(self, g: PartiteGraph, limit: int, floor: int, node_budget: Optional[int]):
        self.edges = g.edges
        nv = len(g.vertices)
        self.ne = len(g.edges)
        self.adj = [[] for _ in range(nv)]
        self.left = [0] * nv
        for u, v in g.edges:
            self.adj[u].append(v)
            self.adj[v].append(u)
            self.left[u] += 1
            self.left[v] += 1
        self.weight = [0] * nv
        self.used = [False] * (self.ne + 1)
        self.labels = [0] * self.ne
        self.final = {}            # weight -> number of finished vertices carrying it
        self.limit = limit         # accept labelings with fewer than this many classes
        self.floor = floor         # stop once this many classes is reached
        self.best: Optional[Tuple[int, Tuple[int, ...]]] = None
        self.nodes = 0
        self.node_budget = node_budget
        self.budget_hit = False
        self.stop_at_first = False

    def _finish(self, v) -> bool:
        w = self.weight[v]
        for u in self.adj[v]:
            if self.left[u] == 0 and self.weight[u] == w:
                return False
        self.final[w] = self.final.get(w, 0) + 1
        return True

    def _unfinish(self, v) -> None:
        w = self.weight[v]
        c = self.final[w] - 1
        if c:
            self.final[w] = c
        else:
            del self.final[w]

    def run(self, first_label: Optional[int] = None) -> None:
        labels = range(1, self.ne + 1) if first_label is None else [first_label]
        self._extend(0, labels)

    def _extend(self, e: int, choices) -> bool:
        """Returns True when the whole search should stop."""
        if e == self.ne:
            k = len(self.final)
            if k < self.limit:
                self.best = (k, tuple(self.labels))
                self.limit = k
                if self.stop_at_first or k <= self.floor:
                    return True
            return False
        u, v = self.edges[e]
        for x in choices:
            if self.used[x]:
                continue
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                self.budget_hit = True
                return True
            self.used[x] = True
            self.labels[e] = x
            self.weight[u] += x
            self.weight[v] += x
            self.left[u] -= 1
            self.left[v] -= 1
            done = []
            ok = True
            for z in (u, v):
                if self.left[z] == 0:
                    if self._finish(z):
                        done.append(z)
                    else:
                        ok = False
                        break
            if ok and len(self.final) < self.limit:
                if self._extend(e + 1, range(1, self.ne + 1)):
                    for z in done:
                        self._unfinish(z)
                    self._undo(e, u, v, x)
                    return True
            for z in done:
                self._unfinish(z)
            self._undo(e, u, v, x)
        return False

    def _undo(self, e, u, v, x):
        self.left[u] += 1
        self.left[v] += 1
        self.weight[u] -= x
        self.weight[v] -= x
        self.labels[e] = 0
        self.used[x] = False


def _partition_worker(args):
    g, first, floor, node_budget = args
    s = _Search(g, len(g.vertices) + 1, floor, node_budget)
    s.run(first)
    return s.best, s.nodes, s.budget_hit


def exact_chi_la(g: PartiteGraph, max_edges: int = DEFAULT_MAX_EDGES, *,
                 workers: int = 1, node_budget: Optional[int] = None) -> OracleResult:
    """Minimum number of weight classes over all local antimagic labelings.

    ``workers > 1`` splits the search by the label of the first edge and
    merges the parts by (class count, label sequence), so the answer and
    witness match the serial run. ``node_budget`` caps the search; when hit,
    the result is the best labeling found so far and ``budget_hit`` is set.
    """
    _check_budget(g, max_edges)
    floor = chromatic_number(g)
    if workers <= 1 or len(g.edges) < 2:
        s = _Search(g, len(g.vertices) + 1, floor, node_budget)
        s.run()
        best, nodes, hit = s.best, s.nodes, s.budget_hit
    else:
        jobs = [(g, x, floor, node_budget) for x in range(1, len(g.edges) + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_partition_worker, jobs))
        found = [p[0] for p in parts if p[0] is not None]
        best = min(found) if found else None
        nodes = sum(p[1] for p in parts)
        hit = any(p[2] for p in parts)
    if best is None:
        return OracleResult(None, None, nodes, hit)
    return OracleResult(best[0], EdgeLabeling(g, best[1]), nodes, hit)


def exists_k_class_labeling(g: PartiteGraph, k: int, max_edges: int = DEFAULT_MAX_EDGES
                            ) -> Tuple[bool, Optional[EdgeLabeling]]:
    """Whether some local antimagic labeling uses at most k weight classes.

    The witness is the lexicographically first such labeling.
    """
    _check_budget(g, max_edges)
    s = _Search(g, k + 1, 0, None)
    s.stop_at_first = True
    s.run()
    if s.best is None:
        return False, None
    return True, EdgeLabeling(g, s.best[1])
