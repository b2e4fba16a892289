"""Oracles and optimizers over the spanning trees of a grid.

Exhaustive enumeration is an independent ground truth for small grids: the
enumerated tree count is cross-checked against the matrix-tree determinant,
and per-tree totals are recomputed here by explicit breadth-first walks
rather than through the ancestor tables used elsewhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .errors import TooLargeError
from .grid import GridGraph
from .tree import SpanningTree

ENUMERATION_LIMIT = 4


def count_spanning_trees(g: GridGraph) -> int:
    """Exact spanning-tree count via a fraction-free integer determinant of
    the reduced Laplacian."""
    nv = g.num_vertices
    if nv == 1:
        return 1
    lap = [[0] * nv for _ in range(nv)]
    for e in g.edges():
        i, j = g.vertex_index(e.a), g.vertex_index(e.b)
        lap[i][i] += 1
        lap[j][j] += 1
        lap[i][j] -= 1
        lap[j][i] -= 1
    reduced = [row[:-1] for row in lap[:-1]]
    return _bareiss_determinant(reduced)


def _bareiss_determinant(m: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; exact over Python integers."""
    k = len(m)
    if k == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            for r in range(i + 1, k):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[i][i]
        for r in range(i + 1, k):
            row_r, row_i = m[r], m[i]
            factor = row_r[i]
            for c in range(i + 1, k):
                row_r[c] = (row_r[c] * pivot - factor * row_i[c]) // prev
            row_r[i] = 0
        prev = pivot
    return sign * m[k - 1][k - 1]


class _DSU:
    __slots__ = ("p",)

    def __init__(self, n, p=None):
        self.p = list(range(n)) if p is None else p

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[ra] = rb
        return True

    def clone(self):
        return _DSU(0, self.p[:])


def enumerate_spanning_trees(g: GridGraph, visit) -> int:
    """Visit every spanning tree of g exactly once as a sorted edge-id tuple.

    Binary include/exclude branching over the canonical edge order, pruned by
    a cycle test on the include branch and a connectivity-feasibility test on
    the exclude branch, so the recursion tree has one leaf per spanning tree.
    Declined above side 4; use :func:`random_spanning_tree` there instead.
    """
    n = g.n
    if n > ENUMERATION_LIMIT:
        raise TooLargeError(
            f"exhaustive enumeration is limited to side {ENUMERATION_LIMIT}; "
            f"side {n} has too many trees - sample with random_spanning_tree")
    nv = g.num_vertices
    ne = g.num_edges
    endpoints = [(g.vertex_index(e.a), g.vertex_index(e.b)) for e in g.edges()]
    if nv == 1:
        visit(())
        return 1
    count = 0
    chosen: list[int] = []

    def feasible_without(i, dsu):
        probe = dsu.clone()
        comps = nv - (len(chosen))
        for j in range(i + 1, ne):
            u, v = endpoints[j]
            if probe.union(u, v):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def rec(i, dsu):
        nonlocal count
        if len(chosen) == nv - 1:
            count += 1
            visit(tuple(chosen))
            return
        if i == ne:
            return
        u, v = endpoints[i]
        if dsu.find(u) != dsu.find(v):
            inc = dsu.clone()
            inc.union(u, v)
            chosen.append(i)
            rec(i + 1, inc)
            chosen.pop()
        if feasible_without(i, dsu):
            rec(i + 1, dsu)

    rec(0, _DSU(nv))
    return count


def _explicit_totals(g: GridGraph, edge_ids):
    """(L_total, P_total) of a tree, by plain BFS and stepwise path walks.

    Independent of the ancestor-table implementation in :mod:`gridcycle.tree`;
    used as the oracle side of dual-route checks.
    """
    n = g.n
    nv = g.num_vertices
    adj = [[] for _ in range(nv)]
    in_tree = set(edge_ids)
    endpoints = {}
    for eid in edge_ids:
        e = g.edge(eid)
        u, v = g.vertex_index(e.a), g.vertex_index(e.b)
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * nv
    depth = [-1] * nv
    order = [0]
    depth[0] = 0
    parent[0] = 0
    for u in order:
        for w in adj[u]:
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                parent[w] = u
                order.append(w)
    L = 0
    P = 0
    for eid in range(g.num_edges):
        if eid in in_tree:
            continue
        e = g.edge(eid)
        a, b = g.vertex_index(e.a), g.vertex_index(e.b)
        xs = [a % n + 1, b % n + 1]
        ys = [a // n + 1, b // n + 1]
        steps = 0
        while depth[a] > depth[b]:
            a = parent[a]
            steps += 1
            xs.append(a % n + 1)
            ys.append(a // n + 1)
        while depth[b] > depth[a]:
            b = parent[b]
            steps += 1
            xs.append(b % n + 1)
            ys.append(b // n + 1)
        while a != b:
            a = parent[a]
            b = parent[b]
            steps += 2
            xs += [a % n + 1, b % n + 1]
            ys += [a // n + 1, b // n + 1]
        L += steps + 1
        P += 2 * (max(xs) - min(xs)) + 2 * (max(ys) - min(ys))
    return L, P


@dataclass(frozen=True)
class MinimumReport:
    """Exhaustive minimum of the total cycle length over all spanning trees."""

    n: int
    trees_scanned: int
    min_L: int
    min_P: int
    witness_edge_ids: tuple


def min_total_length(g: GridGraph) -> MinimumReport:
    """Exact minimum of the total fundamental-cycle length, with a witness
    tree, plus the minimum perimeter sum for comparison.  Side <= 4 only."""
    n = g.n
    if n > ENUMERATION_LIMIT:
        raise TooLargeError(
            f"exact minimisation is limited to side {ENUMERATION_LIMIT}")
    best = [None, None, None]
    scanned = [0]

    def visit(ids):
        scanned[0] += 1
        L, P = _explicit_totals(g, ids)
        if best[0] is None or L < best[0]:
            best[0] = L
            best[2] = ids
        if best[1] is None or P < best[1]:
            best[1] = P

    enumerate_spanning_trees(g, visit)
    return MinimumReport(n, scanned[0], best[0] or 0, best[1] or 0,
                         best[2] or ())


def random_spanning_tree(g: GridGraph, seed: int) -> SpanningTree:
    """Exactly uniform spanning tree via loop-erased random walks.

    Deterministic for a fixed seed.  The walk's next-pointer table performs
    the loop erasure implicitly: re-visiting a vertex overwrites its pointer.
    """
    rng = random.Random(seed)
    n = g.n
    nv = g.num_vertices
    root = 0
    if nv == 1:
        return SpanningTree.from_edges(g, [], (1, 1))
    nbrs = []
    for i in range(nv):
        x, y = i % n, i // n
        cur = []
        if x > 0:
            cur.append(i - 1)
        if x < n - 1:
            cur.append(i + 1)
        if y > 0:
            cur.append(i - n)
        if y < n - 1:
            cur.append(i + n)
        nbrs.append(cur)
    in_tree = bytearray(nv)
    in_tree[root] = 1
    nxt = [-1] * nv
    choice = rng.choice
    for start in range(nv):
        if in_tree[start]:
            continue
        u = start
        while not in_tree[u]:
            v = choice(nbrs[u])
            nxt[u] = v
            u = v
        u = start
        while not in_tree[u]:
            in_tree[u] = 1
            u = nxt[u]
    ids = []
    for u in range(nv):
        if u != root:
            ux, uy = u % n + 1, u // n + 1
            v = nxt[u]
            vx, vy = v % n + 1, v // n + 1
            ids.append(g.edge_id((ux, uy), (vx, vy)))
    return SpanningTree.from_edges(g, ids, (1, 1))


@dataclass(frozen=True)
class SearchBudget:
    max_trees: int = 100_000
    max_seconds: float = 60.0
    seed: int = 0

    def __post_init__(self):
        if self.max_trees <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class LocalSearchResult:
    tree: SpanningTree
    L: int
    evaluations: int
    budget_exhausted: bool
    local_optimum: bool


def local_search(g: GridGraph, t0: SpanningTree,
                 budget: SearchBudget) -> LocalSearchResult:
    """Hill-climb on the total cycle length by chord/tree-edge swaps.

    Each move inserts a chord and deletes one tree edge on its fundamental
    cycle, so the result is always a spanning tree; a move is accepted only
    if the total strictly decreases (first improvement, chord order shuffled
    per seed).  Stops at a local optimum or when the budget runs out.
    """
    rng = random.Random(budget.seed)
    t_start = time.monotonic()
    current = t0
    cur_L = current.total_length().L_total if g.n >= 2 else 0
    evals = 0
    exhausted = False
    optimum = False

    def out_of_budget():
        return (evals >= budget.max_trees
                or time.monotonic() - t_start >= budget.max_seconds)

    while True:
        improved = False
        chords = [int(c) for c in current.chord_ids()] if g.n >= 2 else []
        rng.shuffle(chords)
        for e in chords:
            if out_of_budget():
                exhausted = True
                break
            cycle = current.fundamental_cycle(e)
            tree_edges = [g.edge_id(cycle[i], cycle[i + 1])
                          for i in range(len(cycle) - 1)]
            base = set(int(i) for i in current.tree_edge_ids())
            for f in tree_edges:
                if out_of_budget():
                    exhausted = True
                    break
                cand_ids = (base - {f}) | {e}
                cand = SpanningTree.from_edges(g, cand_ids, current.root)
                cand_L = cand.total_length().L_total
                evals += 1
                if cand_L < cur_L:
                    current, cur_L = cand, cand_L
                    improved = True
                    break
            if improved or exhausted:
                break
        if exhausted:
            break
        if not improved:
            optimum = True
            break
    return LocalSearchResult(current, cur_L, evals, exhausted, optimum)
