import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gridcycle.grid import GridGraph
from gridcycle.tree import SpanningTree


def comb_tree(g: GridGraph) -> SpanningTree:
    """Bottom row plus every full column, rooted at the bottom-right corner."""
    n = g.n
    ids = [g.edge_id((x, 1), (x + 1, 1)) for x in range(1, n)]
    for x in range(1, n + 1):
        ids += [g.edge_id((x, y), (x, y + 1)) for y in range(1, n)]
    return SpanningTree.from_edges(g, ids, (n, 1))


def rows_plus_column_tree(g: GridGraph, column: int) -> SpanningTree:
    """Every full row plus one full column, rooted at the bottom-right corner."""
    n = g.n
    ids = []
    for y in range(1, n + 1):
        ids += [g.edge_id((x, y), (x + 1, y)) for x in range(1, n)]
    ids += [g.edge_id((column, y), (column, y + 1)) for y in range(1, n)]
    return SpanningTree.from_edges(g, ids, (n, 1))


def explicit_cycle_length(t: SpanningTree, eid: int) -> int:
    """Fundamental-cycle length by stepwise parent walks over dictionaries,
    independent of both the ancestor tables and the library's path tracer."""
    g = t.host
    e = g.edge(eid)
    parent = {v: t.parent(v) for v in g.vertices()}
    anc = {e.a: 0}
    v, d = e.a, 0
    while parent[v] != v:
        v = parent[v]
        d += 1
        anc[v] = d
    v, d = e.b, 0
    while v not in anc:
        v = parent[v]
        d += 1
    return anc[v] + d + 1
