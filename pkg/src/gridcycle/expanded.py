"""Expanded grids: duplicated boundary vertices, boundary-length extra edges,
perimeter sums, subgrid contraction, rerouted walks and winding numbers.

An expanded grid is a host n-grid plus duplicates of peripheral vertices and
extra edges between peripheral/duplicate vertices, drawable with every
duplicate arbitrarily close to its base vertex.  Extra edges carry the
length of the shortest boundary path between the (base) coordinates of
their endpoints; host edges have length 1.

Vertex references in the public API: a host vertex is a plain coordinate
pair ``(x, y)``; a duplicate is ``("d", id)``.  Walks are lists of such
references; consecutive entries (wrapping around) are the walk's edges.

The central operation is ``contract(h, t, sub)``: restrict a spanning tree
to the minimal subtree covering a subgrid, dissolve outside degree-2
vertices into boundary edges, and demote surviving outside branch vertices
to duplicates of their nearest subgrid-boundary vertex.  The result is again
an expanded grid (host coordinates shifted to 1-based; the original offset
is kept in ``origin``) together with its spanning tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import (
    CounterexampleError,
    DegeneratePointError,
    EmptyCycleError,
    GridCycleError,
    MalformedEdgeError,
    NotDrawableError,
    OutOfRangeError,
    UnknownEdgeError,
)
from .grid import Coord, GridGraph, SubgridRef
from .tree import AncestorTables, SpanningTree


@dataclass(frozen=True)
class Duplicate:
    """A copy of a peripheral host vertex, pinned near its base.

    ``boundary_slot`` orders duplicates sharing a base within the outer-face
    cyclic order (base first, then its duplicates by slot).
    """

    id: int
    base: Coord
    boundary_slot: int


def _is_dup_ref(ref) -> bool:
    return isinstance(ref, tuple) and len(ref) == 2 and ref[0] == "d"


class ExpandedGrid:
    """Host grid plus duplicates and extra edges (lengths cached)."""

    def __init__(self, host: GridGraph, duplicates=(), xedges=(),
                 origin: Coord = (0, 0), validate: bool = True):
        self.host = host
        self.duplicates = tuple(duplicates)
        self.xedges = tuple((a, b) for a, b in xedges)
        self.origin = origin
        for k, d in enumerate(self.duplicates):
            if d.id != k:
                raise ValueError(f"duplicate ids must be 0..{len(self.duplicates)-1}")
        self.xedge_lengths = tuple(self._length(a, b) for a, b in self.xedges)
        if validate:
            self.validate()

    # -- vertex references ---------------------------------------------------

    @property
    def num_nodes(self) -> int:
        return self.host.num_vertices + len(self.duplicates)

    def ref_position(self, ref) -> Coord:
        """Drawing position of a vertex: itself, or the duplicate's base."""
        if _is_dup_ref(ref):
            return self.duplicates[ref[1]].base
        return ref

    def ref_index(self, ref) -> int:
        if _is_dup_ref(ref):
            k = ref[1]
            if not 0 <= k < len(self.duplicates):
                raise OutOfRangeError(f"no duplicate with id {k}")
            return self.host.num_vertices + k
        self.host.check_vertex(ref)
        return self.host.vertex_index(ref)

    def index_ref(self, idx: int):
        nv = self.host.num_vertices
        if idx < nv:
            return self.host.vertex_at(idx)
        return ("d", idx - nv)

    def node_positions(self):
        """(xs, ys) arrays over all node indices; duplicates at their bases."""
        n = self.host.n
        nv = self.host.num_vertices
        xs = np.empty(self.num_nodes, dtype=np.int64)
        ys = np.empty(self.num_nodes, dtype=np.int64)
        idx = np.arange(nv)
        xs[:nv] = idx % n + 1
        ys[:nv] = idx // n + 1
        for k, d in enumerate(self.duplicates):
            xs[nv + k], ys[nv + k] = d.base
        return xs, ys

    # -- lengths ---------------------------------------------------------------

    def _peripheral_or_dup(self, ref) -> bool:
        if _is_dup_ref(ref):
            return 0 <= ref[1] < len(self.duplicates)
        return self.host.contains(ref) and self.host.is_peripheral(ref)

    def _length(self, a, b) -> int:
        for ref in (a, b):
            if not self._peripheral_or_dup(ref):
                raise MalformedEdgeError(
                    f"extra-edge endpoint {ref!r} is neither peripheral nor a duplicate")
        return self.host.boundary_distance(self.ref_position(a),
                                           self.ref_position(b))

    def xedge_length(self, edge) -> int:
        """Length of an extra edge, by index or (endpoint, endpoint) pair."""
        if isinstance(edge, int):
            if not 0 <= edge < len(self.xedges):
                raise OutOfRangeError(f"no extra edge with index {edge}")
            return self.xedge_lengths[edge]
        a, b = edge
        return self._length(a, b)

    # -- validation ------------------------------------------------------------

    def validate(self) -> None:
        """Check endpoint peripherality, base peripherality and drawability."""
        for d in self.duplicates:
            self.host.check_vertex(d.base)
            if not self.host.is_peripheral(d.base):
                raise MalformedEdgeError(
                    f"duplicate {d.id} based at non-peripheral {d.base}")
        for a, b in self.xedges:
            self._length(a, b)
            if self.ref_index(a) == self.ref_index(b):
                raise MalformedEdgeError("extra edge joins a vertex to itself")
        if not self.is_drawable():
            raise NotDrawableError(
                "extra edges admit no planar outer embedding with duplicates "
                "pinned at their bases")

    def is_drawable(self) -> bool:
        """Planarity of the boundary cycle + apex + extra edges, duplicates
        taken as free outside vertices.

        The apex vertex joined to every boundary vertex forces the grid's
        interior to stay a face, so the extra edges must all embed in the
        outer region.  Pinning duplicates near their bases costs nothing
        combinatorially: a boundary-fixing ambient isotopy of the outer
        region can drag any interior vertex arbitrarily close to its base
        while the incident curves follow, so one planar embedding yields,
        for every positive tolerance, an embedding with all duplicates that
        close to their bases.
        """
        if self.host.n == 1:
            return True
        if not self.xedges:
            return True
        ring = self.host.boundary_cycle()
        pos = {v: i for i, v in enumerate(ring)}
        L = len(ring)
        g = nx.Graph()
        g.add_nodes_from(range(L))
        for i in range(L):
            g.add_edge(i, (i + 1) % L)
            g.add_edge("apex", i)
        for a, b in self.xedges:
            na = ("dup", a[1]) if _is_dup_ref(a) else pos[a]
            nb = ("dup", b[1]) if _is_dup_ref(b) else pos[b]
            if na != nb:
                g.add_edge(na, nb)
        ok, _ = nx.check_planarity(g)
        return ok

    # -- file format -------------------------------------------------------

    def to_file(self, path) -> None:
        def fmt(ref):
            if _is_dup_ref(ref):
                return f"d {ref[1]}"
            return f"h {ref[0]} {ref[1]}"

        with open(path, "w") as fh:
            fh.write(f"n {self.host.n}\n")
            for d in self.duplicates:
                fh.write(f"dup {d.id} {d.base[0]} {d.base[1]} {d.boundary_slot}\n")
            for a, b in self.xedges:
                fh.write(f"xedge {fmt(a)} {fmt(b)}\n")

    @staticmethod
    def from_file(path) -> "ExpandedGrid":
        n = None
        dups = []
        xedges = []

        def parse_ref(tokens):
            if tokens[0] == "h":
                return (int(tokens[1]), int(tokens[2])), tokens[3:]
            if tokens[0] == "d":
                return ("d", int(tokens[1])), tokens[2:]
            raise ValueError(f"bad endpoint {' '.join(tokens)}")

        with open(path) as fh:
            for line in fh:
                tok = line.split()
                if not tok:
                    continue
                if tok[0] == "n":
                    n = int(tok[1])
                elif tok[0] == "dup":
                    dups.append(Duplicate(int(tok[1]), (int(tok[2]), int(tok[3])),
                                          int(tok[4])))
                elif tok[0] == "xedge":
                    a, rest = parse_ref(tok[1:])
                    b, rest = parse_ref(rest)
                    xedges.append((a, b))
                else:
                    raise ValueError(f"{path}: unknown record {tok[0]!r}")
        if n is None:
            raise ValueError(f"{path}: missing grid size record")
        return ExpandedGrid(GridGraph(n), dups, xedges)


def plain(g: GridGraph) -> ExpandedGrid:
    """The grid itself, viewed as an expanded grid without duplicates."""
    return ExpandedGrid(g)


class XSpanningTree:
    """A spanning tree over all vertices of an expanded grid.

    Edges may be host edges (by canonical id) or extra edges (by index).
    Unweighted depth drives ancestor queries; ``wdepth`` accumulates edge
    lengths for path-length computations.
    """

    def __init__(self, grid: ExpandedGrid, host_edge_ids, xedge_indices,
                 root_ref=None):
        self.grid = grid
        host = grid.host
        self.host_edge_mask = np.zeros(host.num_edges, dtype=bool)
        hids = np.asarray(sorted(int(e) for e in host_edge_ids), dtype=np.int64)
        if len(hids) != len(set(hids.tolist())):
            raise GridCycleError("duplicate host edge ids")
        if len(hids) and (hids.min() < 0 or hids.max() >= host.num_edges):
            raise UnknownEdgeError("host edge id out of range")
        self.host_edge_mask[hids] = True
        self.xedge_indices = tuple(sorted(int(i) for i in xedge_indices))
        if len(set(self.xedge_indices)) != len(self.xedge_indices):
            raise GridCycleError("duplicate extra-edge indices")
        for i in self.xedge_indices:
            if not 0 <= i < len(grid.xedges):
                raise OutOfRangeError(f"no extra edge with index {i}")
        nn = grid.num_nodes
        total = len(hids) + len(self.xedge_indices)
        if total != nn - 1:
            raise GridCycleError(
                f"spanning tree needs {nn - 1} edges, got {total}")
        if root_ref is None:
            root_ref = (1, 1)
        self.root_ref = root_ref
        ridx = grid.ref_index(root_ref)

        ua_h, ub_h = host.edge_endpoint_indices(hids)
        pairs = [(int(a), int(b)) for a, b in zip(ua_h, ub_h)]
        for i in self.xedge_indices:
            a, b = grid.xedges[i]
            pairs.append((grid.ref_index(a), grid.ref_index(b)))
        rows = np.array([p[0] for p in pairs] + [p[1] for p in pairs])
        cols = np.array([p[1] for p in pairs] + [p[0] for p in pairs])
        if len(pairs) == 0:
            parent = np.arange(nn, dtype=np.int64)
            depth = np.zeros(nn, dtype=np.int64)
        else:
            adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                             shape=(nn, nn))
            dist, pred = dijkstra(adj, indices=ridx, unweighted=True,
                                  return_predecessors=True)
            if np.isinf(dist).any():
                raise GridCycleError("edge set does not span the expanded grid")
            depth = dist.astype(np.int64)
            parent = pred.astype(np.int64)
            parent[ridx] = ridx
        self.parent_idx = parent
        self.depth_arr = depth
        xs, ys = grid.node_positions()
        self.tables = AncestorTables(parent, depth, xs, ys)
        self._wdepth = None
        self._edge_length_of = None

    @staticmethod
    def from_host_tree(t: SpanningTree, grid: ExpandedGrid | None = None
                       ) -> "XSpanningTree":
        if grid is None:
            grid = plain(t.host)
        return XSpanningTree(grid, [int(e) for e in t.tree_edge_ids()], [],
                             t.root)

    # -- basics --------------------------------------------------------------

    def host_chord_ids(self) -> np.ndarray:
        return np.nonzero(~self.host_edge_mask)[0]

    def contains_host_edge(self, eid: int) -> bool:
        return bool(self.host_edge_mask[eid])

    def _edge_lengths(self):
        """Map (min_idx, max_idx) -> smallest length of a tree edge there."""
        if self._edge_length_of is None:
            grid = self.grid
            host = grid.host
            table = {}
            hids = np.nonzero(self.host_edge_mask)[0]
            ua, ub = host.edge_endpoint_indices(hids)
            for a, b in zip(ua.tolist(), ub.tolist()):
                table[(min(a, b), max(a, b))] = 1
            for i in self.xedge_indices:
                a, b = grid.xedges[i]
                ia, ib = grid.ref_index(a), grid.ref_index(b)
                key = (min(ia, ib), max(ia, ib))
                lng = grid.xedge_lengths[i]
                if key not in table or lng < table[key]:
                    table[key] = lng
            self._edge_length_of = table
        return self._edge_length_of

    def wdepth(self) -> np.ndarray:
        """Length-weighted depth (sum of edge lengths on the root path)."""
        if self._wdepth is None:
            lengths = self._edge_lengths()
            order = np.argsort(self.depth_arr, kind="stable")
            wd = np.zeros(self.grid.num_nodes, dtype=np.int64)
            for v in order.tolist():
                p = int(self.parent_idx[v])
                if p != v:
                    key = (min(v, p), max(v, p))
                    wd[v] = wd[p] + lengths[key]
            self._wdepth = wd
        return self._wdepth

    def path_refs(self, ref_u, ref_v) -> list:
        """Tree path between two vertices, as an inclusive reference list."""
        grid = self.grid
        par, dep = self.parent_idx, self.depth_arr
        a, b = grid.ref_index(ref_u), grid.ref_index(ref_v)
        up_a, up_b = [a], [b]
        while dep[a] > dep[b]:
            a = int(par[a])
            up_a.append(a)
        while dep[b] > dep[a]:
            b = int(par[b])
            up_b.append(b)
        while a != b:
            a = int(par[a])
            b = int(par[b])
            up_a.append(a)
            up_b.append(b)
        idxs = up_a + up_b[-2::-1]
        return [grid.index_ref(i) for i in idxs]


def lstar(t: XSpanningTree, h: ExpandedGrid | None = None) -> int:
    """Sum of fundamental-cycle perimeters over the host chords of t.

    Perimeters bound the host coordinates and duplicate bases on each cycle;
    chords among the extra edges are excluded.
    """
    if h is not None and h is not t.grid:
        raise GridCycleError("tree does not belong to the given expanded grid")
    grid = t.grid
    chords = t.host_chord_ids()
    if len(chords) == 0:
        return 0
    ua, ub = grid.host.edge_endpoint_indices(chords)
    return int(t.tables.path_perimeters(ua, ub).sum())


def xperimeter(h: ExpandedGrid, walk) -> int:
    """Perimeter of the box bounding a closed walk's positions."""
    walk = list(walk)
    if not walk:
        raise EmptyCycleError("cannot bound an empty walk")
    pos = [h.ref_position(r) for r in walk]
    xs = [p[0] for p in pos]
    ys = [p[1] for p in pos]
    return 2 * (max(xs) - min(xs)) + 2 * (max(ys) - min(ys))


def walk_length(t: XSpanningTree, walk) -> int:
    """Total edge length of a closed walk whose steps are tree edges or host
    edges; parallel edges resolve to the shortest available length."""
    grid = t.grid
    host = grid.host
    lengths = t._edge_lengths()
    total = 0
    m = len(walk)
    for i in range(m):
        u, v = walk[i], walk[(i + 1) % m]
        iu, iv = grid.ref_index(u), grid.ref_index(v)
        key = (min(iu, iv), max(iu, iv))
        if key in lengths:
            total += lengths[key]
            continue
        pu, pv = grid.ref_position(u), grid.ref_position(v)
        if not _is_dup_ref(u) and not _is_dup_ref(v) and \
                abs(pu[0] - pv[0]) + abs(pu[1] - pv[1]) == 1:
            total += 1
        else:
            total += host.boundary_distance(pu, pv)
    return total


# -- contraction -------------------------------------------------------------


def contract(h: ExpandedGrid, t: XSpanningTree, sub: SubgridRef
             ) -> tuple[ExpandedGrid, XSpanningTree]:
    """Contract an expanded grid and its spanning tree to a subgrid.

    Takes the minimal subtree of t containing all subgrid vertices,
    suppresses outside degree-2 vertices (chains become extra edges), and
    demotes outside branch vertices to duplicates based at the L1-nearest
    subgrid boundary vertex.  Output host coordinates are shifted to
    1..side; the shift is recorded in the result's ``origin``.
    """
    host = h.host
    n = host.n
    if not (1 <= sub.x_lo <= sub.x_hi <= n and 1 <= sub.y_lo <= sub.y_hi <= n):
        raise OutOfRangeError(f"{sub} is not a subgrid of the {n}-grid")
    if sub.x_hi - sub.x_lo != sub.y_hi - sub.y_lo:
        raise OutOfRangeError(f"{sub} is not square")
    if t.grid is not h:
        raise GridCycleError("tree does not belong to the given expanded grid")
    side = sub.side
    if side == n:
        return h, t
    x_off, y_off = sub.x_lo - 1, sub.y_lo - 1
    out_host = GridGraph(side)

    nn = h.num_nodes
    nv = host.num_vertices
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(nn)]
    hids = np.nonzero(t.host_edge_mask)[0]
    ua, ub = host.edge_endpoint_indices(hids)
    for eid, a, b in zip(hids.tolist(), ua.tolist(), ub.tolist()):
        adj[a].append((b, 0, eid))
        adj[b].append((a, 0, eid))
    for i in t.xedge_indices:
        a, b = h.xedges[i]
        ia, ib = h.ref_index(a), h.ref_index(b)
        adj[ia].append((ib, 1, i))
        adj[ib].append((ia, 1, i))

    marked = np.zeros(nn, dtype=bool)
    for y in range(sub.y_lo, sub.y_hi + 1):
        base = (y - 1) * n
        marked[base + sub.x_lo - 1: base + sub.x_hi] = True
    total_marked = int(marked.sum())

    if side == 1:
        out_grid = ExpandedGrid(out_host, origin=(x_off, y_off))
        return out_grid, XSpanningTree(out_grid, [], [], (1, 1))

    # Steiner subtree: keep tree edges with marked vertices on both sides.
    root = (sub.y_lo - 1) * n + (sub.x_lo - 1)
    parent = [-1] * nn
    parent_edge = [None] * nn
    order = [root]
    parent[root] = root
    for u in order:
        for w, kind, key in adj[u]:
            if parent[w] < 0:
                parent[w] = u
                parent_edge[w] = (kind, key)
                order.append(w)
    cnt = [1 if marked[v] else 0 for v in range(nn)]
    for u in reversed(order):
        p = parent[u]
        if p != u and p >= 0:
            cnt[p] += cnt[u]
    sadj: list[list[tuple[int, int, int]]] = [[] for _ in range(nn)]
    for u in order:
        p = parent[u]
        if p != u and cnt[u] >= 1 and total_marked - cnt[u] >= 1:
            kind, key = parent_edge[u]
            sadj[u].append((p, kind, key))
            sadj[p].append((u, kind, key))

    keep = [False] * nn
    for v in range(nn):
        if marked[v] or len(sadj[v]) >= 3:
            keep[v] = True

    # Suppress chains of unkept degree-2 vertices.
    out_host_edges: list[int] = []
    chains: list[tuple[int, int, int]] = []  # (kept_u, kept_v, H-length)
    seen = set()

    def edge_token(a, b, kind, key):
        return (min(a, b), max(a, b), kind, key)

    for u in range(nn):
        if not keep[u]:
            continue
        for w0, kind0, key0 in sadj[u]:
            tok = edge_token(u, w0, kind0, key0)
            if tok in seen:
                continue
            seen.add(tok)
            total_len = 1 if kind0 == 0 else h.xedge_lengths[key0]
            cur = w0
            nhops = 1
            arrival = tok
            while not keep[cur]:
                w, kind, key = next(
                    (e for e in sadj[cur]
                     if edge_token(cur, e[0], e[1], e[2]) != arrival))
                arrival = edge_token(cur, w, kind, key)
                seen.add(arrival)
                total_len += 1 if kind == 0 else h.xedge_lengths[key]
                cur = w
                nhops += 1
            if nhops == 1 and kind0 == 0 and marked[u] and marked[cur]:
                e = host.edge(key0)
                a = (e.a[0] - x_off, e.a[1] - y_off)
                b = (e.b[0] - x_off, e.b[1] - y_off)
                out_host_edges.append(out_host.edge_id(a, b))
            else:
                chains.append((u, cur, total_len))

    # Branch vertices outside the subgrid become duplicates.
    def position(v):
        if v < nv:
            return host.vertex_at(v)
        return h.duplicates[v - nv].base

    branch = sorted(v for v in range(nn) if keep[v] and not marked[v])
    sub_local = SubgridRef(1, side, 1, side)
    dup_info = []
    for v in branch:
        px, py = position(v)
        bx, by = sub_local.clamp((px - x_off, py - y_off))
        dup_info.append((v, (bx, by)))
    dup_info.sort(key=lambda it: (out_host.boundary_position(it[1]), it[0]))
    dup_of = {}
    duplicates = []
    slot_counter = {}
    for k, (v, base) in enumerate(dup_info):
        slot = slot_counter.get(base, 0)
        slot_counter[base] = slot + 1
        duplicates.append(Duplicate(k, base, slot))
        dup_of[v] = k

    def out_ref(v):
        if v in dup_of:
            return ("d", dup_of[v])
        x, y = host.vertex_at(v)
        return (x - x_off, y - y_off)

    out_xedges = [(out_ref(u), out_ref(v)) for u, v, _ in chains]
    out_grid = ExpandedGrid(out_host, duplicates, out_xedges,
                            origin=(x_off, y_off))
    out_tree = XSpanningTree(out_grid, out_host_edges,
                             range(len(out_xedges)), (1, 1))
    return out_grid, out_tree


# -- rerouted walks and winding numbers ---------------------------------------


def reroute_walk(t: XSpanningTree, h: ExpandedGrid, i: int) -> list:
    """The concentric cycle C_i with every non-tree edge replaced by the tree
    path between its endpoints; the result is a closed walk inside t."""
    if h is not t.grid:
        raise GridCycleError("tree does not belong to the given expanded grid")
    ring = h.host.concentric_cycle(i)
    walk: list = []
    m = len(ring)
    for j in range(m):
        u, v = ring[j], ring[(j + 1) % m]
        eid = h.host.edge_id(u, v)
        if t.contains_host_edge(eid):
            walk.append(u)
        else:
            walk.extend(t.path_refs(u, v)[:-1])
    return walk


def _scaled_polyline(h: ExpandedGrid, walk) -> list[tuple[int, int]]:
    """Vertex chain of the drawn walk, scaled by 4 so the 0.25 boundary
    offset becomes integral.

    Host steps are unit segments; every other step is routed just outside
    the boundary along the shorter boundary arc between the endpoint bases
    (ties broken counterclockwise).
    """
    host = h.host
    n = host.n
    ring = host.boundary_cycle()
    per = len(ring)

    def contour(pos: Coord) -> tuple[int, int]:
        x, y = pos
        cx, cy = 4 * x, 4 * y
        if x == 1:
            cx = 3
        if x == n:
            cx = 4 * n + 1
        if y == 1:
            cy = 3
        if y == n:
            cy = 4 * n + 1
        return cx, cy

    pts: list[tuple[int, int]] = []

    def emit(p):
        if not pts or pts[-1] != p:
            pts.append(p)

    m = len(walk)
    for j in range(m):
        u, v = walk[j], walk[(j + 1) % m]
        pu, pv = h.ref_position(u), h.ref_position(v)
        su = (4 * pu[0], 4 * pu[1])
        sv = (4 * pv[0], 4 * pv[1])
        emit(su)
        if pu == pv:
            continue
        host_step = (not _is_dup_ref(u) and not _is_dup_ref(v)
                     and abs(pu[0] - pv[0]) + abs(pu[1] - pv[1]) == 1)
        if host_step:
            continue
        a = host.boundary_position(pu)
        b = host.boundary_position(pv)
        fwd = (b - a) % per
        step = 1 if fwd <= per - fwd else -1
        emit(contour(pu))
        k = a
        while k != b:
            k = (k + step) % per
            emit(contour(ring[k]))
        emit(sv)
    return pts


def winding_number(walk, z0, h: ExpandedGrid) -> int:
    """Signed winding number of the drawn closed walk around the point z0.

    z0 must have quarter-integer coordinates (face centres do) and must not
    lie on the drawn curve.
    """
    zx4, zy4 = (Fraction(c) * 4 for c in z0)
    if zx4.denominator != 1 or zy4.denominator != 1:
        raise DegeneratePointError(
            f"reference point {z0} must have quarter-integer coordinates")
    zx, zy = int(zx4), int(zy4)
    pts = _scaled_polyline(h, list(walk))
    if len(pts) < 2:
        if pts and pts[0] == (zx, zy):
            raise DegeneratePointError(f"{z0} lies on the curve")
        return 0
    p = np.array(pts + [pts[0]], dtype=np.int64)
    px, py = p[:-1, 0], p[:-1, 1]
    qx, qy = p[1:, 0], p[1:, 1]
    cross = (qx - px) * (zy - py) - (zx - px) * (qy - py)
    dot = (zx - px) * (zx - qx) + (zy - py) * (zy - qy)
    on_seg = (cross == 0) & (dot <= 0)
    if on_seg.any():
        raise DegeneratePointError(f"{z0} lies on the drawn curve")
    up = (py <= zy) & (qy > zy) & (cross > 0)
    down = (qy <= zy) & (py > zy) & (cross < 0)
    return int(up.sum()) - int(down.sum())


# -- long edges and the lower bound -------------------------------------------


def find_long_edge(h: ExpandedGrid, t: XSpanningTree, i: int) -> int:
    """A chord of the concentric cycle C_i whose tree path crosses the
    central band of the 5x5 tiling; returns its host edge id.

    Such a chord exists for every spanning tree; failure to find one is a
    counterexample to the checked claim and raises loudly.
    """
    host = h.host
    n = host.n
    if n % 5 != 0:
        raise OutOfRangeError(f"side {n} is not divisible by 5")
    m = n // 5
    if not 1 <= i <= m:
        raise OutOfRangeError(f"layer index {i} outside [1, {m}]")
    if h is not t.grid:
        raise GridCycleError("tree does not belong to the given expanded grid")
    lo, hi = 2 * m + 1, 3 * m
    ring = host.concentric_cycle(i)
    L = len(ring)
    eids = []
    ua = []
    ub = []
    for j in range(L):
        u, v = ring[j], ring[(j + 1) % L]
        eid = host.edge_id(u, v)
        if not t.contains_host_edge(eid):
            eids.append(eid)
            ua.append(host.vertex_index(u))
            ub.append(host.vertex_index(v))
    if not eids:
        raise CounterexampleError(
            f"cycle C_{i} of the {n}-grid has no chords for this tree")
    ua = np.asarray(ua)
    ub = np.asarray(ub)
    xs, ys = h.node_positions()
    row_flag = (ys >= lo) & (ys <= hi)
    col_flag = (xs >= lo) & (xs <= hi)
    eu_y = ys[ua]
    ev_y = ys[ub]
    eu_x = xs[ua]
    ev_x = xs[ub]
    in_row_band = ((eu_y <= m) & (ev_y <= m)) | \
                  ((eu_y >= n - m + 1) & (ev_y >= n - m + 1))
    in_col_band = ((eu_x <= m) & (ev_x <= m)) | \
                  ((eu_x >= n - m + 1) & (ev_x >= n - m + 1))
    hits_row = t.tables.path_hits(ua, ub, ("rows", lo, hi), row_flag)
    hits_col = t.tables.path_hits(ua, ub, ("cols", lo, hi), col_flag)
    long_mask = (in_row_band & hits_row) | (in_col_band & hits_col)
    idx = np.nonzero(long_mask)[0]
    if len(idx) == 0:
        raise CounterexampleError(
            f"no long chord on C_{i} of the {n}-grid: the long-path existence "
            "claim failed on this tree")
    return int(eids[int(idx[0])])


@dataclass
class TileReport:
    tile: int
    sub_lstar: int
    sub_bound: Fraction


@dataclass
class LowerBoundReport:
    """Outcome of the perimeter-sum lower-bound check."""

    n: int
    form: str
    lstar: int
    bound: Fraction
    witnesses: list = field(default_factory=list)
    tiles: list = field(default_factory=list)
    decomposition_lhs: Fraction | None = None
    sub_report: "LowerBoundReport | None" = None

    @property
    def margin(self) -> Fraction:
        return Fraction(self.lstar) - self.bound

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "form": self.form,
            "lstar": self.lstar,
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
            "margin": float(self.margin),
            "witnesses": [{"i": i, "edge_id": e} for i, e in self.witnesses],
        }
        if self.tiles:
            out["tiles"] = [{"tile": tr.tile, "lstar": tr.sub_lstar,
                             "bound_num": tr.sub_bound.numerator,
                             "bound_den": tr.sub_bound.denominator}
                            for tr in self.tiles]
        if self.decomposition_lhs is not None:
            out["decomposition_num"] = self.decomposition_lhs.numerator
            out["decomposition_den"] = self.decomposition_lhs.denominator
        if self.sub_report is not None:
            out["sub"] = self.sub_report.to_json()
        return out


def _log5_floor(n: int) -> int:
    k = 0
    p = 5
    while p <= n:
        k += 1
        p *= 5
    return k


def _is_power_of_5(n: int) -> bool:
    while n % 5 == 0:
        n //= 5
    return n == 1


def lemma_lower_check(h: ExpandedGrid, t: XSpanningTree) -> LowerBoundReport:
    """Check the perimeter-sum lower bound and report the decomposition.

    Power-of-five hosts get the sharp form (2/25) n^2 log5 n together with
    the 25 tile contractions and one long-chord witness per concentric layer
    index; other sizes get the (2/625) n^2 floor(log5 n) form via contraction
    to the largest power-of-five subgrid.  A violated bound raises
    :class:`CounterexampleError`.
    """
    n = h.host.n
    if _is_power_of_5(n):
        k = _log5_floor(n)
        bound = Fraction(2, 25) * n * n * k
        ls = lstar(t)
        report = LowerBoundReport(n, "sharp", ls, bound)
        if n >= 5:
            m = n // 5
            for i in range(1, m + 1):
                report.witnesses.append((i, find_long_edge(h, t, i)))
        if k >= 2:
            sub_bound = Fraction(2, 25) * 5 ** (2 * (k - 1)) * (k - 1)
            for tile_no, tile in enumerate(h.host.tile_5x5(), start=1):
                sg, st = contract(h, t, tile)
                sub_ls = lstar(st)
                report.tiles.append(TileReport(tile_no, sub_ls, sub_bound))
                if sub_ls < sub_bound:
                    raise CounterexampleError(
                        f"tile {tile_no} of the {n}-grid violates the "
                        f"perimeter-sum bound: {sub_ls} < {sub_bound}")
            report.decomposition_lhs = (25 * sub_bound
                                        + 2 * Fraction(5) ** (k - 1) * 5 ** (k - 1))
        if Fraction(ls) < bound:
            raise CounterexampleError(
                f"perimeter-sum bound violated on the {n}-grid: "
                f"{ls} < {bound}")
        return report
    k = _log5_floor(n)
    bound = Fraction(2, 625) * n * n * k
    ls = lstar(t)
    N = 5 ** k
    sg, st = contract(h, t, SubgridRef(1, N, 1, N))
    sub_report = lemma_lower_check(sg, st)
    report = LowerBoundReport(n, "general", ls, bound, sub_report=sub_report)
    if ls < sub_report.lstar:
        raise CounterexampleError(
            f"perimeter monotonicity violated: {ls} < {sub_report.lstar}")
    if Fraction(ls) < bound:
        raise CounterexampleError(
            f"perimeter-sum bound violated on the {n}-grid: {ls} < {bound}")
    return report
