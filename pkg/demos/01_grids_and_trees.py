# %% [markdown]
# Grids, spanning trees and fundamental-cycle statistics
# ------------------------------------------------------
# A walk through the core objects: the n-grid with its canonical edge
# indexing, spanning trees built from edge-id sets, and the per-chord
# cycle statistics (lengths, bounding-box perimeters, exact averages).

# %%
from gridcycle import make_grid, tree_from_edges, fundamental_cycle

g = make_grid(5)
print(g, "-", g.num_vertices, "vertices,", g.num_edges, "edges")

# Horizontal edges come first in the canonical indexing, row by row.
print("edge 0:", g.edge(0))
print("first vertical edge:", g.edge(g.n * (g.n - 1)))

# %%
# The boundary ring and the concentric rings inside it.
print("peripheral vertices:", sum(g.is_peripheral(v) for v in g.vertices()))
print("ring 2:", g.concentric_cycle(2))

# %%
# A "comb" spanning tree: the bottom row plus every full column.
n = g.n
comb_ids = [g.edge_id((x, 1), (x + 1, 1)) for x in range(1, n)]
for x in range(1, n + 1):
    comb_ids += [g.edge_id((x, y), (x, y + 1)) for y in range(1, n)]
comb = tree_from_edges(g, comb_ids, (n, 1))

# Chords high up in the comb close long cycles through the bottom row:
eid = g.edge_id((2, 5), (3, 5))
print("cycle of the top chord:", fundamental_cycle(comb, eid))

# %%
# Total and average cycle length; the average is an exact fraction.
stats = comb.total_length()
print("chords:", stats.count)
print("L =", stats.L_total, " perimeter sum =", stats.P_total)
print("average =", stats.average, "=", float(stats.average))

# Combs are bad trees: their average grows linearly with n.
for n in (4, 8, 16, 32):
    g = make_grid(n)
    ids = [g.edge_id((x, 1), (x + 1, 1)) for x in range(1, n)]
    for x in range(1, n + 1):
        ids += [g.edge_id((x, y), (x, y + 1)) for y in range(1, n)]
    avg = tree_from_edges(g, ids, (n, 1)).total_length().average
    print(f"n={n:3d} comb average = {float(avg):8.3f}")
