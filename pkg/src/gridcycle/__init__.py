"""Spanning-tree fundamental-cycle toolkit for square grid graphs.

Core capabilities: the n-grid model with canonical edge indexing, spanning
trees with fast fundamental-cycle statistics, a recursive tree construction
whose average cycle length grows logarithmically, expanded grids with
subgrid contraction and winding-number checks for the matching lower bound,
exhaustive/sampled search oracles, and an echelon-form GF(2) matroid
representation.
"""

from .construction import (build_tree, crossing_chords, crossing_edge_count,
                           validate_construction, write_svg)
from .errors import (ConstructionInvalidError, CounterexampleError,
                     GridCycleError, NotASpanningTreeError, NotDrawableError)
from .expanded import (Duplicate, ExpandedGrid, XSpanningTree, contract,
                       find_long_edge, lemma_lower_check, lstar, plain,
                       reroute_walk, winding_number, xperimeter)
from .grid import Edge, GridGraph, SubgridRef, make_grid
from .matroid import EchelonMatrix, echelon_representation, gf2_rank, sparsity
from .search import (SearchBudget, count_spanning_trees,
                     enumerate_spanning_trees, local_search, min_total_length,
                     random_spanning_tree)
from .tree import (CycleBox, CycleStats, SpanningTree, cycle_box,
                   fundamental_cycle, total_length, tree_from_edges)

__version__ = "0.1.0"

__all__ = [
    "CycleBox", "CycleStats", "ConstructionInvalidError",
    "CounterexampleError", "Duplicate", "EchelonMatrix", "Edge",
    "ExpandedGrid", "GridCycleError", "GridGraph", "NotASpanningTreeError",
    "NotDrawableError", "SearchBudget", "SpanningTree", "SubgridRef",
    "XSpanningTree", "build_tree", "contract", "count_spanning_trees",
    "crossing_chords", "crossing_edge_count", "cycle_box",
    "echelon_representation", "enumerate_spanning_trees", "find_long_edge",
    "fundamental_cycle", "gf2_rank", "lemma_lower_check", "local_search",
    "lstar", "make_grid", "min_total_length", "plain", "random_spanning_tree",
    "reroute_walk", "sparsity", "total_length", "tree_from_edges",
    "validate_construction", "winding_number", "write_svg", "xperimeter",
]
