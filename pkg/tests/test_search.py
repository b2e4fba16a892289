import math
from collections import Counter

import pytest

from conftest import comb_tree
from gridcycle.construction import build_tree
from gridcycle.errors import TooLargeError
from gridcycle.grid import make_grid
from gridcycle.search import (SearchBudget, count_spanning_trees,
                              enumerate_spanning_trees, local_search,
                              min_total_length, random_spanning_tree)
from gridcycle.tree import SpanningTree


def test_counts():
    assert count_spanning_trees(make_grid(1)) == 1
    assert count_spanning_trees(make_grid(2)) == 4
    assert count_spanning_trees(make_grid(3)) == 192
    assert count_spanning_trees(make_grid(4)) == 100352


def test_enumeration_matches_count_small():
    for n in (1, 2, 3):
        g = make_grid(n)
        seen = set()
        total = enumerate_spanning_trees(g, seen.add)
        assert total == count_spanning_trees(g)
        assert len(seen) == total


def test_enumeration_yields_valid_trees():
    g = make_grid(3)

    def check(ids):
        t = SpanningTree.from_edges(g, ids, (3, 1))
        assert t.max_depth() >= 1

    enumerate_spanning_trees(g, check)


def test_enumeration_declined_above_limit():
    with pytest.raises(TooLargeError):
        enumerate_spanning_trees(make_grid(5), lambda ids: None)
    with pytest.raises(TooLargeError):
        min_total_length(make_grid(5))


def test_min_g2():
    rep = min_total_length(make_grid(2))
    assert rep.min_L == 4
    assert rep.trees_scanned == 4
    assert len(rep.witness_edge_ids) == 3


def test_min_g3_is_16():
    rep = min_total_length(make_grid(3))
    assert rep.min_L == 16
    assert rep.min_P == 16
    t = SpanningTree.from_edges(make_grid(3), rep.witness_edge_ids, (3, 1))
    assert t.total_length().L_total == 16


def test_wilson_deterministic():
    g = make_grid(6)
    a = random_spanning_tree(g, 123).tree_edge_ids().tolist()
    b = random_spanning_tree(g, 123).tree_edge_ids().tolist()
    c = random_spanning_tree(g, 124).tree_edge_ids().tolist()
    assert a == b
    assert a != c


def test_wilson_single_vertex():
    t = random_spanning_tree(make_grid(1), 0)
    assert t.max_depth() == 0


def test_wilson_uniform_g2():
    g = make_grid(2)
    counts = Counter()
    for seed in range(10_000):
        t = random_spanning_tree(g, seed)
        counts[tuple(sorted(t.tree_edge_ids().tolist()))] += 1
    assert len(counts) == 4
    for c in counts.values():
        assert abs(c / 10_000 - 0.25) <= 0.02


def test_wilson_uniform_g3():
    g = make_grid(3)
    samples = 100_000
    counts = Counter()
    for seed in range(samples):
        t = random_spanning_tree(g, seed)
        counts[tuple(sorted(t.tree_edge_ids().tolist()))] += 1
    assert len(counts) == 192
    mean = samples / 192
    sigma = math.sqrt(samples * (1 / 192) * (1 - 1 / 192))
    worst = max(abs(c - mean) for c in counts.values())
    assert worst <= 4 * sigma


def test_local_search_g2_no_improvement():
    g = make_grid(2)
    t0 = SpanningTree.from_edges(g, [0, 1, 2], (2, 1))
    res = local_search(g, t0, SearchBudget(max_trees=100, seed=1))
    assert res.L == 4
    assert res.local_optimum
    assert not res.budget_exhausted


def test_local_search_improves_comb_g8():
    g = make_grid(8)
    t0 = comb_tree(g)
    start = t0.total_length().L_total
    res = local_search(g, t0, SearchBudget(max_trees=400, max_seconds=120,
                                           seed=3))
    assert res.L < start
    rebuilt = SpanningTree.from_edges(g, [int(e) for e in
                                          res.tree.tree_edge_ids()], res.tree.root)
    assert rebuilt.total_length().L_total == res.L


def test_local_search_never_increases_from_constructed_tree():
    g = make_grid(8)
    t0 = build_tree(8)
    start = t0.total_length().L_total
    res = local_search(g, t0, SearchBudget(max_trees=200, max_seconds=60,
                                           seed=7))
    assert res.L <= start


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_trees=0)
