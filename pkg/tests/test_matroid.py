import random

import pytest

from conftest import comb_tree, rows_plus_column_tree
from gridcycle.construction import build_tree
from gridcycle.errors import EmptyMatroidError
from gridcycle.grid import make_grid
from gridcycle.matroid import (EchelonMatrix, column_cycle_check,
                               echelon_representation, gf2_rank, sparsity)
from gridcycle.search import random_spanning_tree
from gridcycle.tree import SpanningTree


def test_shape_and_identity_block_g2():
    g = make_grid(2)
    t = SpanningTree.from_edges(g, [0, 1, 2], (2, 1))
    m = echelon_representation(g, t)
    assert (m.n_rows, m.n_cols) == (3, 4)
    chord = 3
    assert len(m.column_support(chord)) == 3
    for row, eid in enumerate(sorted([0, 1, 2])):
        assert m.column_support(eid) == [row]


def test_t3_supports():
    g = make_grid(3)
    t = rows_plus_column_tree(g, 2)
    m = echelon_representation(g, t)
    assert (m.n_rows, m.n_cols) == (8, 12)
    for chord in t.chord_ids():
        assert len(m.column_support(int(chord))) == 3
    assert m.nnz == 8 + 4 * 3


def test_sparsity_formula_examples():
    g2 = make_grid(2)
    t2 = SpanningTree.from_edges(g2, [0, 1, 2], (2, 1))
    assert sparsity(g2, t2) == 6
    g3 = make_grid(3)
    assert sparsity(g3, rows_plus_column_tree(g3, 2)) == 8 + 16 - 4
    g4 = make_grid(4)
    t4 = build_tree(4)
    # 15 + L - 9 with the measured L(T_4) = 42
    assert sparsity(g4, t4) == 48
    assert sparsity(g4, t4) == echelon_representation(g4, t4).nnz


def test_sparsity_formula_equals_direct_count_random():
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randrange(2, 11)
        g = make_grid(n)
        t = random_spanning_tree(g, rng.randrange(2 ** 31))
        m = echelon_representation(g, t)
        assert m.nnz == sparsity(g, t)


def test_full_row_rank():
    for n in (2, 3, 5, 8):
        g = make_grid(n)
        t = random_spanning_tree(g, n)
        m = echelon_representation(g, t)
        assert gf2_rank(m) == n * n - 1


def test_chord_columns_are_cycles():
    g = make_grid(4)
    t = comb_tree(g)
    m = echelon_representation(g, t)
    for chord in t.chord_ids():
        assert column_cycle_check(g, m, t, int(chord))


def test_empty_matroid():
    g = make_grid(1)
    t = SpanningTree.from_edges(g, [], (1, 1))
    with pytest.raises(EmptyMatroidError):
        echelon_representation(g, t)
    with pytest.raises(EmptyMatroidError):
        sparsity(g, t)


def test_export_roundtrip(tmp_path):
    g = make_grid(3)
    t = rows_plus_column_tree(g, 2)
    m = echelon_representation(g, t)
    path = tmp_path / "m.txt"
    m.to_file(path)
    head = path.read_text().splitlines()[0]
    assert head == "8 12 20"
    m2 = EchelonMatrix.from_file(path)
    assert m2 == m
