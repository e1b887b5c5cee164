from __future__ import annotations

import math

import pytest

from oracles import all_pruefer_trees, automorphism_count
from treespec.enumeration import (
    TreeStream,
    enumerate_free_trees,
    enumerate_with_subdivided_edge,
    free_level_sequences,
    tree_from_levels,
)
from treespec.tree import canonical_code, longest_subdivided_edge_length, path_tree, star_tree


def _codes(trees):
    return [canonical_code(t) for t in trees]


def test_small_cases():
    assert len(list(enumerate_free_trees(1))) == 1
    four = _codes(enumerate_free_trees(4))
    assert sorted(four) == sorted(_codes([path_tree(4), star_tree(3)]))


@pytest.mark.parametrize("n", range(1, 8))
def test_matches_literal_pruefer_enumeration(n):
    classes = {canonical_code(t) for t in all_pruefer_trees(n)}
    assert set(_codes(enumerate_free_trees(n))) == classes


@pytest.mark.parametrize("n", range(1, 13))
def test_orbit_sum_equals_cayley(n):
    # each class T accounts for n!/|Aut T| labeled trees; there are n^(n-2) in all
    trees = list(enumerate_free_trees(n))
    assert len(set(_codes(trees))) == len(trees)
    assert sum(math.factorial(n) // automorphism_count(t) for t in trees) == n ** (n - 2)


def test_ten_vertices():
    assert len(list(enumerate_free_trees(10))) == 106


def test_no_duplicates_up_to_14():
    for n in range(1, 15):
        codes = _codes(enumerate_free_trees(n))
        assert len(codes) == len(set(codes)), n


def test_generation_order_is_decreasing_lex():
    for n in range(2, 12):
        seqs = list(free_level_sequences(n))
        assert seqs == sorted(seqs, reverse=True)
        assert seqs[0] == list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))


def test_tree_from_levels():
    assert tree_from_levels([0, 1, 2, 1]).edges == ((1, 2), (1, 4), (2, 3))


def test_filtered_examples():
    (p7,) = enumerate_with_subdivided_edge(7, 7)
    assert canonical_code(p7) == canonical_code(path_tree(7))
    eight = list(enumerate_with_subdivided_edge(8, 7))
    # independent scan of all 23 trees: a degree-2 run of length >= 5
    hand = [t for t in enumerate_free_trees(8) if _max_deg2_run(t) >= 5]
    assert len(list(enumerate_free_trees(8))) == 23
    assert len(eight) == len(hand) == 1
    assert canonical_code(eight[0]) == canonical_code(path_tree(8))
    assert list(enumerate_with_subdivided_edge(6, 7)) == []


def _max_deg2_run(t):
    best = 0
    for v in t.vertices():
        if t.degree(v) != 2:
            continue
        # walk both ways along degree-2 vertices
        run, seen, stack = 0, {v}, [v]
        while stack:
            x = stack.pop()
            run += 1
            for u in t.neighbors(x):
                if u not in seen and t.degree(u) == 2:
                    seen.add(u)
                    stack.append(u)
        best = max(best, run)
    return best


def test_filtered_equals_unfiltered_intersection():
    for n in range(1, 13):
        for k in (3, 5, 7):
            filtered = _codes(enumerate_with_subdivided_edge(n, k))
            expected = [canonical_code(t) for t in enumerate_free_trees(n) if longest_subdivided_edge_length(t) >= k]
            assert filtered == expected


def test_resume_and_shards():
    full = list(TreeStream(11).indexed())
    stream = TreeStream(11, start=100)
    resumed = list(stream.indexed())
    assert resumed == full[100:]
    assert stream.cursor == len(full)
    parts = [list(TreeStream(11, shard=j, shards=3).indexed()) for j in range(3)]
    assert sorted(x for p in parts for x in p) == sorted(full)


@pytest.mark.parametrize("kwargs", [dict(n=0), dict(n=21), dict(n=5, min_subdivided=1), dict(n=5, shard=2, shards=2)])
def test_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        TreeStream(**kwargs)
