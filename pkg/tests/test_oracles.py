"""Graph oracles against hand graphs and independent brute-force baselines."""
import math
from itertools import combinations

import numpy as np
import pytest

import chasebench as cb


def _stream(nv, directed, edges, src=0, dst=None):
    return cb.GraphStream(nv, directed, src, nv - 1 if dst is None else dst, 0, tuple(edges))


def test_distance_hand_cases():
    path = _stream(4, False, [(0, 1), (1, 2), (2, 3)])
    assert cb.oracle_distance(path) == 3
    assert cb.oracle_distance(_stream(3, False, [(0, 1)])) == math.inf
    assert cb.oracle_distance(_stream(2, False, [(0, 1)], src=1, dst=1)) == 0
    # a shortcut edge wins over the long way around
    shortcut = _stream(5, False, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert cb.oracle_distance(shortcut) == 1


def test_distance_respects_direction():
    fwd = _stream(3, True, [(0, 1), (1, 2)])
    assert cb.oracle_distance(fwd) == 2
    back = _stream(3, True, [(1, 0), (2, 1)])
    assert cb.oracle_distance(back) == math.inf


def test_reachable_hand_cases():
    assert cb.oracle_reachable(_stream(3, True, [(0, 1), (1, 2)])) == 1
    assert cb.oracle_reachable(_stream(3, True, [(1, 0), (1, 2)], src=1, dst=2)) == 1
    assert cb.oracle_reachable(_stream(3, True, [(2, 1), (1, 0)])) == 0
    assert cb.oracle_reachable(_stream(2, True, [], src=1, dst=1)) == 1


def test_two_color_on_even_structures():
    cycle4 = _stream(4, False, [(0, 1), (1, 2), (2, 3), (3, 0)])
    colors = cb.two_color(cycle4)
    assert colors.tolist() == [0, 1, 0, 1]
    with pytest.raises(ValueError):
        cb.two_color(_stream(3, False, [(0, 1), (1, 2), (2, 0)]))  # odd cycle


def test_perfect_matching_hand_cases():
    assert cb.oracle_perfect_matching(_stream(4, False, [(0, 1), (2, 3)])) == 1
    assert cb.oracle_perfect_matching(_stream(4, False, [(0, 1), (0, 2), (0, 3)])) == 0
    assert cb.oracle_perfect_matching(_stream(3, False, [(0, 1), (1, 2)])) == 0  # odd
    assert cb.oracle_perfect_matching(_stream(2, False, [])) == 0
    with pytest.raises(ValueError):
        cb.oracle_perfect_matching(_stream(2, True, [(0, 1)]))


def _brute_distance(nv, edges, directed, src, dst):
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for a, b in edges:
                for u, v in ((a, b),) if directed else ((a, b), (b, a)):
                    if u == x and v not in dist:
                        dist[v] = dist[x] + 1
                        nxt.append(v)
        frontier = nxt
    return dist.get(dst, math.inf)


def _brute_perfect_matching(nv, edges):
    if nv % 2:
        return 0
    edge_set = {frozenset(e) for e in edges}

    def extend(uncovered):
        if not uncovered:
            return True
        x = min(uncovered)
        for y in uncovered:
            if y != x and frozenset((x, y)) in edge_set:
                if extend(uncovered - {x, y}):
                    return True
        return False

    return int(extend(frozenset(range(nv))))


def test_distance_matches_brute_force_on_random_graphs():
    rng = cb.derive_rng(70)
    for _ in range(60):
        nv = int(rng.integers(2, 9))
        directed = bool(rng.integers(2))
        pairs = [(a, b) for a in range(nv) for b in range(nv) if a != b]
        take = rng.random(len(pairs)) < 0.25
        edges = tuple(p for p, keep in zip(pairs, take) if keep)
        src, dst = int(rng.integers(nv)), int(rng.integers(nv))
        s = cb.GraphStream(nv, directed, src, dst, 0, edges)
        want = _brute_distance(nv, edges, directed, src, dst)
        assert cb.oracle_distance(s) == want
        assert cb.oracle_reachable(s) == int(want != math.inf)


def test_perfect_matching_matches_brute_force_on_random_bipartite_graphs():
    rng = cb.derive_rng(71)
    for _ in range(60):
        half = int(rng.integers(1, 5))
        nv = 2 * half
        lefts = range(half)
        rights = range(half, nv)
        pairs = [(a, b) for a in lefts for b in rights]
        take = rng.random(len(pairs)) < 0.5
        edges = tuple(p for p, keep in zip(pairs, take) if keep)
        s = cb.GraphStream(nv, False, 0, nv - 1, 0, edges)
        assert cb.oracle_perfect_matching(s) == _brute_perfect_matching(nv, edges)


def test_perfect_matching_exhaustive_tiny_bipartite():
    # all bipartite graphs on 2+2 vertices
    pairs = [(0, 2), (0, 3), (1, 2), (1, 3)]
    for mask in range(16):
        edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        s = cb.GraphStream(4, False, 0, 3, 0, edges)
        assert cb.oracle_perfect_matching(s) == _brute_perfect_matching(4, edges)
