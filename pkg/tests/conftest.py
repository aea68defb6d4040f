"""Shared fixtures and small-graph enumeration helpers."""

from __future__ import annotations

import functools
import itertools

import pytest

from contractvc import build_graph, connected_components
from contractvc.graph import Graph


@functools.lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """Every labeled simple graph on n vertices."""
    all_edges = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(all_edges)):
        edges = [e for i, e in enumerate(all_edges) if mask >> i & 1]
        out.append(build_graph(n, edges))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """Every connected labeled simple graph on n vertices."""
    return tuple(g for g in all_graphs(n) if len(connected_components(g)) == 1)


def brute_min_vc_size(g: Graph) -> int:
    """Exhaustive-subset minimum vertex cover size (independent oracle)."""
    verts = list(range(g.n))
    for r in range(g.n + 1):
        for combo in itertools.combinations(verts, r):
            s = set(combo)
            if all(u in s or v in s for u, v in g.edges):
                return r
    raise AssertionError("unreachable")


def tiny_isomorphic(a: Graph, b: Graph) -> bool:
    """Brute-force isomorphism check for graphs with at most 8 vertices."""
    if a.n != b.n or a.m != b.m:
        return False
    assert a.n <= 8
    target = b.edge_set
    for perm in itertools.permutations(range(a.n)):
        image = {tuple(sorted((perm[u], perm[v]))) for u, v in a.edges}
        if image == target:
            return True
    return False


@pytest.fixture
def k3():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def p3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def c5():
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


@pytest.fixture
def star4():
    return build_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def fig2():
    """The worked 9-vertex example: covers x1..x4 = 0..3, others y1..y5 = 4..8.

    Matching edges x_i y_i, a bridge x4-y3, and the triangle of witness edges
    x1-y5, x2-y5, x2-y4.  vc = 4 with {x1..x4} minimum.
    """
    return build_graph(
        9, [(0, 4), (1, 5), (2, 6), (3, 7), (3, 6), (0, 8), (1, 8), (1, 7)]
    )


def sample_connected(rng, n: int, count: int):
    pool = connected_graphs(n)
    if count >= len(pool):
        return list(pool)
    return rng.sample(pool, count)
