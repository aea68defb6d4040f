"""Exact subroutines: covers, transversals, matchings, contraction-to-bipartite."""

import itertools
import random

import pytest

from contractvc import build_graph
from contractvc.errors import InvalidTransversal, TooLarge
from contractvc.exact import (
    bc_at_most_bruteforce,
    bipartite_min_cover,
    matching_saturating,
    min_vc_given_oct,
    min_vertex_cover,
    oct_at_most,
    vc_at_most,
)
from contractvc.generators import random_connected_graph
from contractvc.graph import is_vertex_cover, neighborhood

from conftest import all_graphs, brute_min_vc_size, connected_graphs, sample_connected


class TestVertexCover:
    def test_vc_at_most_k3(self, k3):
        assert vc_at_most(k3, 2).size == 2
        assert vc_at_most(k3, 1) is None

    def test_vc_at_most_c5(self, c5):
        result = vc_at_most(c5, 3)
        assert result.size == 3
        assert is_vertex_cover(c5, result.cover)

    def test_min_cover_examples(self, p3, star4):
        assert min_vertex_cover(p3).cover == frozenset({1})
        assert min_vertex_cover(star4).cover == frozenset({0})
        k4 = build_graph(4, list(itertools.combinations(range(4), 2)))
        assert min_vertex_cover(k4).size == 3

    def test_matches_exhaustive_minimum(self):
        for n in range(1, 5):
            for g in all_graphs(n):
                assert min_vertex_cover(g).size == brute_min_vc_size(g)
        rng = random.Random(2)
        for _ in range(40):
            g = random_connected_graph(rng.randint(5, 8), rng.randrange(1 << 30))
            assert min_vertex_cover(g).size == brute_min_vc_size(g)

    def test_deterministic(self, c5):
        assert min_vertex_cover(c5) == min_vertex_cover(c5)

    def test_budget_branching_path_on_larger_graph(self):
        # Above the bitmask cutoff the branching search must agree.
        g = random_connected_graph(30, 77, extra_edge_prob=0.05)
        small = min_vertex_cover(g)
        assert is_vertex_cover(g, small.cover)
        bounded = vc_at_most(g, small.size)
        assert bounded is not None and bounded.size == small.size


class TestHallProperties:
    def test_independent_cover_subsets_satisfy_hall(self):
        # For every minimum cover X and every independent X' inside it:
        # |X'| <= |N(X')|.  (Without independence the swap argument breaks,
        # e.g. the two-vertex cover of a triangle; see the decisions ledger.)
        from contractvc.graph import is_independent_set

        for n in range(2, 6):
            for g in connected_graphs(n):
                x = min_vertex_cover(g).cover
                for r in range(1, len(x) + 1):
                    for sub in itertools.combinations(sorted(x), r):
                        if is_independent_set(g, sub):
                            assert len(sub) <= len(neighborhood(g, sub))

    @staticmethod
    def _saturates(g, x, chosen, remaining):
        # Tiny general-matching search: can `remaining` cover vertices be
        # saturated by edges disjoint from `chosen`?
        if not remaining:
            return True
        v = min(remaining)
        for w in g.adj[v]:
            if w in chosen or v in chosen:
                continue
            if TestHallProperties._saturates(
                g, x, chosen | {v, w}, remaining - {v, w}
            ):
                return True
        return False

    def test_some_matching_saturates_every_min_cover(self):
        # General matchings (cover-internal edges allowed) always saturate a
        # minimum cover; the restricted cover-to-outside form used by the
        # pipeline additionally requires the cover to be independent.
        for n in range(2, 6):
            for g in connected_graphs(n):
                x = min_vertex_cover(g).cover
                assert self._saturates(g, x, frozenset(), frozenset(x))

    def test_independent_min_covers_saturated_by_pipeline_matcher(self):
        from contractvc.graph import is_independent_set

        rng = random.Random(4)
        checked = 0
        for n in range(2, 6):
            for g in connected_graphs(n):
                x = min_vertex_cover(g).cover
                if is_independent_set(g, x):
                    assert matching_saturating(g, x) is not None
                    checked += 1
        for _ in range(50):
            g = random_connected_graph(rng.randint(6, 8), rng.randrange(1 << 30))
            x = min_vertex_cover(g).cover
            if is_independent_set(g, x):
                assert matching_saturating(g, x) is not None
                checked += 1
        assert checked > 100


class TestMatching:
    def test_p3_center(self, p3):
        assert matching_saturating(p3, frozenset({1})) == frozenset({(0, 1)})

    def test_c4_both(self, c4):
        assert matching_saturating(c4, frozenset({0, 2})) == frozenset({(0, 1), (2, 3)})

    def test_isolated_member_fails(self):
        g = build_graph(3, [(0, 1)])
        assert matching_saturating(g, frozenset({0, 2})) is None

    def test_shared_neighbor_fails(self):
        g = build_graph(3, [(0, 2), (1, 2)])
        assert matching_saturating(g, frozenset({0, 1})) is None


class TestOct:
    def test_examples(self, c4, k3, c5):
        assert oct_at_most(c4, 0).size == 0
        assert oct_at_most(k3, 1).size == 1
        assert oct_at_most(c5, 3).size == 1
        k4 = build_graph(4, list(itertools.combinations(range(4), 2)))
        assert oct_at_most(k4, 1) is None
        assert oct_at_most(k4, 2).size == 2

    def test_transversal_leaves_bipartite(self):
        rng = random.Random(6)
        for _ in range(30):
            g = random_connected_graph(rng.randint(4, 8), rng.randrange(1 << 30), 0.4)
            result = oct_at_most(g, g.n)
            rest = frozenset(range(g.n)) - result.transversal
            bipartite_min_cover(g, rest)  # raises if not bipartite

    def test_oct_matches_subset_brute(self):
        rng = random.Random(8)
        for _ in range(30):
            g = random_connected_graph(rng.randint(4, 7), rng.randrange(1 << 30), 0.5)
            best = None
            for r in range(g.n + 1):
                for combo in itertools.combinations(range(g.n), r):
                    rest = frozenset(range(g.n)) - set(combo)
                    try:
                        bipartite_min_cover(g, rest)
                        best = r
                        break
                    except InvalidTransversal:
                        continue
                if best is not None:
                    break
            assert oct_at_most(g, g.n).size == best

    def test_oct_below_contraction_number(self):
        # oct(G) <= bc(G): exhaustive on <= 5 vertices, random 6-7.
        for n in range(1, 6):
            for g in all_graphs(n):
                oct_size = oct_at_most(g, n).size
                bc = next(l for l in range(n + 1) if bc_at_most_bruteforce(g, l))
                assert oct_size <= bc
        rng = random.Random(10)
        for _ in range(25):
            g = random_connected_graph(rng.randint(6, 7), rng.randrange(1 << 30), 0.4)
            oct_size = oct_at_most(g, g.n).size
            bc = next(l for l in range(g.n + 1) if bc_at_most_bruteforce(g, l))
            assert oct_size <= bc


class TestMinVcGivenOct:
    def test_bipartite_with_empty_transversal(self, c4):
        assert min_vc_given_oct(c4, frozenset()).size == 2

    def test_k3(self, k3):
        assert min_vc_given_oct(k3, frozenset({0})).size == 2

    def test_c5(self, c5):
        assert min_vc_given_oct(c5, frozenset({0})).size == 3

    def test_invalid_transversal(self, k3):
        with pytest.raises(InvalidTransversal):
            min_vc_given_oct(k3, frozenset())

    def test_agrees_with_min_cover(self):
        rng = random.Random(12)
        for _ in range(40):
            g = random_connected_graph(rng.randint(4, 8), rng.randrange(1 << 30), 0.4)
            t = oct_at_most(g, g.n)
            assert min_vc_given_oct(g, t).size == min_vertex_cover(g).size


class TestBcBruteforce:
    def test_examples(self, c4, k3):
        assert bc_at_most_bruteforce(c4, 0)
        assert not bc_at_most_bruteforce(k3, 0)
        assert bc_at_most_bruteforce(k3, 1)
        k4 = build_graph(4, list(itertools.combinations(range(4), 2)))
        assert not bc_at_most_bruteforce(k4, 1)
        assert bc_at_most_bruteforce(k4, 2)

    def test_cap(self):
        with pytest.raises(TooLarge):
            bc_at_most_bruteforce(build_graph(21, []), 0)
