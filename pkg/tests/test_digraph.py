"""Directed side: condensation, prefix cuts, and the cut DP vs its oracle."""

import random

import pytest

from contractvc.digraph import (
    Digraph,
    DigraphMaxcutInstance,
    condense,
    dp_digraph_maxcut,
    dump_condensation_text,
    prefix_cut_check,
)
from contractvc.graph import rank_of_edge_list
from contractvc.oracles import oracle_digraph_maxcut


def random_instance(rng, max_n=5, max_arcs=8, max_k=4, max_pins=2):
    n = rng.randint(1, max_n)
    arcs = []
    for _ in range(rng.randint(0, max_arcs)):
        t, h = rng.randrange(n), rng.randrange(n)
        if t != h:
            arcs.append((t, h))
    pool = list(range(n))
    rng.shuffle(pool)
    nl = rng.randint(0, min(max_pins, n))
    nr = rng.randint(0, min(max_pins - nl, n - nl))
    return DigraphMaxcutInstance(
        Digraph(n, arcs),
        frozenset(pool[:nl]),
        frozenset(pool[nl : nl + nr]),
        rng.randint(0, max_k),
    )


class TestDigraph:
    def test_parallel_arcs_kept(self):
        d = Digraph(2, [(0, 1), (0, 1), (1, 0)])
        assert len(d.arcs) == 3

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            Digraph(2, [(0, 0)])

    def test_disjoint_pins_required(self):
        with pytest.raises(ValueError):
            DigraphMaxcutInstance(Digraph(2, []), frozenset({0}), frozenset({0}), 1)


class TestCondense:
    def test_two_cycle_with_tail(self):
        cond = condense(Digraph(3, [(0, 1), (1, 0), (1, 2)]))
        assert cond.dag.n == 2
        assert cond.psi == (0, 0, 1)
        assert cond.dag.arcs == ((0, 1),)
        assert cond.arc_origins == ((1, 2),)

    def test_dag_input_is_isomorphic(self):
        d = Digraph(3, [(0, 1), (1, 2), (0, 2)])
        cond = condense(d)
        assert cond.dag.n == 3
        assert cond.psi == (0, 1, 2)
        assert cond.order == (0, 1, 2)

    def test_directed_triangle_collapses(self):
        cond = condense(Digraph(3, [(0, 1), (1, 2), (2, 0)]))
        assert cond.dag.n == 1
        assert cond.dag.arcs == ()

    def test_order_is_topological(self):
        rng = random.Random(0)
        for _ in range(100):
            inst = random_instance(rng)
            cond = condense(inst.d)
            pos = {v: i for i, v in enumerate(cond.order)}
            for t, h in cond.dag.arcs:
                assert pos[t] < pos[h]

    def test_preimages_are_sccs(self):
        cond = condense(Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)]))
        assert set(cond.preimages) == {frozenset({0, 1}), frozenset({2, 3})}

    def test_dump_format(self):
        cond = condense(Digraph(2, [(0, 1)]))
        assert dump_condensation_text(cond).splitlines()[1] == "a 1 2"


class TestPrefixCut:
    def test_single_arc_yes(self):
        inst = DigraphMaxcutInstance(Digraph(2, [(0, 1)]), frozenset(), frozenset(), 1)
        hit = prefix_cut_check(inst, condense(inst.d))
        assert hit is not None and hit.right == frozenset({1})

    def test_two_cycle_continue(self):
        inst = DigraphMaxcutInstance(Digraph(2, [(0, 1), (1, 0)]), frozenset(), frozenset(), 1)
        assert prefix_cut_check(inst, condense(inst.d)) is None

    def test_path_needs_rank_two_continue(self):
        inst = DigraphMaxcutInstance(Digraph(3, [(0, 1), (1, 2)]), frozenset(), frozenset(), 2)
        assert prefix_cut_check(inst, condense(inst.d)) is None


class TestDp:
    def test_single_vertex_k0(self):
        v = dp_digraph_maxcut(DigraphMaxcutInstance(Digraph(1, []), frozenset(), frozenset(), 0))
        assert v.answer and v.left == frozenset({0}) and v.right == frozenset()

    def test_two_cycle_no(self):
        v = dp_digraph_maxcut(
            DigraphMaxcutInstance(Digraph(2, [(0, 1), (1, 0)]), frozenset(), frozenset(), 1)
        )
        assert not v.answer

    def test_path_with_pins(self):
        v = dp_digraph_maxcut(
            DigraphMaxcutInstance(
                Digraph(3, [(0, 1), (1, 2)]), frozenset({0}), frozenset({2}), 1
            )
        )
        assert v.answer

    def test_propagation_clash_is_no(self):
        # 0 pinned right with an arc to 1 pinned left forces 1 both ways.
        v = dp_digraph_maxcut(
            DigraphMaxcutInstance(Digraph(2, [(0, 1)]), frozenset({1}), frozenset({0}), 0)
        )
        assert not v.answer

    def test_matches_oracle_randomized(self):
        rng = random.Random(42)
        for _ in range(1500):
            inst = random_instance(rng)
            got = dp_digraph_maxcut(inst)
            assert got.answer == oracle_digraph_maxcut(inst), inst
            if got.answer:
                assert not inst.x_left & got.right
                assert inst.x_right <= got.right
                assert not any(
                    t in got.right and h in got.left for t, h in inst.d.arcs
                )
                crossing = [
                    a for a in inst.d.arcs if a[0] in got.left and a[1] in got.right
                ]
                assert rank_of_edge_list(crossing) >= inst.k

    def test_sccs_never_split_in_valid_partitions(self):
        # Any partition with no right-to-left arc keeps each SCC on one side.
        rng = random.Random(17)
        for _ in range(200):
            inst = random_instance(rng, max_pins=0)
            cond = condense(inst.d)
            n = inst.d.n
            for mask in range(1 << n):
                right = frozenset(v for v in range(n) if mask >> v & 1)
                if any(t in right and h not in right for t, h in inst.d.arcs):
                    continue
                for pre in cond.preimages:
                    assert pre <= right or not (pre & right)

    def test_mid_boundaries_stay_below_k(self):
        # With no pins, every split is eligible for the prefix shortcut, so a
        # completed table implies all boundaries stayed below k.
        rng = random.Random(23)
        for _ in range(400):
            inst = random_instance(rng, max_pins=0)
            if inst.k == 0:
                continue
            verdict = dp_digraph_maxcut(inst)
            if not verdict.answer or not verdict.via_prefix:
                assert verdict.max_mid_boundary < inst.k
