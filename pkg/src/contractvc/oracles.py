"""Exhaustive deciders for every problem along the reduction chain.

These are the ground truth for all property tests and witness checks.  No
pruning that sacrifices exhaustiveness; hard size caps raise
:class:`~contractvc.errors.TooLarge` instead of running forever.

The contraction oracle enumerates witness structures rather than raw edge
subsets: the contracted graph ``G/F`` depends only on the connected
partition that ``F`` induces, and a partition with ``n - #blocks = f``
merges is reachable with exactly ``f`` forest edges.  That makes a full
(k, d) sweep per graph cheap.  Edge-set witnesses are reconstructed on
demand, smallest size first and in lexicographic order, so oracle output is
a stable regression fixture.
"""

from __future__ import annotations

import functools
import itertools
import os
from math import comb

from .digraph import DigraphMaxcutInstance
from .errors import NotMinimumCover, TooLarge
from .exact import min_vertex_cover
from .graph import (
    EdgeSet,
    Graph,
    VertexSet,
    canonical_edge,
    connected_components,
    contract_edges,
    is_independent_set,
    is_vertex_cover,
    rank_edge_set,
    rank_graph,
    rank_of_edge_list,
    rank_vertex_set,
    spanning_forest,
)
from .instances import (
    AnnotatedInstance,
    CvcInstance,
    EifInstance,
    MaxcutInstance,
    MisInstance,
    SolveStats,
    Verdict,
)

_DEFAULT_VERTEX_CAP = 10
_WITNESS_SCAN_CAP = 2_000_000


def oracle_vertex_cap() -> int:
    """Size cap for the contraction oracle; CONTRACTVC_ORACLE_CAP overrides."""
    raw = os.environ.get("CONTRACTVC_ORACLE_CAP")
    if raw is None:
        return _DEFAULT_VERTEX_CAP
    return int(raw)


# ---------------------------------------------------------------------------
# Contraction(vc)
# ---------------------------------------------------------------------------


def _connected_supersets(g: Graph, seed: int, allowed: frozenset[int]):
    """All connected vertex sets containing ``seed`` within ``allowed``."""
    results: list[frozenset[int]] = []

    def extend(current: frozenset[int], frontier: list[int], banned: frozenset[int]) -> None:
        results.append(current)
        for idx, v in enumerate(frontier):
            new_banned = banned | frozenset(frontier[:idx])
            grown = current | {v}
            new_frontier = [w for w in frontier[idx + 1 :]] + [
                w
                for w in g.adj[v]
                if w in allowed and w not in grown and w not in new_banned and w not in frontier
            ]
            extend(grown, new_frontier, new_banned)

    extend(frozenset((seed,)), [w for w in g.adj[seed] if w in allowed], frozenset())
    return results


def _connected_partitions(g: Graph):
    """Yield partitions of V(g) into blocks that are connected in g."""

    def recurse(remaining: frozenset[int], blocks: list[frozenset[int]]):
        if not remaining:
            yield list(blocks)
            return
        seed = min(remaining)
        for block in _connected_supersets(g, seed, remaining):
            blocks.append(block)
            yield from recurse(remaining - block, blocks)
            blocks.pop()

    yield from recurse(frozenset(range(g.n)), [])


@functools.lru_cache(maxsize=4096)
def contraction_tables(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-merge-count minimum covers after contraction.

    Returns ``(exact, cumulative)`` where ``exact[f]`` is the minimum
    ``vc(G/F)`` over edge sets inducing exactly ``f`` merges and
    ``cumulative[f]`` the minimum over at most ``f`` merges.
    """
    rank = rank_graph(g)
    exact = [None] * (rank + 1)
    for blocks in _connected_partitions(g):
        f = g.n - len(blocks)
        index: dict[int, int] = {}
        for bid, block in enumerate(blocks):
            for v in block:
                index[v] = bid
        quotient_edges = {
            canonical_edge(index[u], index[v]) for u, v in g.edges if index[u] != index[v]
        }
        vc_q = min_vertex_cover(Graph(len(blocks), quotient_edges)).size
        if exact[f] is None or vc_q < exact[f]:
            exact[f] = vc_q
    cumulative = []
    best = exact[0]
    for f in range(rank + 1):
        assert exact[f] is not None  # every merge count up to rank is realizable
        best = min(best, exact[f])
        cumulative.append(best)
    return tuple(exact), tuple(cumulative)


def _lex_least_witness(g: Graph, size: int, target: int) -> EdgeSet | None:
    if comb(g.m, size) > _WITNESS_SCAN_CAP:
        return None
    for combo in itertools.combinations(g.edges, size):
        contracted, _ = contract_edges(g, combo)
        if min_vertex_cover(contracted).size <= target:
            return frozenset(combo)
    return None


def oracle_contraction_vc(inst: CvcInstance, want_witness: bool = True) -> Verdict:
    """Exhaustive decision for the contraction-vs-cover question.

    YES verdicts carry the lexicographically least witness (smallest size
    first, then lexicographic edge order) when the scan is affordable, and
    otherwise a deterministic spanning-forest witness of an optimal merge
    partition.
    """
    g, k, d = inst.g, inst.k, inst.d
    cap = oracle_vertex_cap()
    if g.n > cap:
        raise TooLarge(f"contraction oracle capped at {cap} vertices, got {g.n}")
    stats = SolveStats(branch="oracle")
    if d == 0:
        return Verdict(True, frozenset(), stats)
    vc = min_vertex_cover(g).size
    stats.vc_before = vc
    budget = min(k, rank_graph(g))
    _, cumulative = contraction_tables(g)
    if cumulative[budget] > vc - d:
        return Verdict(False, None, stats)
    f_star = next(f for f in range(budget + 1) if cumulative[f] <= vc - d)
    if not want_witness:
        return Verdict(True, None, stats)
    witness = _lex_least_witness(g, f_star, vc - d)
    if witness is None:
        # Scan too large: fall back to the first optimal merge partition.
        for blocks in _connected_partitions(g):
            if g.n - len(blocks) != f_star:
                continue
            forest = []
            for block in blocks:
                forest.extend(spanning_forest(g, block))
            contracted, _ = contract_edges(g, forest)
            if min_vertex_cover(contracted).size <= vc - d:
                witness = frozenset(forest)
                break
    assert witness is not None
    stats.vc_after = min_vertex_cover(contract_edges(g, witness)[0]).size
    return Verdict(True, witness, stats)


# ---------------------------------------------------------------------------
# Solution pairs (the edge-set / vertex-pair reformulation)
# ---------------------------------------------------------------------------


def _subsets(items: list[int]):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def oracle_solution_pair(g: Graph, x: VertexSet, f_size: int, d: int) -> bool:
    """Does a solution pair for exactly ``f_size`` contractions exist?

    Exhaustive over pairs (X_s, Y_s) with X_s inside the minimum cover x and
    Y_s outside: checks that (x \\ X_s) | Y_s is a vertex cover with rank at
    least ``f_size`` and |Y_s| - |X_s| <= f_size - d.
    """
    if g.n > 20:
        raise TooLarge(f"solution-pair oracle capped at 20 vertices, got {g.n}")
    if len(connected_components(g)) != 1:
        raise ValueError("solution-pair oracle requires a connected graph")
    if f_size >= rank_graph(g):
        raise ValueError("f_size must be smaller than the graph rank")
    x = frozenset(x)
    if not is_vertex_cover(g, x) or len(x) != min_vertex_cover(g).size:
        raise NotMinimumCover("x is not a minimum vertex cover")
    y = sorted(frozenset(range(g.n)) - x)
    for x_s in _subsets(sorted(x)):
        for y_s in _subsets(y):
            if len(y_s) - len(x_s) > f_size - d:
                continue
            enlarged = (x - frozenset(x_s)) | frozenset(y_s)
            if not is_vertex_cover(g, enlarged):
                continue
            if rank_vertex_set(g, enlarged) >= f_size:
                return True
    return False


def oracle_annotated(inst: AnnotatedInstance) -> bool:
    """Exhaustive decision of the annotated pair problem (rank target = k)."""
    g, k, d = inst.base.g, inst.base.k, inst.base.d
    if g.n > 20:
        raise TooLarge(f"annotated oracle capped at 20 vertices, got {g.n}")
    y = sorted(inst.y)
    for x_s in _subsets(sorted(inst.x)):
        x_s = frozenset(x_s)
        if x_s & inst.x_left or not inst.x_right <= x_s:
            continue
        for y_s in _subsets(y):
            if len(y_s) - len(x_s) > k - d:
                continue
            enlarged = (inst.x - x_s) | frozenset(y_s)
            if not is_vertex_cover(g, enlarged):
                continue
            if rank_vertex_set(g, enlarged) >= k:
                return True
    return False


# ---------------------------------------------------------------------------
# Constrained MaxCut, undirected and directed
# ---------------------------------------------------------------------------


def oracle_constrained_maxcut(inst: MaxcutInstance) -> bool:
    """Exhaustive over all 2^|V| partitions of the constrained cut problem."""
    g, k, d = inst.base.g, inst.base.k, inst.base.d
    if g.n > 20:
        raise TooLarge(f"maxcut oracle capped at 20 vertices, got {g.n}")
    x, y = inst.x, inst.y
    verts = list(range(g.n))
    for mask in range(1 << g.n):
        right = frozenset(v for v in verts if mask >> v & 1)
        left = frozenset(verts) - right
        if not (inst.x_left <= left and inst.x_right <= right):
            continue
        ok = True
        for u, v in g.edges:
            if (u in left and u in y and v in right and v in x) or (
                v in left and v in y and u in right and u in x
            ):
                ok = False
                break
        if not ok:
            continue
        if len(right & y) - len(right & x) > k - d:
            continue
        cut = [
            (u, v)
            for u, v in g.edges
            if (u in left and u in x and v in right and v in y)
            or (v in left and v in x and u in right and u in y)
        ]
        rank = rank_edge_set(g, cut) if cut else 0
        if rank >= k:
            return True
    return False


def oracle_digraph_maxcut(inst: DigraphMaxcutInstance) -> bool:
    """Exhaustive over all 2^|V| partitions of the directed cut problem.

    Crossing-arc rank is the rank of the arc set as its own graph (endpoints
    of the crossing arcs, parallels collapsed).
    """
    d = inst.d
    if d.n > 20:
        raise TooLarge(f"digraph oracle capped at 20 vertices, got {d.n}")
    verts = list(range(d.n))
    for mask in range(1 << d.n):
        right = frozenset(v for v in verts if mask >> v & 1)
        left = frozenset(verts) - right
        if not (inst.x_left <= left and inst.x_right <= right):
            continue
        if any(t in right and h in left for t, h in d.arcs):
            continue
        crossing = [(t, h) for t, h in d.arcs if t in left and h in right]
        if rank_of_edge_list(crossing) >= inst.k:
            return True
    return False


# ---------------------------------------------------------------------------
# Source problems of the hardness constructions
# ---------------------------------------------------------------------------


def oracle_edge_induced_forest(inst: EifInstance) -> bool:
    """Is there a set of >= l edges whose endpoints induce a forest?

    Subsets of such a set qualify too, so testing exactly-l subsets is
    exhaustive.
    """
    g, l = inst.g, inst.l
    if g.m > 20:
        raise TooLarge(f"edge-induced-forest oracle capped at 20 edges, got {g.m}")
    if l == 0:
        return True
    if l > g.m:
        return False
    for combo in itertools.combinations(g.edges, l):
        endpoints = frozenset(v for e in combo for v in e)
        induced = [e for e in g.edges if e[0] in endpoints and e[1] in endpoints]
        if len(induced) == rank_vertex_set(g, endpoints):
            return True
    return False


def oracle_multicolored_is(inst: MisInstance) -> bool:
    """One vertex per color class forming an independent set, exhaustively."""
    if inst.g.n > 15:
        raise TooLarge(f"multicolored IS oracle capped at 15 vertices, got {inst.g.n}")
    for pick in itertools.product(*(sorted(cls) for cls in inst.classes)):
        if is_independent_set(inst.g, pick):
            return True
    return False
