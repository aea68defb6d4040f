"""Directed multigraphs, cycle condensation, and the constrained cut search.

The decision problem solved here: given a digraph D, disjoint vertex sets
``x_left``/``x_right`` and an integer k, is there a partition (V_L, V_R) of
V(D) with no arc from V_R to V_L, rank of the crossing arcs at least k,
``x_left`` inside V_L and ``x_right`` inside V_R?

Rank of an arc set is the rank of the set as its own undirected graph
(endpoints of the arcs, parallel arcs collapsed).  When working on the
condensation, crossing arcs are pulled back through psi and ranked on their
original endpoints; ranking on the merged endpoints would undercount.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .graph import rank_of_edge_list
from .unionfind import UnionFind

Arc = tuple[int, int]


class Digraph:
    """Directed multigraph on vertices ``0 .. n-1``; parallel arcs allowed."""

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "_hash")

    def __init__(self, n: int, arcs: Iterable[Arc]):
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(sorted(arcs))
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for t, h in self.arcs:
            if not (0 <= t < n and 0 <= h < n):
                raise ValueError(f"arc ({t}, {h}) outside [0, {n})")
            if t == h:
                raise ValueError(f"self-loop arc at {t}")
            out_adj[t].append(h)
            in_adj[h].append(t)
        self.out_adj = tuple(tuple(ns) for ns in out_adj)
        self.in_adj = tuple(tuple(ns) for ns in in_adj)
        self._hash = hash((n, self.arcs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


@dataclass(frozen=True)
class DigraphMaxcutInstance:
    d: Digraph
    x_left: frozenset[int]
    x_right: frozenset[int]
    k: int

    def __post_init__(self) -> None:
        if self.x_left & self.x_right:
            raise ValueError("x_left and x_right must be disjoint")


@dataclass(frozen=True)
class Condensation:
    """Strongly-connected-component condensation of a digraph.

    ``psi[v]`` is the dag vertex of ``v``; ``arc_origins[j]`` is the original
    (tail, head) pair of dag arc j (dag arcs keep parallels, drop loops);
    ``order`` is a deterministic topological order of the dag.
    """

    dag: Digraph
    psi: tuple[int, ...]
    order: tuple[int, ...]
    arc_origins: tuple[Arc, ...]
    preimages: tuple[frozenset[int], ...]

    def pullback_rank(self, dag_arc_indexes: Iterable[int]) -> int:
        return rank_of_edge_list(self.arc_origins[j] for j in dag_arc_indexes)


def _tarjan_sccs(d: Digraph) -> list[list[int]]:
    index = [-1] * d.n
    low = [0] * d.n
    on_stack = [False] * d.n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(d.n):
        if index[root] != -1:
            continue
        # Iterative Tarjan: (vertex, next-out-neighbor position) work stack.
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for j in range(pos, len(d.out_adj[v])):
                w = d.out_adj[v][j]
                if index[w] == -1:
                    work[-1] = (v, j + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def condense(d: Digraph) -> Condensation:
    """SCC condensation with provenance and a deterministic topological order.

    Repeated pairwise directed-cycle merging converges to the same object,
    so one-shot SCC condensation is used.  Dag ids ascend by smallest
    original member; the topological order picks the lowest id among ready
    vertices.
    """
    sccs = sorted((sorted(c) for c in _tarjan_sccs(d)), key=lambda c: c[0])
    psi = [0] * d.n
    for new_id, comp in enumerate(sccs):
        for v in comp:
            psi[v] = new_id
    pairs = [((psi[t], psi[h]), (t, h)) for t, h in d.arcs if psi[t] != psi[h]]
    pairs.sort()
    dag = Digraph(len(sccs), [p[0] for p in pairs])
    origins = tuple(p[1] for p in pairs)

    indeg = [0] * dag.n
    for _, h in dag.arcs:
        indeg[h] += 1
    ready = [v for v in range(dag.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in dag.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    assert len(order) == dag.n, "condensation must be acyclic"
    return Condensation(dag, tuple(psi), tuple(order), origins, tuple(frozenset(c) for c in sccs))


@dataclass(frozen=True)
class DigraphVerdict:
    answer: bool
    left: frozenset[int] | None = None
    right: frozenset[int] | None = None
    via_prefix: bool = False
    max_mid_boundary: int = 0
    table_entries: int = 0


def prefix_cut_check(inst: DigraphMaxcutInstance, cond: Condensation) -> DigraphVerdict | None:
    """YES shortcut: some topological suffix already realizes the cut.

    Scans every split of the order into prefix/suffix; if ``x_left`` lies in
    the prefix preimage, ``x_right`` in the suffix preimage, and the pulled
    back crossing arcs have rank >= k, that split is a solution.
    """
    pos = {v: i for i, v in enumerate(cond.order)}
    n = cond.dag.n
    left_pos = [pos[cond.psi[v]] for v in inst.x_left]
    right_pos = [pos[cond.psi[v]] for v in inst.x_right]
    for i in range(n):  # suffix = order[i:], always nonempty
        if any(p >= i for p in left_pos) or any(p < i for p in right_pos):
            continue
        crossing = [j for j, (t, h) in enumerate(cond.dag.arcs) if pos[t] < i <= pos[h]]
        if cond.pullback_rank(crossing) >= inst.k:
            prefix = frozenset(v for v in range(inst.d.n) if pos[cond.psi[v]] < i)
            suffix = frozenset(range(inst.d.n)) - prefix
            return DigraphVerdict(True, prefix, suffix, via_prefix=True)
    return None


class DpTable:
    """Suffix table of the cut DP.

    ``entries[i]`` maps a boundary side-assignment (tuple of 'L'/'R' aligned
    with the sorted boundary ``W^i``) to representative partitions.  A single
    representative per (boundary, rank) is not enough: future arcs attach at
    boundary vertices, and how the current cut's components partition those
    attach points changes how much rank later arcs can add.  Representatives
    are therefore deduplicated by (attach-point component profile, capped
    rank), keeping the best rank per profile.
    """

    def __init__(self) -> None:
        self.entries: dict[int, dict[tuple, dict[tuple, "_Rep"]]] = {}
        self.size = 0

    def put(self, i: int, boundary_key: tuple, profile: tuple, rep: "_Rep") -> None:
        level = self.entries.setdefault(i, {})
        bucket = level.setdefault(boundary_key, {})
        old = bucket.get(profile)
        if old is None or rep.rank > old.rank:
            if old is None:
                self.size += 1
            bucket[profile] = rep


@dataclass(frozen=True)
class _Rep:
    left: frozenset[int]
    right: frozenset[int]
    cut: tuple[Arc, ...]  # original-endpoint pairs of the suffix's crossing arcs
    rank: int


def _attach_profile(rep: _Rep, attach: tuple[int, ...], dag_side: dict[int, str], psi, k: int):
    """Dedup key: how the cut components split the future attach points."""
    if rep.rank >= k:
        return ("DONE",)
    verts: dict[int, int] = {}
    for a, b in rep.cut:
        for w in (a, b):
            if w not in verts:
                verts[w] = len(verts)
    uf = UnionFind(len(verts))
    for a, b in rep.cut:
        uf.union(verts[a], verts[b])
    labels: dict[int, int] = {}
    key: list = []
    for a in attach:
        if dag_side[psi[a]] == "L":
            key.append("L")
        elif a not in verts:
            key.append("free")
        else:
            root = uf.find(verts[a])
            labels.setdefault(root, len(labels))
            key.append(labels[root])
    return tuple(key)


def dp_digraph_maxcut(inst: DigraphMaxcutInstance) -> DigraphVerdict:
    """Decide the constrained directed cut problem, with a witness partition.

    Steps: condense directed cycles, lift the side constraints through psi,
    propagate them along arcs (an arc into a forced-left vertex forces its
    tail left; an arc out of a forced-right vertex forces its head right;
    a vertex forced both ways means NO), try every topological prefix cut,
    then fill the suffix table backwards over the constrained topological
    order.
    """
    cond = condense(inst.d)
    dag_n = cond.dag.n

    in_left: set[int] = set()
    in_right: set[int] = set()
    for v in inst.x_left:
        in_left.add(cond.psi[v])
    for v in inst.x_right:
        in_right.add(cond.psi[v])
    if in_left & in_right:
        return DigraphVerdict(False)

    active = list(range(len(cond.dag.arcs)))
    arcs = cond.dag.arcs
    changed = True
    while changed:
        changed = False
        kept = []
        for j in active:
            t, h = arcs[j]
            if h in in_left:
                if t in in_right:
                    return DigraphVerdict(False)
                if t not in in_left:
                    in_left.add(t)
                changed = True
            elif t in in_right:
                if h in in_left:
                    return DigraphVerdict(False)
                if h not in in_right:
                    in_right.add(h)
                changed = True
            else:
                kept.append(j)
        active = kept
        if in_left & in_right:
            return DigraphVerdict(False)

    lifted = DigraphMaxcutInstance(
        inst.d,
        frozenset(v for v in range(inst.d.n) if cond.psi[v] in in_left),
        frozenset(v for v in range(inst.d.n) if cond.psi[v] in in_right),
        inst.k,
    )

    if inst.k <= 0:
        right = frozenset(v for v in range(inst.d.n) if cond.psi[v] in in_right)
        return DigraphVerdict(True, frozenset(range(inst.d.n)) - right, right)

    # Constrained topological order: forced-left first, forced-right last
    # (possible because propagation made them sources resp. sinks).
    indeg = [0] * dag_n
    out_by_tail: dict[int, list[int]] = {}
    for j in active:
        t, h = arcs[j]
        indeg[h] += 1
        out_by_tail.setdefault(t, []).append(j)
    group = [1] * dag_n
    for v in in_left:
        group[v] = 0
    for v in in_right:
        group[v] = 2
    ready = [(group[v], v) for v in range(dag_n) if indeg[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        _, v = heapq.heappop(ready)
        order.append(v)
        for j in out_by_tail.get(v, ()):
            h = arcs[j][1]
            indeg[h] -= 1
            if indeg[h] == 0:
                heapq.heappush(ready, (group[h], h))
    assert len(order) == dag_n

    restricted = Condensation(
        Digraph(dag_n, [arcs[j] for j in active]),
        cond.psi,
        tuple(order),
        tuple(cond.arc_origins[j] for j in active),
        cond.preimages,
    )
    hit = prefix_cut_check(lifted, restricted)
    if hit is not None:
        return hit

    pos = {v: i for i, v in enumerate(order)}
    # Boundary W^i: suffix dag vertices with an active in-arc from the prefix.
    boundary: list[set[int]] = [set() for _ in range(dag_n + 1)]
    attach: list[set[int]] = [set() for _ in range(dag_n + 1)]
    for j in active:
        t, h = arcs[j]
        origin_head = cond.arc_origins[j][1]
        for i in range(pos[t] + 1, pos[h] + 1):
            boundary[i].add(h)
            attach[i].add(origin_head)
    boundary_sorted = [tuple(sorted(b)) for b in boundary]
    attach_sorted = [tuple(sorted(a)) for a in attach]

    max_mid_boundary = 0
    left_max = max((pos[v] for v in in_left), default=-1)
    right_min = min((pos[v] for v in in_right), default=dag_n)
    for i in range(dag_n + 1):
        if left_max < i and right_min >= i:
            max_mid_boundary = max(max_mid_boundary, len(boundary_sorted[i]))

    table = DpTable()
    table.put(dag_n, (), (), _Rep(frozenset(), frozenset(), (), 0))

    for i in range(dag_n - 1, -1, -1):
        u = order[i]
        w_here = boundary_sorted[i]
        w_next = boundary_sorted[i + 1]
        next_index = {w: idx for idx, w in enumerate(w_next)}
        out_arcs = out_by_tail.get(u, ())
        if u in in_left:
            sides = ("L",)
        elif u in in_right:
            sides = ("R",)
        else:
            sides = ("L", "R")
        level_next = table.entries.get(i + 1, {})
        for bkey in sorted(level_next):
            side_of = dict(zip(w_next, bkey))
            for rep in sorted(level_next[bkey].values(), key=lambda r: (-r.rank, sorted(r.right))):
                for s in sides:
                    if s == "R" and any(side_of[arcs[j][1]] == "L" for j in out_arcs):
                        continue
                    if s == "L":
                        extra = tuple(
                            cond.arc_origins[j] for j in out_arcs if side_of[arcs[j][1]] == "R"
                        )
                        new_rep = _Rep(
                            rep.left | {u},
                            rep.right,
                            rep.cut + extra,
                            rank_of_edge_list(rep.cut + extra) if extra else rep.rank,
                        )
                    else:
                        new_rep = _Rep(rep.left, rep.right | {u}, rep.cut, rep.rank)
                    dag_side = {w: (("L" if s == "L" else "R") if w == u else side_of[w]) for w in w_here}
                    new_bkey = tuple(dag_side[w] for w in w_here)
                    profile = _attach_profile(new_rep, attach_sorted[i], dag_side, cond.psi, inst.k)
                    table.put(i, new_bkey, profile, new_rep)

    final = table.entries.get(0, {}).get((), {})
    best = None
    for rep in final.values():
        if rep.rank >= inst.k and (best is None or sorted(rep.right) < sorted(best.right)):
            best = rep
    if best is None:
        return DigraphVerdict(
            False, max_mid_boundary=max_mid_boundary, table_entries=table.size
        )
    left = frozenset(v for v in range(inst.d.n) if cond.psi[v] in best.left)
    right = frozenset(v for v in range(inst.d.n) if cond.psi[v] in best.right)
    return DigraphVerdict(
        True, left, right, max_mid_boundary=max_mid_boundary, table_entries=table.size
    )


def dump_condensation_text(cond: Condensation) -> str:
    """Debug dump of the condensation arcs as ``a <u> <v>`` lines (1-based)."""
    lines = [f"c condensation: {cond.dag.n} vertices, {len(cond.dag.arcs)} arcs"]
    lines.extend(f"a {t + 1} {h + 1}" for t, h in cond.dag.arcs)
    return "\n".join(lines) + "\n"
