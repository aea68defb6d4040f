"""Exact subroutines consumed by the solver pipeline as black boxes.

Minimum vertex cover, odd cycle transversal, cover-from-transversal, and
saturating matchings, all exact and deterministic.  These replace the cited
branching/compression algorithms of the literature with simpler exact
routines of the same input/output behavior; the pipeline only depends on the
contracts, not on the running-time constants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidTransversal, TooLarge
from .graph import Graph, VertexSet, bipartition, canonical_edge, rank_vertex_set

_BITMASK_LIMIT = 24  # below this, vertex covers go through the MIS bitmask DP


@dataclass(frozen=True)
class CoverResult:
    size: int
    cover: VertexSet


@dataclass(frozen=True)
class OctResult:
    size: int
    transversal: VertexSet


# ---------------------------------------------------------------------------
# Minimum vertex cover
# ---------------------------------------------------------------------------


def _mis_bitmask(g: Graph) -> frozenset[int]:
    """Maximum independent set via memoized branching on the lowest vertex.

    The include branch wins ties, so the result is canonical.
    """
    closed = [1 << v for v in range(g.n)]
    for u, w in g.edges:
        closed[u] |= 1 << w
        closed[w] |= 1 << u
    memo: dict[int, tuple[int, int]] = {0: (0, 0)}

    def best(mask: int) -> tuple[int, int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = (mask & -mask).bit_length() - 1
        inc_size, inc_set = best(mask & ~closed[v])
        exc_size, exc_set = best(mask & ~(1 << v))
        if inc_size + 1 >= exc_size:
            result = (inc_size + 1, inc_set | (1 << v))
        else:
            result = (exc_size, exc_set)
        memo[mask] = result
        return result

    _, chosen = best((1 << g.n) - 1)
    return frozenset(v for v in range(g.n) if chosen >> v & 1)


def _drop_into_cover(adj: dict[int, set[int]], v: int) -> None:
    for w in adj.pop(v, ()):
        adj[w].discard(v)


def _vc_decision(adj: dict[int, set[int]], budget: int) -> set[int] | None:
    """A vertex cover of size <= budget for the working adjacency, or None.

    Reductions: drop isolated vertices, resolve pendants by taking the
    neighbor.  Then branch on a lowest-index maximum-degree vertex v:
    either v or all of N(v) is in the cover.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    cover: set[int] = set()
    while True:
        for v in [u for u, ns in adj.items() if not ns]:
            del adj[v]
        if not adj:
            return cover
        if budget <= 0:
            return None
        pendants = [v for v, ns in adj.items() if len(ns) == 1]
        if not pendants:
            break
        pick = min(adj[min(pendants)])
        cover.add(pick)
        budget -= 1
        _drop_into_cover(adj, pick)
    max_deg = max(len(ns) for ns in adj.values())
    v = min(u for u, ns in adj.items() if len(ns) == max_deg)
    branch = {u: set(ns) for u, ns in adj.items()}
    _drop_into_cover(branch, v)
    sub = _vc_decision(branch, budget - 1)
    if sub is not None:
        return cover | {v} | sub
    neighbors = sorted(adj[v])
    if len(neighbors) > budget:
        return None
    branch = {u: set(ns) for u, ns in adj.items()}
    for w in neighbors:
        _drop_into_cover(branch, w)
    sub = _vc_decision(branch, budget - len(neighbors))
    if sub is not None:
        return cover | set(neighbors) | sub
    return None


def vc_at_most(g: Graph, limit: int) -> CoverResult | None:
    """A minimum vertex cover if ``vc(g) <= limit``, else ``None``."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if bipartition(g) is not None:
        cover = bipartite_min_cover(g)
        return CoverResult(len(cover), cover) if len(cover) <= limit else None
    if g.n <= _BITMASK_LIMIT:
        mis = _mis_bitmask(g)
        cover = frozenset(range(g.n)) - mis
        return CoverResult(len(cover), cover) if len(cover) <= limit else None
    for target in range(limit + 1):
        adj = {v: set(g.adj[v]) for v in range(g.n) if g.adj[v]}
        found = _vc_decision(adj, target)
        if found is not None:
            return CoverResult(len(found), frozenset(found))
    return None


def min_vertex_cover(g: Graph) -> CoverResult:
    """Exact minimum vertex cover with a deterministic canonical result."""
    result = vc_at_most(g, g.n)
    assert result is not None
    return result


# ---------------------------------------------------------------------------
# Bipartite machinery: matchings and Koenig covers
# ---------------------------------------------------------------------------


def _augment(g: Graph, u: int, match: dict[int, int], right_ok, visited: set[int]) -> bool:
    for y in g.adj[u]:
        if not right_ok(y) or y in visited:
            continue
        visited.add(y)
        if y not in match or _augment(g, match[y], match, right_ok, visited):
            match[y] = u
            match[u] = y
            return True
    return False


def max_matching_into(g: Graph, x: VertexSet) -> dict[int, int]:
    """Maximum matching on the edges between ``x`` and ``V \\ x``.

    Returns partner maps in both directions.  Greedy lowest-index pass
    first, then lowest-index augmenting paths, so the result is
    deterministic.
    """
    match: dict[int, int] = {}
    for u in sorted(x):
        free = next((y for y in g.adj[u] if y not in x and y not in match), None)
        if free is not None:
            match[u] = free
            match[free] = u
    for u in sorted(x):
        if u not in match:
            _augment(g, u, match, lambda y: y not in x, set())
    return match


def matching_saturating(g: Graph, x: VertexSet) -> frozenset[tuple[int, int]] | None:
    """A matching saturating ``x`` (edges leaving ``x``), or None if none exists."""
    x = frozenset(x)
    match = max_matching_into(g, x)
    if any(u not in match for u in x):
        return None
    return frozenset(canonical_edge(u, match[u]) for u in x)


def bipartite_min_cover(g: Graph, allowed: VertexSet | None = None) -> frozenset[int]:
    """Minimum vertex cover of a bipartite (sub)graph via Koenig's theorem.

    Restricted to ``allowed`` vertices when given.  Per component, if one
    bipartition side is itself minimum it is preferred (such a cover is an
    independent set, which keeps downstream fan-outs small); otherwise the
    alternating-reachability cover is used.
    """
    nodes = frozenset(range(g.n)) if allowed is None else frozenset(allowed)
    color: dict[int, int] = {}
    comps: list[list[int]] = []
    for start in sorted(nodes):
        if start in color:
            continue
        comp = [start]
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in g.adj[u]:
                if w not in nodes:
                    continue
                if w not in color:
                    color[w] = 1 - color[u]
                    comp.append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    raise InvalidTransversal("graph is not bipartite on the allowed vertices")
        comps.append(comp)

    cover: set[int] = set()
    for comp in comps:
        comp_set = set(comp)
        left = frozenset(v for v in comp if color[v] == 0)
        right = frozenset(v for v in comp if color[v] == 1)
        match: dict[int, int] = {}
        for u in sorted(left):
            if u not in match:
                _augment(g, u, match, lambda y: y in right, set())
        size = sum(1 for u in left if u in match)
        if len(left) == size:
            cover |= left
        elif len(right) == size:
            cover |= right
        else:
            # Koenig set Z: alternating reachability from the free left vertices.
            z: set[int] = {u for u in left if u not in match}
            queue = sorted(z)
            while queue:
                u = queue.pop(0)
                for y in g.adj[u]:
                    if y in comp_set and y in right and y not in z:
                        z.add(y)
                        partner = match.get(y)
                        if partner is not None and partner not in z:
                            z.add(partner)
                            queue.append(partner)
            cover |= (left - z) | (right & z)
    return frozenset(cover)


# ---------------------------------------------------------------------------
# Odd cycle transversal
# ---------------------------------------------------------------------------


def _short_odd_walk(g: Graph, removed: frozenset[int]) -> tuple[int, ...] | None:
    """Vertex set of a short odd closed walk in ``g - removed``.

    Every odd cycle transversal intersects it, so it is a sound branching
    set.  Returns None when the remaining graph is bipartite.
    """
    best: tuple[int, ...] | None = None
    for s in range(g.n):
        if s in removed:
            continue
        depth = {s: 0}
        parent = {s: -1}
        queue = [s]
        while queue:
            u = queue.pop(0)
            for w in g.adj[u]:
                if w in removed:
                    continue
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif depth[w] == depth[u] and u < w:
                    walk: set[int] = set()
                    for v in (u, w):
                        while v != -1:
                            walk.add(v)
                            v = parent[v]
                    candidate = tuple(sorted(walk))
                    if best is None or len(candidate) < len(best):
                        best = candidate
        if best is not None and len(best) <= 3:
            break
    return best


def _oct_decision(
    g: Graph, removed: frozenset[int], budget: int, failed: set[tuple[frozenset[int], int]]
) -> frozenset[int] | None:
    walk = _short_odd_walk(g, removed)
    if walk is None:
        return frozenset()
    if budget == 0 or (removed, budget) in failed:
        return None
    for v in walk:
        rest = _oct_decision(g, removed | {v}, budget - 1, failed)
        if rest is not None:
            return rest | {v}
    failed.add((removed, budget))
    return None


def oct_at_most(g: Graph, limit: int) -> OctResult | None:
    """A minimum odd cycle transversal if ``oct(g) <= limit``, else ``None``."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    failed: set[tuple[frozenset[int], int]] = set()
    for target in range(limit + 1):
        t = _oct_decision(g, frozenset(), target, failed)
        if t is not None:
            return OctResult(len(t), t)
    return None


def min_vc_given_oct(g: Graph, transversal: VertexSet | OctResult) -> CoverResult:
    """Exact minimum vertex cover given an odd cycle transversal.

    Enumerates the 2^|T| in/out splits of the transversal and solves the
    bipartite remainder with Koenig each time.
    """
    t = transversal.transversal if isinstance(transversal, OctResult) else frozenset(transversal)
    rest = frozenset(range(g.n)) - t
    bipartite_min_cover(g, rest)  # raises InvalidTransversal if t is not one
    t_sorted = sorted(t)
    best: frozenset[int] | None = None
    for mask in range(1 << len(t_sorted)):
        t_out = frozenset(v for i, v in enumerate(t_sorted) if mask >> i & 1)
        t_in = t - t_out
        if any(g.has_edge(u, v) for u, v in itertools.combinations(sorted(t_out), 2)):
            continue
        forced: set[int] = set()
        for v in t_out:
            forced.update(w for w in g.adj[v] if w in rest)
        candidate = t_in | forced | bipartite_min_cover(g, rest - forced)
        if best is None or len(candidate) < len(best):
            best = frozenset(candidate)
    assert best is not None  # the all-in split always yields a cover
    return CoverResult(len(best), best)


# ---------------------------------------------------------------------------
# Contraction-to-bipartite brute force (test-support oracle)
# ---------------------------------------------------------------------------


def bc_at_most_bruteforce(g: Graph, limit: int) -> bool:
    """Whether at most ``limit`` contractions can make ``g`` bipartite.

    Partition characterization: bc(G) <= l iff some 2-partition (V_L, V_R)
    has rank(V_L) + rank(V_R) <= l.  Exhaustive; capped at 20 vertices.
    """
    if g.n > 20:
        raise TooLarge(f"bc brute force capped at 20 vertices, got {g.n}")
    if g.n == 0:
        return limit >= 0
    for mask in range(1 << (g.n - 1)):  # vertex n-1 pinned to the right side
        left = [v for v in range(g.n - 1) if mask >> v & 1]
        right = [v for v in range(g.n) if v == g.n - 1 or not mask >> v & 1]
        if rank_vertex_set(g, left) + rank_vertex_set(g, right) <= limit:
            return True
    return False
