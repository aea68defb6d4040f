"""Simple undirected graphs with edge contraction and rank computations.

Vertices are dense integers ``0 .. n-1``. Graphs are immutable: every
operation returns a new value, so instances are safe to share, hash and
memoize on.

Rank conventions (used throughout the package):

* ``rank_graph(g)``     -- ``|V| - #components``, i.e. the number of edges of
  a maximum spanning forest.  One edge contraction lowers it by exactly 1.
* ``rank_vertex_set``   -- rank of the induced subgraph ``G[S]``.
* ``rank_edge_set``     -- rank of the *induced* graph ``G[V(F)]``, not of the
  graph ``(V(F), F)``.  This follows the definition "the rank of a set F of
  edges is the rank of V(F)" and is easy to misread; when you want the rank
  of an edge list as a standalone graph, use :func:`rank_of_edge_list`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    LoopEdge,
    ParseError,
    UnknownEdge,
    VertexOutOfRange,
)
from .unionfind import UnionFind

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]
VertexSet = frozenset[int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``.

    ``edges`` is the canonically sorted edge tuple; ``adj[v]`` is the sorted
    neighbor tuple of ``v``.  Equality and hashing are structural.
    """

    __slots__ = ("n", "edges", "edge_set", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge]):
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(canonical_edge(u, v) for u, v in edges))
        self.edge_set: EdgeSet = frozenset(self.edges)
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(ns)) for ns in neighbors)
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edge_set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class ContractionMap:
    """Surjection from the vertices of a source graph onto a contracted graph.

    ``forward[old]`` is the new vertex id; ``preimages[new]`` is the frozenset
    of old vertices merged into ``new``.  Each preimage induces a connected
    subgraph of the source graph.
    """

    __slots__ = ("forward", "preimages")

    def __init__(self, forward: Sequence[int], preimages: Sequence[frozenset[int]]):
        self.forward: tuple[int, ...] = tuple(forward)
        self.preimages: tuple[frozenset[int], ...] = tuple(preimages)

    def image(self, vertices: Iterable[int]) -> VertexSet:
        return frozenset(self.forward[v] for v in vertices)

    def preimage(self, new_vertices: Iterable[int]) -> VertexSet:
        out: set[int] = set()
        for v in new_vertices:
            out |= self.preimages[v]
        return frozenset(out)

    def sole_preimage(self, new_vertex: int) -> int:
        """Old vertex of a singleton preimage (raises if the witness set is big)."""
        (old,) = self.preimages[new_vertex]
        return old

    @classmethod
    def identity(cls, n: int) -> "ContractionMap":
        return cls(range(n), [frozenset((v,)) for v in range(n)])

    def __repr__(self) -> str:
        return f"ContractionMap({len(self.forward)} -> {len(self.preimages)})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a simple graph; raises on loops, duplicates, bad ids."""
    seen: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = canonical_edge(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} supplied twice")
        seen.add(e)
    return Graph(n, seen)


def _check_vertex_subset(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        if not (0 <= v < g.n):
            raise VertexOutOfRange(f"vertex {v} outside [0, {g.n})")
    return s


def connected_components(g: Graph) -> list[VertexSet]:
    """Components as vertex sets, ordered by smallest member."""
    uf = UnionFind(g.n)
    for u, v in g.edges:
        uf.union(u, v)
    groups: dict[int, set[int]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), set()).add(v)
    return [frozenset(c) for c in sorted(groups.values(), key=min)]


def rank_graph(g: Graph) -> int:
    """Number of vertices minus number of connected components."""
    uf = UnionFind(g.n)
    for u, v in g.edges:
        uf.union(u, v)
    return g.n - uf.components


def rank_vertex_set(g: Graph, s: Iterable[int]) -> int:
    """Rank of the induced subgraph ``G[S]``."""
    s = _check_vertex_subset(g, s)
    index = {v: i for i, v in enumerate(sorted(s))}
    uf = UnionFind(len(index))
    for u, v in g.edges:
        if u in index and v in index:
            uf.union(index[u], index[v])
    return len(index) - uf.components


def rank_edge_set(g: Graph, f: Iterable[Edge]) -> int:
    """Rank of the induced graph ``G[V(F)]`` (NOT of the edge set itself).

    Per the definition of the rank of an edge set: take the endpoints of the
    edges in ``f`` and measure the rank of the subgraph of ``g`` they induce.
    Induced edges that are not in ``f`` count too.
    """
    endpoints: set[int] = set()
    for u, v in f:
        e = canonical_edge(u, v)
        if e not in g.edge_set:
            raise UnknownEdge(f"edge {e} not in graph")
        endpoints.update(e)
    return rank_vertex_set(g, endpoints)


def rank_of_edge_list(pairs: Iterable[tuple[int, int]]) -> int:
    """Rank of an edge list as its own graph: ``#endpoints - #components``.

    Unlike :func:`rank_edge_set` this ignores any host graph; parallel pairs
    collapse.  It is the rank notion under which cut-edge sets and cut-arc
    sets of the directed reformulation agree.
    """
    verts: dict[int, int] = {}
    dedup: set[Edge] = set()
    for u, v in pairs:
        dedup.add(canonical_edge(u, v))
        for w in (u, v):
            if w not in verts:
                verts[w] = len(verts)
    uf = UnionFind(len(verts))
    for u, v in dedup:
        uf.union(verts[u], verts[v])
    return len(verts) - uf.components


def spanning_forest(g: Graph, s: Iterable[int]) -> tuple[Edge, ...]:
    """Edges of a spanning forest of ``G[S]``, canonically sorted.

    Lowest-index BFS inside each component, so the result is deterministic;
    ``len(result) == rank_vertex_set(g, s)``.
    """
    s = _check_vertex_subset(g, s)
    visited: set[int] = set()
    forest: list[Edge] = []
    for start in sorted(s):
        if start in visited:
            continue
        visited.add(start)
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in g.adj[u]:
                if w in s and w not in visited:
                    visited.add(w)
                    forest.append(canonical_edge(u, w))
                    queue.append(w)
    return tuple(sorted(forest))


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    s = _check_vertex_subset(g, s)
    return all(u in s or v in s for u, v in g.edges)


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    s = _check_vertex_subset(g, s)
    return not any(u in s and v in s for u, v in g.edges)


def neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    """Open neighborhood ``N(S) = N[S] \\ S``."""
    s = _check_vertex_subset(g, s)
    out: set[int] = set()
    for v in s:
        out.update(g.adj[v])
    return frozenset(out - s)


def contract_edges(g: Graph, f: Iterable[Edge]) -> tuple[Graph, ContractionMap]:
    """Contract every edge of ``f`` simultaneously.

    Each connected component of ``(V(f), f)`` collapses to one fresh vertex;
    loops and parallel edges are dropped.  New ids are dense, assigned by
    ascending smallest original member, so the result is deterministic.
    """
    f = frozenset(canonical_edge(u, v) for u, v in f)
    for e in f:
        if e not in g.edge_set:
            raise UnknownEdge(f"edge {e} not in graph")
    uf = UnionFind(g.n)
    for u, v in f:
        uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), []).append(v)
    ordered = sorted(groups.values(), key=min)
    forward = [0] * g.n
    for new_id, members in enumerate(ordered):
        for v in members:
            forward[v] = new_id
    new_edges = {
        canonical_edge(forward[u], forward[v]) for u, v in g.edges if forward[u] != forward[v]
    }
    cmap = ContractionMap(forward, [frozenset(m) for m in ordered])
    return Graph(len(ordered), new_edges), cmap


def bipartition(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """A 2-coloring ``(side0, side1)`` if ``g`` is bipartite, else ``None``.

    Each component's side0 is the side containing its smallest vertex.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop(0)
            for w in g.adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return (
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


# ---------------------------------------------------------------------------
# Text format: "p <n> <m>" header, then m lines "e <u> <v>" with 1-based ids.
# Blank lines and "c ..." comments are ignored on input; output is canonical
# (sorted edges), so write -> read -> write round-trips bit-exactly.
# ---------------------------------------------------------------------------


def write_graph_text(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph_text(text: str) -> Graph:
    n = None
    declared_m = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'p <n> <m>'")
            n, declared_m = int(parts[1]), int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ParseError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise ParseError("missing problem line")
    if declared_m != len(edges):
        raise ParseError(f"header declares {declared_m} edges, found {len(edges)}")
    return build_graph(n, edges)


def write_edges_text(edges: Iterable[Edge]) -> str:
    """Edge list in the same 1-based 'e <u> <v>' record format (no header)."""
    canon = sorted(canonical_edge(u, v) for u, v in edges)
    return "".join(f"e {u + 1} {v + 1}\n" for u, v in canon)


def read_edges_text(text: str) -> EdgeSet:
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "e" or len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
        u, v = int(parts[1]) - 1, int(parts[2]) - 1
        if u == v:
            raise ParseError(f"line {lineno}: loop edge")
        edges.add(canonical_edge(u, v))
    return frozenset(edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph with dense ids; returns it plus the old-id lookup."""
    keep = sorted(_check_vertex_subset(g, vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(keep), edges), tuple(keep)
