"""Instance factories: the hardness constructions plus random generators.

The two reduction chains are built exactly as specified by their source
constructions and are used as structured test inputs whose YES/NO
equivalences are themselves test assertions.  Vertex names follow the
bracket notation flattened to strings (e.g. ``"U[2,1,3]"``) in a side
table; numeric ids are used internally.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NotThreeByQ
from .exact import min_vertex_cover
from .graph import Graph, VertexSet, build_graph, canonical_edge
from .instances import CvcInstance, EifInstance, MisInstance

_VERIFY_COVER_LIMIT = 18


@dataclass(frozen=True)
class GeneratedCvc:
    instance: CvcInstance
    names: dict[str, int]
    claimed_cover: VertexSet  # the construction's minimum vertex cover


@dataclass(frozen=True)
class GeneratedEif:
    instance: EifInstance
    names: dict[str, int]


def gen_np_hard(mis: MisInstance, ell: int) -> GeneratedCvc:
    """Reduction from (3 x q) multicolored independent set.

    Adds, per class i and column j, a hub W[i,j] with pendant P[i,j] and a
    selector triple U[i,j,1..3] matched to the class vertices, plus a global
    apex V[#] with pendant P[#] adjacent to every class and selector vertex.
    Budgets: d = (l+3)q, k = d + (l-1)q.  The set V + W + apex is a minimum
    vertex cover of the output.
    """
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if not mis.is_three_by_q():
        raise NotThreeByQ("every color class must be a 3-vertex clique")
    q = mis.q
    names: dict[str, int] = {}
    for i, cls in enumerate(mis.classes, start=1):
        for z, v in enumerate(sorted(cls), start=1):
            names[f"V[{i},_,{z}]"] = v
    counter = mis.g.n

    def fresh(name: str) -> int:
        nonlocal counter
        names[name] = counter
        counter += 1
        return counter - 1

    edges: set = {canonical_edge(u, v) for u, v in mis.g.edges}
    w_ids: list[int] = []
    for i in range(1, q + 1):
        for j in range(1, ell + 1):
            w = fresh(f"W[{i},{j},_]")
            w_ids.append(w)
            p = fresh(f"P[{i},{j},_]")
            edges.add(canonical_edge(w, p))
            for z in range(1, 4):
                u = fresh(f"U[{i},{j},{z}]")
                edges.add(canonical_edge(w, u))
                edges.add(canonical_edge(names[f"V[{i},_,{z}]"], u))
    apex = fresh("V[#]")
    apex_pendant = fresh("P[#]")
    edges.add(canonical_edge(apex, apex_pendant))
    for i in range(1, q + 1):
        for z in range(1, 4):
            edges.add(canonical_edge(apex, names[f"V[{i},_,{z}]"]))
        for j in range(1, ell + 1):
            for z in range(1, 4):
                edges.add(canonical_edge(apex, names[f"U[{i},{j},{z}]"]))
    g = build_graph(counter, edges)
    d = (ell + 3) * q
    k = d + (ell - 1) * q
    cover = frozenset(range(mis.g.n)) | frozenset(w_ids) | {apex}
    return GeneratedCvc(CvcInstance(g, k, d), names, cover)


def gen_eif_from_mis(mis: MisInstance) -> GeneratedEif:
    """Reduction to the edge-induced-forest question.

    Adds a universal vertex and q+1 pendants on it; asks for 2q+1 edges.
    """
    for cls in mis.classes:
        members = sorted(cls)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if not mis.g.has_edge(members[i], members[j]):
                    raise ValueError("color classes must be cliques")
    names: dict[str, int] = {}
    alpha = mis.g.n
    names["alpha"] = alpha
    edges = {canonical_edge(u, v) for u, v in mis.g.edges}
    edges |= {canonical_edge(alpha, v) for v in range(mis.g.n)}
    for i in range(mis.q + 1):
        pendant = mis.g.n + 1 + i
        names[f"x[{i + 1}]"] = pendant
        edges.add(canonical_edge(alpha, pendant))
    g = build_graph(mis.g.n + 2 + mis.q, edges)
    return GeneratedEif(EifInstance(g, 2 * mis.q + 1), names)


def gen_cvc_from_eif(eif: EifInstance) -> GeneratedCvc:
    """Reduction from the edge-induced-forest question.

    Per original vertex u: a pair z_u - p_u.  Per original edge uv: a
    seven-vertex gadget (y^a, y^b, y^c, w1, w2, p1, p2) wired with eight
    edges, two of which tie y^c to z_u and z_v.  Budgets k = 4l, d = 3l; the
    output is bipartite and Z + W + Y^a is a minimum vertex cover.
    """
    g0, l = eif.g, eif.l
    names: dict[str, int] = {}
    counter = 0

    def fresh(name: str) -> int:
        nonlocal counter
        names[name] = counter
        counter += 1
        return counter - 1

    edges: set = set()
    z_of: dict[int, int] = {}
    cover: set[int] = set()
    for u in range(g0.n):
        z = fresh(f"z[{u}]")
        p = fresh(f"p[{u}]")
        z_of[u] = z
        cover.add(z)
        edges.add(canonical_edge(z, p))
    for u, v in g0.edges:
        ya = fresh(f"ya[{u},{v}]")
        yb = fresh(f"yb[{u},{v}]")
        yc = fresh(f"yc[{u},{v}]")
        w1 = fresh(f"w1[{u},{v}]")
        w2 = fresh(f"w2[{u},{v}]")
        p1 = fresh(f"p1[{u},{v}]")
        p2 = fresh(f"p2[{u},{v}]")
        cover |= {ya, w1, w2}
        edges |= {
            canonical_edge(z_of[u], yc),
            canonical_edge(z_of[v], yc),
            canonical_edge(ya, yb),
            canonical_edge(ya, yc),
            canonical_edge(yb, w1),
            canonical_edge(yb, w2),
            canonical_edge(w1, p1),
            canonical_edge(w2, p2),
        }
    g = build_graph(counter, edges)
    return GeneratedCvc(CvcInstance(g, 4 * l, 3 * l), names, frozenset(cover))


# ---------------------------------------------------------------------------
# Random generators (seeded, reproducible)
# ---------------------------------------------------------------------------


def random_bipartite_with_cover(
    n_x: int, n_y: int, edge_prob: float, seed: int
) -> tuple[Graph, VertexSet]:
    """Random bipartite graph whose left side is a minimum vertex cover.

    Vertices 0..n_x-1 form the cover side; a perfect matching into it pins
    its minimality (cover size >= matching size, and the side covers
    everything).  Verified against the exact solver at small sizes.
    """
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must be in [0, 1]")
    if n_y < n_x:
        raise ValueError("need n_y >= n_x for the saturating matching")
    rng = random.Random(seed)
    edges = {(i, n_x + i) for i in range(n_x)}
    for i in range(n_x):
        for j in range(n_y):
            if rng.random() < edge_prob:
                edges.add((i, n_x + j))
    g = build_graph(n_x + n_y, edges)
    x = frozenset(range(n_x))
    if g.n <= _VERIFY_COVER_LIMIT:
        assert min_vertex_cover(g).size == n_x
    return g, x


def random_mis_instance(q: int, seed: int, cross_prob: float = 0.3) -> MisInstance:
    """Random (3 x q) instance: q triangle classes plus random cross edges."""
    rng = random.Random(seed)
    n = 3 * q
    edges: set = set()
    classes = []
    for i in range(q):
        members = (3 * i, 3 * i + 1, 3 * i + 2)
        classes.append(frozenset(members))
        edges |= {
            canonical_edge(members[0], members[1]),
            canonical_edge(members[0], members[2]),
            canonical_edge(members[1], members[2]),
        }
    for i in range(q):
        for j in range(i + 1, q):
            for u in range(3 * i, 3 * i + 3):
                for v in range(3 * j, 3 * j + 3):
                    if rng.random() < cross_prob:
                        edges.add(canonical_edge(u, v))
    return MisInstance(build_graph(n, edges), tuple(classes))


def random_connected_graph(n: int, seed: int, extra_edge_prob: float = 0.25) -> Graph:
    """Random connected graph: a random spanning tree plus extra edges."""
    if n <= 0:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    edges: set = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        edges.add(canonical_edge(order[i], order[rng.randrange(i)]))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_edge_prob:
                edges.add((u, v))
    return build_graph(n, edges)
