"""Problem-instance shapes shared by the oracles, the pipeline and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import WitnessVerificationFailed
from .exact import min_vertex_cover
from .graph import EdgeSet, Graph, VertexSet, contract_edges, is_vertex_cover


@dataclass(frozen=True)
class CvcInstance:
    """Contraction-vs-cover question: can <= k contractions lower vc by >= d?"""

    g: Graph
    k: int
    d: int

    def __post_init__(self) -> None:
        if self.k < 0 or self.d < 0:
            raise ValueError("k and d must be non-negative")


@dataclass
class SolveStats:
    """Counters attached to a verdict; timings are informational only."""

    branch: str | None = None
    vc_before: int | None = None
    vc_after: int | None = None
    annotated_instances: int = 0
    fanout_instances: int = 0
    dp_runs: int = 0
    prefix_hits: int = 0
    fallback_runs: int = 0
    nodes_explored: int = 0
    elapsed: float = 0.0

    def merge(self, other: "SolveStats") -> None:
        self.annotated_instances += other.annotated_instances
        self.fanout_instances += other.fanout_instances
        self.dp_runs += other.dp_runs
        self.prefix_hits += other.prefix_hits
        self.fallback_runs += other.fallback_runs
        self.nodes_explored += other.nodes_explored

    def as_dict(self) -> dict:
        return {
            "branch": self.branch,
            "annotated_instances": self.annotated_instances,
            "fanout_instances": self.fanout_instances,
            "dp_runs": self.dp_runs,
            "prefix_hits": self.prefix_hits,
            "fallback_runs": self.fallback_runs,
            "nodes_explored": self.nodes_explored,
        }


@dataclass(frozen=True)
class Verdict:
    """YES/NO answer with an optional witness edge set.

    Construction sites verify witnesses before building a YES verdict, so a
    present witness always satisfies ``|F| <= k`` and
    ``vc(G/F) <= vc(G) - d`` for its instance.
    """

    answer: bool
    witness: EdgeSet | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def is_yes(self) -> bool:
        return self.answer


def witness_is_valid(g: Graph, k: int, d: int, witness: EdgeSet) -> bool:
    """Exact recomputation check: |F| <= k and vc(G/F) <= vc(G) - d."""
    if len(witness) > k:
        return False
    contracted, _ = contract_edges(g, witness)
    return min_vertex_cover(contracted).size <= min_vertex_cover(g).size - d


def checked_yes(g: Graph, k: int, d: int, witness: EdgeSet, stats: SolveStats) -> Verdict:
    """YES verdict whose witness has passed independent recomputation."""
    if not witness_is_valid(g, k, d, witness):
        raise WitnessVerificationFailed(f"witness {sorted(witness)} fails for k={k}, d={d}")
    return Verdict(True, witness, stats)


@dataclass(frozen=True)
class AnnotatedInstance:
    """A cover-contraction instance annotated with a cover and side constraints.

    ``x`` is a vertex cover of ``base.g`` (a minimum one when produced by the
    pipeline's first stages); the question asks for a solution pair whose
    removed part avoids ``x_left`` and contains ``x_right``.
    """

    base: CvcInstance
    x: VertexSet
    x_left: VertexSet
    x_right: VertexSet

    def __post_init__(self) -> None:
        if self.x_left & self.x_right:
            raise ValueError("x_left and x_right must be disjoint")
        if not (self.x_left <= self.x and self.x_right <= self.x):
            raise ValueError("side constraints must be subsets of x")
        if not is_vertex_cover(self.base.g, self.x):
            raise ValueError("x must be a vertex cover")

    @property
    def y(self) -> VertexSet:
        return frozenset(range(self.base.g.n)) - self.x


@dataclass(frozen=True)
class MaxcutInstance:
    """Same data as :class:`AnnotatedInstance`, read as a partition problem.

    A solution is a partition (V_L, V_R) of the vertices with no edge from
    V_L's independent side into V_R's cover side, crossing-edge rank >= k,
    right-side excess |V_R & Y| - |V_R & X| <= k - d, and the annotated
    sides respected.
    """

    base: CvcInstance
    x: VertexSet
    x_left: VertexSet
    x_right: VertexSet

    def __post_init__(self) -> None:
        if self.x_left & self.x_right:
            raise ValueError("x_left and x_right must be disjoint")
        if not (self.x_left <= self.x and self.x_right <= self.x):
            raise ValueError("side constraints must be subsets of x")
        if not is_vertex_cover(self.base.g, self.x):
            raise ValueError("x must be a vertex cover")

    @property
    def y(self) -> VertexSet:
        return frozenset(range(self.base.g.n)) - self.x


@dataclass(frozen=True)
class MisInstance:
    """Multicolored independent set instance: classes partition the vertices."""

    g: Graph
    classes: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for cls in self.classes:
            if seen & cls:
                raise ValueError("color classes must be disjoint")
            seen |= cls
        if seen != set(range(self.g.n)):
            raise ValueError("color classes must cover all vertices")

    @property
    def q(self) -> int:
        return len(self.classes)

    def is_three_by_q(self) -> bool:
        from .graph import canonical_edge

        for cls in self.classes:
            if len(cls) != 3:
                return False
            members = sorted(cls)
            for i in range(3):
                for j in range(i + 1, 3):
                    if canonical_edge(members[i], members[j]) not in self.g.edge_set:
                        return False
        return True


@dataclass(frozen=True)
class EifInstance:
    """Edge-induced forest question: >= l edges whose endpoints induce a forest."""

    g: Graph
    l: int

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ValueError("l must be non-negative")
