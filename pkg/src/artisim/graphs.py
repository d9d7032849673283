"""Similarity graphs and the weight-space sweep.

Three derivation rules turn a similarity matrix into an undirected
graph over artifacts:

  maximal      each artifact connects to its highest-similarity
               neighbors (all of them on ties)
  knn:n        each artifact connects to its n top-ranked neighbors,
               ties at the cutoff rank included; knn:1 == maximal
  threshold:t  every pair scoring >= t is connected

"i chooses j" collapses to an undirected edge; which endpoints did the
choosing survives only as the chosen_by diagnostic annotation.

The sweep walks the normalized weight simplex on a fixed grid, builds
the graph at every grid point, and groups points whose labeled edge
sets are identical. Edges present in every region are the stable ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConfigError, DataError
from .metrics import (DEFAULT_FORMULA, PerspectiveSet, SimilarityMatrix,
                      WeightVector, as_fraction, similarity_matrix)
from .model import Artifact

RULE_MAXIMAL = "maximal"
RULE_KNN = "knn"
RULE_THRESHOLD = "threshold"

EdgePair = tuple[str, str]


@dataclass(frozen=True)
class GraphRule:
    """Which derivation rule produced a graph, with its parameter."""

    kind: str
    n: int | None = None
    t: Fraction | None = None

    def __post_init__(self):
        if self.kind == RULE_MAXIMAL:
            if self.n is not None or self.t is not None:
                raise ConfigError("maximal rule takes no parameters")
        elif self.kind == RULE_KNN:
            if self.n is None or self.n < 1:
                raise ConfigError("knn rule needs a neighbor count n >= 1")
        elif self.kind == RULE_THRESHOLD:
            if self.t is None:
                raise ConfigError("threshold rule needs a threshold t")
            object.__setattr__(self, "t", as_fraction(self.t))
            if self.t < 0:
                raise ConfigError("threshold must be >= 0")
        else:
            raise ConfigError(f"unknown graph rule {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "GraphRule":
        """Parse "maximal", "knn:N" or "threshold:T"."""
        kind, _, param = text.strip().partition(":")
        if kind == RULE_MAXIMAL:
            if param:
                raise ConfigError("maximal rule takes no parameters")
            return cls(RULE_MAXIMAL)
        if kind == RULE_KNN:
            try:
                return cls(RULE_KNN, n=int(param))
            except ValueError:
                raise ConfigError(f"bad knn neighbor count {param!r}") from None
        if kind == RULE_THRESHOLD:
            try:
                return cls(RULE_THRESHOLD, t=as_fraction(param))
            except (ConfigError, ValueError, ZeroDivisionError):
                raise ConfigError(f"bad threshold {param!r}") from None
        raise ConfigError(f"unknown graph rule {text!r}")

    def __str__(self) -> str:
        if self.kind == RULE_KNN:
            return f"knn:{self.n}"
        if self.kind == RULE_THRESHOLD:
            t = self.t
            text = str(float(t)) if t.denominator != 1 else str(t.numerator)
            return f"threshold:{text}"
        return self.kind


@dataclass(frozen=True)
class GraphNode:
    id: str
    group: str = ""
    era: str = ""


@dataclass(frozen=True)
class GraphEdge:
    """Undirected edge, endpoints stored in sorted order. chosen_by
    lists the endpoints whose neighbor selection produced the edge."""

    a: str
    b: str
    score: Fraction
    chosen_by: tuple[str, ...] = ()

    def __post_init__(self):
        if self.a == self.b:
            raise DataError(f"self-loop on {self.a!r}")
        if self.b < self.a:
            low, high = self.b, self.a
            object.__setattr__(self, "a", low)
            object.__setattr__(self, "b", high)

    @property
    def pair(self) -> EdgePair:
        return (self.a, self.b)


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    rule: GraphRule
    weights: WeightVector | None = None

    def edge_pairs(self) -> frozenset[EdgePair]:
        return frozenset(e.pair for e in self.edges)

    def node_ids(self) -> frozenset[str]:
        return frozenset(n.id for n in self.nodes)

    def degree(self, node_id: str) -> int:
        return sum(1 for e in self.edges if node_id in e.pair)


@dataclass(frozen=True)
class EdgeDiff:
    added: frozenset[EdgePair]
    removed: frozenset[EdgePair]
    retained: frozenset[EdgePair]


@dataclass(frozen=True)
class WeightRegion:
    """Grid points that all produce the same labeled edge set."""

    grid_points: tuple[WeightVector, ...]
    edges: frozenset[EdgePair]


@dataclass(frozen=True)
class SweepReport:
    grid_step: Fraction
    rule: GraphRule
    formula: str
    regions: tuple[WeightRegion, ...]
    stable_edges: frozenset[EdgePair]

    @property
    def grid_point_count(self) -> int:
        return sum(len(r.grid_points) for r in self.regions)


def _nodes_from_matrix(matrix: SimilarityMatrix) -> tuple[GraphNode, ...]:
    if matrix.artifacts is not None:
        return tuple(GraphNode(a.id, a.group, a.era) for a in matrix.artifacts)
    return tuple(GraphNode(i) for i in matrix.ids)


def _selection_graph(matrix: SimilarityMatrix, rule: GraphRule,
                     keep: int) -> SimilarityGraph:
    """Union over rows of 'row i selects its keep top-ranked neighbors,
    ties at the cutoff included'."""
    n = len(matrix)
    if n < 2:
        raise ConfigError("graph derivation needs at least 2 artifacts")
    chosen: dict[EdgePair, list[str]] = {}
    for i in range(n):
        others = [matrix.values[i][j] for j in range(n) if j != i]
        cutoff = sorted(others, reverse=True)[keep - 1]
        for j in range(n):
            if j != i and matrix.values[i][j] >= cutoff:
                pair = tuple(sorted((matrix.ids[i], matrix.ids[j])))
                chosen.setdefault(pair, []).append(matrix.ids[i])
    edges = tuple(
        GraphEdge(a, b, matrix.value(a, b), chosen_by=tuple(sorted(set(by))))
        for (a, b), by in sorted(chosen.items()))
    graph = SimilarityGraph(nodes=_nodes_from_matrix(matrix), edges=edges,
                            rule=rule, weights=matrix.weights)
    assert all(graph.degree(i) >= 1 for i in matrix.ids)
    return graph


def maximal_similarity_graph(matrix: SimilarityMatrix) -> SimilarityGraph:
    """Connect each artifact to every neighbor achieving its row
    maximum. Most rows have a single most similar artifact; ties
    produce several edges."""
    return _selection_graph(matrix, GraphRule(RULE_MAXIMAL), keep=1)


def knn_graph(matrix: SimilarityMatrix, n: int) -> SimilarityGraph:
    """Connect each artifact to its n most similar distinct neighbors."""
    rule = GraphRule(RULE_KNN, n=n)
    if not 1 <= n <= len(matrix) - 1:
        raise ConfigError(
            f"knn neighbor count {n} out of range 1..{len(matrix) - 1}")
    return _selection_graph(matrix, rule, keep=n)


def threshold_graph(matrix: SimilarityMatrix, t) -> SimilarityGraph:
    """Connect every pair whose similarity is at least t."""
    rule = GraphRule(RULE_THRESHOLD, t=as_fraction(t))
    ids = matrix.ids
    edges = []
    for i in range(len(matrix)):
        for j in range(i + 1, len(matrix)):
            if matrix.values[i][j] >= rule.t:
                a, b = sorted((ids[i], ids[j]))
                edges.append(GraphEdge(a, b, matrix.values[i][j],
                                       chosen_by=(a, b)))
    return SimilarityGraph(nodes=_nodes_from_matrix(matrix),
                           edges=tuple(sorted(edges, key=lambda e: e.pair)),
                           rule=rule, weights=matrix.weights)


def build_graph(matrix: SimilarityMatrix, rule: GraphRule) -> SimilarityGraph:
    if rule.kind == RULE_MAXIMAL:
        return maximal_similarity_graph(matrix)
    if rule.kind == RULE_KNN:
        return knn_graph(matrix, rule.n)
    return threshold_graph(matrix, rule.t)


def compare_graphs(g1: SimilarityGraph, g2: SimilarityGraph) -> EdgeDiff:
    """Edge difference g1 -> g2 over an identical node set."""
    if g1.node_ids() != g2.node_ids():
        raise DataError("graphs cover different node sets")
    e1, e2 = g1.edge_pairs(), g2.edge_pairs()
    return EdgeDiff(added=frozenset(e2 - e1), removed=frozenset(e1 - e2),
                    retained=frozenset(e1 & e2))


def simplex_grid(size: int, delta) -> list[tuple[Fraction, ...]]:
    """All vectors of nonnegative multiples of delta summing to 1,
    lexicographically ascending. delta must divide 1 evenly."""
    step = as_fraction(delta)
    if step <= 0 or (1 / step).denominator != 1:
        raise ConfigError(f"grid step {step} does not divide 1 evenly")
    if size < 1:
        raise ConfigError("grid needs at least one dimension")
    k = int(1 / step)

    def compositions(parts: int, remaining: int):
        if parts == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in compositions(parts - 1, remaining - first):
                yield (first,) + rest

    return [tuple(c * step for c in comp) for comp in compositions(size, k)]


def sweep(pset: PerspectiveSet, artifacts: Sequence[Artifact], delta,
          rule: GraphRule, formula: str = DEFAULT_FORMULA) -> SweepReport:
    """Partition the weight grid into regions of identical graph
    topology. Grid points are independent, so region identity cannot
    depend on evaluation order."""
    if len(pset) < 2:
        raise ConfigError("sweep needs at least 2 perspectives")
    step = as_fraction(delta)
    regions: dict[frozenset[EdgePair], list[WeightVector]] = {}
    order: list[frozenset[EdgePair]] = []
    for point in simplex_grid(len(pset), step):
        weights = WeightVector(point, normalized=True, mode="sweep")
        matrix = similarity_matrix(pset, weights, artifacts, formula)
        edges = build_graph(matrix, rule).edge_pairs()
        if edges not in regions:
            regions[edges] = []
            order.append(edges)
        regions[edges].append(weights)
    stable = frozenset.intersection(*order)
    report = SweepReport(
        grid_step=step, rule=rule, formula=formula,
        regions=tuple(WeightRegion(tuple(regions[e]), e) for e in order),
        stable_edges=stable)
    assert all(stable <= r.edges for r in report.regions)
    return report
