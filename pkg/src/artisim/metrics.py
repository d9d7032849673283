"""Perspective-weighted similarity metrics.

For artifacts a, a' with attribute sets A, A' and a perspective p with
attribute set P, using the default measure s = set cardinality:

    overlap     O(a,a',p) = s(A & A' & P)
    divergence  D(a,a',p) = s(A & P) + s(A' & P) - 2*O(a,a',p)
    reliability R(p,a,a') = (s(A & P) + s(A' & P)) / (|a| + |a'|)

where |a| = s(A) is the artifact's effective attribute count. The
reliability of the whole structure taken as a perspective is 1 for
every pair. The combined score over a perspective set P_1..P_n with
weight vector v_1..v_n defaults to

    S = sum_i v_i * R_i * O_i / (O_i + D_i)

with a zero term whenever a perspective shares no attribute with
either artifact (O_i + D_i = 0). O_i / (O_i + D_i) is the Jaccard
index of the two restricted sets, hence the formula name. Alternate
combination formulas are registered in SIMILARITY_FORMULAS; every
matrix records which one produced it.

All arithmetic is exact: counts are ints, ratios are Fractions, so
downstream argmax and tie decisions never depend on float noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import AbstractSet, Callable, Sequence

from .errors import ConfigError, DataError
from .model import Artifact, Perspective, restrict

Measure = Callable[[AbstractSet[str]], int]


def attribute_count(attrs: AbstractSet[str]) -> int:
    """Default measure s: the number of attribute nodes."""
    return len(attrs)


@dataclass(frozen=True)
class PerspectiveSet:
    """An ordered collection of perspectives; the order fixes how
    weight vectors are indexed."""

    perspectives: tuple[Perspective, ...]

    def __post_init__(self):
        object.__setattr__(self, "perspectives", tuple(self.perspectives))
        if not self.perspectives:
            raise DataError("perspective set is empty")
        seen: set[str] = set()
        for p in self.perspectives:
            if p.id in seen:
                raise DataError(f"duplicate perspective id {p.id!r}")
            seen.add(p.id)

    def __len__(self) -> int:
        return len(self.perspectives)

    def __iter__(self):
        return iter(self.perspectives)

    def ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.perspectives)


def as_fraction(value) -> Fraction:
    """Exact conversion; floats go through their shortest decimal repr
    so user-facing values like 0.25 mean exactly 1/4."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    raise ConfigError(f"cannot interpret {value!r} as an exact weight")


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative perspective weights, one per perspective.

    mode records how the vector was produced (uniform / implied /
    expert, with "-fallback-uniform" appended when implied weighting
    degenerated); it is advisory metadata and excluded from equality.
    """

    weights: tuple[Fraction, ...]
    normalized: bool = False
    mode: str = "expert"

    def __post_init__(self):
        ws = tuple(as_fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise ConfigError("weight vector is empty")
        if any(w < 0 for w in ws):
            raise ConfigError("weights must be nonnegative")
        if not any(w > 0 for w in ws):
            raise ConfigError("at least one weight must be positive")
        if self.normalized and sum(ws) != 1:
            raise ConfigError(f"normalized weight vector sums to {sum(ws)}, not 1")

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.weights == other.weights and self.normalized == other.normalized

    def __hash__(self):
        return hash((self.weights, self.normalized))

    def __len__(self) -> int:
        return len(self.weights)

    def normalize(self) -> "WeightVector":
        total = sum(self.weights)
        return WeightVector(tuple(w / total for w in self.weights),
                            normalized=True, mode=self.mode)

    def scaled(self, factor) -> "WeightVector":
        c = as_fraction(factor)
        if c <= 0:
            raise ConfigError("scale factor must be positive")
        return WeightVector(tuple(w * c for w in self.weights),
                            normalized=False, mode=self.mode)

    def as_floats(self) -> list[float]:
        return [float(w) for w in self.weights]


@dataclass(frozen=True)
class PairMetrics:
    overlap: int
    divergence: int
    reliability: Fraction


def overlap(a: Artifact, a2: Artifact, p: Perspective,
            measure: Measure = attribute_count) -> int:
    """Measure of the attributes shared by both artifacts within p."""
    return measure(a.attributes & a2.attributes & p.attributes)


def divergence(a: Artifact, a2: Artifact, p: Perspective,
               measure: Measure = attribute_count) -> int:
    """Measure of the attributes within p held by exactly one artifact."""
    d = (measure(restrict(a.attributes, p)) + measure(restrict(a2.attributes, p))
         - 2 * overlap(a, a2, p, measure))
    assert d >= 0, "divergence must be nonnegative"
    return d


def reliability(p: Perspective, a: Artifact, a2: Artifact,
                measure: Measure = attribute_count) -> Fraction:
    """Fraction of the pair's total attribute content that p captures.

    1 when p covers both artifacts entirely (in particular for the
    whole structure as a perspective), 0 when p shares no attribute
    with either artifact.
    """
    total = measure(a.attributes) + measure(a2.attributes)
    if total <= 0:
        raise DataError(f"artifacts {a.id}, {a2.id} have no measurable attributes")
    captured = measure(restrict(a.attributes, p)) + measure(restrict(a2.attributes, p))
    r = Fraction(captured, total)
    assert 0 <= r <= 1
    return r


def pair_metrics(a: Artifact, a2: Artifact, p: Perspective,
                 measure: Measure = attribute_count) -> PairMetrics:
    return PairMetrics(overlap=overlap(a, a2, p, measure),
                       divergence=divergence(a, a2, p, measure),
                       reliability=reliability(p, a, a2, measure))


def _jaccard_term(o: int, d: int) -> Fraction:
    return Fraction(o, o + d) if o + d > 0 else Fraction(0)


def _combine_reliability_weighted_jaccard(ws, rs, os_, ds) -> Fraction:
    return sum((w * r * _jaccard_term(o, d)
                for w, r, o, d in zip(ws, rs, os_, ds)), Fraction(0))


def _combine_reliability_normalized_jaccard(ws, rs, os_, ds) -> Fraction:
    denom = sum((w * r for w, r in zip(ws, rs)), Fraction(0))
    if denom == 0:
        return Fraction(0)
    return _combine_reliability_weighted_jaccard(ws, rs, os_, ds) / denom


def _combine_reliability_weighted_net_overlap(ws, rs, os_, ds) -> Fraction:
    return sum((w * r * (o - d) for w, r, o, d in zip(ws, rs, os_, ds)),
               Fraction(0))


# Score combination variants. Only the default is asserted to stay in
# [0, sum(v)]; the others exist for experimentation and are labeled in
# every output that carries them.
SIMILARITY_FORMULAS: dict[str, Callable] = {
    "reliability-weighted-jaccard": _combine_reliability_weighted_jaccard,
    "reliability-normalized-jaccard": _combine_reliability_normalized_jaccard,
    "reliability-weighted-net-overlap": _combine_reliability_weighted_net_overlap,
}
DEFAULT_FORMULA = "reliability-weighted-jaccard"


def similarity(pset: PerspectiveSet, weights: WeightVector,
               a: Artifact, a2: Artifact,
               formula: str = DEFAULT_FORMULA,
               measure: Measure = attribute_count) -> Fraction:
    """Combined similarity of two artifacts over a perspective set."""
    if len(weights) != len(pset):
        raise ConfigError(f"weight vector has {len(weights)} entries "
                          f"for {len(pset)} perspectives")
    try:
        combine = SIMILARITY_FORMULAS[formula]
    except KeyError:
        raise ConfigError(f"unknown similarity formula {formula!r}") from None
    os_ = [overlap(a, a2, p, measure) for p in pset]
    ds = [divergence(a, a2, p, measure) for p in pset]
    rs = [reliability(p, a, a2, measure) for p in pset]
    score = combine(weights.weights, rs, os_, ds)
    if formula == DEFAULT_FORMULA:
        assert 0 <= score <= sum(weights.weights)
    return score


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric pairwise similarity over an ordered artifact list.

    The diagonal is the self-similarity computed by the same formula.
    artifacts (when present) carry the group/era metadata graph
    builders put on nodes; matrices parsed back from CSV have none.
    """

    ids: tuple[str, ...]
    values: tuple[tuple[Fraction, ...], ...]
    formula: str = DEFAULT_FORMULA
    weights: WeightVector | None = None
    artifacts: tuple[Artifact, ...] | None = None

    _TOLERANCE = Fraction(1, 10**12)

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        if len(set(self.ids)) != len(self.ids):
            raise DataError("matrix artifact ids are not unique")
        n = len(self.ids)
        vals = tuple(tuple(as_fraction(v) for v in row) for row in self.values)
        if len(vals) != n or any(len(row) != n for row in vals):
            raise DataError(f"matrix is not {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if abs(vals[i][j] - vals[j][i]) > self._TOLERANCE:
                    raise DataError(
                        f"matrix asymmetric at ({self.ids[i]}, {self.ids[j]}): "
                        f"{float(vals[i][j])} vs {float(vals[j][i])}")
        # canonicalize tiny asymmetries to the upper triangle entry
        sym = [list(row) for row in vals]
        for i in range(n):
            for j in range(i + 1, n):
                sym[j][i] = sym[i][j]
        object.__setattr__(self, "values", tuple(tuple(row) for row in sym))
        if self.artifacts is not None:
            object.__setattr__(self, "artifacts", tuple(self.artifacts))
            if tuple(a.id for a in self.artifacts) != self.ids:
                raise DataError("matrix artifact metadata does not match ids")

    def __len__(self) -> int:
        return len(self.ids)

    def index(self, artifact_id: str) -> int:
        try:
            return self.ids.index(artifact_id)
        except ValueError:
            raise DataError(f"unknown artifact id {artifact_id!r}") from None

    def value(self, id_a: str, id_b: str) -> Fraction:
        return self.values[self.index(id_a)][self.index(id_b)]

    def scaled(self, factor) -> "SimilarityMatrix":
        c = as_fraction(factor)
        return SimilarityMatrix(
            ids=self.ids,
            values=tuple(tuple(v * c for v in row) for row in self.values),
            formula=self.formula, weights=self.weights, artifacts=self.artifacts)


def similarity_matrix(pset: PerspectiveSet, weights: WeightVector,
                      artifacts: Sequence[Artifact],
                      formula: str = DEFAULT_FORMULA,
                      measure: Measure = attribute_count) -> SimilarityMatrix:
    """All-pairs similarity. Pure in its inputs: any evaluation order
    yields the same matrix, so pair computation may be parallelized."""
    if len(artifacts) < 2:
        raise ConfigError("similarity matrix needs at least 2 artifacts")
    arts = tuple(artifacts)
    ids = tuple(a.id for a in arts)
    if len(set(ids)) != len(ids):
        raise DataError("artifact ids are not unique")
    n = len(arts)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = similarity(pset, weights, arts[i], arts[i], formula, measure)
        for j in range(i + 1, n):
            score = similarity(pset, weights, arts[i], arts[j], formula, measure)
            rows[i][j] = rows[j][i] = score
    return SimilarityMatrix(ids=ids, values=tuple(tuple(r) for r in rows),
                            formula=formula, weights=weights, artifacts=arts)


def weights_uniform(pset: PerspectiveSet) -> WeightVector:
    """Every perspective weighted equally; sums to 1 exactly."""
    n = len(pset)
    return WeightVector(tuple(Fraction(1, n) for _ in range(n)),
                        normalized=True, mode="uniform")


def weights_implied(pset: PerspectiveSet, artifacts: Sequence[Artifact],
                    measure: Measure = attribute_count) -> WeightVector:
    """Each perspective weighted by its mean reliability over all
    unordered artifact pairs, normalized to sum 1. Falls back to
    uniform (flagged in mode) when every mean reliability is 0."""
    if len(artifacts) < 2:
        raise ConfigError("implied weighting needs at least 2 artifacts")
    pairs = list(combinations(artifacts, 2))
    means = []
    for p in pset:
        total = sum((reliability(p, a, a2, measure) for a, a2 in pairs),
                    Fraction(0))
        means.append(total / len(pairs))
    total = sum(means)
    if total == 0:
        fallback = weights_uniform(pset)
        return WeightVector(fallback.weights, normalized=True,
                            mode="implied-fallback-uniform")
    return WeightVector(tuple(m / total for m in means),
                        normalized=True, mode="implied")
