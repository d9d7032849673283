from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artisim import (ConfigError, DataError, GraphRule, SimilarityMatrix,
                     compare_graphs, knn_graph, maximal_similarity_graph,
                     simplex_grid, sweep, threshold_graph)


def knn_oracle(matrix: SimilarityMatrix, n: int) -> frozenset:
    """Include j for row i iff fewer than n other candidates score
    strictly higher; union over rows as undirected pairs."""
    pairs = set()
    size = len(matrix.ids)
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            higher = sum(
                1 for k in range(size)
                if k != i and k != j and matrix.values[i][k] > matrix.values[i][j])
            if higher < n:
                pairs.add(tuple(sorted((matrix.ids[i], matrix.ids[j]))))
    return frozenset(pairs)


def mat(ids, rows) -> SimilarityMatrix:
    return SimilarityMatrix(
        ids=tuple(ids),
        values=tuple(tuple(Fraction(v).limit_denominator(10**6) if isinstance(v, float)
                           else Fraction(v) for v in row) for row in rows))


def random_matrix(rng: random.Random, size: int) -> SimilarityMatrix:
    ids = tuple(f"a{i}" for i in range(size))
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = Fraction(1)
        for j in range(i + 1, size):
            v = Fraction(rng.randrange(0, 100), 100)
            rows[i][j] = rows[j][i] = v
    return SimilarityMatrix(ids=ids, values=tuple(tuple(r) for r in rows))


THREE = mat("ABC", [[1, 0.8, 0.3], [0.8, 1, 0.5], [0.3, 0.5, 1]])


# -- maximal -------------------------------------------------------------

def test_maximal_two_artifacts_single_edge():
    m = mat("AB", [[1, 0.1], [0.1, 1]])
    g = maximal_similarity_graph(m)
    assert g.edge_pairs() == {("A", "B")}


def test_maximal_worked_example():
    g = maximal_similarity_graph(THREE)
    assert g.edge_pairs() == {("A", "B"), ("B", "C")}


def test_maximal_tie_produces_both_edges():
    m = mat("ABC", [[1, 0.5, 0.5], [0.5, 1, 0.2], [0.5, 0.2, 1]])
    g = maximal_similarity_graph(m)
    assert g.edge_pairs() == {("A", "B"), ("A", "C")}


def test_maximal_edge_labels_match_matrix():
    g = maximal_similarity_graph(THREE)
    for edge in g.edges:
        assert edge.score == THREE.value(edge.a, edge.b)


def test_maximal_chosen_by_annotation():
    g = maximal_similarity_graph(THREE)
    by_pair = {e.pair: e.chosen_by for e in g.edges}
    assert by_pair[("A", "B")] == ("A", "B")  # mutual choice
    assert by_pair[("B", "C")] == ("C",)      # only C chose B


def test_maximal_every_node_connected():
    rng = random.Random(3)
    for _ in range(10):
        m = random_matrix(rng, rng.randrange(2, 9))
        g = maximal_similarity_graph(m)
        assert all(g.degree(i) >= 1 for i in m.ids)


# -- knn ------------------------------------------------------------------

def test_knn_one_equals_maximal_fixed():
    assert knn_graph(THREE, 1).edge_pairs() == \
        maximal_similarity_graph(THREE).edge_pairs()


def test_knn_one_equals_maximal_random():
    rng = random.Random(11)
    for _ in range(25):
        m = random_matrix(rng, rng.randrange(2, 9))
        assert knn_graph(m, 1).edge_pairs() == \
            maximal_similarity_graph(m).edge_pairs()


def test_knn_full_neighbourhood_is_complete():
    g = knn_graph(THREE, 2)
    assert g.edge_pairs() == {("A", "B"), ("A", "C"), ("B", "C")}


def test_knn_matches_rank_oracle():
    m = mat("ABCD", [[1, 0.9, 0.4, 0.2],
                     [0.9, 1, 0.6, 0.1],
                     [0.4, 0.6, 1, 0.7],
                     [0.2, 0.1, 0.7, 1]])
    for n in (1, 2, 3):
        assert knn_graph(m, n).edge_pairs() == knn_oracle(m, n)


def test_knn_ties_at_cutoff_included():
    m = mat("ABCD", [[1, 0.9, 0.7, 0.7],
                     [0.9, 1, 0.1, 0.1],
                     [0.7, 0.1, 1, 0.1],
                     [0.7, 0.1, 0.1, 1]])
    g = knn_graph(m, 2)
    assert {("A", "C"), ("A", "D")} <= g.edge_pairs()
    assert g.edge_pairs() == knn_oracle(m, 2)


def test_knn_range_validation():
    with pytest.raises(ConfigError):
        knn_graph(THREE, 0)
    with pytest.raises(ConfigError):
        knn_graph(THREE, 3)


@given(st.integers(0, 2**30), st.integers(2, 8))
@settings(max_examples=60, deadline=None)
def test_knn_oracle_property(seed, size):
    m = random_matrix(random.Random(seed), size)
    for n in range(1, size):
        assert knn_graph(m, n).edge_pairs() == knn_oracle(m, n)


# -- threshold -------------------------------------------------------------

def test_threshold_zero_is_complete():
    g = threshold_graph(THREE, 0)
    assert len(g.edges) == 3


def test_threshold_above_max_is_empty():
    g = threshold_graph(THREE, 2)
    assert g.edges == ()
    assert len(g.nodes) == 3


def test_threshold_filters_inclusively():
    g = threshold_graph(THREE, Fraction(1, 2))
    assert g.edge_pairs() == {("A", "B"), ("B", "C")}


def test_threshold_negative_rejected():
    with pytest.raises(ConfigError):
        threshold_graph(THREE, -1)


def test_threshold_monotonicity():
    rng = random.Random(5)
    m = random_matrix(rng, 7)
    thresholds = sorted(Fraction(k, 10) for k in range(11))
    previous = None
    for t in thresholds:
        edges = threshold_graph(m, t).edge_pairs()
        if previous is not None:
            assert edges <= previous
        previous = edges


# -- scaling and permutation -----------------------------------------------

def test_weight_scaling_leaves_graphs_unchanged():
    rng = random.Random(17)
    for _ in range(10):
        m = random_matrix(rng, rng.randrange(3, 8))
        scaled = m.scaled(3)
        assert maximal_similarity_graph(m).edge_pairs() == \
            maximal_similarity_graph(scaled).edge_pairs()
        assert knn_graph(m, 2).edge_pairs() == knn_graph(scaled, 2).edge_pairs()
        t = Fraction(1, 2)
        assert threshold_graph(m, t).edge_pairs() == \
            threshold_graph(scaled, 3 * t).edge_pairs()


def test_permuted_input_gives_identical_edge_sets():
    rng = random.Random(23)
    m = random_matrix(rng, 6)
    perm = list(range(6))
    rng.shuffle(perm)
    permuted = SimilarityMatrix(
        ids=tuple(m.ids[i] for i in perm),
        values=tuple(tuple(m.values[i][j] for j in perm) for i in perm))
    assert maximal_similarity_graph(m).edge_pairs() == \
        maximal_similarity_graph(permuted).edge_pairs()


# -- compare -----------------------------------------------------------------

def test_compare_identical_graphs():
    g = maximal_similarity_graph(THREE)
    diff = compare_graphs(g, g)
    assert diff.added == diff.removed == frozenset()
    assert diff.retained == g.edge_pairs()


def test_compare_against_empty():
    g1 = maximal_similarity_graph(THREE)
    g2 = threshold_graph(THREE, 5)
    diff = compare_graphs(g1, g2)
    assert diff.removed == g1.edge_pairs()
    assert diff.added == frozenset()


def test_compare_fixture_pair_set_algebra():
    g1 = threshold_graph(THREE, Fraction(1, 2))
    g2 = threshold_graph(THREE, Fraction(3, 10))
    diff = compare_graphs(g1, g2)
    e1, e2 = g1.edge_pairs(), g2.edge_pairs()
    assert diff.added == e2 - e1
    assert diff.removed == e1 - e2
    assert diff.retained == e1 & e2
    assert diff.added | diff.retained == e2
    assert diff.removed | diff.retained == e1


def test_compare_node_mismatch_rejected():
    other = mat("AB", [[1, 0.2], [0.2, 1]])
    with pytest.raises(DataError):
        compare_graphs(maximal_similarity_graph(THREE),
                       maximal_similarity_graph(other))


# -- rules ---------------------------------------------------------------

def test_rule_parse_round_trip():
    for text in ("maximal", "knn:2", "threshold:0.5"):
        assert str(GraphRule.parse(text)) == text
    assert GraphRule.parse("threshold:1/2").t == Fraction(1, 2)


def test_rule_parse_rejects_garbage():
    for text in ("nearest", "knn", "knn:x", "threshold", "threshold:abc",
                 "maximal:3"):
        with pytest.raises(ConfigError):
            GraphRule.parse(text)


# -- simplex grid and sweep ------------------------------------------------

def test_grid_two_perspectives_quarter_step():
    grid = simplex_grid(2, Fraction(1, 4))
    assert grid == [
        (Fraction(0), Fraction(1)),
        (Fraction(1, 4), Fraction(3, 4)),
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(3, 4), Fraction(1, 4)),
        (Fraction(1), Fraction(0)),
    ]


def test_grid_three_perspectives_count():
    # compositions of 4 into 3 parts: C(6, 2) = 15
    assert len(simplex_grid(3, Fraction(1, 4))) == 15


def test_grid_step_must_divide_one():
    with pytest.raises(ConfigError):
        simplex_grid(2, Fraction(3, 10))


def test_sweep_constant_map_single_region(split_fixture):
    ds = split_fixture
    # two copies of the same perspective: every grid point gives the
    # same matrix, hence one region
    from artisim import Perspective, PerspectiveSet
    p = ds.perspectives[0]
    clone = Perspective(id="clone", attributes=p.attributes)
    pset = PerspectiveSet((p, clone))
    report = sweep(pset, ds.artifacts, Fraction(1, 4), GraphRule("maximal"))
    assert len(report.regions) == 1
    assert report.stable_edges == report.regions[0].edges
    assert report.grid_point_count == 5


def test_sweep_split_fixture_two_regions(split_fixture):
    ds = split_fixture
    report = sweep(ds.perspective_set(), ds.artifacts, Fraction(1, 4),
                   GraphRule("maximal"))
    assert len(report.regions) == 2
    assert report.grid_point_count == 5
    # endpoints: symbolic-only vs physical-only graphs differ
    assert report.regions[0].edges == {("A", "C"), ("B", "D")}
    assert report.regions[-1].edges == {("A", "B"), ("C", "D")}
    assert report.stable_edges == frozenset()
    point_counts = [len(r.grid_points) for r in report.regions]
    assert point_counts == [2, 3]


def test_sweep_stable_edges_are_intersection(split_fixture):
    ds = split_fixture
    report = sweep(ds.perspective_set(), ds.artifacts, Fraction(1, 4),
                   GraphRule("maximal"))
    expected = frozenset.intersection(*(r.edges for r in report.regions))
    assert report.stable_edges == expected
    assert 1 <= len(report.regions) <= report.grid_point_count


def test_sweep_deterministic(split_fixture):
    ds = split_fixture
    r1 = sweep(ds.perspective_set(), ds.artifacts, Fraction(1, 4),
               GraphRule("maximal"))
    r2 = sweep(ds.perspective_set(), ds.artifacts, Fraction(1, 4),
               GraphRule("maximal"))
    assert r1 == r2


def test_sweep_requires_two_perspectives(split_fixture):
    ds = split_fixture
    from artisim import PerspectiveSet
    single = PerspectiveSet((ds.perspectives[0],))
    with pytest.raises(ConfigError):
        sweep(single, ds.artifacts, Fraction(1, 4), GraphRule("maximal"))
