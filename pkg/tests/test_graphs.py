import numpy as np
import pytest

from scclab.graphs import (
    DirectedGraph,
    UndirectedGraph,
    critical_probability,
    read_graph,
    sample_directed_gnp,
    sample_undirected_gnp,
    write_graph,
)
from scclab.rng import derive_seed, make_rng, validate_seed


def test_critical_probability_values():
    assert critical_probability(1000, 0.0) == 0.001
    # 1/10000 + 10000^(-4/3) = 1e-4 + 10^(-16/3)
    assert critical_probability(10000, 1.0) == pytest.approx(1.0464158883e-4, rel=1e-9)
    assert critical_probability(2, -10.0) == 0.0  # clamped at zero
    assert critical_probability(2, 10.0) == 1.0


def test_critical_probability_rejects_tiny_n():
    with pytest.raises(ValueError):
        critical_probability(1, 0.0)


def test_directed_graph_validation():
    with pytest.raises(ValueError):
        DirectedGraph.from_pairs(3, [(1, 1)])  # self-loop
    with pytest.raises(ValueError):
        DirectedGraph.from_pairs(3, [(1, 2), (1, 2)])  # duplicate
    with pytest.raises(ValueError):
        DirectedGraph.from_pairs(3, [(0, 2)])  # out of range
    with pytest.raises(ValueError):
        DirectedGraph.from_pairs(3, [(1, 4)])


def test_undirected_graph_validation():
    with pytest.raises(ValueError):
        UndirectedGraph.from_pairs(3, [(2, 2)])
    with pytest.raises(ValueError):
        UndirectedGraph.from_pairs(3, [(1, 2), (2, 1)])  # same unordered pair


def test_out_adjacency_sorted():
    g = DirectedGraph.from_pairs(4, [(1, 3), (1, 2), (3, 1), (1, 4)])
    indptr, targets = g.out_adjacency()
    assert list(targets[indptr[0]:indptr[1]]) == [2, 3, 4]  # row of vertex 1
    assert list(targets[indptr[2]:indptr[3]]) == [1]  # row of vertex 3


def test_sampler_edge_cases():
    assert sample_directed_gnp(5, 0.0, 1).m == 0
    assert sample_directed_gnp(3, 1.0, 1).edge_set() == {
        (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)
    }
    assert sample_undirected_gnp(4, 1.0, 9).m == 6
    assert sample_undirected_gnp(4, 0.0, 9).m == 0


def test_sampler_determinism():
    a = sample_directed_gnp(50, 0.05, 77)
    b = sample_directed_gnp(50, 0.05, 77)
    assert np.array_equal(a.edges, b.edges)
    c = sample_directed_gnp(50, 0.05, 78)
    assert not np.array_equal(a.edges, c.edges)


def test_directed_edge_count_matches_binomial_mean():
    """Mean edge count over many seeds close to n(n-1)p (3 SE band)."""
    n, p, reps = 100, 0.5, 10000
    counts = np.array([sample_directed_gnp(n, p, derive_seed(5150, r)).m
                       for r in range(reps)])
    mean = counts.mean()
    se = counts.std(ddof=1) / np.sqrt(reps)
    assert abs(mean - n * (n - 1) * p) <= 3 * se


def test_undirected_edge_count_matches_binomial_mean():
    n, p, reps = 100, 0.5, 10000
    counts = np.array([sample_undirected_gnp(n, p, derive_seed(5151, r)).m
                       for r in range(reps)])
    se = counts.std(ddof=1) / np.sqrt(reps)
    assert abs(counts.mean() - n * (n - 1) / 2 * p) <= 3 * se


def test_fixed_edge_indicators_uncorrelated():
    reps = 4000
    a = np.empty(reps, dtype=bool)
    b = np.empty(reps, dtype=bool)
    for r in range(reps):
        es = sample_directed_gnp(8, 0.4, derive_seed(31337, r)).edge_set()
        a[r] = (1, 2) in es
        b[r] = (5, 3) in es
    corr = np.corrcoef(a, b)[0, 1]
    assert abs(corr) <= 3.0 / np.sqrt(reps)


def test_serialization_round_trip_directed():
    g = DirectedGraph.from_pairs(5, [(1, 2), (2, 3), (5, 1)])
    text = write_graph(g)
    assert text.splitlines()[0] == "n=5 directed=1"
    h = read_graph(text)
    assert isinstance(h, DirectedGraph)
    assert h.n == 5 and h.edge_set() == g.edge_set()
    assert write_graph(h) == text  # bit-exact round trip


def test_serialization_round_trip_undirected():
    g = UndirectedGraph.from_pairs(4, [(2, 4), (1, 3)])
    h = read_graph(write_graph(g))
    assert isinstance(h, UndirectedGraph)
    assert h.edge_set() == g.edge_set()


@pytest.mark.parametrize("text", [
    "",
    "n=3\n1 2\n",
    "n=x directed=1\n",
    "n=3 directed=1\n1 1\n",
    "n=3 directed=1\n1 2 3\n",
    "n=3 directed=0\n4 1\n",
])
def test_read_graph_rejects_malformed(text):
    with pytest.raises(ValueError):
        read_graph(text)


def test_validate_seed():
    assert validate_seed(0) == 0
    assert validate_seed(2**64 - 1) == 2**64 - 1
    for bad in (-1, 2**64, 1.5):
        with pytest.raises((ValueError, TypeError)):
            validate_seed(bad)


def test_derive_seed_is_deterministic_and_spread_out():
    assert derive_seed(42, 7) == derive_seed(42, 7)
    seen = {derive_seed(42, i) for i in range(100000)}
    assert len(seen) == 100000  # no collisions across replica indices
    assert derive_seed(42, 0) != derive_seed(43, 0)


def test_make_rng_reproducible():
    x = make_rng(9).standard_normal(5)
    y = make_rng(9).standard_normal(5)
    assert np.array_equal(x, y)
