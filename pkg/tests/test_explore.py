"""Exploration tests against slow reference implementations.

The reference explorer below replays the textbook stack recursion directly
(pop the head, push unseen out-neighbours in increasing order) and records
full stack snapshots, so forest shape and co-residency can be checked
against the module's incremental versions.
"""

import numpy as np
import pytest

from scclab.explore import (
    classify_edges,
    coupled_sample,
    forward_dfs,
    permitted_pairs,
)
from scclab.graphs import (
    DirectedGraph,
    UndirectedGraph,
    critical_probability,
    sample_directed_gnp,
    sample_undirected_gnp,
)
from scclab.rng import derive_seed, make_rng


def reference_explore(g):
    """Slow oracle: order, parent and every stack snapshot."""
    if isinstance(g, DirectedGraph):
        out = {v: [] for v in range(1, g.n + 1)}
        for u, v in g.edges:
            out[int(u)].append(int(v))
    else:
        out = {v: [] for v in range(1, g.n + 1)}
        for u, v in g.edges:
            out[int(u)].append(int(v))
            out[int(v)].append(int(u))
    order, parent = [], {v: 0 for v in range(1, g.n + 1)}
    seen = [False] * (g.n + 1)
    stack: list[int] = []
    snapshots: list[tuple[int, ...]] = []
    for r in range(1, g.n + 1):
        if seen[r]:
            continue
        seen[r] = True
        stack = [r]
        snapshots.append(tuple(stack))
        while stack:
            v = stack.pop(0)  # head of the ordered open list
            order.append(v)
            fresh = [w for w in sorted(out[v]) if not seen[w]]
            for w in fresh:
                seen[w] = True
                parent[w] = v
            stack = fresh + stack
            snapshots.append(tuple(stack))
    return order, parent, snapshots


def snapshot_pairs(snapshots, pos):
    """All ordered co-resident pairs, earlier planar position first."""
    pairs = set()
    for snap in snapshots:
        for i, u in enumerate(snap):
            for v in snap[i + 1:]:
                a, b = (u, v) if pos[u] < pos[v] else (v, u)
                pairs.add((a, b))
    return pairs


def test_empty_graph_order():
    ex = forward_dfs(DirectedGraph.from_pairs(3, []))
    assert list(ex.order) == [1, 2, 3]
    assert list(ex.roots) == [1, 2, 3]
    assert list(ex.tree_sizes()) == [1, 1, 1]


def test_hand_run_four_vertex_example():
    g = DirectedGraph.from_pairs(4, [(1, 2), (1, 3), (3, 2), (4, 1)])
    ex = forward_dfs(g)
    assert list(ex.order) == [1, 2, 3, 4]
    assert ex.parent[2] == 1 and ex.parent[3] == 1
    assert list(ex.roots) == [1, 4]
    cls = classify_edges(g, ex)
    assert cls.tree == {(1, 2), (1, 3)}
    assert cls.surplus == frozenset()
    assert cls.back == {(3, 2), (4, 1)}
    assert cls.ancestral_back == frozenset()
    assert permitted_pairs(ex) == {(2, 3)}


def test_hand_run_path_example():
    g = DirectedGraph.from_pairs(4, [(1, 3), (3, 2), (2, 4)])
    ex = forward_dfs(g)
    assert list(ex.order) == [1, 3, 2, 4]
    assert ex.parent[3] == 1 and ex.parent[2] == 3 and ex.parent[4] == 2
    assert permitted_pairs(ex) == set()


def test_two_cycle_classification():
    g = DirectedGraph.from_pairs(2, [(1, 2), (2, 1)])
    cls = classify_edges(g, forward_dfs(g))
    assert cls.tree == {(1, 2)}
    assert cls.back == {(2, 1)}
    assert cls.ancestral_back == {(2, 1)}


def test_dag_in_label_order_has_no_back_edges():
    g = DirectedGraph.from_pairs(6, [(1, 2), (1, 4), (2, 3), (3, 5), (4, 6)])
    cls = classify_edges(g, forward_dfs(g))
    assert cls.back == frozenset()


def test_star_permitted_pairs():
    g = DirectedGraph.from_pairs(4, [(1, 2), (1, 3), (1, 4)])
    assert permitted_pairs(forward_dfs(g)) == {(2, 3), (2, 4), (3, 4)}


@pytest.mark.parametrize("directed", [True, False])
@pytest.mark.parametrize("rep", range(12))
def test_matches_reference_explorer(directed, rep):
    rng = make_rng(derive_seed(2024, rep + 100 * directed))
    n = int(rng.integers(2, 60))
    p = float(rng.uniform(0.0, 3.0)) / n
    if directed:
        g = sample_directed_gnp(n, p, derive_seed(7, rep + 100 * directed))
    else:
        g = sample_undirected_gnp(n, p, derive_seed(7, rep + 100 * directed))
    ex = forward_dfs(g)
    order, parent, snapshots = reference_explore(g)
    assert list(ex.order) == order
    assert {v: int(ex.parent[v]) for v in range(1, n + 1)} == parent
    assert permitted_pairs(ex) == snapshot_pairs(snapshots, {v: order.index(v) for v in range(1, n + 1)})


def test_tree_edges_increase_in_planar_order():
    for rep in range(10):
        g = sample_directed_gnp(80, 2.0 / 80, derive_seed(55, rep))
        ex = forward_dfs(g)
        for v in range(1, g.n + 1):
            p = int(ex.parent[v])
            if p:
                assert ex.pos[p] < ex.pos[v]


def _forest_signature(ex):
    return (list(ex.order), list(ex.parent), list(ex.roots), list(ex.tree_index))


@pytest.mark.parametrize("rep", range(20))
def test_mutation_fuzz_forest_unchanged(rep):
    """Adding/removing permitted surplus edges or any back edges keeps the
    forest bit-identical."""
    rng = make_rng(derive_seed(90210, rep))
    n = int(rng.integers(10, 80))
    g = sample_directed_gnp(n, float(rng.uniform(0.5, 2.5)) / n,
                            derive_seed(90211, rep))
    ex = forward_dfs(g)
    cls = classify_edges(g, ex)
    base = _forest_signature(ex)
    keep = set(cls.tree)
    optional = list(cls.surplus | cls.back)
    dropped = {optional[i] for i in rng.permutation(len(optional))[: len(optional) // 2]}

    edge_set = g.edge_set()
    additions = set()
    candidates = sorted(permitted_pairs(ex) - edge_set)
    if candidates:
        for i in rng.integers(0, len(candidates), size=3):
            additions.add(candidates[int(i)])
    # any decreasing pair may join as a back edge
    order = list(ex.order)
    for _ in range(3):
        i, j = sorted(rng.integers(0, n, size=2))
        if i != j and (order[j], order[i]) not in edge_set:
            additions.add((order[j], order[i]))

    mutated = (keep | (set(optional) - dropped) | additions)
    g2 = DirectedGraph.from_pairs(n, sorted(mutated))
    assert _forest_signature(forward_dfs(g2)) == base


def test_coupled_sample_shares_forest_with_undirected_base():
    """The coupled digraph explores to exactly the forest of the undirected
    graph it was built from."""
    n = 250
    p = critical_probability(n, 0.0)
    for rep in range(5):
        seed = derive_seed(640, rep)
        gu = sample_undirected_gnp(n, p, derive_seed(seed, 0))
        gd = coupled_sample(n, p, seed)
        assert _forest_signature(forward_dfs(gd)) == _forest_signature(forward_dfs(gu))


def test_coupled_sample_extremes():
    assert coupled_sample(6, 0.0, 3).m == 0
    full = coupled_sample(5, 1.0, 3)
    assert full.m == 20  # complete digraph


def test_classify_rejects_mismatched_exploration():
    g1 = DirectedGraph.from_pairs(3, [(1, 2)])
    g2 = DirectedGraph.from_pairs(4, [(1, 2)])
    with pytest.raises(ValueError):
        classify_edges(g2, forward_dfs(g1))
    ex = forward_dfs(DirectedGraph.from_pairs(3, [(1, 2), (2, 3)]))
    with pytest.raises(ValueError):
        classify_edges(DirectedGraph.from_pairs(3, [(1, 3)]), ex)
