"""Forward depth-first exploration of a digraph and its edge classification.

The exploration keeps an ordered stack.  At each step the head of the stack
is popped and its not-yet-seen out-neighbours are pushed onto the front in
increasing label order; when the stack empties it is reseeded with the
smallest unexplored vertex.  The pop order is the planar order of the
resulting forest.  Every edge of the graph is then either a forest edge, a
surplus edge (increasing in planar order, not in the forest) or a back edge
(decreasing); a back edge whose head is a forest ancestor of its tail is
called ancestral.

Undirected graphs are explored the same way using full neighbourhoods.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import DirectedGraph, UndirectedGraph, sample_undirected_gnp, _DENSE_LIMIT, _sparse_rows
from .rng import derive_seed, make_rng


@dataclass
class Exploration:
    """Forest produced by the forward exploration, with stack residency data.

    Vertex v sits on the stack exactly during steps
    push_step[v] <= i <= pop_step[v]; pop_step is also the planar position.
    """

    n: int
    order: np.ndarray  # planar order: order[i] = i-th popped vertex
    parent: np.ndarray  # parent[v] = forest parent of v, 0 for roots
    push_step: np.ndarray
    tree_index: np.ndarray  # which tree of the forest each vertex is in
    roots: np.ndarray  # tree roots in planar order

    pos: np.ndarray = field(init=False, repr=False, compare=False)
    subtree_size: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pos = np.full(self.n + 1, -1, dtype=np.int64)
        pos[self.order] = np.arange(self.n)
        size = np.ones(self.n + 1, dtype=np.int64)
        for v in self.order[::-1]:
            p = self.parent[v]
            if p != 0:
                size[p] += size[v]
        size[0] = 0
        self.pos = pos
        self.subtree_size = size

    @property
    def pop_step(self) -> np.ndarray:
        """pop_step[v] = planar position of v (the step at which it is popped)."""
        return self.pos

    @property
    def num_trees(self) -> int:
        return len(self.roots)

    def is_ancestor(self, a: int, d: int) -> bool:
        """True when a is a forest ancestor of d (a == d counts)."""
        return bool(self.pos[a] <= self.pos[d] < self.pos[a] + self.subtree_size[a])

    def tree_sizes(self) -> np.ndarray:
        return np.bincount(self.tree_index[1:], minlength=self.num_trees)

    def forest_parent_map(self) -> dict[int, int]:
        return {int(v): int(self.parent[v]) for v in range(1, self.n + 1)}


def forward_dfs(g: DirectedGraph | UndirectedGraph) -> Exploration:
    n = g.n
    if isinstance(g, DirectedGraph):
        indptr, targets = g.out_adjacency()
    else:
        indptr, targets = g.adjacency()
    indptr_l = indptr.tolist()
    targets_l = targets.tolist()

    seen = bytearray(n + 1)
    order = np.empty(n, dtype=np.int64)
    parent = np.zeros(n + 1, dtype=np.int64)
    push_step = np.zeros(n + 1, dtype=np.int64)
    tree_index = np.zeros(n + 1, dtype=np.int64)
    roots: list[int] = []

    stack: list[int] = []  # front of the exploration stack is the list tail
    next_seed = 1
    tree = -1
    for i in range(n):
        if not stack:
            while seen[next_seed]:
                next_seed += 1
            v = next_seed
            seen[v] = 1
            push_step[v] = i
            tree += 1
            tree_index[v] = tree
            roots.append(v)
        else:
            v = stack.pop()
        order[i] = v
        # unseen out-neighbours, pushed so the smallest label pops first
        fresh = [w for w in targets_l[indptr_l[v - 1] : indptr_l[v]] if not seen[w]]
        for w in reversed(fresh):
            seen[w] = 1
            parent[w] = v
            push_step[w] = i + 1
            tree_index[w] = tree
            stack.append(w)
    return Exploration(n, order, parent, push_step, tree_index,
                       np.array(roots, dtype=np.int64))


@dataclass
class EdgeClassification:
    tree: frozenset[tuple[int, int]]
    surplus: frozenset[tuple[int, int]]
    back: frozenset[tuple[int, int]]
    ancestral_back: frozenset[tuple[int, int]]  # subset of back


def classify_edges(g: DirectedGraph, ex: Exploration) -> EdgeClassification:
    """Split g's edges into forest / surplus / back classes under ex.

    Raises ValueError if ex does not look like an exploration of g.
    """
    if not isinstance(g, DirectedGraph):
        raise ValueError("classify_edges expects a directed graph")
    if ex.n != g.n:
        raise ValueError("exploration and graph disagree on n")
    edge_set = None
    if g.n <= 100000:
        edge_set = g.edge_set()
        for v in range(1, g.n + 1):
            p = int(ex.parent[v])
            if p != 0 and (p, v) not in edge_set:
                raise ValueError("exploration forest edge missing from graph")
    tree = set()
    surplus = set()
    back = set()
    ancestral = set()
    pos = ex.pos
    parent = ex.parent
    for u, v in g.edges:
        u = int(u)
        v = int(v)
        if parent[v] == u:
            tree.add((u, v))
        elif pos[u] < pos[v]:
            surplus.add((u, v))
        else:
            back.add((u, v))
            if ex.is_ancestor(v, u):
                ancestral.add((u, v))
    return EdgeClassification(
        frozenset(tree), frozenset(surplus), frozenset(back), frozenset(ancestral)
    )


def permitted_pairs(ex: Exploration) -> set[tuple[int, int]]:
    """Ordered pairs (u, v) that were on the stack together, u popped first.

    Adding or removing surplus edges at such pairs (or back edges anywhere)
    leaves the exploration forest unchanged.
    """
    pairs: set[tuple[int, int]] = set()
    stack: list[int] = []
    order = ex.order
    parent = ex.parent
    children: dict[int, list[int]] = {}
    for v in order:
        p = int(parent[v])
        if p != 0:
            children.setdefault(p, []).append(int(v))
    for v in order:
        v = int(v)
        if stack and stack[-1] == v:
            stack.pop()
        fresh = children.get(v, [])
        for j, w in enumerate(fresh):
            for z in stack:
                pairs.add((w, z))
            for w2 in fresh[j + 1 :]:
                pairs.add((w, w2))
        stack.extend(reversed(fresh))
    return pairs


def coupled_sample(n: int, p: float, seed: int) -> DirectedGraph:
    """Directed sample built on an undirected one: explore undirected G(n, p),
    orient each of its edges forward in planar order, then add every
    decreasing ordered pair independently with probability p.

    Substreams: derive_seed(seed, 0) samples the undirected graph,
    derive_seed(seed, 1) samples the decreasing pairs.
    """
    gu = sample_undirected_gnp(n, p, derive_seed(seed, 0))
    ex = forward_dfs(gu)
    pos = ex.pos
    forward = []
    for a, b in gu.edges:
        a = int(a)
        b = int(b)
        if pos[a] < pos[b]:
            forward.append((a, b))
        else:
            forward.append((b, a))

    rng = make_rng(derive_seed(seed, 1))
    order = ex.order
    if n <= _DENSE_LIMIT:
        mask = np.tril(rng.random((n, n)) < p, k=-1)  # position i -> position j < i
        rows, cols = np.nonzero(mask)
    else:
        sizes = np.arange(n, dtype=np.int64)  # position i has i earlier positions
        rows, cols = _sparse_rows(rng, sizes, p)
    backs = np.column_stack([order[rows], order[cols]])
    edges = np.concatenate(
        [np.array(forward, dtype=np.int64).reshape(-1, 2), backs]
    )
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    return DirectedGraph(n, edges)
