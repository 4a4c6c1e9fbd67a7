"""Rooted plane trees.

A plane tree fixes a left-to-right order on every vertex's children; the
planar order of the whole tree is the depth-first (preorder) traversal that
follows those child orders.  Vertices carry labels 1..n but the planar order,
not the labels, is what downstream algorithms consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import make_rng


@dataclass
class PlaneTree:
    n: int
    root: int
    children: tuple[tuple[int, ...], ...]  # children[v-1], left to right

    parent: np.ndarray = field(init=False, repr=False, compare=False)
    order: np.ndarray = field(init=False, repr=False, compare=False)
    pos: np.ndarray = field(init=False, repr=False, compare=False)
    subtree_size: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if n < 1:
            raise ValueError("tree must have at least one vertex")
        if not 1 <= self.root <= n:
            raise ValueError(f"root {self.root} out of range 1..{n}")
        if len(self.children) != n:
            raise ValueError("children must have one entry per vertex")
        parent = np.zeros(n + 1, dtype=np.int64)
        for v in range(1, n + 1):
            for c in self.children[v - 1]:
                if not 1 <= c <= n:
                    raise ValueError(f"child label {c} out of range")
                if parent[c] != 0:
                    raise ValueError(f"vertex {c} has two parents")
                parent[c] = v
        if parent[self.root] != 0:
            raise ValueError("root must not have a parent")

        order = np.empty(n, dtype=np.int64)
        pos = np.full(n + 1, -1, dtype=np.int64)
        stack = [self.root]
        i = 0
        while stack:
            v = stack.pop()
            if pos[v] != -1:
                raise ValueError("children lists contain a cycle")
            order[i] = v
            pos[v] = i
            i += 1
            for c in reversed(self.children[v - 1]):
                stack.append(c)
        if i != n:
            raise ValueError("children lists do not span all vertices")

        size = np.ones(n + 1, dtype=np.int64)
        for v in order[::-1]:
            if parent[v] != 0:
                size[parent[v]] += size[v]
        self.parent = parent
        self.order = order
        self.pos = pos
        self.subtree_size = size

    def is_ancestor(self, a: int, d: int) -> bool:
        """True when a lies on the path from the root to d (a == d counts)."""
        return bool(self.pos[a] <= self.pos[d] < self.pos[a] + self.subtree_size[a])

    def tree_edges(self) -> list[tuple[int, int]]:
        """Edges (parent, child), one per non-root vertex, in planar order."""
        return [(int(self.parent[v]), int(v)) for v in self.order if self.parent[v] != 0]

    def depth_of(self, v: int) -> int:
        d = 0
        while self.parent[v] != 0:
            v = int(self.parent[v])
            d += 1
        return d


def random_plane_tree(n: int, seed: int, chain_bias: float = 0.0) -> PlaneTree:
    """Random recursive plane tree on 1..n rooted at 1.

    Vertex v attaches to a uniform earlier vertex, except with probability
    `chain_bias` it attaches to v-1, which produces deeper, path-like shapes.
    Children are appended left to right in creation order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = make_rng(seed)
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(2, n + 1):
        if v > 2 and rng.random() < chain_bias:
            par = v - 1
        else:
            par = 1 + int(rng.random() * (v - 1))
        kids[par - 1].append(v)
    return PlaneTree(n, 1, tuple(tuple(c) for c in kids))
