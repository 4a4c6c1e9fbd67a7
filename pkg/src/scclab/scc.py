"""Strongly connected components and their reduction to length multigraphs.

tarjan_scc delegates to scipy's compiled strongly-connected-components
routine (Tarjan's algorithm) and repackages the labels.  The remaining
operations reduce components to Mdm form: a singleton block becomes the
trivial loop at its vertex, a pure directed cycle becomes a loop anchored at
its smallest label, and anything else keeps its branch vertices while
degree-two vertices are smoothed away with lengths added.

mark_back_edges walks a rooted plane tree's back edges in planar-lexicographic
order, repeatedly marking the first edge whose head lies on the union of
root paths of previously marked tails (or on its own tail's root path);
star_reduction keeps only tree edges plus marked back edges, which preserves
strongly connected components exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import connected_components

from .graphs import DirectedGraph
from .mdm import Mdm, MdmEdge, loop
from .trees import PlaneTree


@dataclass
class SccPartition:
    n: int
    labels: np.ndarray  # labels[v] for v = 1..n; labels[0] unused
    _blocks: list[np.ndarray] | None = field(default=None, repr=False, compare=False)

    @property
    def num_blocks(self) -> int:
        return int(self.labels[1:].max()) + 1 if self.n else 0

    def blocks(self) -> list[np.ndarray]:
        """Blocks as sorted vertex arrays, indexed by component label."""
        if self._blocks is None:
            order = np.argsort(self.labels[1:], kind="stable")
            verts = order + 1
            labs = self.labels[verts]
            cuts = np.searchsorted(labs, np.arange(self.num_blocks + 1))
            self._blocks = [
                verts[cuts[i] : cuts[i + 1]] for i in range(self.num_blocks)
            ]
        return self._blocks

    def block_of(self, v: int) -> np.ndarray:
        return self.blocks()[int(self.labels[v])]

    def same_block(self, u: int, v: int) -> bool:
        return self.labels[u] == self.labels[v]


def tarjan_scc(g: DirectedGraph) -> SccPartition:
    n = g.n
    indptr, targets = g.out_adjacency()
    mat = csr_array(
        (np.ones(len(targets), dtype=np.int8), targets - 1, indptr), shape=(n, n)
    )
    _, labels0 = connected_components(mat, directed=True, connection="strong")
    labels = np.empty(n + 1, dtype=np.int64)
    labels[0] = -1
    labels[1:] = labels0
    return SccPartition(n, labels)


def _strong_labels_multi(num_nodes: int, pairs: list[tuple[int, int]]) -> np.ndarray:
    """Component label per node (0..num_nodes-1) for a multigraph edge list."""
    if not pairs:
        return np.arange(num_nodes, dtype=np.int64)
    arr = np.array(pairs, dtype=np.int64)
    mat = csr_array(
        (np.ones(len(arr), dtype=np.int8), (arr[:, 0], arr[:, 1])),
        shape=(num_nodes, num_nodes),
    )
    _, labels = connected_components(mat, directed=True, connection="strong")
    return labels


def smooth_block_edges(
    edges: list[tuple[int, int, float]], anchor: int | None = None
) -> Mdm:
    """Reduce one strongly connected block, given its internal edges.

    Repeatedly removes vertices of total degree two whose in- and out-edge
    differ, adding their lengths.  A pure cycle collapses to a loop anchored
    at `anchor` (default: smallest vertex label); no edges at all means a
    singleton block, returned as the trivial loop at the anchor vertex.
    """
    if not edges:
        if anchor is None:
            raise ValueError("singleton block needs an anchor vertex")
        return loop(0.0, anchor)

    alive = [True] * len(edges)
    rec = [list(e) for e in edges]  # [tail, head, length]
    incident: dict[int, set[int]] = {}
    for i, (t, h, _) in enumerate(rec):
        incident.setdefault(t, set()).add(i)
        incident.setdefault(h, set()).add(i)

    def degree(v: int) -> int:
        d = 0
        for i in incident[v]:
            d += (rec[i][0] == v) + (rec[i][1] == v)
        return d

    # process larger labels first so cycles collapse onto the smallest label
    queue = sorted(incident, reverse=True)
    while queue:
        v = queue.pop(0)
        if v not in incident:
            continue
        live = sorted(i for i in incident[v] if alive[i])
        if degree(v) != 2 or len(live) != 2:
            continue
        e_in = next((i for i in live if rec[i][1] == v), None)
        e_out = next((i for i in live if rec[i][0] == v), None)
        if e_in is None or e_out is None or e_in == e_out:
            continue  # completed loop, or v not on a through-path
        a, _, l1 = rec[e_in]
        _, b, l2 = rec[e_out]
        alive[e_in] = False
        alive[e_out] = False
        incident[a].discard(e_in)
        incident[b].discard(e_out)
        del incident[v]
        rec.append([a, b, l1 + l2])
        alive.append(True)
        idx = len(rec) - 1
        incident[a].add(idx)
        incident[b].add(idx)
        # the merge may have made a or b smoothable
        for w in (a, b):
            if w in incident and w not in queue:
                queue.append(w)

    verts = tuple(sorted(incident))
    final = tuple(
        MdmEdge(int(t), int(h), float(l))
        for (t, h, l), ok in zip(rec, alive)
        if ok
    )
    if anchor is not None and len(verts) == 1 and verts[0] != anchor:
        final = tuple(MdmEdge(anchor, anchor, e.length) for e in final)
        verts = (anchor,)
    return Mdm(verts, final)


def component_to_mdm(g: DirectedGraph, block: np.ndarray | list[int]) -> Mdm:
    """Mdm of one SCC block of g; unit edge lengths before smoothing."""
    block = np.asarray(block, dtype=np.int64)
    if len(block) == 0:
        raise ValueError("empty block")
    anchor = int(block.min())
    if len(block) == 1:
        return loop(0.0)  # singletons all collapse to the trivial loop
    members = sorted(int(v) for v in block)
    member_set = set(members)
    index = {v: i for i, v in enumerate(members)}
    indptr, targets = g.out_adjacency()
    edges: list[tuple[int, int, float]] = []
    pairs: list[tuple[int, int]] = []
    for v in members:
        for w in targets[indptr[v - 1] : indptr[v]]:
            if int(w) in member_set:
                edges.append((v, int(w), 1.0))
                pairs.append((index[v], index[int(w)]))
    labels = _strong_labels_multi(len(members), pairs)
    if len(set(labels)) != 1:
        raise ValueError("block is not strongly connected")
    return smooth_block_edges(edges, anchor=anchor)


def ranked_scc_sequence(g: DirectedGraph, k: int) -> list[Mdm]:
    """Top-k SCCs by (vertex count desc, smallest label asc), as Mdms.

    Shorter lists are padded with the trivial loop.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    part = tarjan_scc(g)
    blocks = part.blocks()
    ranked = sorted(blocks, key=lambda b: (-len(b), int(b.min())))
    out = [component_to_mdm(g, b) for b in ranked[:k]]
    while len(out) < k:
        out.append(loop(0.0))
    return out


# --- back-edge marking on plane trees --------------------------------------


@dataclass(frozen=True)
class MarkedBackEdges:
    pairs: tuple[tuple[int, int], ...]  # in marking order

    @property
    def count(self) -> int:
        return len(self.pairs)


def mark_back_edges(tree: PlaneTree, back_edges) -> MarkedBackEdges:
    """Mark back edges reachable through the growing union of root paths.

    The first marked edge is the planar-lexicographically smallest ancestral
    back edge; each later step marks the smallest unmarked edge whose head
    lies on a marked tail's root path or on its own tail's root path.
    """
    pos = tree.pos
    B = sorted(
        {(int(x), int(y)) for x, y in back_edges},
        key=lambda e: (pos[e[0]], pos[e[1]]),
    )
    for x, y in B:
        if pos[y] >= pos[x]:
            raise ValueError(f"({x}, {y}) is not decreasing in planar order")

    on_paths = np.zeros(tree.n + 1, dtype=bool)

    def flag_path(v: int) -> None:
        while v != 0 and not on_paths[v]:
            on_paths[v] = True
            v = int(tree.parent[v])

    marked: list[tuple[int, int]] = []
    used = [False] * len(B)
    progress = True
    first = True
    while progress:
        progress = False
        for i, (x, y) in enumerate(B):
            if used[i]:
                continue
            if first:
                hit = tree.is_ancestor(y, x)
            else:
                hit = bool(on_paths[y]) or tree.is_ancestor(y, x)
            if hit:
                used[i] = True
                marked.append((x, y))
                flag_path(x)
                first = False
                progress = True
                break
    return MarkedBackEdges(tuple(marked))


def star_reduction(tree: PlaneTree, back_edges) -> DirectedGraph:
    """Tree edges oriented away from the root plus marked back edges only."""
    marked = mark_back_edges(tree, back_edges)
    pairs = tree.tree_edges() + list(marked.pairs)
    return DirectedGraph.from_pairs(tree.n, pairs)


def tree_with_back_edges(tree: PlaneTree, back_edges) -> DirectedGraph:
    """Tree edges oriented away from the root plus all given back edges."""
    pairs = tree.tree_edges() + [(int(x), int(y)) for x, y in set(back_edges)]
    return DirectedGraph.from_pairs(tree.n, pairs)


def scc_count_bound(g: DirectedGraph, classification) -> tuple[int, int]:
    """(number of SCC blocks with >= 2 vertices, surplus + ancestral count)."""
    part = tarjan_scc(g)
    sizes = np.bincount(part.labels[1:], minlength=part.num_blocks)
    nontrivial = int((sizes >= 2).sum())
    budget = len(classification.surplus) + len(classification.ancestral_back)
    return nontrivial, budget
