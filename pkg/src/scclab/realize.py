"""Building plane trees with backward pairings that realize 3-regular
strongly connected multigraphs.

Every vertex of such a multigraph has in- and out-degree (1,2) or (2,1).
The open-edge construction grows a plane tree depth-first: it seeds a
root - rho0 - a1 chain, then repeatedly extends the leftmost deepest vertex
with unfinished out-edges.  An edge whose head is new grows the tree; an
edge whose head was already placed becomes a leaf paired backwards with
that head (or with rho0 when the head is the seed vertex a1).  Identifying
each leaf with its partner and cutting back to strongly connected pieces
recovers the original multigraphs, one per subtree, with a single
degree-two vertex (the rho0 copy) absorbed along the way.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mdm import Mdm, canonical_code
from .scc import _strong_labels_multi, smooth_block_edges
from .trees import PlaneTree


@dataclass(frozen=True)
class PlaneTreeWithPairs:
    """Plane tree with out-degrees <= 2 plus leaf-to-vertex pairings.

    Each pair (x, y) matches a leaf x to a distinct internal vertex y of
    out-degree one, with y visited before x in depth-first order.  The x's
    enumerate all leaves in planar order.  One out-degree-one internal
    vertex (pure root scaffolding) stays unpaired.
    """

    tree: PlaneTree
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        t = self.tree
        degs = [0] + [len(t.children[v - 1]) for v in range(1, t.n + 1)]
        if any(d > 2 for d in degs[1:]):
            raise ValueError("plane tree must have out-degrees at most 2")
        # a lone root is bare scaffolding, not an identification site
        leaves = [] if t.n == 1 else [int(v) for v in t.order if degs[v] == 0]
        xs = [x for x, _ in self.pairs]
        ys = [y for _, y in self.pairs]
        if xs != leaves:
            raise ValueError("pairs must list every leaf exactly once, in planar order")
        if len(set(ys)) != len(ys):
            raise ValueError("pair targets must be distinct")
        for x, y in self.pairs:
            if degs[y] != 1:
                raise ValueError(f"pair target {y} is not an out-degree-1 internal vertex")
            if t.pos[y] >= t.pos[x]:
                raise ValueError(f"pair target {y} must precede leaf {x} in planar order")


def _degree_split(g: Mdm) -> tuple[dict[int, int], dict[int, int]]:
    outs = {v: 0 for v in g.vertices}
    ins = {v: 0 for v in g.vertices}
    for e in g.edges:
        outs[e.tail] += 1
        ins[e.head] += 1
    return outs, ins


def _check_three_regular_scc(g: Mdm) -> None:
    outs, ins = _degree_split(g)
    for v in g.vertices:
        if (ins[v], outs[v]) not in ((1, 2), (2, 1)):
            raise ValueError(
                f"vertex {v} has degrees in={ins[v]} out={outs[v]}; need (1,2) or (2,1)"
            )
    index = {v: i for i, v in enumerate(g.vertices)}
    labels = _strong_labels_multi(
        len(g.vertices), [(index[e.tail], index[e.head]) for e in g.edges]
    )
    if len(set(int(x) for x in labels)) != 1:
        raise ValueError("multigraph is not strongly connected")


class _Builder:
    """Mutable tree state shared by the per-graph construction."""

    def __init__(self) -> None:
        self.children: list[list[int]] = [[]]  # 1-based; index 0 unused
        self.depth: list[int] = [0]
        self.n = 0

    def new_node(self, parent: int | None) -> int:
        self.n += 1
        self.children.append([])
        if parent is None:
            self.depth.append(0)
        else:
            self.children[parent].append(self.n)
            self.depth.append(self.depth[parent] + 1)
        return self.n


def _realize_one(g: Mdm, builder: _Builder, attach: int | None, pairs: list) -> int:
    """Grow one gadget subtree for g; returns the gadget root.

    The gadget root is created as a child of `attach` (or as the global
    root) and keeps out-degree 1 within this gadget, so the caller may hang
    the next gadget under it.
    """
    outs, ins = _degree_split(g)
    a_set = sorted(v for v in g.vertices if outs[v] == 2)
    b_set = set(v for v in g.vertices if outs[v] == 1)
    first = min(
        ((e.tail, e.head) for e in g.edges if e.tail in b_set and e.head in a_set),
        default=None,
    )
    if first is None:  # unreachable for strongly connected input
        raise ValueError("no edge from an (in 2, out 1) vertex to an (in 1, out 2) vertex")
    a1 = first[1]

    # out-edges per vertex, lowest-indexed first; a pointer tracks featuring
    out_edges: dict[int, list[int]] = {v: [] for v in g.vertices}
    for e in sorted(g.edges, key=lambda e: (e.tail, e.head)):
        out_edges[e.tail].append(e.head)
    cursor = {v: 0 for v in g.vertices}

    root = builder.new_node(attach)
    rho0 = builder.new_node(root)
    a1_node = builder.new_node(rho0)
    node_of = {a1: a1_node}
    open_stubs = {a1_node: outs[a1]}
    g_at = {a1_node: a1}

    while open_stubs:
        z = max(open_stubs, key=lambda v: (builder.depth[v], -v))
        gz = g_at[z]
        u = out_edges[gz][cursor[gz]]
        cursor[gz] += 1
        if u not in node_of:
            w = builder.new_node(z)
            node_of[u] = w
            g_at[w] = u
            if outs[u] > 0:
                open_stubs[w] = outs[u]
        elif u != a1:
            x = builder.new_node(z)
            pairs.append((x, node_of[u]))
        else:
            x = builder.new_node(z)
            pairs.append((x, rho0))
        open_stubs[z] -= 1
        if open_stubs[z] == 0:
            del open_stubs[z]
    return root


def realize_sequence(gs: list[Mdm]) -> PlaneTreeWithPairs:
    """Plane tree plus pairings whose identification recovers gs in order.

    Each input must be strongly connected with every vertex of total degree
    three.  Edge lengths are ignored.  Ties in the construction are broken
    deterministically: the seed pair minimises (tail, head) over existing
    edges from an (in 2, out 1) vertex to an (in 1, out 2) vertex, and
    out-edges are featured in sorted order.
    """
    for g in gs:
        _check_three_regular_scc(g)
    builder = _Builder()
    pairs: list[tuple[int, int]] = []
    if not gs:
        builder.new_node(None)
    else:
        attach: int | None = None
        for g in gs:
            attach = _realize_one(g, builder, attach, pairs)
    tree = PlaneTree(builder.n, 1, tuple(tuple(c) for c in builder.children[1:]))
    # the construction emits vertices in depth-first order; keep that exact
    assert list(tree.order) == list(range(1, tree.n + 1))
    # pairs were appended in leaf-creation order, which is planar order
    return PlaneTreeWithPairs(tree, tuple(pairs))


def apply_identifications(
    tp: PlaneTreeWithPairs, expect_single_degree_two: bool = False
) -> list[Mdm]:
    """Identify each leaf with its partner and extract the SCC multigraphs.

    Tree edges are oriented away from the root with unit length; components
    are returned in planar order of their earliest vertex, each smoothed so
    degree-two vertices disappear into longer edges.  When
    expect_single_degree_two is set, every component must contain exactly
    one degree-two vertex before smoothing (the construction of
    realize_sequence guarantees this).
    """
    t = tp.tree
    rep = list(range(t.n + 1))
    for x, y in tp.pairs:
        rep[x] = y

    def find(v: int) -> int:
        while rep[v] != v:
            v = rep[v]
        return v

    edges = [(find(p), find(c)) for p, c in (
        (int(t.parent[v]), v) for v in range(1, t.n + 1) if t.parent[v] != 0
    )]
    labels = _strong_labels_multi(t.n + 1, edges)
    per_block: dict[int, list[tuple[int, int, float]]] = {}
    for a, b in edges:
        if labels[a] == labels[b]:
            per_block.setdefault(int(labels[a]), []).append((a, b, 1.0))
    out = []
    for block_edges in per_block.values():
        if expect_single_degree_two:
            deg: dict[int, int] = {}
            for a, b, _ in block_edges:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            two = [v for v, d in sorted(deg.items()) if d == 2]
            if len(two) != 1:
                raise AssertionError(
                    f"component has {len(two)} degree-two vertices, expected exactly 1"
                )
        anchor = min(min(a, b) for a, b, _ in block_edges)
        out.append((anchor, smooth_block_edges(block_edges, anchor=anchor)))
    out.sort(key=lambda rec: rec[0])
    return [m for _, m in out]


def roundtrip_codes(gs: list[Mdm]) -> tuple[bool, list[str], list[str]]:
    """Realize gs, identify back, and compare canonical codes componentwise."""
    tp = realize_sequence(gs)
    back = apply_identifications(tp, expect_single_degree_two=True)
    want = [canonical_code(g) for g in gs]
    got = [canonical_code(g) for g in back]
    return want == got, want, got


def catalog_small() -> list[Mdm]:
    """All 3-regular strongly connected multigraphs on 2 or 4 vertices,
    one representative per isomorphism class, by exhaustive search."""
    from itertools import combinations_with_replacement, product

    found: dict[str, Mdm] = {}
    for nv in (2, 4):
        half = nv // 2
        verts = list(range(nv))
        a_vs, b_vs = verts[:half], verts[half:]
        per_vertex = []
        for v in verts:
            k = 2 if v in a_vs else 1
            per_vertex.append(list(combinations_with_replacement(verts, k)))
        for choice in product(*per_vertex):
            pairs = [(v, h) for v, heads in zip(verts, choice) for h in heads]
            ins = {v: 0 for v in verts}
            for _, h in pairs:
                ins[h] += 1
            if any(ins[v] != 1 for v in a_vs) or any(ins[v] != 2 for v in b_vs):
                continue
            labels = _strong_labels_multi(nv, pairs)
            if len(set(int(x) for x in labels)) != 1:
                continue
            g = Mdm(tuple(verts), tuple_edges(pairs))
            code = canonical_code(g)
            if code not in found:
                found[code] = g
    return list(found.values())


def tuple_edges(pairs: list[tuple[int, int]]):
    from .mdm import MdmEdge

    return tuple(MdmEdge(int(a), int(b), 1.0) for a, b in sorted(pairs))
