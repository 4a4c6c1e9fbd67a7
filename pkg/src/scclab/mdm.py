"""Directed multigraphs with edge lengths and the matching-based distance.

An Mdm is a finite directed multigraph whose edges carry positive lengths;
the single distinguished exception is the trivial loop of length zero, used
to pad component sequences.  Distances compare two multigraphs over all
structure-preserving bijections of vertices and edges and report the
smallest achievable sup-difference of matched edge lengths (infinity when
the underlying multigraphs are not isomorphic).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

FLOAT_TOL = 1e-12


@dataclass(frozen=True)
class MdmEdge:
    tail: int
    head: int
    length: float


@dataclass(frozen=True)
class Mdm:
    vertices: tuple[int, ...]
    edges: tuple[MdmEdge, ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        if not self.vertices:
            raise ValueError("an Mdm needs at least one vertex")
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ValueError(f"edge {e} uses unknown vertex")
            if e.length < 0:
                raise ValueError(f"negative edge length on {e}")
            if e.length == 0 and not (
                len(self.vertices) == 1 and len(self.edges) == 1 and e.tail == e.head
            ):
                raise ValueError("zero length is reserved for the trivial loop")
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(
            self,
            "edges",
            tuple(sorted(self.edges, key=lambda e: (e.tail, e.head, e.length))),
        )

    @property
    def total_length(self) -> float:
        return float(sum(e.length for e in self.edges))

    @property
    def excess(self) -> int:
        return len(self.edges) - len(self.vertices)

    @property
    def is_loop(self) -> bool:
        return (
            len(self.vertices) == 1
            and len(self.edges) == 1
            and self.edges[0].tail == self.edges[0].head
        )

    def degree(self, v: int) -> int:
        """Total degree: in plus out, self-loops counted twice."""
        return sum((e.tail == v) + (e.head == v) for e in self.edges)


def loop(length: float, vertex: int = 0) -> Mdm:
    return Mdm((vertex,), (MdmEdge(vertex, vertex, float(length)),))


#: Trivial loop of length zero, the padding element for component sequences.
L = loop(0.0)


def mdm_stats(x: Mdm) -> dict:
    three_regular = len(x.vertices) > 0 and all(x.degree(v) == 3 for v in x.vertices)
    return {
        "excess": x.excess,
        "total_length": x.total_length,
        "is_loop": x.is_loop,
        "is_three_regular": three_regular,
        "is_complex": not x.is_loop,
    }


# --- canonical codes -------------------------------------------------------


def _stable_colors(x: Mdm) -> dict[int, tuple]:
    """Iterated neighbourhood refinement; invariant under isomorphism."""
    out_mult: dict[tuple[int, int], int] = {}
    for e in x.edges:
        out_mult[(e.tail, e.head)] = out_mult.get((e.tail, e.head), 0) + 1
    color = {
        v: (
            sum(m for (t, _), m in out_mult.items() if t == v),
            sum(m for (_, h), m in out_mult.items() if h == v),
            out_mult.get((v, v), 0),
        )
        for v in x.vertices
    }
    for _ in range(len(x.vertices)):
        new = {}
        for v in x.vertices:
            outs = sorted(
                (m, color[h]) for (t, h), m in out_mult.items() if t == v and h != v
            )
            ins = sorted(
                (m, color[t]) for (t, h), m in out_mult.items() if h == v and t != v
            )
            new[v] = (color[v], tuple(outs), tuple(ins))
        if len(set(new.values())) == len(set(color.values())):
            color = new
            break
        color = new
    return color


def canonical_code(x: Mdm) -> str:
    """String identical for two Mdms iff they are isomorphic ignoring lengths."""
    n = len(x.vertices)
    mult: dict[tuple[int, int], int] = {}
    for e in x.edges:
        mult[(e.tail, e.head)] = mult.get((e.tail, e.head), 0) + 1

    color = _stable_colors(x)
    classes: dict[tuple, list[int]] = {}
    for v in x.vertices:
        classes.setdefault(color[v], []).append(v)
    keys = sorted(classes)
    total = 1
    for k in keys:
        total *= math.factorial(len(classes[k]))
        if total > 2_000_000:
            raise ValueError(
                f"canonical_code: symmetry search too large for {n} vertices"
            )

    best: tuple | None = None
    for perm_parts in itertools.product(
        *(itertools.permutations(classes[k]) for k in keys)
    ):
        ordering = [v for part in perm_parts for v in part]
        index = {v: i for i, v in enumerate(ordering)}
        flat = [0] * (n * n)
        for (t, h), m in mult.items():
            flat[index[t] * n + index[h]] = m
        tup = tuple(flat)
        if best is None or tup < best:
            best = tup
    rows = [
        ",".join(str(c) for c in best[i * n : (i + 1) * n]) for i in range(n)
    ]
    return f"{n}|" + ";".join(rows)


# --- distances -------------------------------------------------------------


def _edge_classes(x: Mdm) -> dict[tuple[int, int], list[float]]:
    classes: dict[tuple[int, int], list[float]] = {}
    for e in x.edges:
        classes.setdefault((e.tail, e.head), []).append(e.length)
    for lens in classes.values():
        lens.sort()
    return classes


def _vertex_signature(x: Mdm, v: int) -> tuple[int, int, int]:
    outs = sum(e.tail == v for e in x.edges)
    ins = sum(e.head == v for e in x.edges)
    selfs = sum(e.tail == v and e.head == v for e in x.edges)
    return (outs, ins, selfs)


def mdm_distance(x: Mdm, y: Mdm) -> float:
    """Infimum over graph isomorphisms of the sup edge-length difference.

    Within a class of parallel edges the optimal pairing matches lengths in
    sorted order, which attains the bottleneck optimum on the line.
    Returns math.inf when no isomorphism exists.
    """
    if len(x.vertices) != len(y.vertices) or len(x.edges) != len(y.edges):
        return math.inf
    sig_x = {v: _vertex_signature(x, v) for v in x.vertices}
    sig_y = {v: _vertex_signature(y, v) for v in y.vertices}
    if sorted(sig_x.values()) != sorted(sig_y.values()):
        return math.inf

    cls_x = _edge_classes(x)
    cls_y = _edge_classes(y)
    xs = sorted(x.vertices, key=lambda v: (sig_x[v], v))
    best = math.inf

    def extend(i: int, mapping: dict[int, int], used: set[int], cost: float) -> None:
        nonlocal best
        if cost >= best:
            return
        if i == len(xs):
            best = cost
            return
        u = xs[i]
        for w in y.vertices:
            if w in used or sig_y[w] != sig_x[u]:
                continue
            ok = True
            new_cost = cost
            trial = mapping | {u: w}
            for a in trial:
                for pair, img in (((u, a), (w, trial[a])), ((a, u), (trial[a], w))):
                    if a == u and pair != (u, u):
                        continue
                    lx = cls_x.get(pair, [])
                    ly = cls_y.get(img, [])
                    if len(lx) != len(ly):
                        ok = False
                        break
                    if lx:
                        d = max(abs(p - q) for p, q in zip(lx, ly))
                        new_cost = max(new_cost, d)
                if not ok or new_cost >= best:
                    ok = False
                    break
            if ok:
                extend(i + 1, trial, used | {w}, new_cost)

    extend(0, {}, set(), 0.0)
    return best


def sequence_distance(xs: list[Mdm], ys: list[Mdm], k: int | None = None) -> float:
    """Sum of the first k per-index distances, short lists padded with L.

    k defaults to the longer length, which covers every non-padding term.
    """
    if k is None:
        k = max(len(xs), len(ys))
    elif k < 1:
        raise ValueError("truncation k must be at least 1")
    total = 0.0
    for i in range(k):
        a = xs[i] if i < len(xs) else L
        b = ys[i] if i < len(ys) else L
        d = mdm_distance(a, b)
        if math.isinf(d):
            return math.inf
        total += d
    return total


# --- serialization ---------------------------------------------------------


def mdm_to_json(x: Mdm) -> str:
    return json.dumps(
        {
            "vertices": list(x.vertices),
            "edges": [[e.tail, e.head, e.length] for e in x.edges],
        }
    )


def mdm_from_json(text: str) -> Mdm:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise ValueError("malformed Mdm JSON: need 'vertices' and 'edges'")
    edges = tuple(MdmEdge(int(t), int(h), float(l)) for t, h, l in obj["edges"])
    return Mdm(tuple(int(v) for v in obj["vertices"]), edges)
