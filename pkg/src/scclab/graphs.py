"""Random digraph models at and around the critical window.

Vertices are labelled 1..n.  Graphs are immutable after construction: treat
the edge arrays as read-only.  Sampling uses a single Philox stream per call
(see rng.py), with a dense matrix path for small n and a per-row binomial
path for large sparse graphs; both are exact samplers of G(n, p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rng import make_rng, validate_seed

_DENSE_LIMIT = 2048


def critical_probability(n: int, lam: float) -> float:
    """Edge probability 1/n + lam * n**(-4/3), clamped to [0, 1].

    Parameters
    ----------
    n : number of vertices, at least 2.
    lam : location inside the critical window; any float.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    p = 1.0 / n + lam * float(n) ** (-4.0 / 3.0)
    return min(1.0, max(0.0, p))


def _validate_pairs(n: int, edges: np.ndarray, directed: bool) -> np.ndarray:
    edges = np.asarray(edges, dtype=np.int64)
    if edges.size == 0:
        return edges.reshape(0, 2)
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise ValueError("edges must be an array of (tail, head) pairs")
    if edges.min() < 1 or edges.max() > n:
        raise ValueError("vertex labels must lie in 1..n")
    if np.any(edges[:, 0] == edges[:, 1]):
        raise ValueError("self-loops are not allowed")
    if not directed and np.any(edges[:, 0] > edges[:, 1]):
        raise ValueError("undirected edges must be stored with tail < head")
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    edges = edges[order]
    dup = np.all(edges[1:] == edges[:-1], axis=1)
    if np.any(dup):
        raise ValueError("duplicate edges are not allowed")
    return edges


@dataclass
class DirectedGraph:
    """Simple directed graph on vertices 1..n (no self-loops, no multi-edges)."""

    n: int
    edges: np.ndarray  # (m, 2) int64, lexicographically sorted
    _csr: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        self.n = int(self.n)
        self.edges = _validate_pairs(self.n, self.edges, directed=True)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "DirectedGraph":
        return cls(n, np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def out_adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR arrays (indptr, targets); targets ascending within each row.

        Row for vertex v is targets[indptr[v-1]:indptr[v]].
        """
        if self._csr is None:
            counts = np.bincount(self.edges[:, 0], minlength=self.n + 1)[1:]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            # edges are lexicographically sorted, so heads are already grouped
            # by tail and ascending within each group
            self._csr = (indptr, self.edges[:, 1].copy())
        return self._csr


@dataclass
class UndirectedGraph:
    """Simple undirected graph on 1..n; edges stored as (min, max) pairs."""

    n: int
    edges: np.ndarray
    _csr: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        self.n = int(self.n)
        self.edges = _validate_pairs(self.n, self.edges, directed=False)

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "UndirectedGraph":
        norm = sorted((min(u, v), max(u, v)) for u, v in pairs)
        return cls(n, np.array(norm, dtype=np.int64).reshape(-1, 2))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """Symmetric CSR (indptr, targets), targets ascending per row."""
        if self._csr is None:
            both = np.concatenate([self.edges, self.edges[:, ::-1]])
            order = np.lexsort((both[:, 1], both[:, 0]))
            both = both[order]
            counts = np.bincount(both[:, 0], minlength=self.n + 1)[1:]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._csr = (indptr, both[:, 1].copy())
        return self._csr


def _check_np(n: int, p: float) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")


def _sparse_rows(rng: np.random.Generator, sizes: np.ndarray, p: float):
    """For each row r draw Binomial(sizes[r], p) distinct targets in 0..sizes[r]-1.

    Returns (rows, cols) index arrays.  Targets are w.r.t. the row-local range;
    callers map them to vertex labels.  Exact: conditioned on its count, each
    row's target set is uniform (first-k-distinct of an i.i.d. uniform stream).
    """
    counts = rng.binomial(sizes, p)
    rows = np.repeat(np.arange(len(sizes)), counts)
    u = rng.random(counts.sum())
    cols = (u * sizes[rows]).astype(np.int64)
    key = rows * (sizes.max() + 1 if len(sizes) else 1) + cols
    _, first = np.unique(key, return_index=True)
    if len(first) != len(key):
        keep = np.zeros(len(key), dtype=bool)
        keep[first] = True
        chosen: dict[int, set[int]] = {}
        for r, c in zip(rows[~keep], cols[~keep]):
            s = chosen.setdefault(int(r), set(cols[keep][rows[keep] == r]))
            while True:
                c2 = int(rng.random() * sizes[r])
                if c2 not in s:
                    s.add(c2)
                    break
        extra_r = []
        extra_c = []
        for r, s in chosen.items():
            have = set(cols[keep][rows[keep] == r])
            for c in s - have:
                extra_r.append(r)
                extra_c.append(c)
        rows = np.concatenate([rows[keep], np.array(extra_r, dtype=np.int64)])
        cols = np.concatenate([cols[keep], np.array(extra_c, dtype=np.int64)])
    return rows, cols


def sample_directed_gnp(n: int, p: float, seed: int) -> DirectedGraph:
    """Directed G(n, p): each ordered pair (u, v), u != v, is an edge w.p. p."""
    _check_np(n, p)
    rng = make_rng(seed)
    if n <= _DENSE_LIMIT:
        mask = rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        tails, heads = np.nonzero(mask)
        edges = np.column_stack([tails + 1, heads + 1])
    else:
        sizes = np.full(n, n - 1, dtype=np.int64)
        rows, cols = _sparse_rows(rng, sizes, p)
        cols = cols + (cols >= rows)  # skip the diagonal
        edges = np.column_stack([rows + 1, cols + 1])
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    return DirectedGraph(n, edges)


def sample_undirected_gnp(n: int, p: float, seed: int) -> UndirectedGraph:
    """Undirected G(n, p): each unordered pair is an edge w.p. p."""
    _check_np(n, p)
    rng = make_rng(seed)
    if n <= _DENSE_LIMIT:
        mask = np.triu(rng.random((n, n)) < p, k=1)
        tails, heads = np.nonzero(mask)
        edges = np.column_stack([tails + 1, heads + 1])
    else:
        sizes = (n - 1) - np.arange(n, dtype=np.int64)  # row r pairs with r+1..n-1
        rows, cols = _sparse_rows(rng, sizes, p)
        edges = np.column_stack([rows + 1, rows + cols + 2])
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    return UndirectedGraph(n, edges)


# --- text serialization ----------------------------------------------------


def write_graph(g: DirectedGraph | UndirectedGraph) -> str:
    """Newline-delimited text: header `n=<int> directed=<0|1>`, then `i j` lines."""
    directed = 1 if isinstance(g, DirectedGraph) else 0
    lines = [f"n={g.n} directed={directed}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> DirectedGraph | UndirectedGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    header = lines[0].split()
    if (
        len(header) != 2
        or not header[0].startswith("n=")
        or not header[1].startswith("directed=")
    ):
        raise ValueError(f"malformed header: {lines[0]!r}")
    n = int(header[0][2:])
    directed = header[1][9:]
    if directed not in ("0", "1"):
        raise ValueError(f"directed flag must be 0 or 1, got {directed!r}")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    cls = DirectedGraph if directed == "1" else UndirectedGraph
    return cls(n, arr)
