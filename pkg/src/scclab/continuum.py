"""Identification processes on excursion-coded real trees.

An excursion path f on [0, sigma] encodes a rooted tree: points of [0, sigma]
at height f, glued along running minima.  The identification process marks
the tree sequentially.  The first mark time is the first point of a Poisson
process with intensity f(t)dt; after i marks the intensity at t > s_i is

    l_i(t) = sum_{j<=i} (f(s_j) - fhat(s_{j-1}, s_j)) + f(t) - fhat(s_i, t),

with fhat the running minimum between two times, which equals the total
length of the reduced tree spanned by the root, the marked leaves and the
point at t.  Each mark picks a partner point y uniformly (by length) on that
reduced tree; the mark is ancestral when y lies on the new leaf's root path.
Ancestral mark times alone form a Poisson process with intensity f(t)dt.

Excursions are simulated on a uniform grid.  The standard excursion is the
norm of a three-dimensional Brownian bridge pinned at zero, which has the
exact excursion law at the grid nodes (a cyclic-shift construction was tried
first but its extreme-value discretisation bias is O(m**-0.5), far too large
for the statistical gates used here).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .mdm import Mdm
from .rng import make_rng
from .scc import _strong_labels_multi, smooth_block_edges


class RunawayMarkingError(RuntimeError):
    """Raised when the identification process exceeds its mark cap."""


class DegenerateTiltWarning(UserWarning):
    """Importance resampling pool has effective sample size below 10."""


@dataclass
class ExcursionPath:
    """Piecewise-linear excursion on [0, sigma] over a uniform grid.

    values has m+1 entries; both endpoints are exactly zero and interior
    values are strictly positive.
    """

    sigma: float
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")
        if self.values.ndim != 1 or len(self.values) < 2:
            raise ValueError("values must be a 1-d array with at least 2 entries")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")
        if self.values[0] != 0.0 or self.values[-1] != 0.0:
            raise ValueError("excursion must start and end at exactly zero")
        if len(self.values) > 2 and np.any(self.values[1:-1] <= 0.0):
            raise ValueError("interior excursion values must be strictly positive")

    @property
    def m(self) -> int:
        return len(self.values) - 1

    @property
    def h(self) -> float:
        return self.sigma / self.m

    @property
    def max_value(self) -> float:
        return float(self.values.max())

    @property
    def area(self) -> float:
        # trapezoid rule; endpoint values are zero
        return float(self.values.sum() * self.h)

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.sigma, self.m + 1)

    def value_at(self, t) -> np.ndarray | float:
        return np.interp(t, self.grid(), self.values)

    def scaled(self, factor: float) -> "ExcursionPath":
        return ExcursionPath(self.sigma, self.values * factor)

    def range_min(self, a: float, b: float) -> float:
        """Minimum of the piecewise-linear path over [a, b]."""
        if a > b:
            a, b = b, a
        h = self.h
        ja = math.ceil(a / h - 1e-12)
        jb = math.floor(b / h + 1e-12)
        out = min(float(self.value_at(a)), float(self.value_at(b)))
        if ja <= jb:
            out = min(out, float(self.values[ja : jb + 1].min()))
        return out


def _unit_excursions(rng: np.random.Generator, count: int, m: int) -> np.ndarray:
    """(count, m+1) standard excursions on [0, 1], exact at the grid nodes."""
    inc = rng.standard_normal((count, 3, m)) * math.sqrt(1.0 / m)
    w = np.concatenate([np.zeros((count, 3, 1)), np.cumsum(inc, axis=2)], axis=2)
    t = np.linspace(0.0, 1.0, m + 1)
    bridge = w - t * w[:, :, -1:]
    e = np.sqrt((bridge**2).sum(axis=1))
    e[:, 0] = 0.0
    e[:, -1] = 0.0
    return e


def sample_excursion(sigma: float, m: int, seed: int) -> ExcursionPath:
    """Brownian excursion of length sigma on an m-interval grid."""
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    if m < 8:
        raise ValueError(f"need at least 8 grid intervals, got {m}")
    rng = make_rng(seed)
    unit = _unit_excursions(rng, 1, m)[0]
    return ExcursionPath(sigma, math.sqrt(sigma) * unit)


def sample_tilted_excursion(
    sigma: float, m: int, K: int, seed: int
) -> ExcursionPath:
    """Excursion of length sigma reweighted by exp(integral of the path).

    Sampling-importance-resampling with a pool of K standard excursions and
    weights exp(sigma**1.5 * unit area); the tilt is unbounded so rejection
    sampling is not an option.  Warns (DegenerateTiltWarning) when the pool's
    effective sample size drops below 10.
    """
    if not (np.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be positive, got {sigma}")
    if m < 8:
        raise ValueError(f"need at least 8 grid intervals, got {m}")
    if K < 100:
        raise ValueError(f"proposal pool must have at least 100 entries, got {K}")
    rng = make_rng(seed)
    unit = _unit_excursions(rng, K, m)
    areas = unit.sum(axis=1) / m
    logw = sigma**1.5 * areas
    w = np.exp(logw - logw.max())
    ess = w.sum() ** 2 / (w**2).sum()
    if ess < 10.0:
        warnings.warn(
            f"tilted excursion pool nearly degenerate (ESS {ess:.2f} < 10); "
            "increase K",
            DegenerateTiltWarning,
            stacklevel=2,
        )
    pick = int(rng.choice(K, p=w / w.sum()))
    return ExcursionPath(sigma, math.sqrt(sigma) * unit[pick])


def triangle_path(sigma: float = 2.0, m: int = 2000) -> ExcursionPath:
    """Deterministic tent: rises with slope 1 to sigma/2, then falls."""
    t = np.linspace(0.0, sigma, m + 1)
    return ExcursionPath(sigma, np.minimum(t, sigma - t))


# --- reduced trees ---------------------------------------------------------


class ReducedTree:
    """Finite tree of marked points: nodes carry heights, edges go upward.

    Node 0 is the root at height zero.  Every non-root node defines the
    segment from its parent to itself of length height[v] - height[parent].
    """

    def __init__(self) -> None:
        self.parent: list[int | None] = [None]
        self.height: list[float] = [0.0]

    def __len__(self) -> int:
        return len(self.height)

    def _new_node(self, parent: int, height: float) -> int:
        self.parent.append(parent)
        self.height.append(height)
        return len(self.height) - 1

    def root_path(self, v: int) -> list[int]:
        """Node ids from the root up to and including v."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def add_first_leaf(self, height: float) -> int:
        if len(self.height) != 1:
            raise ValueError("tree already has marks")
        return self._new_node(0, height)

    def attach_leaf(self, prev_leaf: int, branch_height: float, leaf_height: float) -> int:
        """New leaf hung at branch_height on prev_leaf's root path.

        When the branch height equals the leaf height (the path dipped to a
        new minimum exactly at the mark) the marked point already lies on
        the tree, so the branch node itself is returned and no zero-length
        segment is created.
        """
        if not 0.0 <= branch_height <= self.height[prev_leaf] + 1e-9:
            raise ValueError("branch height not on the previous leaf's path")
        path = self.root_path(prev_leaf)
        branch = None
        for lo, hi in zip(path, path[1:]):
            if self.height[lo] == branch_height:
                branch = lo
                break
            if self.height[lo] < branch_height < self.height[hi]:
                branch = self._new_node(lo, branch_height)
                self.parent[hi] = branch
                break
        if branch is None:
            branch = path[-1]  # numerically at (or above) the previous leaf
        if self.height[branch] == leaf_height:
            return branch
        return self._new_node(branch, leaf_height)

    def total_length(self) -> float:
        return float(
            sum(
                self.height[v] - self.height[p]
                for v, p in enumerate(self.parent)
                if p is not None
            )
        )

    def locate(self, offset: float) -> int:
        """Node at the given cumulative length offset, splitting if needed.

        Segments are scanned in node-id order, each contributing its length;
        this fixes the measure used for uniform sampling on the tree.
        """
        acc = 0.0
        for v in range(1, len(self.height)):
            p = self.parent[v]
            seg = self.height[v] - self.height[p]
            if offset <= acc + seg or v == len(self.height) - 1:
                at = self.height[p] + max(0.0, min(seg, offset - acc))
                if at == self.height[p]:
                    return p
                if at == self.height[v]:
                    return v
                node = self._new_node(p, at)
                self.parent[v] = node
                return node
            acc += seg
        raise ValueError("offset beyond total length")

    def on_root_path(self, a: int, d: int) -> bool:
        """True when node a lies on the path from the root to node d."""
        v: int | None = d
        while v is not None:
            if v == a:
                return True
            v = self.parent[v]
        return False


@dataclass(frozen=True)
class Mark:
    s: float
    x_node: int
    y_node: int
    ancestral: bool


@dataclass
class MarkedTree:
    path: ExcursionPath
    tree: ReducedTree
    marks: tuple[Mark, ...]

    @property
    def n_marks(self) -> int:
        return len(self.marks)

    @property
    def n_ancestral(self) -> int:
        return sum(mk.ancestral for mk in self.marks)

    @property
    def n_nonancestral(self) -> int:
        return self.n_marks - self.n_ancestral


def _stage_runmin(f: ExcursionPath, start: float) -> tuple[int, np.ndarray, float]:
    """Running minima of f over [start, t_j] for grid nodes t_j >= start."""
    h = f.h
    j0 = math.ceil(start / h - 1e-12)
    f_start = float(f.value_at(start))
    seg = np.minimum.accumulate(f.values[j0:])
    return j0, np.minimum(seg, f_start), f_start


def _fhat(f: ExcursionPath, j0: int, runmin: np.ndarray, start: float, t: float) -> float:
    """min of f over [start, t] using the stage's running-minimum array."""
    h = f.h
    jt = math.floor(t / h + 1e-12)
    ft = float(f.value_at(t))
    if jt < j0:
        return min(float(f.value_at(start)), ft)
    return min(float(runmin[jt - j0]), ft)


def run_identification(f: ExcursionPath, seed: int, cap: int = 64) -> MarkedTree:
    """Run the sequential marking process on the tree coded by f.

    Each stage thins a dominating Poisson stream of rate (accumulated tree
    length + max f) over the remaining window; the accepted time becomes the
    next mark, whose partner is drawn uniformly on the current reduced tree
    extended by the new leaf's root path.  Raises RunawayMarkingError when
    more than `cap` marks accumulate.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    rng = make_rng(seed)
    sigma = f.sigma
    maxf = f.max_value
    tree = ReducedTree()
    marks: list[Mark] = []
    L_acc = 0.0
    s_prev = 0.0
    prev_leaf = -1

    while True:
        i = len(marks)
        if i >= cap:
            raise RunawayMarkingError(
                f"identification produced more than {cap} marks"
            )
        window = sigma - s_prev
        M = L_acc + maxf
        if window <= 0 or M <= 0:
            break
        ncand = int(rng.poisson(M * window))
        if ncand == 0:
            break
        times = np.sort(rng.random(ncand)) * window + s_prev
        coins = rng.random(ncand)
        j0, runmin, _ = _stage_runmin(f, s_prev)
        accepted = None
        for t, u in zip(times, coins):
            fhat = _fhat(f, j0, runmin, s_prev, float(t))
            rate = L_acc + float(f.value_at(t)) - fhat
            # termination bound: the rate for mark i+1 never exceeds (i+1)*maxf
            assert rate <= (i + 1) * maxf * (1 + 1e-9) + 1e-12
            assert rate <= M * (1 + 1e-9) + 1e-12
            if u * M < rate:
                accepted = float(t)
                break
        if accepted is None:
            break
        s = accepted
        fs = float(f.value_at(s))
        fhat_s = _fhat(f, j0, runmin, s_prev, s)
        if i == 0:
            x_node = tree.add_first_leaf(fs)
        else:
            x_node = tree.attach_leaf(prev_leaf, fhat_s, fs)
        L_acc = L_acc + fs - (0.0 if i == 0 else fhat_s)
        total = tree.total_length()
        assert abs(total - L_acc) <= 1e-8 * max(1.0, L_acc), (
            "reduced tree length disagrees with the accumulated rate term"
        )
        y_node = tree.locate(rng.random() * total)
        ancestral = tree.on_root_path(y_node, x_node)
        marks.append(Mark(s, x_node, y_node, ancestral))
        s_prev = s
        prev_leaf = x_node

    return MarkedTree(f, tree, tuple(marks))


def continuum_sccs(mt: MarkedTree) -> list[Mdm]:
    """Components of the marked tree after identifying each leaf with its
    partner: keep only edges inside strongly connected blocks, smooth
    degree-two vertices, and rank by total length, longest first."""
    tree = mt.tree
    if not mt.marks:
        return []
    rep = list(range(len(tree)))
    for mk in mt.marks:
        rep[mk.x_node] = mk.y_node

    def find(v: int) -> int:
        while rep[v] != v:
            v = rep[v]
        return v

    edges = []
    for v in range(1, len(tree)):
        p = tree.parent[v]
        length = tree.height[v] - tree.height[p]
        edges.append((find(p), find(v), length))

    labels = _strong_labels_multi(len(tree), [(a, b) for a, b, _ in edges])
    per_block: dict[int, list[tuple[int, int, float]]] = {}
    for a, b, length in edges:
        if labels[a] == labels[b]:
            per_block.setdefault(int(labels[a]), []).append((a, b, length))
    comps = [
        smooth_block_edges(block_edges, anchor=min(min(a, b) for a, b, _ in block_edges))
        for block_edges in per_block.values()
    ]
    comps.sort(key=lambda c: (-c.total_length, c.vertices[0]))
    return comps


# --- densities -------------------------------------------------------------


def _segment_integral(f: ExcursionPath, a: float, b: float, base: float) -> float:
    """integral over [a, b] of f(t) - min(f over [a, t]) + base dt."""
    if b <= a:
        return 0.0
    h = f.h
    ja = math.ceil(a / h - 1e-12)
    jb = math.floor(b / h + 1e-12)
    nodes = np.arange(ja, jb + 1) * h
    xs = np.concatenate([[a], nodes, [b]])
    keep = np.concatenate([[True], (nodes > a + 1e-15) & (nodes < b - 1e-15), [True]])
    xs = xs[keep]
    fv = np.asarray(f.value_at(xs))
    rm = np.minimum.accumulate(fv)
    return float(np.trapezoid(fv - rm + base, xs))


def mark_density(f: ExcursionPath, times) -> float:
    """Joint density of the first n mark times at the given increasing times.

    The n = 0 value is the probability of no marks at all, exp(-area).
    """
    times = [float(t) for t in times]
    if any(t1 >= t2 for t1, t2 in zip(times, times[1:])):
        raise ValueError("mark times must be strictly increasing")
    if times and (times[0] <= 0 or times[-1] >= f.sigma):
        raise ValueError("mark times must lie strictly inside (0, sigma)")
    L_acc = 0.0
    prev = 0.0
    product = 1.0
    exponent = 0.0
    for t in times:
        exponent += _segment_integral(f, prev, t, L_acc)
        L_acc += float(f.value_at(t)) - f.range_min(prev, t)
        product *= L_acc
        prev = t
    exponent += _segment_integral(f, prev, f.sigma, L_acc)
    return product * math.exp(-exponent)


def no_nonancestral_prob(f: ExcursionPath, s1: float) -> float:
    """P[no non-ancestral marks | exactly one ancestral mark, at time s1].

    Equals exp(-integral over [s1, sigma] of (f(s1) - min f over [s1, t]) dt):
    after the single mark the non-ancestral intensity at t is the length of
    the marked path not shared with the root path of t.
    """
    if not 0.0 < s1 <= f.sigma:
        raise ValueError(f"s1 must lie in (0, sigma], got {s1}")
    if s1 == f.sigma:
        return 1.0
    h = f.h
    ja = math.ceil(s1 / h - 1e-12)
    nodes = np.arange(ja, f.m + 1) * h
    xs = np.concatenate([[s1], nodes[nodes > s1 + 1e-15]])
    fv = np.asarray(f.value_at(xs))
    rm = np.minimum.accumulate(fv)
    fs1 = float(f.value_at(s1))
    integral = float(np.trapezoid(fs1 - rm, xs))
    return math.exp(-integral)
