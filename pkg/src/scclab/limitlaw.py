"""Reflected drift paths and the component point process they carry.

W(t) + lam*t - t**2/2 reflected at its running minimum decomposes into
excursions; each excursion, doubled, drives one identification process, and
the strongly connected pieces of all marked trees together form the limit
sample.  Long excursions appear early and the quadratic drift makes later
ones rapidly shorter, so truncating the horizon is harmless for component
counts but not for the 3/2-moment of excursion lengths, which keeps growing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .continuum import ExcursionPath, continuum_sccs, run_identification
from .mdm import Mdm
from .rng import derive_seed, make_rng


@dataclass
class DriftPath:
    """Brownian path with drift lam - t on a uniform grid over [0, horizon]."""

    lam: float
    horizon: float
    step: float
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if not (np.isfinite(self.horizon) and self.horizon > 0):
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError(f"step must be positive, got {self.step}")
        if not np.isfinite(self.lam):
            raise ValueError("lambda must be finite")
        m = round(self.horizon / self.step)
        if m < 1 or self.values.shape != (m + 1,):
            raise ValueError(
                f"values must hold horizon/step + 1 = {m + 1} samples, "
                f"got shape {self.values.shape}"
            )
        if self.values[0] != 0.0:
            raise ValueError("path must start at zero")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("path values must be finite")

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def grid(self) -> np.ndarray:
        return np.arange(self.m + 1) * self.step

    def reflected(self) -> np.ndarray:
        """Path minus running minimum; zero exactly at new-minimum nodes."""
        return self.values - np.minimum.accumulate(self.values)


def sample_drift_path(
    lam: float, horizon: float, step: float, seed: int, noise_scale: float = 1.0
) -> DriftPath:
    """Sample W(t) + lam*t - t**2/2 at the grid nodes.

    The drift part is evaluated exactly; only the Brownian increments are
    random.  noise_scale=0 gives the deterministic parabola, which pins down
    every downstream quantity in closed form (used by tests).
    """
    m = round(horizon / step)
    if m < 1:
        raise ValueError("horizon must cover at least one step")
    rng = make_rng(seed)
    t = np.arange(m + 1) * step
    w = np.zeros(m + 1)
    if noise_scale != 0.0:
        w[1:] = np.cumsum(rng.standard_normal(m)) * np.sqrt(step) * noise_scale
    return DriftPath(lam, horizon, step, w + lam * t - 0.5 * t * t)


def extract_excursions(
    path: DriftPath, min_sigma: float = 0.0
) -> list[tuple[float, int, ExcursionPath]]:
    """(start time, start node, excursion) for each completed excursion.

    An excursion is a maximal run of the reflected path strictly above zero,
    bounded by exact zeros on both sides.  A final run still above zero at
    the horizon is incomplete and dropped.  Runs shorter than min_sigma are
    skipped.
    """
    b = path.reflected()
    zeros = np.flatnonzero(b == 0.0)
    out = []
    for j0, j1 in zip(zeros, zeros[1:]):
        if j1 == j0 + 1:
            continue
        sigma = (j1 - j0) * path.step
        if sigma < min_sigma:
            continue
        out.append(
            (float(j0 * path.step), int(j0), ExcursionPath(sigma, b[j0 : j1 + 1]))
        )
    return out


def excursion_moment_sum(path: DriftPath, alpha: float) -> float:
    """Sum of (excursion length)**alpha over all completed excursions."""
    if not (np.isfinite(alpha) and alpha > 0):
        raise ValueError(f"alpha must be positive, got {alpha}")
    b = path.reflected()
    zeros = np.flatnonzero(b == 0.0)
    gaps = np.diff(zeros)
    sigmas = gaps[gaps > 1] * path.step
    return float((sigmas**alpha).sum())


@dataclass
class LimitSample:
    """Components of one reflected drift path after marking every excursion."""

    path: DriftPath
    excursions: list[tuple[float, int, ExcursionPath]]
    components: list[Mdm] = field(default_factory=list)

    @property
    def n_loops(self) -> int:
        return sum(c.is_loop for c in self.components)

    @property
    def n_complex(self) -> int:
        return sum(not c.is_loop for c in self.components)


def sample_limit_components(
    lam: float,
    horizon: float,
    step: float,
    seed: int,
    min_sigma: float | None = None,
    cap: int = 64,
) -> LimitSample:
    """Draw a drift path and mark each excursion's tree independently.

    The excursions of the reflected path carry the correct length-biased
    law, so each is doubled and fed straight to the identification process;
    excursion seeds are derived from the excursion's start node, which keeps
    them stable when only the horizon changes.  min_sigma defaults to ten
    grid steps; shorter excursions are ignored (they almost never carry
    marks and cannot be resolved on the grid anyway).
    """
    if min_sigma is None:
        min_sigma = 10.0 * step
    path = sample_drift_path(lam, horizon, step, derive_seed(seed, 0))
    excursions = extract_excursions(path, min_sigma=min_sigma)
    components: list[tuple[float, float, Mdm]] = []
    for start, node, exc in excursions:
        mt = run_identification(exc.scaled(2.0), derive_seed(seed, 1 + node), cap=cap)
        for c in continuum_sccs(mt):
            components.append((-c.total_length, start, c))
    components.sort(key=lambda rec: rec[:2])
    return LimitSample(path, excursions, [c for _, _, c in components])
