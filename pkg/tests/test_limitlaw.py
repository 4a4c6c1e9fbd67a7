"""Reflected drift paths: excursion extraction and the component sampler.

With noise_scale=0 the path is the exact parabola lam*t - t**2/2, so zero
sets, excursion lengths and moment sums have closed forms; those pin the
plumbing before any randomness enters.
"""

import numpy as np
import pytest

from scclab.limitlaw import (
    DriftPath,
    excursion_moment_sum,
    extract_excursions,
    sample_drift_path,
    sample_limit_components,
)
from scclab.mdm import canonical_code
from scclab.rng import derive_seed


# --- deterministic parabola -------------------------------------------------


def test_parabola_single_excursion_length_two():
    # lam=1: t - t^2/2 is positive exactly on (0, 2), then decreasing, so
    # the reflected path carries one completed excursion of length 2
    path = sample_drift_path(1.0, 4.0, 0.01, seed=5, noise_scale=0.0)
    excs = extract_excursions(path)
    assert len(excs) == 1
    start, node, exc = excs[0]
    assert start == 0.0 and node == 0
    assert exc.sigma == pytest.approx(2.0, rel=1e-12)
    assert exc.max_value == pytest.approx(0.5, rel=1e-9)


def test_parabola_strictly_decreasing_reflects_to_zero():
    # lam=0: -t^2/2 sets a new minimum at every node, reflected path is
    # identically zero, no excursions, zero moment sums
    path = sample_drift_path(0.0, 2.0, 0.01, seed=5, noise_scale=0.0)
    assert np.all(path.reflected() == 0.0)
    assert extract_excursions(path) == []
    assert excursion_moment_sum(path, 1.5) == 0.0


def test_incomplete_final_excursion_dropped():
    # lam=2: positive until t=4, horizon 2 cuts it off mid-flight
    path = sample_drift_path(2.0, 2.0, 0.01, seed=5, noise_scale=0.0)
    assert extract_excursions(path) == []
    assert excursion_moment_sum(path, 2.0) == 0.0


def test_parabola_moment_sums_match_sigma():
    path = sample_drift_path(1.0, 4.0, 0.01, seed=5, noise_scale=0.0)
    (_, _, exc), = extract_excursions(path)
    assert excursion_moment_sum(path, 1.0) == pytest.approx(exc.sigma)
    assert excursion_moment_sum(path, 1.5) == pytest.approx(exc.sigma**1.5)


# --- hand-built path --------------------------------------------------------


def hand_path():
    # reflected = [0, 2, 0, 0, 3, 2, 0, 0]: excursions of lengths 2 and 3
    return DriftPath(0.0, 7.0, 1.0, np.array([0.0, 2, 0, -1, 2, 1, -1, -2]))


def test_hand_path_excursions():
    excs = extract_excursions(hand_path())
    assert [(s, j, e.sigma) for s, j, e in excs] == [(0.0, 0, 2.0), (3.0, 3, 3.0)]
    assert list(excs[0][2].values) == [0.0, 2.0, 0.0]
    assert list(excs[1][2].values) == [0.0, 3.0, 2.0, 0.0]


def test_hand_path_min_sigma_filter():
    excs = extract_excursions(hand_path(), min_sigma=2.5)
    assert [e.sigma for _, _, e in excs] == [3.0]


def test_hand_path_moment_sums():
    assert excursion_moment_sum(hand_path(), 1.0) == 5.0
    assert excursion_moment_sum(hand_path(), 2.0) == 13.0


# --- validation -------------------------------------------------------------


def test_drift_path_validation():
    good = np.zeros(8)
    with pytest.raises(ValueError, match="horizon"):
        DriftPath(0.0, -1.0, 1.0, good)
    with pytest.raises(ValueError, match="step"):
        DriftPath(0.0, 7.0, 0.0, good)
    with pytest.raises(ValueError, match="lambda"):
        DriftPath(np.nan, 7.0, 1.0, good)
    with pytest.raises(ValueError, match="samples"):
        DriftPath(0.0, 7.0, 1.0, np.zeros(5))
    with pytest.raises(ValueError, match="start at zero"):
        DriftPath(0.0, 7.0, 1.0, np.ones(8))
    with pytest.raises(ValueError, match="finite"):
        DriftPath(0.0, 7.0, 1.0, np.array([0.0, np.inf, 0, 0, 0, 0, 0, 0]))


def test_sample_drift_path_needs_one_step():
    with pytest.raises(ValueError, match="at least one step"):
        sample_drift_path(0.0, 0.4, 1.0, seed=1)


def test_moment_sum_alpha_validation():
    for alpha in (0.0, -1.5, np.nan):
        with pytest.raises(ValueError, match="alpha"):
            excursion_moment_sum(hand_path(), alpha)


# --- full sampler -----------------------------------------------------------


def test_limit_sample_deterministic():
    a = sample_limit_components(0.0, 5.0, 1e-3, seed=909)
    b = sample_limit_components(0.0, 5.0, 1e-3, seed=909)
    assert [canonical_code(c) for c in a.components] == [
        canonical_code(c) for c in b.components
    ]
    assert [c.total_length for c in a.components] == [
        c.total_length for c in b.components
    ]


def test_limit_sample_sorted_and_counted():
    ls = sample_limit_components(0.0, 6.0, 1e-3, seed=909)
    lengths = [c.total_length for c in ls.components]
    assert lengths == sorted(lengths, reverse=True)
    assert ls.n_loops + ls.n_complex == len(ls.components)
    for start, node, exc in ls.excursions:
        assert start + exc.sigma <= ls.path.horizon + 1e-12
        assert node == round(start / ls.path.step)
        assert exc.sigma >= 10.0 * ls.path.step  # default min_sigma


def test_limit_sample_horizon_extension_keeps_prefix():
    # same seed, longer horizon: the path prefix and every completed
    # excursion inside the shorter window are reproduced exactly
    short = sample_limit_components(0.0, 4.0, 1e-3, seed=909)
    long = sample_limit_components(0.0, 7.0, 1e-3, seed=909)
    m_short = short.path.m
    assert np.array_equal(short.path.values, long.path.values[: m_short + 1])
    short_keys = {(s, j, e.sigma) for s, j, e in short.excursions}
    long_keys = {(s, j, e.sigma) for s, j, e in long.excursions}
    assert short_keys <= long_keys


def test_limit_sample_min_sigma_override():
    ls = sample_limit_components(0.0, 4.0, 1e-3, seed=909, min_sigma=0.5)
    assert all(e.sigma >= 0.5 for _, _, e in ls.excursions)
