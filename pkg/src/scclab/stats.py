"""Statistical test helpers shared by the experiment harness.

Thin wrappers around scipy with the bin-handling conventions fixed once:
expected counts below five are merged into their right neighbour (the last
bin absorbs any remainder), degrees of freedom follow the merged table, and
empty samples are rejected rather than silently producing NaNs.
"""

from __future__ import annotations

import numpy as np
from scipy import stats as sps


def ks_statistic(a, b) -> dict:
    """Two-sample Kolmogorov-Smirnov test: {"statistic", "p_value"}."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_statistic needs two nonempty samples")
    res = sps.ks_2samp(a, b, method="asymp")
    return {"statistic": float(res.statistic), "p_value": float(res.pvalue)}


def _merge_small_bins(observed: np.ndarray, expected: np.ndarray, floor: float = 5.0):
    """Merge adjacent bins left-to-right until every expected count >= floor."""
    obs_m: list[float] = []
    exp_m: list[float] = []
    acc_o = acc_e = 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= floor:
            obs_m.append(acc_o)
            exp_m.append(acc_e)
            acc_o = acc_e = 0.0
    if acc_e > 0 or acc_o > 0:
        if exp_m:
            obs_m[-1] += acc_o
            exp_m[-1] += acc_e
        else:
            obs_m.append(acc_o)
            exp_m.append(acc_e)
    return np.array(obs_m), np.array(exp_m)


def chi_square(observed, expected_probs) -> dict:
    """One-sample Pearson test of counts against category probabilities.

    Returns {"statistic", "dof", "p_value", "bins"} where bins is the
    number of categories after merging.
    """
    observed = np.asarray(observed, dtype=np.float64)
    expected_probs = np.asarray(expected_probs, dtype=np.float64)
    if observed.shape != expected_probs.shape or observed.ndim != 1:
        raise ValueError("observed and expected_probs must be 1-d with equal shape")
    total_p = expected_probs.sum()
    if not total_p > 0:
        raise ValueError("expected probabilities must have positive mass")
    n = observed.sum()
    if not n > 0:
        raise ValueError("observed counts must be positive")
    expected = expected_probs / total_p * n
    obs_m, exp_m = _merge_small_bins(observed, expected)
    if len(obs_m) < 2:
        return {"statistic": 0.0, "dof": 0, "p_value": 1.0, "bins": len(obs_m)}
    if np.any(exp_m <= 0):
        return {"statistic": float("inf"), "dof": len(obs_m) - 1, "p_value": 0.0,
                "bins": len(obs_m)}
    stat = float(((obs_m - exp_m) ** 2 / exp_m).sum())
    dof = len(obs_m) - 1
    return {
        "statistic": stat,
        "dof": dof,
        "p_value": float(sps.chi2.sf(stat, dof)),
        "bins": len(obs_m),
    }


def two_sample_chi_square(counts_a: dict, counts_b: dict) -> dict:
    """Contingency chi-square comparing two category-count dictionaries.

    Categories are taken in sorted order of the union of keys; categories
    whose pooled expected count falls below five are merged rightwards.
    """
    keys = sorted(set(counts_a) | set(counts_b))
    if not keys:
        raise ValueError("no categories to compare")
    a = np.array([counts_a.get(k, 0) for k in keys], dtype=np.float64)
    b = np.array([counts_b.get(k, 0) for k in keys], dtype=np.float64)
    na, nb = a.sum(), b.sum()
    if not (na > 0 and nb > 0):
        raise ValueError("both samples must contain observations")
    pooled = (a + b) * min(na, nb) / (na + nb)
    merged_a: list[float] = []
    merged_b: list[float] = []
    acc_a = acc_b = acc_p = 0.0
    for x, y, p in zip(a, b, pooled):
        acc_a += x
        acc_b += y
        acc_p += p
        if acc_p >= 5.0:
            merged_a.append(acc_a)
            merged_b.append(acc_b)
            acc_a = acc_b = acc_p = 0.0
    if acc_a > 0 or acc_b > 0:
        if merged_a:
            merged_a[-1] += acc_a
            merged_b[-1] += acc_b
        else:
            merged_a.append(acc_a)
            merged_b.append(acc_b)
    table = np.array([merged_a, merged_b])
    if table.shape[1] < 2:
        return {"statistic": 0.0, "dof": 0, "p_value": 1.0, "bins": table.shape[1]}
    res = sps.chi2_contingency(table, correction=False)
    return {
        "statistic": float(res.statistic),
        "dof": int(res.dof),
        "p_value": float(res.pvalue),
        "bins": table.shape[1],
    }
