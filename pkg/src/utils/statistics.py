"""
Agreement, correlation and hypothesis-testing helpers.

This module provides Pearson correlation, Krippendorff's alpha with the
interval metric, mean pairwise annotator correlation, the two-sided
unpaired permutation test and Steiger's test for dependent correlations.
"""

import logging
import math
from itertools import combinations, chain
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm

from datalayer.model.dto.dataset_dto import RatingMatrix
from datalayer.model.dto.analysis_dto import PermutationResult, SteigerResult
from .exceptions import ValidationError, UndefinedCorrelationError


logger = logging.getLogger(__name__)

EXACT_LIMIT = 10_000_000
MONTE_CARLO_SAMPLES = 1_000_000
# Largest number of summed pairs held in memory at once during enumeration
_BLOCK_SIZE = 1_000_000
# Relative tolerance when comparing a relabeling's statistic with the observed one
_TIE_TOLERANCE = 1e-9


# ============================================================================
# Correlation
# ============================================================================

def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Product-moment correlation of two equally long vectors.

    Raises:
        UndefinedCorrelationError: If either vector is constant or shorter than 2
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValidationError(f"vectors must have equal length, got {x.shape} and {y.shape}")
    if x.size < 2:
        raise UndefinedCorrelationError("correlation needs at least 2 values")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError()
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def mean_pairwise_pcc(matrix: RatingMatrix) -> float:
    """
    Unweighted mean of the correlations of all annotator pairs.

    Each pair is correlated on the instances both annotators rated.
    """
    if matrix.n_annotators < 2:
        raise ValidationError("mean pairwise correlation needs at least 2 annotators")
    present = matrix.present
    correlations = []
    for i, j in combinations(range(matrix.n_annotators), 2):
        shared = present[i] & present[j]
        try:
            correlations.append(pearson(matrix.values[i, shared], matrix.values[j, shared]))
        except UndefinedCorrelationError as exc:
            pair = (matrix.annotator_ids[i], matrix.annotator_ids[j])
            raise UndefinedCorrelationError(
                f"no valid correlation between annotators {pair[0]} and {pair[1]}: {exc.message}"
            ) from exc
    return float(np.mean(correlations))


# ============================================================================
# Agreement
# ============================================================================

def krippendorff_alpha_interval(matrix: RatingMatrix) -> float:
    """
    Krippendorff's alpha with the squared-difference (interval) metric.

    Uses the coincidence formulation over pairable values: units rated once
    contribute neither to observed nor to expected disagreement, and each
    unit's value pairs are weighted by 1 / (m_u - 1).

    Returns:
        1 - D_o / D_e, or 1.0 when all pairable values are equal

    Raises:
        ValidationError: If no unit has at least two ratings
    """
    observed = 0.0
    pairable = []
    for column in matrix.values.T:
        values = column[~np.isnan(column)]
        m = values.size
        if m < 2:
            continue
        deviations = values - values.mean()
        # sum over ordered pairs of (v_i - v_j)^2 equals 2 m sum (v_i - mean)^2
        observed += 2.0 * m * float(deviations @ deviations) / (m - 1)
        pairable.append(values)

    if not pairable:
        raise ValidationError("no unit has two or more ratings")

    values = np.concatenate(pairable)
    n = values.size
    deviations = values - values.mean()
    d_o = observed / n
    d_e = 2.0 * n * float(deviations @ deviations) / (n * (n - 1))
    if d_e == 0.0:
        return 1.0
    return 1.0 - d_o / d_e


# ============================================================================
# Permutation Test
# ============================================================================

def _subset_sums(values: np.ndarray, k: int) -> np.ndarray:
    """Sums of all size-k subsets of values."""
    if k == 0:
        return np.zeros(1)
    n_subsets = math.comb(values.size, k)
    index = np.fromiter(
        chain.from_iterable(combinations(range(values.size), k)),
        dtype=np.intp,
        count=n_subsets * k,
    ).reshape(n_subsets, k)
    return values[index].sum(axis=1)


def _count_exact(pooled: np.ndarray, size_a: int, threshold: float) -> int:
    """
    Count relabelings whose |mean difference| reaches threshold.

    The pooled values are split in two halves; every group-a subset is a
    subset of the left half joined with a subset of the right half, so the
    subset sums of the two halves are combined block by block.
    """
    n = pooled.size
    size_b = n - size_a
    total = float(pooled.sum())
    scale = 1.0 / size_a + 1.0 / size_b
    offset = total / size_b
    left, right = pooled[: n // 2], pooled[n // 2:]

    count = 0
    for j in range(max(0, size_a - right.size), min(size_a, left.size) + 1):
        left_sums = _subset_sums(left, j)
        right_sums = _subset_sums(right, size_a - j)
        step = max(1, _BLOCK_SIZE // right_sums.size)
        for start in range(0, left_sums.size, step):
            sums = np.add.outer(left_sums[start:start + step], right_sums)
            count += int(np.count_nonzero(np.abs(sums * scale - offset) >= threshold))
    return count


def permutation_test(
    a: Sequence[float],
    b: Sequence[float],
    exact_limit: int = EXACT_LIMIT,
    seed: int = 0,
    n_samples: int = MONTE_CARLO_SAMPLES,
) -> PermutationResult:
    """
    Two-sided unpaired permutation test on the difference of means.

    The p-value is the share of relabelings of the pooled values into groups
    of sizes |a| and |b| whose absolute mean difference is at least the
    observed one, the observed labeling included. All C(|a|+|b|, |a|)
    relabelings are enumerated when their number is at most exact_limit;
    otherwise n_samples random relabelings are drawn with the given seed
    and p = (hits + 1) / (n_samples + 1).

    Args:
        a: First group
        b: Second group
        exact_limit: Largest partition count enumerated exactly
        seed: Seed of the Monte-Carlo generator
        n_samples: Monte-Carlo sample count

    Returns:
        PermutationResult
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValidationError("both groups must be nonempty")

    pooled = np.concatenate([a, b])
    observed = float(a.mean() - b.mean())
    tolerance = _TIE_TOLERANCE * max(1.0, float(np.abs(pooled).max()))
    threshold = abs(observed) - tolerance
    n_partitions = math.comb(pooled.size, a.size)

    if n_partitions <= exact_limit:
        logger.debug("Enumerating %d relabelings exactly", n_partitions)
        hits = _count_exact(pooled, a.size, threshold)
        return PermutationResult(
            observed_diff=observed,
            p_value=hits / n_partitions,
            mode="exact",
            n_partitions=n_partitions,
        )

    logger.warning(
        "%d relabelings exceed the exact limit %d, drawing %d random relabelings",
        n_partitions, exact_limit, n_samples,
    )
    rng = np.random.default_rng(seed)
    scale = 1.0 / a.size + 1.0 / b.size
    offset = float(pooled.sum()) / b.size
    batch = max(1, _BLOCK_SIZE // pooled.size)
    hits = 0
    drawn = 0
    while drawn < n_samples:
        size = min(batch, n_samples - drawn)
        shuffled = rng.permuted(np.tile(pooled, (size, 1)), axis=1)
        sums = shuffled[:, : a.size].sum(axis=1)
        hits += int(np.count_nonzero(np.abs(sums * scale - offset) >= threshold))
        drawn += size
    return PermutationResult(
        observed_diff=observed,
        p_value=(hits + 1) / (n_samples + 1),
        mode="monte_carlo",
        n_samples=n_samples,
        seed=seed,
    )


# ============================================================================
# Dependent Correlations
# ============================================================================

def steiger_test(r_jk: float, r_jh: float, r_kh: float, n: int) -> SteigerResult:
    """
    Steiger's Z test comparing r_jk with r_jh, which share variable j.

    Uses the pooled-correlation statistic: the difference of the Fisher z
    transforms scaled by sqrt(n - 3) / sqrt(2 - 2 s), where s estimates the
    correlation between the two transformed correlations from r_kh and the
    average r = (r_jk + r_jh) / 2. The p-value is two-sided.

    Args:
        r_jk: Correlation of j with k
        r_jh: Correlation of j with h
        r_kh: Correlation of k with h
        n: Sample size

    Returns:
        SteigerResult
    """
    for name, r in (("r_jk", r_jk), ("r_jh", r_jh), ("r_kh", r_kh)):
        if not -1.0 < r < 1.0:
            raise ValidationError(f"{name} must lie strictly inside (-1, 1), got {r}")
    if n < 4:
        raise ValidationError(f"Steiger's test needs n >= 4, got {n}")

    r_mean = (r_jk + r_jh) / 2.0
    r_mean2 = r_mean * r_mean
    psi = r_kh * (1.0 - 2.0 * r_mean2) - 0.5 * r_mean2 * (1.0 - 2.0 * r_mean2 - r_kh * r_kh)
    s = psi / (1.0 - r_mean2) ** 2
    if s >= 1.0:
        raise ValidationError("correlations are inconsistent: covariance term reaches 1")

    z = (math.atanh(r_jk) - math.atanh(r_jh)) * math.sqrt(n - 3) / math.sqrt(2.0 - 2.0 * s)
    p = min(1.0, 2.0 * float(norm.sf(abs(z))))
    return SteigerResult(
        z_statistic=z,
        p_value=max(p, np.finfo(float).tiny),
        n=n,
        r_jk=r_jk,
        r_jh=r_jh,
        r_kh=r_kh,
    )


# ============================================================================
# Descriptive Statistics & Formatting
# ============================================================================

def mean_std(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and sample (n - 1) standard deviation; std is NaN for one value."""
    values = [float(v) for v in values]
    if not values:
        raise ValidationError("cannot describe an empty sample")
    # compensated sums around the first value keep equal values exact
    shift = values[0]
    mean = shift + math.fsum(v - shift for v in values) / len(values)
    if len(values) == 1:
        return mean, float("nan")
    return mean, math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (len(values) - 1))


def format_p_value(p: float) -> str:
    """Four significant digits with trailing zeros kept, or '<1e-4' below that resolution."""
    if p < 1e-4:
        return "<1e-4"
    return f"{p:#.4g}"
