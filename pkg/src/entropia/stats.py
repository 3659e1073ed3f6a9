"""Minimal statistics kernel: normal CDF, KS distance, histograms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray  # strictly increasing, len = bins + 1
    counts: np.ndarray  # non-negative ints, len = bins


def normal_cdf(z: float) -> float:
    """Phi(z) via the complementary error function."""
    if not math.isfinite(z):
        raise DomainError(f"z must be finite, got {z}")
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def ks_statistic(sample, cdf) -> float:
    """Sup-norm distance between the empirical CDF and ``cdf``.

    Both one-sided gaps are evaluated at every sorted sample point, so
    ties (step jumps larger than 1/n) are handled exactly.
    """
    values = np.sort(np.asarray(sample, dtype=np.float64))
    n = values.shape[0]
    if n == 0:
        raise DomainError("sample must be nonempty")
    model = np.fromiter((cdf(v) for v in values), dtype=np.float64, count=n)
    below = np.max(model - np.arange(n) / n)
    above = np.max(np.arange(1, n + 1) / n - model)
    return float(max(below, above))


def histogram(sample, bins: int) -> Histogram:
    """Equal-width histogram over [min, max], last bin right-inclusive."""
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    values = np.asarray(sample, dtype=np.float64)
    if values.size == 0:
        raise DomainError("sample must be nonempty")
    counts, edges = np.histogram(values, bins=bins)
    return Histogram(edges=edges, counts=counts)
