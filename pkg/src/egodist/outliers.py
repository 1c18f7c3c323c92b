"""Local-outlier-factor filtering of the occupied-cell point set.

Masked depth leaks a fringe of background pixels along object silhouettes;
after projection those become isolated map cells. Scoring each cell by the
ratio of its neighbors' local density to its own and dropping a fixed
fraction of the worst-scored cells removes that fringe while compact small
clusters (whose neighborhoods are their own dense selves) survive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ConfigError


@dataclass(frozen=True)
class LofParams:
    n_neighbors: int
    contamination: float = 0.3

    def __post_init__(self):
        if self.n_neighbors < 1:
            raise ConfigError("n_neighbors must be >= 1")
        if not 0.0 < self.contamination <= 0.5:
            raise ConfigError("contamination must be in (0, 0.5]")


def neighbors_for(n_points: int, divisor: int = 30) -> int:
    """Default neighborhood size: floor(N / divisor) + 1."""
    if divisor < 1:
        raise ConfigError("neighbors divisor must be >= 1")
    return n_points // divisor + 1


@dataclass
class LofResult:
    scores: np.ndarray    # aligned with the canonical (lex-sorted) points
    inliers: np.ndarray   # (M, 2) lex-sorted cells
    outliers: np.ndarray  # (K, 2) lex-sorted cells
    skipped: bool = False


def lof_scores(points: np.ndarray, k: int) -> np.ndarray:
    """LOF score per point (order follows the input)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    n = len(pts)
    if n < 2:
        raise ValueError(f"too few points for LOF (n={n})")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= n-1 (n={n}, k={k})")
    return _kernels.lof_scores(pts, int(k))


def filter_outliers(points: np.ndarray, params: LofParams) -> LofResult:
    """Remove the floor(contamination * N) highest-scored points.

    Input order does not matter: points are canonicalized to unique,
    lexicographically sorted rows first. Score ties at the cut are broken
    in lexicographic point order (smaller coordinates removed first).
    Sets too small to score (N <= max(2, n_neighbors)) pass through, and a
    fully coincident set is never filtered.
    """
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    pts = np.unique(pts, axis=0)  # sorts lexicographically
    n = len(pts)
    empty = pts[:0]
    if n == 0:
        return LofResult(np.zeros(0), pts, empty, skipped=True)

    k = min(params.n_neighbors, n - 1)
    if n >= 2 and np.all(pts == pts[0]):
        return LofResult(np.ones(n), pts, empty, skipped=True)
    scores = lof_scores(pts, max(k, 1)) if n >= 2 else np.ones(n)
    if n <= max(2, params.n_neighbors):
        return LofResult(scores, pts, empty, skipped=True)

    n_out = int(np.floor(params.contamination * n))
    # stable sort over lex-ordered points: equal scores drop smaller cells first
    order = np.argsort(-scores, kind="stable")
    out_idx = np.sort(order[:n_out])
    keep = np.ones(n, dtype=bool)
    keep[out_idx] = False
    return LofResult(scores, pts[keep], pts[~keep])
