"""DBSCAN partition of filtered map cells and per-cluster summaries."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .egomap import MapConfig, cell_to_robot_frame
from .errors import ConfigError


@dataclass(frozen=True)
class DbscanParams:
    eps: float = 5.0  # cells
    min_pts: int = 2  # neighborhood size including the point itself

    def __post_init__(self):
        if self.eps <= 0:
            raise ConfigError("eps must be positive")
        if self.min_pts < 1:
            raise ConfigError("min_pts must be >= 1")


def min_pts_for(n_points: int, divisor: int = 30) -> int:
    """Default core threshold, same floor(N/divisor)+1 rule as the outlier
    filter, clamped to at least 2."""
    return max(2, n_points // divisor + 1)


@dataclass
class Cluster:
    members: np.ndarray  # (M, 2) lex-sorted (col, row) cells
    centroid_cell: tuple[float, float]
    centroid_robot: tuple[float, float]  # meters (x lateral, y forward)
    radius: float  # meters, max member distance to the robot-frame centroid


def dbscan(points: np.ndarray, params: DbscanParams) -> tuple[list[np.ndarray], np.ndarray]:
    """Partition cells into density-connected clusters plus noise.

    Returns (cluster member arrays in discovery order, noise cells).
    Input order is irrelevant: points are canonicalized (unique rows,
    lexicographic sort) before the deterministic scan, so border-point
    ties always resolve the same way.
    """
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    pts = np.unique(pts, axis=0)
    if len(pts) == 0:
        return [], pts
    labels = _kernels.dbscan_labels(pts.astype(np.float64), float(params.eps),
                                    int(params.min_pts))
    n_clusters = int(labels.max()) + 1 if len(labels) else 0
    clusters = [pts[labels == c] for c in range(n_clusters)]
    return clusters, pts[labels == -1]


def summarize_cluster(members: np.ndarray, config: MapConfig) -> Cluster:
    """Centroid (cell and robot frame) and enclosing radius of a cluster."""
    pts = np.asarray(members, dtype=np.float64).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("cannot summarize an empty cluster")
    c_col, c_row = pts[:, 0].mean(), pts[:, 1].mean()
    cx, cy = cell_to_robot_frame(c_col, c_row, config)
    mx, my = cell_to_robot_frame(pts[:, 0], pts[:, 1], config)
    mx, my = np.atleast_1d(mx), np.atleast_1d(my)
    radius = float(np.hypot(mx - cx, my - cy).max())
    return Cluster(members=np.asarray(members, dtype=np.int64).reshape(-1, 2),
                   centroid_cell=(float(c_col), float(c_row)),
                   centroid_robot=(float(cx), float(cy)), radius=radius)


def distance_of(cluster: Cluster) -> float:
    """Planar robot-to-object distance sqrt(x^2 + y^2) of the centroid."""
    x, y = cluster.centroid_robot
    return math.hypot(x, y)
