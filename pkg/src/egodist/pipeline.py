"""Per-frame estimation chain from (depth, mask) to robot-frame objects.

Stages: mask the depth image, back-project to camera-frame points, bin
into the top-down map, extract occupied cells, LOF-filter edge artifacts,
cluster with DBSCAN, and summarize each cluster into a coordinate/distance
estimate. Every stage is pure, so frames can be processed in any order or
in parallel without affecting results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .camera import CameraIntrinsics, DepthFrame, MaskFrame, backproject, mask_depth
from .clustering import Cluster, DbscanParams, dbscan, distance_of, min_pts_for, summarize_cluster
from .egomap import MapConfig, build_ego_map, extract_points
from .errors import DataError
from .outliers import LofParams, filter_outliers, neighbors_for

ALL_OBJECT_IDS = frozenset(range(1, 7))


@dataclass(frozen=True)
class PipelineConfig:
    intrinsics: CameraIntrinsics
    grid: MapConfig = MapConfig()
    contamination: float = 0.3
    neighbors_divisor: int = 30
    eps_cells: float = 5.0
    min_pts: int | None = None  # None -> floor(N/divisor)+1 rule


@dataclass
class ObjectEstimate:
    cluster: Cluster
    distance: float  # meters
    frame_index: int = 0


@dataclass
class FrameResult:
    estimates: list[ObjectEstimate] = field(default_factory=list)
    dropped_points: int = 0
    filtered_outliers: int = 0
    noise_cells: int = 0


def estimate_frame(depth: DepthFrame, mask: MaskFrame, ids: Iterable[int],
                   cfg: PipelineConfig, frame_index: int = 0) -> FrameResult:
    """Run the full estimation chain on one frame."""
    intr = cfg.intrinsics
    if depth.data.shape != (intr.height, intr.width):
        raise DataError(
            f"frame shape {depth.data.shape} does not match intrinsics "
            f"({intr.height}, {intr.width})")

    masked = mask_depth(depth, mask, ids)
    points3 = backproject(masked, intr)
    emap = build_ego_map(points3, cfg.grid)
    cells = extract_points(emap)

    n = len(cells)
    lof = filter_outliers(
        cells, LofParams(n_neighbors=max(1, neighbors_for(n, cfg.neighbors_divisor)),
                         contamination=cfg.contamination))

    min_pts = cfg.min_pts if cfg.min_pts is not None else \
        min_pts_for(len(lof.inliers), cfg.neighbors_divisor)
    clusters, noise = dbscan(lof.inliers, DbscanParams(cfg.eps_cells, min_pts))

    estimates = []
    for members in clusters:
        cluster = summarize_cluster(members, cfg.grid)
        estimates.append(ObjectEstimate(cluster, distance_of(cluster), frame_index))
    return FrameResult(estimates=estimates, dropped_points=emap.dropped,
                       filtered_outliers=len(lof.outliers), noise_cells=len(noise))


def estimate_sequence(frames: Iterable[tuple[DepthFrame, MaskFrame]],
                      ids: Iterable[int], cfg: PipelineConfig) -> Iterator[FrameResult]:
    """Apply :func:`estimate_frame` to every frame, in order.

    Frames are independent (no temporal state); failures are re-raised
    with the frame index attached.
    """
    ids = frozenset(ids)
    for index, (depth, mask) in enumerate(frames):
        try:
            yield estimate_frame(depth, mask, ids, cfg, frame_index=index)
        except Exception as exc:
            raise type(exc)(f"frame {index}: {exc}") from exc
