"""Top-down egocentric occupancy map and the occupied-cell point set.

The map is anchored at the robot: row 0 is the robot's own row, with the
robot sitting at the center column of the near edge. Forward (camera z)
grows with the row index, lateral (camera x, right-positive) with the
column index. Camera height (y) is dropped entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class MapConfig:
    map_width: int = 1000
    map_height: int = 1000
    resolution: float = 0.01  # meters per cell

    def __post_init__(self):
        if self.map_width <= 0 or self.map_height <= 0:
            raise ConfigError("map dimensions must be positive")
        if self.resolution <= 0:
            raise ConfigError("map resolution must be positive")

    @property
    def lateral_extent(self) -> float:
        return self.map_width * self.resolution

    @property
    def forward_extent(self) -> float:
        return self.map_height * self.resolution

    @property
    def robot_cell(self) -> tuple[int, int]:
        """(col, row) of the robot anchor: center of the near edge."""
        return self.map_width // 2, 0


@dataclass
class EgoMap:
    """Occupancy counts per cell plus the tally of points that fell outside."""

    config: MapConfig
    cells: np.ndarray = field(default=None)  # (map_height, map_width) int32
    dropped: int = 0

    def __post_init__(self):
        if self.cells is None:
            self.cells = np.zeros(
                (self.config.map_height, self.config.map_width), dtype=np.int32)


def build_ego_map(points: np.ndarray, config: MapConfig = MapConfig()) -> EgoMap:
    """Bin camera-frame 3-D points into the top-down grid.

    A point lands in cell (col, row) = (floor((x + lateral/2)/res),
    floor(z/res)); points outside the grid are dropped and tallied.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    emap = EgoMap(config)
    if len(pts) == 0:
        return emap
    half = config.lateral_extent / 2.0
    col = np.floor((pts[:, 0] + half) / config.resolution).astype(np.int64)
    row = np.floor(pts[:, 2] / config.resolution).astype(np.int64)
    ok = ((col >= 0) & (col < config.map_width) &
          (row >= 0) & (row < config.map_height))
    np.add.at(emap.cells, (row[ok], col[ok]), 1)
    emap.dropped = int(np.count_nonzero(~ok))
    return emap


def extract_points(emap: EgoMap) -> np.ndarray:
    """Occupied cells as an (M, 2) array of (col, row), deduplicated and
    sorted lexicographically (col first)."""
    rows, cols = np.nonzero(emap.cells > 0)
    order = np.lexsort((rows, cols))
    return np.column_stack([cols[order], rows[order]]).astype(np.int64)


def cell_to_robot_frame(col, row, config: MapConfig):
    """Cell (center) to robot-frame meters: x lateral right, y forward.

    Accepts scalars or arrays; extends linearly to real-valued cells, so
    fractional centroids map exactly.
    """
    c = np.asarray(col, dtype=np.float64)
    r = np.asarray(row, dtype=np.float64)
    x = (c + 0.5) * config.resolution - config.lateral_extent / 2.0
    y = (r + 0.5) * config.resolution
    if x.ndim == 0:
        return float(x), float(y)
    return x, y
