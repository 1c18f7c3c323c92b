"""Pinhole camera model: intrinsics, depth masking, back-projection.

Conventions used throughout the package:

* Depth images store z-depth (perpendicular distance to the image plane)
  in meters; 0 encodes "no return".
* Camera frame: x right, y down, z forward.
* Pixels are sampled at their centers, i.e. pixel (u, v) corresponds to
  image-plane coordinate (u + 0.5, v + 0.5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ConfigError, DataError


class Point3(NamedTuple):
    """Camera-frame point (meters): x right, y down, z forward."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class CameraIntrinsics:
    width: int
    height: int
    fx: float
    fy: float
    cx: float
    cy: float
    hfov: float  # degrees, horizontal
    max_depth: float  # meters, sensor range cutoff

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ConfigError("image dimensions must be positive")
        if self.fx <= 0 or self.fy <= 0:
            raise ConfigError("focal lengths must be positive")
        if not (0 <= self.cx <= self.width and 0 <= self.cy <= self.height):
            raise ConfigError("principal point must lie inside the image")


@dataclass
class DepthFrame:
    """Per-pixel z-depth in meters, row-major (height, width)."""

    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.ndim != 2:
            raise DataError("depth data must be 2-D (height, width)")

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass
class MaskFrame:
    """Per-pixel instance id, 0 = background, 1..6 = object ids."""

    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data)
        if self.data.ndim != 2:
            raise DataError("mask data must be 2-D (height, width)")
        if not np.issubdtype(self.data.dtype, np.integer):
            raise DataError("mask data must be integer-typed")

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def instance_ids(self) -> list[int]:
        """Ids present in the mask, background excluded, ascending."""
        ids = np.unique(self.data)
        return [int(i) for i in ids if i != 0]


def intrinsics_from_hfov(width: int, height: int, hfov: float,
                         max_depth: float = 10.0) -> CameraIntrinsics:
    """Derive square-pixel intrinsics from a horizontal field of view.

    fx = fy = (width/2) / tan(hfov/2), principal point at the image center.
    """
    if not 0.0 < hfov < 180.0:
        raise ConfigError(f"hfov must be in (0, 180) degrees, got {hfov}")
    if width <= 0 or height <= 0:
        raise ConfigError("image dimensions must be positive")
    f = (width / 2.0) / math.tan(math.radians(hfov) / 2.0)
    return CameraIntrinsics(width=int(width), height=int(height),
                            fx=f, fy=f, cx=width / 2.0, cy=height / 2.0,
                            hfov=float(hfov), max_depth=float(max_depth))


def mask_depth(depth: DepthFrame, mask: MaskFrame, ids: Iterable[int]) -> DepthFrame:
    """Zero out depth everywhere the mask id is not in ``ids``."""
    if depth.data.shape != mask.data.shape:
        raise DataError(
            f"depth {depth.data.shape} and mask {mask.data.shape} dimensions differ")
    keep = np.isin(mask.data, np.asarray(sorted(set(int(i) for i in ids))))
    return DepthFrame(np.where(keep, depth.data, 0.0))


def backproject(depth_masked: DepthFrame, intr: CameraIntrinsics) -> np.ndarray:
    """Lift masked depth pixels into camera-frame 3-D points.

    Returns an (N, 3) array of (x, y, z); one row per pixel with
    0 < depth <= max_depth, in row-major pixel order.
    """
    d = depth_masked.data
    if d.shape != (intr.height, intr.width):
        raise DataError(
            f"depth shape {d.shape} does not match intrinsics "
            f"({intr.height}, {intr.width})")
    v, u = np.nonzero((d > 0.0) & (d <= intr.max_depth))
    z = d[v, u]
    x = (u + 0.5 - intr.cx) * z / intr.fx
    y = (v + 0.5 - intr.cy) * z / intr.fy
    return np.column_stack([x, y, z])


def project(point, intr: CameraIntrinsics):
    """Project camera-frame point(s) to pixel coordinates (u, v) and depth.

    Inverse of :func:`backproject` under the pixel-center convention:
    u = fx*x/z + cx - 0.5. Accepts a single (x, y, z) or an (N, 3) array.
    """
    p = np.asarray(point, dtype=np.float64)
    single = p.ndim == 1
    p = np.atleast_2d(p)
    if p.shape[-1] != 3:
        raise ValueError("expected point(s) of shape (..., 3)")
    z = p[:, 2]
    if np.any(z <= 0):
        raise ValueError("cannot project points behind the camera (z <= 0)")
    u = intr.fx * p[:, 0] / z + intr.cx - 0.5
    v = intr.fy * p[:, 1] / z + intr.cy - 0.5
    if single:
        return float(u[0]), float(v[0]), float(z[0])
    return u, v, z.copy()
