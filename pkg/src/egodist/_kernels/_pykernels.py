"""Numpy implementations of the hot kernels.

These are the fallback twins of the compiled extension in ``_core.pyx``;
both sides must implement identical semantics (the test suite compares
them directly). Distance comparisons are done in the squared domain so
tie handling cannot drift between the two implementations.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_CHUNK = 512  # rows of the pairwise-distance matrix held at once


def _dist2_block(block: np.ndarray, pts: np.ndarray) -> np.ndarray:
    diff = block[:, None, :] - pts[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def lof_scores(pts: np.ndarray, k: int) -> np.ndarray:
    """Local outlier factor of each 2-D point against the whole set.

    Neighborhoods contain every point at distance <= the k-th neighbor
    distance (ties included); reachability is floored by the neighbor's
    own k-distance. Points whose reachability sum degenerates to zero
    (all neighbors coincident) get infinite local density; ratio of two
    infinite densities counts as 1.
    """
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = len(pts)
    if n < 2 or not 1 <= k <= n - 1:
        raise ValueError(f"lof needs 2 <= n and 1 <= k <= n-1 (n={n}, k={k})")

    # pass 1: squared k-distances (sorted row includes the self zero at [0])
    kdist2 = np.empty(n)
    for s in range(0, n, _CHUNK):
        d2 = _dist2_block(pts[s:s + _CHUNK], pts)
        kdist2[s:s + _CHUNK] = np.partition(d2, k, axis=1)[:, k]

    # pass 2: local reachability density
    counts = np.empty(n, dtype=np.int64)
    lrd = np.empty(n)
    for s in range(0, n, _CHUNK):
        d2 = _dist2_block(pts[s:s + _CHUNK], pts)
        neigh = d2 <= kdist2[s:s + _CHUNK, None]
        neigh[np.arange(d2.shape[0]), np.arange(s, s + d2.shape[0])] = False
        reach = np.sqrt(np.maximum(kdist2[None, :], d2))
        cnt = neigh.sum(axis=1)
        total = np.where(neigh, reach, 0.0).sum(axis=1)
        counts[s:s + _CHUNK] = cnt
        with np.errstate(divide="ignore"):
            lrd[s:s + _CHUNK] = np.where(total > 0.0, cnt / total, np.inf)

    # pass 3: score = mean neighbor-to-own density ratio
    scores = np.empty(n)
    lrd_inf = np.isinf(lrd)
    for s in range(0, n, _CHUNK):
        d2 = _dist2_block(pts[s:s + _CHUNK], pts)
        neigh = d2 <= kdist2[s:s + _CHUNK, None]
        neigh[np.arange(d2.shape[0]), np.arange(s, s + d2.shape[0])] = False
        num = np.where(neigh, lrd[None, :], 0.0).sum(axis=1)
        blk = slice(s, s + d2.shape[0])
        with np.errstate(invalid="ignore"):
            sc = num / (counts[blk] * lrd[blk])
        inf_rows = lrd_inf[blk]
        if inf_rows.any():
            n_inf = (neigh & lrd_inf[None, :]).sum(axis=1)
            sc = np.where(inf_rows, n_inf / counts[blk], sc)
        scores[blk] = sc
    return scores


def dbscan_labels(pts: np.ndarray, eps: float, min_pts: int) -> np.ndarray:
    """Density-based cluster labels: -1 for noise, 0..C-1 otherwise.

    Points must arrive in the caller's canonical (lexicographic) order;
    cluster ids follow seed-discovery order over that scan, and a border
    point reachable from several clusters keeps the earliest one.
    """
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = len(pts)
    labels = np.full(n, -1, dtype=np.int32)
    if n == 0:
        return labels
    eps2 = float(eps) * float(eps)

    neighbors: list[np.ndarray] = []
    for s in range(0, n, _CHUNK):
        d2 = _dist2_block(pts[s:s + _CHUNK], pts)
        hit = d2 <= eps2  # includes self
        neighbors.extend(np.nonzero(row)[0] for row in hit)
    core = np.array([len(nb) >= min_pts for nb in neighbors], dtype=bool)

    cluster = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cluster
        queue = [i]
        while queue:
            j = queue.pop(0)
            for q in neighbors[j]:
                if labels[q] == -1:
                    labels[q] = cluster
                    if core[q]:
                        queue.append(int(q))
        cluster += 1
    return labels


_EPS_T = 1e-9  # minimum ray parameter considered a hit


def _room_exit(origin, dirs, room):
    """Parameter at which rays leave the room box (cast from inside)."""
    t = np.full(dirs[0].shape, np.inf)
    for ax in range(3):
        d = dirs[ax]
        with np.errstate(divide="ignore", invalid="ignore"):
            t_ax = np.where(d > 0, (room[3 + ax] - origin[ax]) / d,
                            np.where(d < 0, (room[ax] - origin[ax]) / d, np.inf))
        t = np.minimum(t, t_ax)
    return t


def _sphere_t(origin, dirs, cx, cy, cz, r):
    dx, dy, dz = dirs
    lx, ly, lz = origin[0] - cx, origin[1] - cy, origin[2] - cz
    a = dx * dx + dy * dy + dz * dz
    b = 2.0 * (lx * dx + ly * dy + lz * dz)
    c = lx * lx + ly * ly + lz * lz - r * r
    disc = b * b - 4.0 * a * c
    hit = disc >= 0.0
    sq = np.sqrt(np.where(hit, disc, 0.0))
    t0 = (-b - sq) / (2.0 * a)
    t1 = (-b + sq) / (2.0 * a)
    t = np.where(t0 > _EPS_T, t0, np.where(t1 > _EPS_T, t1, np.inf))
    return np.where(hit, t, np.inf)


def _cylinder_t(origin, dirs, cx, cy, r, z0, z1):
    dx, dy, dz = dirs
    lx, ly = origin[0] - cx, origin[1] - cy
    oz = origin[2]
    best = np.full(dx.shape, np.inf)
    a = dx * dx + dy * dy
    b = 2.0 * (lx * dx + ly * dy)
    c = lx * lx + ly * ly - r * r
    disc = b * b - 4.0 * a * c
    ok = (disc >= 0.0) & (a > 0.0)
    sq = np.sqrt(np.where(ok, disc, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        for tside in ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)):
            z = oz + tside * dz
            valid = ok & (tside > _EPS_T) & (z >= z0) & (z <= z1)
            best = np.where(valid & (tside < best), tside, best)
    # end caps
    with np.errstate(divide="ignore", invalid="ignore"):
        for zcap in (z0, z1):
            tcap = np.where(dz != 0.0, (zcap - oz) / dz, np.inf)
            px = lx + tcap * dx
            py = ly + tcap * dy
            valid = (tcap > _EPS_T) & (px * px + py * py <= r * r)
            best = np.where(valid & (tcap < best), tcap, best)
    return best


def _box_t(origin, dirs, lo, hi):
    tmin = np.full(dirs[0].shape, -np.inf)
    tmax = np.full(dirs[0].shape, np.inf)
    for ax in range(3):
        d = dirs[ax]
        o = origin[ax]
        with np.errstate(divide="ignore", invalid="ignore"):
            ta = np.where(d != 0.0, (lo[ax] - o) / d,
                          np.where((o >= lo[ax]) & (o <= hi[ax]), -np.inf, np.inf))
            tb = np.where(d != 0.0, (hi[ax] - o) / d,
                          np.where((o >= lo[ax]) & (o <= hi[ax]), np.inf, -np.inf))
        tmin = np.maximum(tmin, np.minimum(ta, tb))
        tmax = np.minimum(tmax, np.maximum(ta, tb))
    hit = tmax >= np.maximum(tmin, _EPS_T)
    t = np.where(tmin > _EPS_T, tmin, tmax)
    return np.where(hit, t, np.inf)


SHAPE_SPHERE = 1
SHAPE_CYLINDER = 2
SHAPE_BOX = 3


def raycast(origin, rot, fx, fy, cx, cy, width, height, max_depth,
            room, shape_codes, params, ids):
    """Render one frame of z-depth and instance ids by analytic ray casting.

    origin: camera position (3,) world; rot: camera-to-world rotation whose
    columns are the camera axes (x right, y down, z forward); world z is up.
    room is (x0, y0, z0, x1, y1, z1); params rows depend on the shape code:
    sphere (cx, cy, cz, r), vertical cylinder (cx, cy, r, z0, z1),
    axis-aligned box (x0, y0, z0, x1, y1, z1). Rays are parameterized so
    that the hit parameter *is* the z-depth; depth is clamped to max_depth
    and the id map keeps the nearest object regardless of the clamp.
    """
    origin = np.asarray(origin, dtype=np.float64)
    rot = np.asarray(rot, dtype=np.float64)
    us = (np.arange(width, dtype=np.float64) + 0.5 - cx) / fx
    vs = (np.arange(height, dtype=np.float64) + 0.5 - cy) / fy
    dirs = tuple(
        rot[ax, 0] * us[None, :] + rot[ax, 1] * vs[:, None] + rot[ax, 2]
        for ax in range(3))

    best_t = _room_exit(origin, dirs, np.asarray(room, dtype=np.float64))
    best_id = np.zeros((height, width), dtype=np.uint8)
    for m in range(len(shape_codes)):
        p = params[m]
        code = int(shape_codes[m])
        if code == SHAPE_SPHERE:
            t = _sphere_t(origin, dirs, p[0], p[1], p[2], p[3])
        elif code == SHAPE_CYLINDER:
            t = _cylinder_t(origin, dirs, p[0], p[1], p[2], p[3], p[4])
        elif code == SHAPE_BOX:
            t = _box_t(origin, dirs, p[:3], p[3:6])
        else:
            raise ValueError(f"unknown shape code {code}")
        win = t < best_t
        best_t = np.where(win, t, best_t)
        best_id = np.where(win, np.uint8(ids[m]), best_id)

    depth = np.minimum(best_t, max_depth)
    return depth, best_id
