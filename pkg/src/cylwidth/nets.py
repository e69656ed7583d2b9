"""Deterministic covering nets of low-dimensional unit spheres.

``sphere_net(k, delta)`` returns points of the unit sphere in R^k whose
covering radius is at most ``delta``.  Dimensions 1 and 2 use exact
constructions (sign pair, angular grid).  Dimensions 3 and 4 normalize a
cubic shell grid, which covers the sphere within ``delta/2``, and thin it
with a greedy maximal ``delta/2``-separated subsequence; a maximal packing
of a ``delta/2``-cover is a ``delta``-cover.  Larger dimensions are
rejected, as is any request whose candidate grid would be unreasonably
large.
"""

from __future__ import annotations

import numpy as np

from ._kernels import greedy_pack

__all__ = ["sphere_net"]

MAX_GRID_CANDIDATES = 6_000_000


def _circle_net(delta: float) -> np.ndarray:
    n = int(np.ceil(np.pi / (2.0 * np.arcsin(delta / 2.0))))
    n = max(n, 3)
    theta = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack((np.cos(theta), np.sin(theta)))


def _shell_grid_net(k: int, delta: float) -> np.ndarray:
    h = delta / (2.0 * np.sqrt(k))
    half_diag = h * np.sqrt(k) / 2.0
    m = int(np.ceil((1.0 + half_diag) / h)) + 1
    if (2 * m + 1) ** k > MAX_GRID_CANDIDATES:
        raise ValueError(
            f"net for k={k} at step {delta} needs more than "
            f"{MAX_GRID_CANDIDATES} grid candidates"
        )
    axis = h * np.arange(-m, m + 1)
    grids = np.meshgrid(*([axis] * k), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    norms = np.linalg.norm(pts, axis=1)
    shell = np.abs(norms - 1.0) <= half_diag
    pts = pts[shell]
    norms = norms[shell]
    pts = pts / norms[:, None]
    keep = greedy_pack(pts, delta / 2.0)
    return np.ascontiguousarray(pts[keep])


def sphere_net(k: int, delta: float) -> np.ndarray:
    """Points on the unit sphere of R^k with covering radius <= delta.

    Parameters
    ----------
    k : int
        Sphere dimension plus one; supported values are 1 to 4.
    delta : float
        Target covering radius, in (0, 1/2].
    """
    if not (0.0 < delta <= 0.5):
        raise ValueError("delta must lie in (0, 1/2]")
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        return _circle_net(delta)
    if k in (3, 4):
        return _shell_grid_net(k, delta)
    raise ValueError(f"no deterministic net construction for k={k} (max 4)")
