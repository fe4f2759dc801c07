"""Concrete metric spaces: Euclidean R^d, a circle of given perimeter, and a
cylinder (circle x R) with the intrinsic product metric.

Points are plain numpy arrays:
  * euclidean(d): shape (d,)
  * circle:      shape (1,), arc-length coordinate reduced modulo the perimeter
  * cylinder:    shape (2,), (arc coordinate, height)

Geodesics are constant-speed.  On the circle the shorter arc is taken; the
antipodal tie is broken toward increasing arc coordinate from the start point,
so the selection is deterministic.  Cylinder geodesics unwrap the arc
coordinate by the same rule and interpolate linearly in (arc, height).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class Space:
    kind: str  # "euclidean" | "circle" | "cylinder"
    dim: int = 1  # coordinate dimension of points
    perimeter: float = 2.0

    def __post_init__(self):
        if self.kind not in ("euclidean", "circle", "cylinder"):
            raise ValidationError(f"unknown space kind {self.kind!r}")
        if self.kind != "euclidean" and self.perimeter <= 0:
            raise ValidationError("perimeter must be positive")
        if self.dim < 1:
            raise ValidationError("dimension must be >= 1")


def euclidean(d: int) -> Space:
    return Space("euclidean", dim=int(d))


def circle(perimeter: float = 2.0) -> Space:
    return Space("circle", dim=1, perimeter=float(perimeter))


def cylinder(perimeter: float = 2.0) -> Space:
    return Space("cylinder", dim=2, perimeter=float(perimeter))


def as_point(space: Space, x) -> np.ndarray:
    """Validate and canonicalize a point for `space` (wraps arc coordinates)."""
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.ndim != 1 or p.shape[0] != space.dim:
        raise ValidationError(
            f"point of shape {p.shape} invalid for {space.kind}({space.dim})"
        )
    if not np.all(np.isfinite(p)):
        raise ValidationError("point coordinates must be finite")
    if space.kind in ("circle", "cylinder"):
        p = p.copy()
        p[0] = p[0] % space.perimeter
    return p


def canonicalize_points(space: Space, pts: np.ndarray) -> np.ndarray:
    """Vectorized canonicalization of an (n, dim) array of points."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != space.dim:
        raise ValidationError(
            f"points of shape {pts.shape} invalid for {space.kind}({space.dim})"
        )
    if not np.all(np.isfinite(pts)):
        raise ValidationError("point coordinates must be finite")
    if space.kind in ("circle", "cylinder"):
        pts = pts.copy()
        pts[:, 0] = pts[:, 0] % space.perimeter
    return pts


def _signed_arc(P: float, a, b):
    """Signed displacement from arc coordinate a to b along the chosen
    geodesic direction: shorter arc, ties broken positively."""
    d = (np.asarray(b) - np.asarray(a)) % P
    return np.where(d <= P - d, d, d - P)


def distance(space: Space, x, y) -> float:
    x = as_point(space, x)
    y = as_point(space, y)
    return float(_distance_arrays(space, x[None, :], y[None, :])[0])


def _distance_arrays(space: Space, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Elementwise distances between matching rows of X and Y."""
    if space.kind == "euclidean":
        return np.linalg.norm(X - Y, axis=-1)
    P = space.perimeter
    arc = np.abs(_signed_arc(P, X[..., 0], Y[..., 0]))
    if space.kind == "circle":
        return arc
    dz = X[..., 1] - Y[..., 1]
    return np.sqrt(arc * arc + dz * dz)


def distance_matrix(space: Space, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """All pairwise distances between rows of X (n, dim) and Y (m, dim)."""
    X = canonicalize_points(space, X)
    Y = canonicalize_points(space, Y)
    if space.kind == "euclidean":
        diff = X[:, None, :] - Y[None, :, :]
        return np.linalg.norm(diff, axis=-1)
    P = space.perimeter
    arc = np.abs(_signed_arc(P, X[:, None, 0], Y[None, :, 0]))
    if space.kind == "circle":
        return arc
    dz = X[:, None, 1] - Y[None, :, 1]
    return np.sqrt(arc * arc + dz * dz)


def geodesic_point(space: Space, x, y, t: float) -> np.ndarray:
    """Point at parameter t on the constant-speed geodesic from x to y."""
    x = as_point(space, x)
    y = as_point(space, y)
    t = float(t)
    if space.kind == "euclidean":
        return (1.0 - t) * x + t * y
    P = space.perimeter
    out = (1.0 - t) * x + t * y  # correct for the non-arc coordinates
    out[0] = (x[0] + t * float(_signed_arc(P, x[0], y[0]))) % P
    return out


def geodesic_points(space: Space, x, y, ts) -> np.ndarray:
    """Vectorized geodesic evaluation; returns (len(ts), dim)."""
    x = as_point(space, x)
    y = as_point(space, y)
    ts = np.asarray(ts, dtype=float)[:, None]
    if space.kind == "euclidean":
        return (1.0 - ts) * x + ts * y
    P = space.perimeter
    out = (1.0 - ts) * x + ts * y
    out[:, 0] = (x[0] + ts[:, 0] * float(_signed_arc(P, x[0], y[0]))) % P
    return out
