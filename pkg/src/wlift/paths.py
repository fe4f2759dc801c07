"""Piecewise-geodesic paths on [0,1] with dyadic breakpoints."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spaces
from .errors import ValidationError


def dyadic_times(m: int) -> np.ndarray:
    """Grid t_k = k / 2^m, k = 0..2^m."""
    if m < 0:
        raise ValidationError("level must be >= 0")
    return np.arange(2**m + 1, dtype=float) / 2**m


@dataclass(frozen=True)
class DyadicGrid:
    level: int

    @property
    def times(self) -> np.ndarray:
        return dyadic_times(self.level)

    @property
    def mesh(self) -> float:
        return 1.0 / 2**self.level


class PiecewiseGeodesicPath:
    """Path on [0,1] given by 2^n + 1 breakpoints at dyadic times k/2^n,
    joined by constant-speed geodesic segments."""

    def __init__(self, space: spaces.Space, breakpoints, level: int | None = None):
        pts = spaces.canonicalize_points(space, np.asarray(breakpoints, dtype=float))
        n_seg = pts.shape[0] - 1
        if n_seg < 1 or (n_seg & (n_seg - 1)) != 0:
            raise ValidationError(
                f"need 2^n + 1 breakpoints, got {pts.shape[0]}"
            )
        lvl = n_seg.bit_length() - 1
        if level is not None and level != lvl:
            raise ValidationError(f"level {level} inconsistent with {pts.shape[0]} breakpoints")
        self.space = space
        self.breakpoints = pts
        self.level = lvl
        pts.setflags(write=False)

    def __call__(self, t: float) -> np.ndarray:
        return self.eval_many([t])[0]

    def eval_many(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if np.any((ts < -1e-15) | (ts > 1 + 1e-15)):
            raise ValidationError("time outside [0, 1]")
        n = 2**self.level
        scaled = np.clip(ts, 0.0, 1.0) * n
        seg = np.minimum(scaled.astype(int), n - 1)
        loc = scaled - seg
        a = self.breakpoints[seg]
        b = self.breakpoints[seg + 1]
        if self.space.kind == "euclidean":
            return a + loc[:, None] * (b - a)
        out = a + loc[:, None] * (b - a)
        P = self.space.perimeter
        delta = spaces._signed_arc(P, a[:, 0], b[:, 0])
        out[:, 0] = (a[:, 0] + loc * delta) % P
        return out

    def segment_lengths(self) -> np.ndarray:
        return spaces._distance_arrays(
            self.space, self.breakpoints[:-1], self.breakpoints[1:]
        )

    def refine(self, level: int) -> "PiecewiseGeodesicPath":
        """Re-express on a finer dyadic grid (same trace)."""
        if level < self.level:
            raise ValidationError("cannot coarsen a path")
        if level == self.level:
            return self
        return PiecewiseGeodesicPath(
            self.space, self.eval_many(dyadic_times(level)), level
        )

    def restrict(self, i: int, j: int) -> "PiecewiseGeodesicPath":
        """Sub-path over breakpoints i..j, rescaled to [0,1]; j-i must be a
        power of two."""
        return PiecewiseGeodesicPath(self.space, self.breakpoints[i : j + 1])


def geodesic_segment(space: spaces.Space, x, y) -> PiecewiseGeodesicPath:
    """Single constant-speed geodesic from x to y as a level-0 path."""
    x = spaces.as_point(space, x)
    y = spaces.as_point(space, y)
    if space.kind == "euclidean":
        return PiecewiseGeodesicPath(space, np.stack([x, y]), 0)
    # store the endpoint reached along the selected arc so that segment
    # evaluation reproduces geodesic_point's tie-break exactly
    return PiecewiseGeodesicPath(space, np.stack([x, y]), 0)


def constant_path(space: spaces.Space, x, level: int = 0) -> PiecewiseGeodesicPath:
    x = spaces.as_point(space, x)
    return PiecewiseGeodesicPath(space, np.tile(x, (2**level + 1, 1)), level)
