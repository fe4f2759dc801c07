"""Finite discrete probability measures on a metric space."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import spaces
from .errors import SpaceMismatchError, ValidationError

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class DiscreteMeasure:
    space: spaces.Space
    atoms: np.ndarray  # (n, dim), canonicalized
    weights: np.ndarray  # (n,), positive, sums to 1

    @property
    def size(self) -> int:
        return self.atoms.shape[0]

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return (
            self.space == other.space
            and self.atoms.shape == other.atoms.shape
            and np.array_equal(self.atoms, other.atoms)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None


def make_measure(space, atoms, weights) -> DiscreteMeasure:
    """Build a measure; merges exactly-duplicate atoms, checks normalization."""
    atoms = spaces.canonicalize_points(space, np.asarray(atoms, dtype=float))
    weights = np.asarray(weights, dtype=float)
    if atoms.shape[0] == 0:
        raise ValidationError("empty support")
    if weights.shape != (atoms.shape[0],):
        raise ValidationError("weights length does not match atom count")
    if np.any(weights <= 0):
        raise ValidationError("weights must be strictly positive")
    s = weights.sum()
    if abs(s - 1.0) > WEIGHT_SUM_TOL:
        raise ValidationError(f"weights sum to {s}, not 1")

    # merge duplicates by exact coordinate equality (after wrapping)
    order = np.lexsort(atoms.T[::-1])
    atoms = atoms[order]
    weights = weights[order]
    keep = np.ones(len(weights), dtype=bool)
    for i in range(1, len(weights)):
        if np.array_equal(atoms[i], atoms[i - 1]):
            keep[i] = False
    if not keep.all():
        merged_w = np.zeros(keep.sum())
        idx = np.cumsum(keep) - 1
        np.add.at(merged_w, idx, weights)
        atoms = atoms[keep]
        weights = merged_w

    weights = weights / weights.sum()
    atoms.setflags(write=False)
    weights.setflags(write=False)
    return DiscreteMeasure(space, atoms, weights)


def dirac(space, x) -> DiscreteMeasure:
    return make_measure(space, [spaces.as_point(space, x)], [1.0])


def measures_equal(mu: DiscreteMeasure, nu: DiscreteMeasure, tol=0.0) -> bool:
    """Exact (or tol-close) equality of sorted supports and weights."""
    if mu.space != nu.space or mu.size != nu.size:
        return False
    if tol == 0.0:
        return np.array_equal(mu.atoms, nu.atoms) and np.array_equal(
            mu.weights, nu.weights
        )
    return np.allclose(mu.atoms, nu.atoms, atol=tol) and np.allclose(
        mu.weights, nu.weights, atol=tol
    )


def p_moment(mu: DiscreteMeasure, base, p: float) -> float:
    """Sum_i w_i d(base, x_i)^p."""
    if p < 1:
        raise ValidationError("p must be >= 1")
    base = spaces.as_point(mu.space, base)
    d = spaces.distance_matrix(mu.space, base[None, :], mu.atoms)[0]
    return float(np.sum(mu.weights * d**p))


def check_same_space(mu: DiscreteMeasure, nu: DiscreteMeasure):
    if mu.space != nu.space:
        raise SpaceMismatchError(
            f"measures on different spaces: {mu.space} vs {nu.space}"
        )
