"""Shared vocabulary: Pareto dominance, distances and objective normalisation.

Objective vectors are plain 1-D numpy arrays and populations are 2-D arrays
with one row per individual. All objectives are minimised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.spatial.distance import cdist

DEGENERATE_SPAN = 1e-12


class UsageError(ValueError):
    """Raised when an operation is called with arguments outside its contract."""


class ConfigurationError(ValueError):
    """Raised for invalid problem, algorithm or experiment configuration."""


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise UsageError(f"length mismatch: {a.shape} vs {b.shape}")
    return a, b


def dominates(a, b) -> bool:
    """Return True if ``a`` Pareto-dominates ``b`` (minimisation).

    >>> dominates([1, 2], [2, 3])
    True
    >>> dominates([1, 2], [1, 2])
    False
    """
    a, b = _pair(a, b)
    return bool(np.all(a <= b) and np.any(a < b))


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """Boolean matrix ``D`` with ``D[i, j]`` true iff row i dominates row j."""
    F = np.asarray(F, dtype=float)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


@njit(cache=True)
def _dominated_mask(F):
    n, M = F.shape
    dominated = np.zeros(n, dtype=np.bool_)
    for i in range(n):
        if dominated[i]:
            continue
        for j in range(n):
            if i == j or dominated[j]:
                continue
            # does i dominate j, or j dominate i?
            i_le = True
            j_le = True
            for k in range(M):
                if F[i, k] > F[j, k]:
                    i_le = False
                elif F[i, k] < F[j, k]:
                    j_le = False
                if not i_le and not j_le:
                    break
            if i_le and not j_le:
                dominated[j] = True
            elif j_le and not i_le:
                dominated[i] = True
                break
    return dominated


def nondominated_filter(points) -> np.ndarray:
    """Indices of the points not dominated by any other point.

    Equal vectors do not dominate each other, so duplicates are all kept.
    """
    F = np.atleast_2d(np.asarray(points, dtype=float))
    if F.size == 0:
        raise UsageError("nondominated_filter needs at least one point")
    return np.flatnonzero(~_dominated_mask(np.ascontiguousarray(F)))


@dataclass
class IdealPoints:
    """Componentwise best (``z_l``) and worst (``z_u``) objective values."""

    z_l: np.ndarray
    z_u: np.ndarray

    @classmethod
    def from_objectives(cls, F: np.ndarray) -> "IdealPoints":
        F = np.atleast_2d(F)
        return cls(F.min(axis=0).astype(float), F.max(axis=0).astype(float))

    def span(self) -> np.ndarray:
        span = self.z_u - self.z_l
        return np.where(span < DEGENERATE_SPAN, 1.0, span)

    def update_ideal(self, f: np.ndarray) -> None:
        np.minimum(self.z_l, f, out=self.z_l)


def normalize(f, z: IdealPoints) -> np.ndarray:
    """Map objectives affinely so that ``z_l`` goes to 0 and ``z_u`` to 1.

    Works on a single vector or on a stack of row vectors. Objectives whose
    span is below 1e-12 use a denominator of one.
    """
    return (np.asarray(f, dtype=float) - z.z_l) / z.span()


def denormalize(g, z: IdealPoints) -> np.ndarray:
    """Inverse of :func:`normalize`."""
    return np.asarray(g, dtype=float) * z.span() + z.z_l


def chebyshev_distance(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.max(np.abs(a - b)))


def euclidean_distance(a, b) -> float:
    a, b = _pair(a, b)
    return float(np.sqrt(np.sum((a - b) ** 2)))


def pairwise_euclidean(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Euclidean distance matrix between the rows of ``A`` and ``B``."""
    return cdist(np.atleast_2d(A), np.atleast_2d(B))


def pairwise_chebyshev(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Chebyshev distance matrix between the rows of ``A`` and ``B``."""
    return cdist(np.atleast_2d(A), np.atleast_2d(B), "chebyshev")
