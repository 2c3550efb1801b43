"""Bounded nondominated archive with SPEA2 nearest-neighbour truncation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import IdealPoints, UsageError, nondominated_filter, normalize, pairwise_euclidean


@njit(cache=True)
def _spea2_kernel(D, target):
    n = D.shape[0]
    alive = np.ones(n, dtype=np.bool_)
    nearest = np.empty(n)
    nearest_idx = np.empty(n, dtype=np.int64)
    for i in range(n):
        k = np.argmin(D[i])
        nearest_idx[i] = k
        nearest[i] = D[i, k]
    for _ in range(n - target):
        best = np.inf
        for i in range(n):
            if alive[i] and nearest[i] < best:
                best = nearest[i]
        victim = -1
        victim_row = np.empty(0)
        for i in range(n):
            if not alive[i] or nearest[i] != best:
                continue
            row = np.sort(D[i])
            if victim < 0:
                victim, victim_row = i, row
                continue
            # first differing entry decides; exact ties keep the lower index
            for c in range(n):
                if row[c] != victim_row[c]:
                    if row[c] < victim_row[c]:
                        victim, victim_row = i, row
                    break
        alive[victim] = False
        D[:, victim] = np.inf
        D[victim, :] = np.inf
        for i in range(n):
            if alive[i] and nearest_idx[i] == victim:
                k = np.argmin(D[i])
                nearest_idx[i] = k
                nearest[i] = D[i, k]
    return np.flatnonzero(alive)


def spea2_truncate(points, target: int) -> np.ndarray:
    """Indices kept after SPEA2 archive truncation down to ``target`` points.

    Repeatedly deletes the point whose ascending vector of distances to the
    remaining points is lexicographically smallest. Exact ties between whole
    vectors go to the lowest index.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    n = len(P)
    if target > n:
        raise UsageError(f"cannot truncate {n} points to {target}")
    if target == n:
        return np.arange(n)
    if target <= 0:
        return np.arange(0)
    D = pairwise_euclidean(P, P)
    np.fill_diagonal(D, np.inf)
    return _spea2_kernel(D, target)


@dataclass
class Archive:
    X: np.ndarray
    F: np.ndarray
    capacity: int

    def __len__(self) -> int:
        return len(self.F)

    @classmethod
    def empty(cls, n_var: int, n_obj: int, capacity: int) -> "Archive":
        return cls(np.empty((0, n_var)), np.empty((0, n_obj)), capacity)


def _scaled(F: np.ndarray, z: IdealPoints | None) -> np.ndarray:
    if z is None:
        z = IdealPoints.from_objectives(F)
    return normalize(F, z)


def update_archive(A: Archive, X: np.ndarray, F: np.ndarray, z: IdealPoints | None = None) -> Archive:
    """Merge candidate solutions into the archive.

    Keeps the nondominated members of archive plus candidates, one copy per
    objective vector, and truncates with :func:`spea2_truncate` (in
    objectives normalised by ``z``, or by the set's own extent) when over
    capacity.
    """
    AX = np.vstack([A.X, X]) if len(A) else np.asarray(X, dtype=float)
    AF = np.vstack([A.F, F]) if len(A) else np.asarray(F, dtype=float)
    if len(AF) == 0:
        return A
    _, first = np.unique(AF, axis=0, return_index=True)
    first = np.sort(first)
    AX, AF = AX[first], AF[first]
    keep = nondominated_filter(AF)
    AX, AF = AX[keep], AF[keep]
    if len(AF) > A.capacity:
        keep = spea2_truncate(_scaled(AF, z), A.capacity)
        AX, AF = AX[keep], AF[keep]
    return Archive(AX, AF, A.capacity)


def assess_indices(A: Archive, N: int) -> np.ndarray:
    """Archive rows kept for performance assessment (at most ``N``)."""
    if len(A) <= N:
        return np.arange(len(A))
    return spea2_truncate(_scaled(A.F, None), N)


def assess(A: Archive, N: int) -> np.ndarray:
    """Objective vectors used for performance assessment (at most ``N``)."""
    return A.F[assess_indices(A, N)].copy()
