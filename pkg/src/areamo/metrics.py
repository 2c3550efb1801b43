"""Quality indicators: IGD, normalised hypervolume and Spacing."""

from __future__ import annotations

import numpy as np

from .core import UsageError, pairwise_euclidean

MC_SAMPLES = 1_000_000
MC_SEED = 20240101
_MC_CHUNK = 50_000


def _points(a, name: str) -> np.ndarray:
    F = np.atleast_2d(np.asarray(a, dtype=float))
    if F.size == 0:
        raise UsageError(f"{name} must not be empty")
    return F


def _nearest_distances(ref: np.ndarray, approx: np.ndarray) -> np.ndarray:
    out = np.empty(len(ref))
    # rows of the distance matrix in blocks, to bound memory on large fronts
    step = max(1, 4_000_000 // max(1, len(approx) * ref.shape[1]))
    for s in range(0, len(ref), step):
        out[s : s + step] = pairwise_euclidean(ref[s : s + step], approx).min(axis=1)
    return out


def igd(approx, ref) -> float:
    """Mean distance from each reference-front point to its nearest approximation point.

    >>> round(igd([[0, 1], [1, 0]], [[0, 1], [0.5, 0.5], [1, 0]]), 5)
    0.2357
    """
    A = _points(approx, "approximation set")
    R = _points(ref, "reference front")
    if A.shape[1] != R.shape[1]:
        raise UsageError("approximation and reference front differ in dimension")
    return float(_nearest_distances(R, A).mean())


def spacing(approx) -> float:
    """Standard deviation (population form) of nearest-other-member distances."""
    A = _points(approx, "approximation set")
    if len(A) < 2:
        raise UsageError("spacing needs at least two points")
    D = pairwise_euclidean(A, A)
    np.fill_diagonal(D, np.inf)
    d = D.min(axis=1)
    return float(np.sqrt(np.mean((d - d.mean()) ** 2)))


def nadir_plus(ref, delta: float = 0.1) -> np.ndarray:
    return _points(ref, "reference front").max(axis=0) + delta


def _hv2(F: np.ndarray, R: np.ndarray) -> float:
    F = F[np.argsort(F[:, 0], kind="stable")]
    volume = 0.0
    best_y = R[1]
    for x, y in F:
        if y < best_y:
            volume += (R[0] - x) * (best_y - y)
            best_y = y
    return volume


def _hv3(F: np.ndarray, R: np.ndarray) -> float:
    F = F[np.argsort(F[:, 2], kind="stable")]
    volume = 0.0
    for i in range(len(F)):
        top = F[i + 1, 2] if i + 1 < len(F) else R[2]
        height = top - F[i, 2]
        if height > 0:
            volume += height * _hv2(F[: i + 1, :2], R[:2])
    return volume


def _hv_monte_carlo(F: np.ndarray, R: np.ndarray, origin: np.ndarray, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        size = min(_MC_CHUNK, samples - done)
        S = origin + rng.random((size, len(R))) * (R - origin)
        covered = np.zeros(size, dtype=bool)
        for f in F:
            covered |= np.all(S >= f, axis=1)
        hits += int(covered.sum())
        done += size
    p = hits / samples
    return p, np.sqrt(p * (1.0 - p) / samples)


def hv(approx, ref_point, origin=None, samples: int = MC_SAMPLES, seed: int = MC_SEED) -> float:
    """Hypervolume of ``approx`` bounded by ``ref_point``, divided by the box volume.

    The box runs from ``origin`` (zeros by default) to ``ref_point``. Points
    not strictly better than ``ref_point`` in every objective add nothing.
    Two and three objectives are exact; more objectives use a seeded Monte
    Carlo estimate (see :func:`hv_with_error`).

    >>> round(hv([[0.5, 0.5]], [1.1, 1.1]), 5)
    0.29752
    """
    return hv_with_error(approx, ref_point, origin, samples, seed)[0]


def hv_with_error(approx, ref_point, origin=None, samples: int = MC_SAMPLES, seed: int = MC_SEED):
    """Normalised hypervolume and its standard error (zero when exact)."""
    F = _points(approx, "approximation set")
    R = np.asarray(ref_point, dtype=float)
    O = np.zeros_like(R) if origin is None else np.asarray(origin, dtype=float)
    if R.shape != (F.shape[1],) or O.shape != R.shape:
        raise UsageError("reference point dimension does not match the approximation set")
    extent = R - O
    if np.any(extent <= 0):
        raise UsageError("reference point must exceed the origin in every objective")
    F = F[np.all(F < R, axis=1)]
    if len(F) == 0:
        return 0.0, 0.0
    # parts of boxes below the origin are outside the normalising box
    F = np.maximum(F, O)
    M = len(R)
    if M == 1:
        return float((R[0] - F[:, 0].min()) / extent[0]), 0.0
    if M == 2:
        return _hv2(F, R) / float(np.prod(extent)), 0.0
    if M == 3:
        return _hv3(F, R) / float(np.prod(extent)), 0.0
    p, se = _hv_monte_carlo(F, R, O, samples, seed)
    return float(p), float(se)
