"""Reference-plane geometry and reference-set maintenance.

Reference points live on the hyperplane ``sum(f) = 0`` of the normalised
objective space. A population is stored *aligned* with its reference set:
row ``i`` of the population arrays is the solution whose target is reference
``i``. Functions that accept explicit target indices check that they form a
bijection.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .archive import spea2_truncate
from .core import IdealPoints, normalize, pairwise_chebyshev, pairwise_euclidean

INNER_LAYER_SHRINK = 0.5


class ConsistencyError(RuntimeError):
    """Population/reference pairing is not a bijection."""


@dataclass
class ReferenceSet:
    points: np.ndarray  # (|R|, M), rows sum to zero
    neighbours: np.ndarray  # (|R|, T) indices, self first

    def __len__(self) -> int:
        return len(self.points)

    @property
    def T(self) -> int:
        return self.neighbours.shape[1]

    def copy(self) -> "ReferenceSet":
        return ReferenceSet(self.points.copy(), self.neighbours.copy())


def simplex_lattice(M: int, H: int) -> np.ndarray:
    """All weight vectors with entries in {0, 1/H, ..., 1} summing to one."""
    rows = []
    # stars and bars: choose M-1 bar positions among H+M-1 slots
    for bars in itertools.combinations(range(H + M - 1), M - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(H + M - 1 - prev - 1)
        rows.append(parts)
    return np.asarray(rows, dtype=float) / H


def lattice_size(M: int, H: int) -> int:
    return math.comb(H + M - 1, M - 1)


def weight_design(M: int, N: int) -> np.ndarray:
    """Exactly ``N`` simplex weights: one lattice, plus a shrunken inner layer if needed.

    The outer layer uses the largest ``H`` with at most ``N`` points. Any
    shortfall is filled from a second lattice pulled halfway towards the
    centroid, skipping any point that coincides with the outer lattice; if
    that layer overshoots, a deterministic max-min subset of it is used.
    """
    if N < M:
        raise ValueError(f"need at least M={M} reference points, got N={N}")
    H = 1
    while lattice_size(M, H + 1) <= N:
        H += 1
    W = simplex_lattice(M, H)
    short = N - len(W)
    if short == 0:
        return W
    # inner lattices can coincide with outer points (e.g. H=18 with H2=3); skip those
    H2 = 1
    while True:
        inner = INNER_LAYER_SHRINK * simplex_lattice(M, H2) + (1.0 - INNER_LAYER_SHRINK) / M
        inner = inner[~_on_lattice(inner, H)]
        if len(inner) >= short:
            break
        H2 += 1
    if len(inner) > short:
        from .problems import farthest_point_subset

        inner = farthest_point_subset(inner, short)
    return np.vstack([W, inner])


def _on_lattice(W: np.ndarray, H: int) -> np.ndarray:
    scaled = W * H
    return np.all(np.abs(scaled - np.round(scaled)) < 1e-9, axis=1)


def shift_to_plane(w) -> np.ndarray:
    """Translate simplex weights onto the plane through the origin."""
    w = np.asarray(w, dtype=float)
    return w - 1.0 / w.shape[-1]


def project_to_plane(f) -> np.ndarray:
    """Orthogonal projection onto ``sum(f) = 0``; idempotent."""
    f = np.asarray(f, dtype=float)
    return f - f.mean(axis=-1, keepdims=True)


def build_neighbourhood(points: np.ndarray, T: int) -> np.ndarray:
    """The ``T`` Euclidean-nearest indices of every point, itself first."""
    points = np.asarray(points, dtype=float)
    T = min(T, len(points))
    D = pairwise_euclidean(points, points)
    np.fill_diagonal(D, -1.0)
    return np.argsort(D, axis=1, kind="stable")[:, :T]


def initial_reference_set(M: int, N: int, T: int) -> ReferenceSet:
    points = shift_to_plane(weight_design(M, N))
    return ReferenceSet(points, build_neighbourhood(points, T))


def _check_bijection(targets, size: int) -> np.ndarray:
    targets = np.asarray(targets, dtype=int)
    if len(targets) != size or not np.array_equal(np.sort(targets), np.arange(size)):
        raise ConsistencyError("population targets are not a bijection onto the reference set")
    return targets


def zeta_scores(R: np.ndarray, Fn: np.ndarray, targets=None) -> np.ndarray:
    """Per reference, how many other references are Chebyshev-closer to its solution.

    Args:
        R: reference points, ``(|R|, M)``.
        Fn: normalised objectives of the population, ``(|R|, M)``.
        targets: reference index of each population row; identity if omitted.

    Raises:
        ConsistencyError: ``targets`` is not a permutation of ``range(|R|)``.
    """
    R = np.asarray(R, dtype=float)
    Fn = np.asarray(Fn, dtype=float)
    if targets is None:
        targets = np.arange(len(R))
    targets = _check_bijection(targets, len(R))
    aligned = np.empty_like(Fn)
    aligned[targets] = Fn
    C = pairwise_chebyshev(aligned, R)
    own = np.diag(C)
    return np.sum(C < own[:, None], axis=1)


@dataclass
class UpdateOutcome:
    refs: ReferenceSet
    X: np.ndarray
    F: np.ndarray
    added: list[int]  # archive indices added, in order
    removed_by_score: list[int]  # indices into the grown set
    removed_by_truncation: list[int]


def update_reference_set(
    X: np.ndarray,
    F: np.ndarray,
    AX: np.ndarray,
    AF: np.ndarray,
    refs: ReferenceSet,
    N: int,
    T: int,
    z: IdealPoints,
    rng: np.random.Generator,
    K: int | None = None,
) -> UpdateOutcome:
    """Grow the reference set from the archive, then prune it back to ``N``.

    Population rows are aligned with ``refs.points``. ``K`` defaults to
    ``ceil(sqrt(N))`` and is capped by the archive size. An empty archive
    returns the inputs unchanged.
    """
    if len(AF) == 0:
        return UpdateOutcome(refs, X, F, [], [], [])
    if K is None:
        K = math.ceil(math.sqrt(N))
    K = min(K, len(AF))

    Pn = normalize(F, z)
    An = normalize(AF, z)
    points = [refs.points]
    Xs, Fs, Ps = [X], [F], [Pn]
    added = []
    gap = pairwise_euclidean(An, Pn).min(axis=1)
    for _ in range(K):
        a = int(np.argmax(gap))
        added.append(a)
        Xs.append(AX[a : a + 1])
        Fs.append(AF[a : a + 1])
        Ps.append(An[a : a + 1])
        points.append(project_to_plane(An[a : a + 1]))
        gap = np.minimum(gap, np.sqrt(np.sum((An - An[a]) ** 2, axis=1)))

    R = np.vstack(points)
    Xg, Fg, Pg = np.vstack(Xs), np.vstack(Fs), np.vstack(Ps)

    C = pairwise_chebyshev(Pg, R)
    own = np.diag(C).copy()
    zeta = np.sum(C < own[:, None], axis=1)
    alive = np.ones(len(R), dtype=bool)
    removed_score = []
    while alive.sum() > N:
        live_scores = np.where(alive, zeta, -1)
        top = live_scores.max()
        if top <= 0:
            break
        ties = np.flatnonzero(live_scores == top)
        worst = int(ties[rng.integers(len(ties))]) if len(ties) > 1 else int(ties[0])
        alive[worst] = False
        removed_score.append(worst)
        # references that counted the removed one as closer lose a point
        zeta -= (alive & (C[:, worst] < own)).astype(int)

    removed_trunc = []
    if alive.sum() > N:
        idx = np.flatnonzero(alive)
        keep = spea2_truncate(Pg[idx], N)
        dropped = np.setdiff1d(np.arange(len(idx)), keep)
        removed_trunc = [int(i) for i in idx[dropped]]
        alive[idx[dropped]] = False

    R = R[alive]
    new_refs = ReferenceSet(R, build_neighbourhood(R, T))
    return UpdateOutcome(new_refs, Xg[alive], Fg[alive], added, removed_score, removed_trunc)


def match_population(
    X: np.ndarray,
    F: np.ndarray,
    AX: np.ndarray,
    AF: np.ndarray,
    R0: np.ndarray,
    z: IdealPoints,
) -> tuple[np.ndarray, np.ndarray]:
    """Re-associate population and archive members with the fixed references.

    Candidates are the union of population and archive with exact objective
    duplicates kept only as a last resort. Each round, every reference that is
    the nearest one for some open candidate takes its own nearest open
    candidate. Returns ``(X, F)`` aligned with ``R0``.
    """
    N = len(R0)
    SX = np.vstack([X, AX]) if len(AX) else X
    SF = np.vstack([F, AF]) if len(AF) else F
    _, first = np.unique(SF, axis=0, return_index=True)
    first = np.sort(first)
    if len(first) < N:
        rest = np.setdiff1d(np.arange(len(SF)), first)
        first = np.concatenate([first, rest[: N - len(first)]])
    SX, SF = SX[first], SF[first]
    E = pairwise_euclidean(R0, normalize(SF, z))

    row_open = np.ones(N, dtype=bool)
    col_open = np.ones(len(SF), dtype=bool)
    choice = np.full(N, -1)
    assigned = 0
    while assigned < N:
        sub = np.where(row_open[:, None] & col_open[None, :], E, np.inf)
        cols = np.flatnonzero(col_open)
        wanted = np.unique(np.argmin(sub[:, cols], axis=0))
        for i in wanted:
            if not row_open[i]:
                continue
            row = np.where(col_open, E[i], np.inf)
            k = int(np.argmin(row))
            choice[i] = k
            row_open[i] = False
            col_open[k] = False
            assigned += 1
            if assigned == N:
                break
    return SX[choice].copy(), SF[choice].copy()
