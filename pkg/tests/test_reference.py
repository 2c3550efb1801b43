import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from areamo.core import IdealPoints, nondominated_filter, normalize
from areamo.reference import (
    ConsistencyError,
    ReferenceSet,
    build_neighbourhood,
    initial_reference_set,
    lattice_size,
    match_population,
    project_to_plane,
    shift_to_plane,
    simplex_lattice,
    update_reference_set,
    weight_design,
    zeta_scores,
)

UNIT = IdealPoints(np.zeros(2), np.ones(2))
R_PAIR = np.array([[0.5, -0.5], [-0.5, 0.5]])


def zeta_oracle(R, Fn):
    n = len(R)
    out = np.zeros(n, dtype=int)
    for i in range(n):
        own = max(abs(a - b) for a, b in zip(Fn[i], R[i]))
        for k in range(n):
            if k != i and max(abs(a - b) for a, b in zip(Fn[i], R[k])) < own:
                out[i] += 1
    return out


def test_simplex_lattice_examples():
    np.testing.assert_allclose(
        simplex_lattice(2, 4)[np.argsort(simplex_lattice(2, 4)[:, 0])],
        [[0, 1], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25], [1, 0]],
    )
    assert len(simplex_lattice(3, 13)) == 105
    assert {tuple(r) for r in simplex_lattice(3, 1)} == {tuple(r) for r in np.eye(3)}


@given(st.integers(2, 5), st.integers(1, 8))
def test_lattice_counts_and_sums(M, H):
    W = simplex_lattice(M, H)
    assert len(W) == lattice_size(M, H) == math.comb(H + M - 1, M - 1)
    np.testing.assert_allclose(W.sum(axis=1), 1.0)
    assert len(np.unique(np.round(W * H).astype(int), axis=0)) == len(W)


@pytest.mark.parametrize("M,N", [(3, 105), (2, 100), (3, 200), (8, 156), (15, 135), (3, 595), (2, 600)])
def test_weight_design_sizes(M, N):
    W = weight_design(M, N)
    assert W.shape == (N, M)
    np.testing.assert_allclose(W.sum(axis=1), 1.0)
    assert np.all(W >= -1e-12)
    assert len(np.unique(np.round(W, 12), axis=0)) == N


def test_initial_reference_set_is_on_plane():
    refs = initial_reference_set(3, 105, 20)
    assert len(refs) == 105 and refs.T == 20
    np.testing.assert_allclose(refs.points.sum(axis=1), 0.0, atol=1e-12)


def test_plane_maps():
    np.testing.assert_allclose(shift_to_plane([1, 0, 0]), [2 / 3, -1 / 3, -1 / 3])
    np.testing.assert_allclose(shift_to_plane([1 / 3] * 3), [0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(shift_to_plane([0.75, 0.25]), [0.25, -0.25])
    np.testing.assert_allclose(project_to_plane([0.5, 0.5, 0.5]), [0, 0, 0])
    np.testing.assert_allclose(project_to_plane([1, 0, 0]), shift_to_plane([1, 0, 0]))


@given(st.lists(st.floats(-5, 5), min_size=2, max_size=6))
def test_projection_is_idempotent_and_on_plane(f):
    p = project_to_plane(f)
    assert abs(p.sum()) < 1e-9
    np.testing.assert_allclose(project_to_plane(p), p, atol=1e-12)


def test_neighbourhood_examples(rng):
    pts = rng.random((6, 2))
    np.testing.assert_array_equal(build_neighbourhood(pts, 1)[:, 0], np.arange(6))
    line = np.column_stack([np.arange(5.0), np.zeros(5)])
    B = build_neighbourhood(line, 3)
    for i in range(1, 4):
        assert B[i, 0] == i and set(B[i]) == {i - 1, i, i + 1}


def test_neighbourhood_matches_brute_force(rng):
    P = rng.random((105, 3))
    B = build_neighbourhood(P, 20)
    for i in range(105):
        d = [(0.0 if j == i else float(np.linalg.norm(P[i] - P[j])), j) for j in range(105)]
        d.sort(key=lambda t: (t[1] != i, t[0]))
        assert B[i, 0] == i
        assert set(B[i]) == {j for _, j in d[:20]}


def test_zeta_examples():
    np.testing.assert_array_equal(zeta_scores(R_PAIR, np.array([[1.0, 0.0], [0.0, 1.0]])), [0, 0])
    np.testing.assert_array_equal(zeta_scores(R_PAIR, np.array([[1.0, 0.0], [0.9, 0.1]])), [0, 1])


def test_zeta_rejects_broken_bijection():
    with pytest.raises(ConsistencyError):
        zeta_scores(R_PAIR, np.eye(2), targets=[0, 0])


@given(st.integers(0, 2**32 - 1), st.integers(2, 9), st.integers(2, 4))
def test_zeta_bounds_and_oracle(seed, n, M):
    g = np.random.default_rng(seed)
    R = project_to_plane(g.random((n, M)))
    Fn = g.random((n, M))
    z = zeta_scores(R, Fn)
    assert np.all((0 <= z) & (z <= n - 1))
    np.testing.assert_array_equal(z, zeta_oracle(R, Fn))
    perm = g.permutation(n)
    # rows given in another order with explicit targets give the same scores
    np.testing.assert_array_equal(zeta_scores(R, Fn[perm], targets=perm), z)


def _random_state(seed, N=8, A=6, M=2):
    g = np.random.default_rng(seed)
    X = g.random((N, 3))
    F = g.random((N, M))
    AX = g.random((A, 3))
    AF = g.random((A, M))
    AF = AF[nondominated_filter(AF)]
    AX = AX[: len(AF)]
    refs = ReferenceSet(project_to_plane(g.random((N, M))), np.zeros((N, 1), dtype=int))
    refs = ReferenceSet(refs.points, build_neighbourhood(refs.points, 3))
    z = IdealPoints.from_objectives(np.vstack([F, AF]))
    return g, X, F, AX, AF, refs, z


def test_update_with_empty_archive_is_identity():
    g, X, F, _, _, refs, z = _random_state(0)
    out = update_reference_set(X, F, np.empty((0, 3)), np.empty((0, 2)), refs, 8, 3, z, g)
    assert out.refs is refs and out.X is X and out.F is F and out.added == []


@given(st.integers(0, 2**32 - 1))
def test_update_bijection_invariants(seed):
    g, X, F, AX, AF, refs, z = _random_state(seed)
    out = update_reference_set(X, F, AX, AF, refs, 8, 3, z, g, K=3)
    assert len(out.refs) == len(out.X) == len(out.F) == 8
    np.testing.assert_allclose(out.refs.points.sum(axis=1), 0.0, atol=1e-12)
    assert out.refs.neighbours.shape == (8, 3)
    # every surviving row is a population member or one of the added archive members
    pool = np.vstack([F, AF[out.added]])
    for f in out.F:
        assert np.any(np.all(pool == f, axis=1))
    # references added from the archive carry their source solution
    grown_R = np.vstack([refs.points, project_to_plane(normalize(AF[out.added], z))])
    for r, f in zip(out.refs.points, out.F):
        k = int(np.argmin(np.abs(grown_R - r).sum(axis=1)))
        np.testing.assert_array_equal(pool[k], f)


@given(st.integers(0, 2**32 - 1))
def test_score_removals_follow_recomputed_zeta(seed):
    g, X, F, AX, AF, refs, z = _random_state(seed)
    out = update_reference_set(X, F, AX, AF, refs, 8, 3, z, g, K=3)
    Pg = np.vstack([normalize(F, z), normalize(AF[out.added], z)])
    Rg = np.vstack([refs.points, project_to_plane(Pg[8:])])
    alive = np.ones(len(Rg), dtype=bool)
    for worst in out.removed_by_score:
        idx = np.flatnonzero(alive)
        scores = zeta_oracle(Rg[idx], Pg[idx])
        assert scores[list(idx).index(worst)] == scores.max() > 0
        alive[worst] = False
    assert alive.sum() - len(out.removed_by_truncation) == 8


def test_match_population_example():
    F = np.array([[1.0, 0.0], [0.0, 1.0]])
    AF = np.array([[0.4, 0.6]])
    X, AX = F.copy(), AF.copy()
    MX, MF = match_population(X, F, AX, AF, R_PAIR, UNIT)
    np.testing.assert_array_equal(MF, [[1.0, 0.0], [0.0, 1.0]])
    np.testing.assert_array_equal(MX, MF)


def test_match_population_identity_when_already_matched():
    refs = initial_reference_set(2, 11, 3)
    F = refs.points + 0.5
    z = IdealPoints(np.full(2, 0.0), np.full(2, 1.0))
    _, MF = match_population(F, F, np.empty((0, 2)), np.empty((0, 2)), refs.points, z)
    np.testing.assert_allclose(MF, F)


@given(st.integers(0, 2**32 - 1), st.integers(3, 10), st.integers(0, 8))
def test_match_population_is_a_bijection(seed, N, A):
    g = np.random.default_rng(seed)
    R0 = project_to_plane(g.random((N, 3)))
    F, AF = g.random((N, 3)), g.random((A, 3))
    X = np.arange(N, dtype=float)[:, None]
    AX = np.arange(N, N + A, dtype=float)[:, None]
    z = IdealPoints.from_objectives(np.vstack([F, AF]))
    MX, MF = match_population(X, F, AX, AF, R0, z)
    assert MX.shape == (N, 1) and len(np.unique(MX)) == N
    allF = np.vstack([F, AF])
    np.testing.assert_array_equal(MF, allF[MX[:, 0].astype(int)])
