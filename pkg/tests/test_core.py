import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from areamo.core import (
    IdealPoints,
    UsageError,
    chebyshev_distance,
    denormalize,
    dominance_matrix,
    dominates,
    euclidean_distance,
    nondominated_filter,
    normalize,
    pairwise_chebyshev,
    pairwise_euclidean,
)

finite = st.floats(-10, 10, allow_nan=False)


def brute_nondominated(F):
    keep = []
    for i, a in enumerate(F):
        if not any(np.all(b <= a) and np.any(b < a) for j, b in enumerate(F) if j != i):
            keep.append(i)
    return keep


def test_dominates_examples():
    assert dominates((1, 2), (2, 3))
    assert not dominates((1, 2), (2, 1))
    assert not dominates((1, 2), (1, 2))


def test_dominates_length_mismatch():
    with pytest.raises(UsageError):
        dominates((1, 2), (1, 2, 3))


def test_nondominated_examples():
    assert list(nondominated_filter([(1, 2), (2, 1), (2, 2)])) == [0, 1]
    assert list(nondominated_filter([(3.0, 4.0)])) == [0]
    with pytest.raises(UsageError):
        nondominated_filter(np.empty((0, 2)))


def test_nondominated_matches_pairwise_oracle(rng):
    F = rng.random((50, 3))
    assert list(nondominated_filter(F)) == brute_nondominated(F)


@given(arrays(float, st.tuples(st.integers(1, 25), st.integers(2, 4)), elements=st.integers(0, 4).map(float)))
def test_nondominated_oracle_with_ties(F):
    # small integer grid forces many ties and duplicates
    assert list(nondominated_filter(F)) == brute_nondominated(F)


def test_dominance_matrix_agrees_with_dominates(rng):
    F = rng.integers(0, 3, size=(15, 2)).astype(float)
    D = dominance_matrix(F)
    for i in range(15):
        for j in range(15):
            assert D[i, j] == dominates(F[i], F[j])


def test_normalize_examples():
    z = IdealPoints(np.array([0.0, 2.0]), np.array([2.0, 4.0]))
    np.testing.assert_allclose(normalize([1, 3], z), [0.5, 0.5])
    np.testing.assert_allclose(normalize(z.z_l, z), [0, 0])
    np.testing.assert_allclose(normalize(z.z_u, z), [1, 1])


@given(arrays(float, (6, 3), elements=finite))
def test_normalize_roundtrip(F):
    z = IdealPoints.from_objectives(F)
    np.testing.assert_allclose(denormalize(normalize(F, z), z), F, atol=1e-9)


def test_degenerate_span_does_not_divide_by_zero():
    z = IdealPoints(np.array([1.0, 0.0]), np.array([1.0, 1.0]))
    assert np.all(np.isfinite(normalize([1.0, 0.5], z)))


def test_distances():
    assert chebyshev_distance((0, 0), (3, 4)) == 4
    assert euclidean_distance((0, 0), (3, 4)) == 5
    assert chebyshev_distance((1, 2), (1, 2)) == 0
    assert euclidean_distance((1, 2), (1, 2)) == 0
    with pytest.raises(UsageError):
        euclidean_distance((0, 0), (1, 2, 3))
    with pytest.raises(UsageError):
        chebyshev_distance((0,), (1, 2))


def test_pairwise_matches_scalar(rng):
    A, B = rng.random((4, 3)), rng.random((5, 3))
    E, C = pairwise_euclidean(A, B), pairwise_chebyshev(A, B)
    for i in range(4):
        for j in range(5):
            assert E[i, j] == pytest.approx(euclidean_distance(A[i], B[j]))
            assert C[i, j] == pytest.approx(chebyshev_distance(A[i], B[j]))
