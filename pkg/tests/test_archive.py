import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from areamo.archive import Archive, assess, spea2_truncate, update_archive
from areamo.core import nondominated_filter


def spea2_oracle(P, target):
    """Straight-line SPEA2 truncation: delete the lexicographically smallest sorted distance list."""
    alive = list(range(len(P)))
    while len(alive) > target:
        keyed = []
        for i in alive:
            d = sorted(float(np.linalg.norm(P[i] - P[j])) for j in alive if j != i)
            keyed.append((d, i))
        keyed.sort()
        alive.remove(keyed[0][1])
    return alive


def test_truncate_example():
    P = np.array([[0, 1], [0.45, 0.55], [0.5, 0.5]])
    assert list(spea2_truncate(P, 2)) == [0, 2]


def test_truncate_identity_and_duplicates():
    P = np.array([[0, 1], [0.5, 0.5], [0.5, 0.5], [1, 0]])
    assert list(spea2_truncate(P, 4)) == [0, 1, 2, 3]
    kept = spea2_truncate(P, 3)
    assert len(kept) == 3 and {0, 3} <= set(kept)


def test_truncate_capacity_three_of_five():
    P = np.array([[0.0, 1.0], [0.1, 0.8], [0.3, 0.5], [0.35, 0.45], [1.0, 0.0]])
    assert list(spea2_truncate(P, 3)) == spea2_oracle(P, 3)


@given(st.integers(0, 2**32 - 1), st.integers(2, 14), st.integers(2, 3))
def test_truncate_matches_oracle(seed, n, M):
    P = np.random.default_rng(seed).random((n, M))
    target = int(np.random.default_rng(seed + 1).integers(1, n + 1))
    assert list(spea2_truncate(P, target)) == spea2_oracle(P, target)


def test_archive_unchanged_by_known_members(rng):
    F = np.array([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    X = rng.random((3, 4))
    A = update_archive(Archive.empty(4, 2, 5), X, F)
    B = update_archive(A, X[:2], F[:2])
    np.testing.assert_array_equal(B.F, A.F)
    np.testing.assert_array_equal(B.X, A.X)


def test_archive_collapses_to_dominating_point(rng):
    A = update_archive(Archive.empty(2, 2, 5), rng.random((4, 2)), np.array([[0.1, 0.9], [0.5, 0.5], [0.9, 0.1], [0.4, 0.7]]))
    B = update_archive(A, np.zeros((1, 2)), np.array([[0.0, 0.0]]))
    np.testing.assert_array_equal(B.F, [[0.0, 0.0]])


@given(st.integers(0, 2**32 - 1))
def test_archive_stays_nondominated_and_bounded(seed):
    g = np.random.default_rng(seed)
    A = Archive.empty(3, 2, 6)
    for _ in range(5):
        F = g.random((5, 2))
        A = update_archive(A, g.random((5, 3)), F)
        assert len(A) <= 6
        assert len(nondominated_filter(A.F)) == len(A)
        assert len(np.unique(A.F, axis=0)) == len(A)


def test_assess_sizes(rng):
    t = np.linspace(0, 1, 15)
    F = np.column_stack([t, 1 - t])
    A = update_archive(Archive.empty(1, 2, 15), rng.random((15, 1)), F)
    assert len(assess(A, 20)) == 15
    assert len(assess(A, 10)) == 10
