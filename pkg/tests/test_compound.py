from itertools import combinations

import numpy as np
import pytest

from matmeans.compound import CompoundIndex, compound_matrix, compound_spectrum_check
from matmeans.densela import random_pd, symmetrize
from matmeans.means import geometric_mean
from matmeans.spectra import eigenvalues_desc


def random_square(n, seed):
    return np.random.default_rng(seed).standard_normal((n, n))


def test_index_is_lexicographic():
    idx = CompoundIndex.build(4, 2)
    assert idx.subsets == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert idx.size == 6


def test_top_order_compound_is_determinant():
    x = np.array([[1.0, 2.0], [3.0, 4.0]])
    got = compound_matrix(x, 2)
    assert got.shape == (1, 1)
    assert got[0, 0] == pytest.approx(np.linalg.det(x))


def test_identity_compound():
    assert compound_matrix(np.eye(3), 2) == pytest.approx(np.eye(3), abs=1e-14)


def test_diagonal_compound():
    got = compound_matrix(np.diag([2.0, 3.0, 5.0]), 2)
    assert got == pytest.approx(np.diag([6.0, 10.0, 15.0]), abs=1e-12)


def test_first_order_compound_is_copy():
    x = random_square(3, 1)
    got = compound_matrix(x, 1)
    assert np.array_equal(got, x)
    got[0, 0] = 99.0
    assert x[0, 0] != 99.0


def test_order_out_of_range():
    with pytest.raises(ValueError):
        compound_matrix(np.eye(3), 0)
    with pytest.raises(ValueError):
        compound_matrix(np.eye(3), 4)


def test_spectrum_check_diagonal():
    s = np.diag([3.0, 2.0, 1.0])
    assert compound_spectrum_check(s, 2)
    assert eigenvalues_desc(compound_matrix(s, 2)) == pytest.approx([6.0, 3.0, 2.0])


def test_spectrum_check_identity():
    for k in (1, 2, 3, 4):
        assert compound_spectrum_check(np.eye(4), k)


def test_spectrum_matches_brute_force_products():
    s = symmetrize(random_square(4, 7))
    # independent oracle: k-fold products of LAPACK eigenvalues
    lam = np.linalg.eigvalsh(s)
    for k in (1, 2, 3, 4):
        expected = np.sort(
            [np.prod([lam[i] for i in c]) for c in combinations(range(4), k)]
        )[::-1]
        got = eigenvalues_desc(symmetrize(compound_matrix(s, k)))
        assert got == pytest.approx(expected, abs=1e-7 * (1.0 + np.max(np.abs(expected))))
        assert compound_spectrum_check(s, k)


@pytest.mark.parametrize("seed", range(8))
def test_multiplicativity(seed):
    x = random_square(4, seed)
    y = random_square(4, seed + 50)
    for k in (1, 2, 3, 4):
        lhs = compound_matrix(x @ y, k)
        rhs = compound_matrix(x, k) @ compound_matrix(y, k)
        scale = 1.0 + max(np.max(np.abs(lhs)), np.max(np.abs(rhs)))
        assert np.max(np.abs(lhs - rhs)) <= 1e-7 * scale


@pytest.mark.parametrize("seed", range(12))
def test_geometric_mean_compound_identity_smoke(seed):
    n = 3 + seed % 3
    a = random_pd(n, 1.5, seed)
    b = random_pd(n, 1.5, seed + 900)
    g = geometric_mean(a, b, 0.5)
    for k in range(1, n + 1):
        lhs = compound_matrix(g, k)
        rhs = geometric_mean(
            symmetrize(compound_matrix(a, k)), symmetrize(compound_matrix(b, k)), 0.5
        )
        scale = 1.0 + max(np.max(np.abs(lhs)), np.max(np.abs(rhs)))
        assert np.max(np.abs(lhs - rhs)) <= 1e-7 * scale
