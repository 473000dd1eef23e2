from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqlrc.errors import DimensionMismatch, FieldMismatch, NoSolution
from seqlrc.field import gf
from seqlrc.matrix import Matrix, hstack, kernel, kronecker, rank, rref, row_basis, solve

F3 = gf(3)
F5 = gf(5)


def M(f, rows):
    return Matrix(f, rows)


def test_rref_small_example():
    a = M(F5, [[2, 4, 1], [1, 2, 3]])
    red, piv = rref(a)
    # row 1 scaled by 3 = 2^{-1}: [1, 2, 3]; then row 2 - row 1 = [0, 0, 0]
    assert red.tolist() == [[1, 2, 3], [0, 0, 0]]
    assert piv == [0]


def test_rref_is_idempotent_and_preserves_row_space():
    rng = np.random.default_rng(1)
    for _ in range(50):
        a = M(F5, rng.integers(0, 5, (3, 6)))
        red, piv = rref(a)
        again, piv2 = rref(red)
        assert again == red and piv == piv2
        assert row_basis(a) == row_basis(red)
        for i, c in enumerate(piv):
            col = red.data[:, c]
            assert col[i] == 1 and np.count_nonzero(col) == 1


def test_kernel_example():
    h = M(F3, [[1, 1, 1]])
    k = kernel(h)
    assert k.rows == 2
    assert np.all(F3.matmul(h.data, k.data.T) == 0)
    assert kernel(Matrix.identity(F3, 3)).shape == (0, 3)


@pytest.mark.parametrize("q", [3, 4, 5, 9])
def test_rank_nullity(q):
    f = gf(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        r, c = rng.integers(1, 6, 2)
        a = Matrix(f, rng.integers(0, q, (r, c)))
        k = kernel(a)
        assert rank(a) + k.rows == c
        if k.rows:
            assert np.all(f.matmul(a.data, k.data.T) == 0)
            assert k.rank() == k.rows


def _all_matrices(f, r, c):
    for entries in itertools.product(range(f.q), repeat=r * c):
        yield Matrix(f, np.array(entries).reshape(r, c))


def test_kronecker_laws_exhaustive_small():
    # every 1x2 and 2x1 matrix over GF(3): mixed product and transpose laws
    rows = list(_all_matrices(F3, 1, 2))
    cols = list(_all_matrices(F3, 2, 1))
    for a, c in itertools.product(rows, cols):
        for b, d in itertools.product(rows[::2], cols[::2]):
            assert kronecker(a, b) @ kronecker(c, d) == kronecker(a @ c, b @ d)
            assert kronecker(a, b).T == kronecker(a.T, b.T)


def test_kronecker_laws_random_gf5():
    rng = np.random.default_rng(5)
    for _ in range(100):
        a = M(F5, rng.integers(0, 5, (2, 3)))
        b = M(F5, rng.integers(0, 5, (3, 2)))
        c = M(F5, rng.integers(0, 5, (3, 2)))
        d = M(F5, rng.integers(0, 5, (2, 4)))
        assert kronecker(a, b) @ kronecker(c, d) == kronecker(a @ c, b @ d)
        assert kronecker(a, b).T == kronecker(a.T, b.T)


def test_kronecker_block_structure():
    a = M(F3, [[1, 2]])
    b = M(F3, [[1, 1], [0, 2]])
    assert kronecker(a, b).tolist() == [[1, 1, 2, 2], [0, 2, 0, 1]]


def test_kronecker_rank_multiplies():
    rng = np.random.default_rng(9)
    for _ in range(30):
        a = M(F5, rng.integers(0, 5, (2, 4)))
        b = M(F5, rng.integers(0, 5, (3, 3)))
        assert rank(kronecker(a, b)) == rank(a) * rank(b)


def test_solve_unique_and_underdetermined():
    a = M(F5, [[1, 2], [3, 4]])
    sol = solve(a, [1, 0])
    assert sol.unique
    assert list(a.matvec(sol.particular)) == [1, 0]
    b = M(F5, [[1, 1, 1]])
    sol = solve(b, [3])
    assert sol.kernel_dim == 2
    assert int(b.matvec(sol.particular)[0]) == 3


def test_solve_inconsistent():
    a = M(F3, [[1, 1], [1, 1]])
    with pytest.raises(NoSolution):
        solve(a, [0, 1])
    with pytest.raises(DimensionMismatch):
        solve(a, [0, 1, 2])


def test_json_round_trip():
    for q in (3, 9, 25):
        f = gf(q)
        a = Matrix(f, np.random.default_rng(q).integers(0, q, (3, 5)))
        assert Matrix.from_json(a.dumps()) == a
        assert Matrix.from_json(a.to_json()) == a


def test_shape_and_field_errors():
    with pytest.raises(DimensionMismatch):
        M(F3, [[1, 2]]) @ M(F3, [[1, 2]])
    with pytest.raises(FieldMismatch):
        M(F3, [[1]]) + M(F5, [[1]])
    with pytest.raises(ValueError):
        M(F3, [[3]])
    with pytest.raises(FieldMismatch):
        hstack([M(F3, [[1]]), M(F5, [[1]])])


def test_printed_product_matrix():
    p = M(F3, [[1, 0, 1, 2], [0, 1, 1, 1]])
    d = M(F3, [[1, 0, 1], [0, 1, 1]])
    assert kronecker(p, d).tolist() == [
        [1, 0, 1, 0, 0, 0, 1, 0, 1, 2, 0, 2],
        [0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 2, 2],
        [0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1],
        [0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1, 1],
    ]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 4, 9]), st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_transpose_rank_equal(q, r, c, seed):
    f = gf(q)
    a = Matrix(f, np.random.default_rng(seed).integers(0, q, (r, c)))
    assert rank(a) == rank(a.T)
