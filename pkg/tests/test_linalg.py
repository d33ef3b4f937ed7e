import random
from fractions import Fraction

import pytest
import sympy

from bicotwist.hopf import builtin_group, group_algebra
from bicotwist.linalg import (
    LinalgError,
    Matrix,
    SparseMatrix,
    Tensor3,
    contract,
    extend_to_basis,
    inverse,
    kernel,
    kron,
    rank,
    solve,
    sparse_kron,
)
from bicotwist.scalars import ONE, ZERO, root_of_unity

z4 = root_of_unity(4, 1)


def test_kernel_of_identity_is_empty():
    assert kernel(Matrix.identity(3)).cols == 0


def test_solve_scalar():
    sol = solve(Matrix([[2]]), Matrix([[1]]))
    assert sol.exists and sol.solution == Matrix([[Fraction(1, 2)]])


def test_kernel_with_gaussian_entries():
    a = Matrix([[1, z4], [-z4, 1]])
    k = kernel(a)
    assert k.cols == 1
    col = [k.data[0][0], k.data[1][0]]
    assert a.apply(col) == [ZERO, ZERO]
    # the matrix sends (zeta_4, 1) to (2 zeta_4, 2); the kernel is spanned by (-zeta_4, 1)
    assert a.apply([z4, ONE]) == [2 * z4, 2 * ONE]
    assert col[0] == -z4 * col[1]


def test_inconsistent_system_is_reported():
    sol = solve(Matrix([[1, 1], [1, 1]]), Matrix([[1], [2]]))
    assert not sol.exists and sol.solution is None


def test_shape_mismatch():
    with pytest.raises(LinalgError):
        solve(Matrix([[1, 2]]), Matrix([[1], [2]]))
    with pytest.raises(LinalgError):
        Matrix([[1, 2], [3]])


def _random_rational(rng, rows, cols, rank_cap=None):
    if rank_cap is None:
        return Matrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)])
    left = _random_rational(rng, rows, rank_cap)
    right = _random_rational(rng, rank_cap, cols)
    return left @ right


def _to_sympy(m: Matrix):
    return sympy.Matrix([[sympy.Rational(x.as_fraction().numerator, x.as_fraction().denominator)
                          for x in r] for r in m.data])


def test_rank_and_kernel_against_sympy():
    rng = random.Random(11)
    for trial in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_rational(rng, rows, cols, rng.randint(1, min(rows, cols)) if trial % 2 else None)
        ref = _to_sympy(m)
        assert rank(m) == ref.rank()
        k = kernel(m)
        assert rank(m) + k.cols == cols
        assert k.cols == len(ref.nullspace())
        assert (m @ k).data == Matrix.zeros(rows, k.cols).data
        if k.cols:
            assert rank(k) == k.cols


def test_inverse_round_trip():
    rng = random.Random(5)
    done = 0
    while done < 10:
        m = _random_rational(rng, 4, 4)
        if rank(m) < 4:
            continue
        done += 1
        assert m @ inverse(m) == Matrix.identity(4)
        assert inverse(m) @ m == Matrix.identity(4)
    with pytest.raises(LinalgError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_inverse_with_roots_of_unity():
    m = Matrix([[1, z4], [z4, 1]])
    assert m @ inverse(m) == Matrix.identity(2)


def test_extend_to_basis():
    cols = Matrix.from_columns([[1, 1, 0]], 3)
    full = extend_to_basis(cols)
    assert full.cols == 3 and rank(full) == 3
    assert [r[0] for r in full.data] == [ONE, ONE, ZERO]
    with pytest.raises(LinalgError):
        extend_to_basis(Matrix.from_columns([[1, 0], [2, 0]], 2))


def test_contract_examples():
    A = group_algebra(builtin_group("Z2"))
    eu = [ZERO, ONE]
    assert contract("ijk,i,j->k", A.mult, eu, eu) == [ONE, ZERO]
    assert contract("ii->", Matrix.identity(4)) == 4
    T = Tensor3([[[1, 2], [3, 4]], [[5, 6], [7, 8]]])
    assert contract("ai,ijk->ajk", Matrix.identity(2), T) == T
    with pytest.raises(LinalgError):
        contract("ij,jk->q", Matrix.identity(2), Matrix.identity(2))
    with pytest.raises(LinalgError):
        contract("ij,jk->ik", Matrix.identity(2), Matrix.identity(3))


def test_sparse_matches_dense():
    rng = random.Random(3)
    a = _random_rational(rng, 3, 2)
    b = _random_rational(rng, 2, 4)
    sa, sb = SparseMatrix.from_matrix(a), SparseMatrix.from_matrix(b)
    assert (sa @ SparseMatrix.from_matrix(_random_rational(rng, 2, 2))).rows == 3
    assert sparse_kron(sa, sb).to_matrix() == kron(a, b)
    assert (sa @ sb).to_matrix() == a @ b
    assert (sa @ SparseMatrix.from_matrix(Matrix.identity(2))) == sa
