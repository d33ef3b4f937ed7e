import pytest
from zoo import NAMES, bundle

from bicotwist.bicovariant import TensorSqElement, build_bimodule, tensor_product, trivial_yd
from bicotwist.braiding import (
    apply_braiding,
    braiding_by_linear_system,
    braiding_square_witness,
    braiding_squared_is_identity,
    construct_braiding,
    uniqueness_dimension,
    verify_braiding,
)
from bicotwist.hopf import builtin_group, function_algebra
from bicotwist.linalg import Matrix
from bicotwist.scalars import ONE, ZERO


def _flip(d: int) -> Matrix:
    m = Matrix.zeros(d * d, d * d)
    for i in range(d):
        for j in range(d):
            m.data[j * d + i][i * d + j] = ONE
    return m


@pytest.mark.parametrize("name", NAMES)
def test_braiding_verifies(name):
    b = bundle(name).b
    rep = verify_braiding(b)
    assert rep.passed, rep.failures
    assert rep["uniqueness"].detail == "solution space dimension 0"


@pytest.mark.parametrize("name", NAMES)
def test_braiding_matches_linear_system_oracle(name):
    b = bundle(name).b
    assert braiding_by_linear_system(b.host, b.square) == b.full
    assert uniqueness_dimension(b.host, b.square) == 0


def test_trivial_braiding_is_identity_on_one_dim():
    assert bundle("FIX-TRIV").b.coeffs == Matrix([[1]])


@pytest.mark.parametrize("name", ["FIX-Z4", "FIX-Z2xZ2"])
def test_abelian_trivial_action_gives_flip(name):
    b = bundle(name).b
    assert b.coeffs == _flip(2)
    assert braiding_squared_is_identity(b)


def test_s3_braiding_formula():
    bd = bundle("FIX-S3")
    b, G = bd.b, bd.A.group
    degrees = [G.index(t) for t in ("t", "tc", "tc2")]
    for i, s in enumerate(degrees):
        for j, t in enumerate(degrees):
            conj = G.mul(G.mul(G.inverse(t), s), t)
            k = degrees.index(conj)
            for p in range(3):
                for q in range(3):
                    expected = ONE if (p, q) == (j, k) else ZERO
                    assert b.coefficient(i, j, p, q) == expected


def test_s3_square_is_not_identity():
    b = bundle("FIX-S3").b
    assert not braiding_squared_is_identity(b)
    i, j = braiding_square_witness(b)
    sq = b.coeffs @ b.coeffs
    col = [sq.data[r][i * 3 + j] for r in range(9)]
    assert col != [ONE if r == i * 3 + j else ZERO for r in range(9)]
    assert verify_braiding(b)["braid_equation"].ok


def test_commutative_host_gives_flip():
    A = function_algebra(builtin_group("Z2"))
    M = build_bimodule(A, trivial_yd(A))
    b = construct_braiding(M)
    assert b.coeffs == Matrix([[1]])
    assert braiding_squared_is_identity(b)
    assert verify_braiding(b).passed


def test_apply_braiding_flips_basis_pairs():
    b = bundle("FIX-Z4").b
    T = b.square
    x = TensorSqElement.from_vector(T, T.omega_pair(0, 1))
    assert apply_braiding(b, x) == TensorSqElement.from_vector(T, T.omega_pair(1, 0))
    other = tensor_product(b.host, b.host)
    with pytest.raises(ValueError, match="tensor square"):
        apply_braiding(b, TensorSqElement.from_vector(other, other.omega_pair(0, 1)))
