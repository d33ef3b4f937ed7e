import random

import pytest

from bicotwist.hopf import (
    ConvolutionError,
    Functional2,
    GroupError,
    HopfAlgebra,
    builtin_group,
    check_group_table,
    convolution,
    convolution_inverse,
    counit_functional,
    function_algebra,
    group_algebra,
    verify_hopf,
)
from bicotwist.linalg import Matrix, Tensor3
from bicotwist.scalars import ONE, ZERO, root_of_unity

GROUPS = ("Z2", "Z4", "Z2xZ2", "S3")


@pytest.mark.parametrize("name", GROUPS)
@pytest.mark.parametrize("make", [group_algebra, function_algebra], ids=["group", "function"])
def test_builtin_algebras_pass(name, make):
    rep = verify_hopf(make(builtin_group(name)))
    assert rep.passed, rep.failures
    assert [c.id for c in rep.checks] == [
        "associativity", "unit", "coassociativity", "counit", "comultiplication_is_algebra_map",
        "counit_is_algebra_map", "antipode", "antipode_invertible"]


def test_group_algebra_antipodes():
    Z2 = group_algebra(builtin_group("Z2"))
    assert Z2.antipode == Matrix.identity(2)
    Z4 = group_algebra(builtin_group("Z4"))
    assert Z4.S(Z4.basis(1)) == Z4.basis(3)


def test_commutativity_flags():
    S3 = group_algebra(builtin_group("S3"))
    assert S3.dim == 6 and S3.is_cocommutative() and not S3.is_commutative()
    F2 = function_algebra(builtin_group("Z2"))
    assert F2.is_commutative() and F2.is_cocommutative()
    F6 = function_algebra(builtin_group("S3"))
    assert F6.is_commutative() and not F6.is_cocommutative()
    assert F6.one() == [ONE] * 6


def test_non_group_table_is_rejected():
    bad = [[0, 1, 2, 3], [1, 1, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
    with pytest.raises(GroupError, match=r"associativity fails at \(1,1,2\)"):
        group_algebra(bad)
    with pytest.raises(GroupError, match="identity"):
        check_group_table([[0, 0], [0, 0]])
    with pytest.raises(GroupError, match="closure"):
        check_group_table([[0, 1], [1]])


def _tampered_z4() -> HopfAlgebra:
    """C[Z4] with u . u redefined to u; all other tensors untouched."""
    A = group_algebra(builtin_group("Z4"))
    mult = Tensor3([[list(r) for r in plane] for plane in A.mult.data])
    mult.data[1][1] = [ZERO, ONE, ZERO, ZERO]
    return HopfAlgebra(A.labels, mult, A.unit, A.comult, A.counit, A.antipode, A.order, None, "tampered")


def test_tampered_z4_fails_with_witness():
    rep = verify_hopf(_tampered_z4())
    assert not rep.passed
    assoc = rep["associativity"]
    assert not assoc.ok and len(assoc.witness) == 3
    i, j, k = assoc.witness
    A = _tampered_z4()
    lhs = A.mul(A.mul(A.basis(i), A.basis(j)), A.basis(k))
    rhs = A.mul(A.basis(i), A.mul(A.basis(j), A.basis(k)))
    assert lhs != rhs


def test_convolution_unit_is_self_inverse():
    A = group_algebra(builtin_group("Z4"))
    eps = counit_functional(A)
    assert convolution_inverse(eps).values == eps.values


def test_bicharacter_inverse_on_z4():
    A = group_algebra(builtin_group("Z4"))
    z = root_of_unity(4, 1)
    gamma = Functional2(A, Matrix([[z ** (a * b) for b in range(4)] for a in range(4)]))
    gbar = convolution_inverse(gamma)
    assert gbar.values == Matrix([[z ** (-a * b % 4) for b in range(4)] for a in range(4)])


def test_rank_deficient_functional_is_not_invertible():
    A = function_algebra(builtin_group("Z2"))
    phi = Functional2(A, Matrix([[1, 1], [0, 0]]))
    with pytest.raises(ConvolutionError, match="not convolution invertible"):
        convolution_inverse(phi)


def test_convolution_is_associative_with_unit():
    rng = random.Random(2)
    A = function_algebra(builtin_group("S3"))
    eps = counit_functional(A)

    def rand():
        return Functional2(A, Matrix([[rng.randint(-2, 2) for _ in range(6)] for _ in range(6)]))

    for _ in range(3):
        f, g, h = rand(), rand(), rand()
        assert convolution(convolution(f, g), h).values == convolution(f, convolution(g, h)).values
        assert convolution(f, eps).values == f.values == convolution(eps, f).values


@pytest.mark.parametrize("name", GROUPS)
@pytest.mark.parametrize("make", [group_algebra, function_algebra], ids=["group", "function"])
def test_antipode_is_anti_algebra_and_anti_coalgebra(name, make):
    A = make(builtin_group(name))
    n = A.dim
    for a in range(n):
        Sa = A.S(A.basis(a))
        for b in range(n):
            assert A.S(A.mul(A.basis(a), A.basis(b))) == A.mul(A.S(A.basis(b)), Sa)
        # Delta(S a) = (S (x) S) flip Delta(a)
        lhs = {}
        for p, x in enumerate(Sa):
            if x:
                for j, k, c in A.comult_nz[p]:
                    lhs[(j, k)] = lhs.get((j, k), ZERO) + x * c
        rhs = {}
        for j, k, c in A.comult_nz[a]:
            for p, x in enumerate(A.S(A.basis(k))):
                for q, y in enumerate(A.S(A.basis(j))):
                    if x and y:
                        rhs[(p, q)] = rhs.get((p, q), ZERO) + c * x * y
        assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}
