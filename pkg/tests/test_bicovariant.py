import random

import pytest
from zoo import NAMES, bundle

from bicotwist.bicovariant import (
    Bimodule,
    build_bimodule,
    check_covariant_map,
    check_r_identities,
    graded_yd,
    invariant_subspace,
    left_coeffs,
    left_invariants,
    normal_form,
    right_invariants,
    tensor_product,
    trivial_yd,
    verify_bicovariance,
    verify_yd,
)
from bicotwist.hopf import builtin_group, group_algebra
from bicotwist.linalg import Matrix, SparseMatrix, rank
from bicotwist.scalars import ONE, ZERO


def test_trivial_module_is_the_algebra():
    A = group_algebra(builtin_group("Z2"))
    M = build_bimodule(A, trivial_yd(A))
    assert M.dim == 2 and M.d == 1
    assert M.R == [[A.one()]]
    assert M.eta(0) == M.omega(0)
    assert verify_bicovariance(M).passed


def test_z4_coaction_matrix():
    b = bundle("FIX-Z4")
    A = b.A
    assert b.M.R == [[A.basis(1), A.zero()], [A.zero(), A.basis(3)]]


def test_s3_transposition_module():
    b = bundle("FIX-S3")
    assert verify_yd(b.inst.yd).passed
    assert b.M.d == 3 and b.M.dim == 18


@pytest.mark.parametrize("name", NAMES)
def test_fixtures_are_bicovariant(name):
    M = bundle(name).M
    rep = verify_bicovariance(M)
    assert rep.passed, rep.failures
    assert check_r_identities(M).passed


@pytest.mark.parametrize("name", NAMES)
def test_invariant_bases(name):
    M = bundle(name).M
    ws = left_invariants(M)
    etas = right_invariants(M)
    assert len(ws) == len(etas) == M.d
    assert invariant_subspace(M, "left").cols == M.d
    assert invariant_subspace(M, "right").cols == M.d
    assert rank(Matrix.from_columns(etas, M.dim)) == M.d


def test_z4_right_invariants():
    b = bundle("FIX-Z4")
    A, M = b.A, b.M
    # eta_1 = w_1 u^3, eta_2 = w_2 u
    assert M.eta(0) == M.from_right([A.basis(3), A.zero()])
    assert M.eta(1) == M.from_right([A.zero(), A.basis(1)])


def test_s3_right_invariants_use_inverse_degrees():
    b = bundle("FIX-S3")
    A, M = b.A, b.M
    G = A.group
    for k, t in enumerate(("t", "tc", "tc2")):
        coeffs = [A.zero()] * 3
        coeffs[k] = A.basis(G.inverse(G.index(t)))
        assert M.eta(k) == M.from_right(coeffs)


def test_normal_forms_on_z4():
    b = bundle("FIX-Z4")
    A, M = b.A, b.M
    x = M.act_right(M.omega(0), A.basis(1))
    nf = normal_form(M, x)
    assert [list(c) for c in nf.coeffs] == [A.basis(1), A.zero()]
    assert left_coeffs(M, nf) == [A.basis(1), A.zero()]
    assert normal_form(M, [ZERO] * M.dim).coeffs == ((ZERO,) * 4, (ZERO,) * 4)


def test_normal_forms_on_s3_move_across_by_conjugation():
    b = bundle("FIX-S3")
    A, M = b.A, b.M
    G = A.group
    degrees = [G.index(t) for t in ("t", "tc", "tc2")]
    for g in range(6):
        for i, t in enumerate(degrees):
            x = M.act_left(A.basis(g), M.omega(i))
            conj = G.mul(G.mul(g, t), G.inverse(g))
            coeffs = [A.zero()] * 3
            coeffs[degrees.index(conj)] = A.basis(g)
            assert normal_form(M, x).coeffs == tuple(tuple(c) for c in coeffs)


@pytest.mark.parametrize("name", NAMES)
def test_right_left_round_trip(name):
    M = bundle(name).M
    A = M.algebra
    rng = random.Random(7)
    for _ in range(5):
        coeffs = [[ONE * rng.randint(-2, 2) for _ in range(A.dim)] for _ in range(M.d)]
        vec = M.from_right(coeffs)
        assert M.to_right(vec) == coeffs
        assert M.from_left(M.to_left(vec)) == vec


@pytest.mark.parametrize("name", ["FIX-Z4", "FIX-Z2xZ2", "FIX-S3"])
def test_brute_force_structure_maps(name):
    """Tabulate the structure maps of A (x) V for a graded module directly from the group."""
    b = bundle(name)
    A, M, V = b.A, b.M, b.inst.yd
    G = A.group
    n, d = A.dim, M.d
    deg = [next(a for j, a, c in V.coaction_nz[i]) for i in range(d)]
    acts = [[next(j for j, x in V.action_nz[h][i]) for i in range(d)] for h in range(n)]
    for h in range(n):
        left = {g * d + i: {G.mul(h, g) * d + i: ONE} for g in range(n) for i in range(d)}
        right = {g * d + i: {G.mul(g, h) * d + acts[h][i]: ONE} for g in range(n) for i in range(d)}
        assert M.left[h] == SparseMatrix(M.dim, M.dim, [left[c] for c in range(M.dim)])
        assert M.right[h] == SparseMatrix(M.dim, M.dim, [right[c] for c in range(M.dim)])
    lco = [{g * M.dim + g * d + i: ONE} for g in range(n) for i in range(d)]
    rco = [{(g * d + i) * n + G.mul(g, deg[i]): ONE} for g in range(n) for i in range(d)]
    assert M.lco == SparseMatrix(n * M.dim, M.dim, lco)
    assert M.rco == SparseMatrix(M.dim * n, M.dim, rco)


def _corrupt_right(M, drop: str) -> Bimodule:
    """Right action of a group algebra with one Sweedler leg of b replaced by the counit."""
    A = M.algebra
    G = A.group
    d = M.d
    right = []
    for h in range(A.dim):
        cols = []
        for g in range(A.dim):
            for i in range(d):
                if drop == "b1":  # (a (x) v) . h = a (x) v <| h
                    moved = M.act_right(M.omega(i), A.basis(h))
                    cols.append({g * d + (k % d): x for k, x in enumerate(moved) if x})
                else:  # (a (x) v) . h = a h (x) v
                    cols.append({G.mul(g, h) * d + i: ONE})
        right.append(SparseMatrix(M.dim, M.dim, cols))
    return Bimodule(A, M.dim, M.left, right, M.lco, M.rco, M.name + "-corrupt")


def test_corrupt_right_action_on_z4_breaks_covariance():
    M = bundle("FIX-Z4").M
    # with a trivial YD action, dropping the b2 leg changes nothing
    assert verify_bicovariance(_corrupt_right(M, "b2")).passed
    rep = verify_bicovariance(_corrupt_right(M, "b1"))
    assert not rep["right_covariance"].ok and rep["right_covariance"].witness is not None
    assert not rep["left_covariance"].ok
    # the mixed condition only involves the coactions
    assert rep["mixed_compatibility"].ok


def test_corrupt_right_action_on_s3_breaks_covariance():
    M = bundle("FIX-S3").M
    rep = verify_bicovariance(_corrupt_right(M, "b2"))
    assert not rep["right_covariance"].ok
    assert rep["right_covariance"].witness is not None
    assert rep["left_covariance"].ok and rep["mixed_compatibility"].ok


@pytest.mark.parametrize("name", NAMES)
def test_identity_map_is_bicovariant_and_bilinear(name):
    M = bundle(name).M
    assert check_covariant_map(SparseMatrix.identity(M.dim), M, M, "bi", "both").passed


def test_degree_shift_is_not_right_covariant():
    b = bundle("FIX-Z4")
    A, M = b.A, b.M
    # w_1 -> w_1 . u, w_2 -> w_2, extended right-linearly
    cols = []
    for c in range(M.dim):
        coeffs = M.to_right(M.basis_vector(c))
        coeffs[0] = A.mul(A.basis(1), coeffs[0])
        cols.append(M.from_right(coeffs))
    T = Matrix.from_columns(cols, M.dim)
    rep = check_covariant_map(T, M, M, "bi", "right")
    assert rep["right_linear"].ok
    assert not rep["right_covariant"].ok
    # w_1 . u is not left-invariant either
    assert not rep["left_covariant"].ok


def test_tensor_square_invariant_basis():
    M = bundle("FIX-S3").M
    T = tensor_product(M, M)
    P = T.product
    assert P.d == 9
    for i in range(3):
        for j in range(3):
            assert T.pair(M.omega(i), M.omega(j)) == T.omega_pair(i, j)
    assert invariant_subspace(P, "left").cols == 9


def test_conjugation_needs_closed_degrees():
    A = group_algebra(builtin_group("S3"))
    with pytest.raises(ValueError, match="closed under conjugation"):
        graded_yd(A, [3, 4], "conjugation")
