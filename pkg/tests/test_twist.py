import random

import pytest
from zoo import NAMES, WITH_METRIC, bundle

from bicotwist.bicovariant import verify_bicovariance
from bicotwist.hopf import verify_hopf
from bicotwist.linalg import SparseMatrix
from bicotwist.scalars import ONE, ZERO, root_of_unity, scalar
from bicotwist.twist import (
    CocycleError,
    NotCovariantError,
    cocycle_report,
    functional,
    trivial_cocycle,
    twist_algebra,
    twist_bimodule,
    twist_map,
    untwist_roundtrip,
    verify_cocycle,
    vg_module,
    xi_lemma_witness,
    xi_maps,
    xi_report,
)

Z = root_of_unity(4)


def _z4():
    return bundle("FIX-Z4")


def test_z4_bicharacter_and_inverse():
    c = _z4().c
    for a in range(4):
        for b in range(4):
            assert c.gamma.at(a, b) == Z ** (a * b)
            assert c.gammabar.at(a, b) == Z ** (-a * b)


@pytest.mark.parametrize("name", NAMES)
def test_fixture_cocycles_are_valid(name):
    z = bundle(name)
    rep = cocycle_report(z.c.gamma)
    assert rep.passed, rep.failures


def test_non_unital_functional_is_rejected():
    A = _z4().A
    vals = [[ONE] * 4 for _ in range(4)]
    vals[0][0] = scalar(2)
    with pytest.raises(CocycleError, match="not unital"):
        verify_cocycle(functional(A, vals))


def test_cocycle_identity_failure_is_rejected():
    A = _z4().A
    vals = [[ONE] * 4 for _ in range(4)]
    vals[1][1] = scalar(2)
    with pytest.raises(CocycleError, match="cocycle identity fails"):
        verify_cocycle(functional(A, vals))


def test_non_invertible_cocycle_is_rejected():
    A = _z4().A
    vals = [[ONE if a == 0 or b == 0 else ZERO for b in range(4)] for a in range(4)]
    with pytest.raises(CocycleError, match="not convolution invertible"):
        verify_cocycle(functional(A, vals))


@pytest.mark.parametrize("name", NAMES)
def test_trivial_cocycle_gives_back_the_algebra(name):
    A = bundle(name).A
    Ag = twist_algebra(A, trivial_cocycle(A))
    assert Ag.mult == A.mult
    assert Ag.antipode == A.antipode


def test_z4_twisted_algebra_is_unchanged():
    z = _z4()
    assert z.Ag.mult == z.A.mult


def test_fs3_twisted_algebra_is_commutative_hopf():
    z = bundle("FIX-FS3")
    assert verify_hopf(z.Ag).passed
    assert z.Ag.is_commutative()


@pytest.mark.parametrize("name", NAMES)
def test_twisted_algebras_are_hopf(name):
    rep = verify_hopf(bundle(name).Ag)
    assert rep.passed, rep.failures


def test_twisted_right_action_on_z4():
    z = _z4()
    w1 = z.M.omega(0)
    u = z.A.basis(1)
    twisted = z.Mt.literal.right[1].apply(w1)
    plain = z.M.act_right(w1, u)
    assert twisted == [x * Z ** -1 for x in plain]


def test_xi_on_invariant_pairs_of_z4():
    z = _z4()
    M, maps = z.M, z.maps
    degrees = (1, 3)
    T = maps.base_square
    for i in range(2):
        for j in range(2):
            got = maps.xi.apply(maps.twisted_pair(M.omega(i), M.omega(j)))
            expected = [x * Z ** (-degrees[i] * degrees[j]) for x in T.pair(M.omega(i), M.omega(j))]
            assert got == expected


@pytest.mark.parametrize("name", NAMES)
def test_xi_report_passes(name):
    rep = xi_report(bundle(name).maps)
    assert rep.passed, rep.failures


@pytest.mark.parametrize("name", NAMES)
def test_xi_round_trip_on_random_elements(name):
    maps = bundle(name).maps
    rng = random.Random(11)
    n = maps.xi.cols
    for _ in range(20):
        x = [scalar(rng.randint(-3, 3)) for _ in range(n)]
        assert maps.xi_inv.apply(maps.xi.apply(x)) == x
        assert maps.xi.apply(maps.xi_inv.apply(x)) == x


@pytest.mark.parametrize("name", NAMES)
def test_xi_invariant_pair_identity(name):
    assert xi_lemma_witness(bundle(name).maps) is None


@pytest.mark.parametrize("name", NAMES)
def test_twisted_bimodule_is_bicovariant(name):
    Mt = bundle(name).Mt
    assert Mt.intertwining_report().passed
    rep = verify_bicovariance(Mt.bimodule)
    assert rep.passed, rep.failures


def test_twist_map_refuses_non_covariant_map():
    z = _z4()
    M = z.M
    n = z.A.dim
    # swaps the w1 and w2 blocks, which carry different degrees
    cols = [{(idx + n) % M.dim: ONE} for idx in range(M.dim)]
    T = SparseMatrix(M.dim, M.dim, cols)
    with pytest.raises(NotCovariantError):
        twist_map(T, z.Mt, z.Mt, z.c)


def test_twist_map_is_functorial():
    z = _z4()
    M = z.M
    ident = SparseMatrix(M.dim, M.dim, [{i: ONE} for i in range(M.dim)])
    double = SparseMatrix(M.dim, M.dim, [{i: scalar(2)} for i in range(M.dim)])
    assert twist_map(ident, z.Mt, z.Mt, z.c) == ident
    composed = twist_map(double @ double, z.Mt, z.Mt, z.c)
    assert composed == twist_map(double, z.Mt, z.Mt, z.c) @ twist_map(double, z.Mt, z.Mt, z.c)


def test_vg_module_right_coaction_on_z4():
    z = _z4()
    V = vg_module(z.g)
    n = z.A.dim
    got = V.module.rco.apply([ONE if k == 0 else ZERO for k in range(2 * n)])
    # w*_1 (x) u^3, coordinates (j * n + a) * n + k
    expected = [ZERO] * (2 * n * n)
    expected[3] = ONE
    assert got == expected


@pytest.mark.parametrize("name", NAMES)
def test_trivial_cocycle_gives_identity_xi(name):
    z = bundle(name)
    c = trivial_cocycle(z.A)
    Ag = twist_algebra(z.A, c)
    Mt = twist_bimodule(z.M, c, Ag)
    maps = xi_maps(Mt)
    for i in range(z.M.d):
        for j in range(z.M.d):
            m, n_ = z.M.omega(i), z.M.omega(j)
            assert maps.xi.apply(maps.twisted_pair(m, n_)) == maps.base_square.pair(m, n_)


@pytest.mark.parametrize("name", WITH_METRIC)
def test_untwist_round_trip(name):
    z = bundle(name)
    rt = untwist_roundtrip(z.tm, z.g, z.Mt, z.maps)
    assert rt.ok


def test_z4_twisted_metric():
    z = _z4()
    assert z.tm.forms_agree
    assert [[x for x in r] for r in z.tm.metric.scalar_matrix().data] == [[ZERO, Z], [Z, ZERO]]
