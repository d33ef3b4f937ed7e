import random

import pytest
from zoo import NAMES, WITH_METRIC, bundle

from bicotwist.metric import (
    Metric,
    MetricError,
    beggs_majid_check,
    check_bi_invariant,
    check_metric,
    check_reconstruction,
    coevaluation,
    dual_basis,
    enumerate_biinvariant,
    ev_coev_check,
    left_invariance_verdicts,
    metric_inverse,
    nondegeneracy_kernels,
    random_gmat,
    right_invariance_verdicts,
    sr_identity_holds,
    two_forms,
    vg_matrix,
)
from bicotwist.linalg import Matrix
from bicotwist.scalars import ONE, ZERO


def _z4():
    return bundle("FIX-Z4")


def test_z4_antidiagonal_metric_passes():
    g = Metric.from_scalars(_z4().b, [[0, 1], [1, 0]])
    rep = check_metric(g)
    assert rep.passed
    assert check_bi_invariant(g)


def test_degenerate_metric_reports_witness():
    g = Metric.from_scalars(_z4().b, [[1, 0], [0, 0]])
    rep = check_metric(g)
    assert rep["right_linear"].ok and rep["symmetric"].ok
    assert not rep["nondegenerate"].ok
    assert rep["nondegenerate"].witness == "w2"


def test_antisymmetric_matrix_fails_symmetry():
    g = Metric.from_scalars(_z4().b, [[0, 1], [-1, 0]])
    rep = check_metric(g)
    assert not rep["symmetric"].ok
    assert rep["nondegenerate"].ok


def test_non_scalar_entry_is_not_left_invariant():
    z = _z4()
    A = z.A
    g = Metric(z.b, [[A.zero(), A.basis(1)], [A.one(), A.zero()]])
    by_def, by_cov = left_invariance_verdicts(g)
    assert by_def is False and by_cov is False
    assert not check_bi_invariant(g)


def test_identity_on_z4_is_not_biinvariant():
    g = Metric.from_scalars(_z4().b, [[1, 0], [0, 1]])
    assert check_metric(g).passed
    assert not check_bi_invariant(g)


@pytest.mark.parametrize("name", WITH_METRIC)
def test_fixture_metrics_are_biinvariant(name):
    g = bundle(name).g
    assert check_metric(g).passed
    assert check_bi_invariant(g)
    assert sr_identity_holds(g)
    assert nondegeneracy_kernels(g) == (0, 0)


def test_inverse_metric_matrix():
    g = _z4().g
    ginv = metric_inverse(g)
    assert ginv @ g.scalar_matrix() == Matrix.identity(2)


def test_inverse_of_degenerate_metric_raises():
    g = Metric.from_scalars(_z4().b, [[1, 0], [0, 0]])
    with pytest.raises(MetricError):
        metric_inverse(g)
    with pytest.raises(MetricError):
        ev_coev_check(g)


@pytest.mark.parametrize("name", NAMES)
def test_dual_basis_reconstruction(name):
    M = bundle(name).M
    assert check_reconstruction(M) is None
    db = dual_basis(M)
    A = M.algebra
    for i in range(M.d):
        for j in range(M.d):
            assert db(i, M.omega(j)) == (A.one() if i == j else A.zero())


def test_vg_sends_w1_to_functional_dual_to_w2():
    z = _z4()
    g, M = z.g, z.M
    V = vg_matrix(g)
    image = V.apply(M.omega(0))
    # coordinates (j, a): the image is w*_2 with coefficient 1 at the unit
    n = z.A.dim
    expected = [ZERO] * (2 * n)
    expected[n + 0] = ONE
    assert image == expected


def test_z4_coevaluation():
    z = _z4()
    T = z.b.square
    w1, w2 = z.M.omega(0), z.M.omega(1)
    expected = [a + b for a, b in zip(T.pair(w1, w2), T.pair(w2, w1))]
    assert coevaluation(z.g) == expected


@pytest.mark.parametrize("name", WITH_METRIC)
def test_snake_identities(name):
    rep = ev_coev_check(bundle(name).g)
    assert rep.passed, rep.failures


def test_z4_two_forms():
    z = _z4()
    forms = two_forms(z.M, z.b)
    assert forms.invariant_dimension == 1


def test_beggs_majid_examples():
    z = _z4()
    forms = two_forms(z.M, z.b)
    sym = beggs_majid_check(Metric.from_scalars(z.b, [[0, 1], [1, 0]]), forms)
    assert sym.wedge_vanishes and sym.symmetric
    anti = beggs_majid_check(Metric.from_scalars(z.b, [[0, 1], [-1, 0]]), forms)
    assert not anti.wedge_vanishes and not anti.symmetric


def test_enumerate_z4_is_antidiagonal_line():
    z = _z4()
    space = enumerate_biinvariant(z.M, z.b)
    assert space.dimension == 1
    B = space.basis[0]
    assert B.data[0][0] == ZERO and B.data[1][1] == ZERO
    assert B.data[0][1] == B.data[1][0] != ZERO
    assert space.sample is not None


def test_enumerate_z4_one_dim_is_zero():
    z = bundle("FIX-Z4-1dim")
    space = enumerate_biinvariant(z.M, z.b)
    assert space.dimension == 0
    assert space.sample is None


def test_enumerate_trivial_is_everything():
    z = bundle("FIX-TRIV")
    space = enumerate_biinvariant(z.M, z.b)
    assert space.dimension == 1
    assert space.sample == Matrix([[ONE]])


def test_enumerate_is_seed_independent_in_dimension():
    z = _z4()
    assert enumerate_biinvariant(z.M, z.b, seed="a").dimension == enumerate_biinvariant(z.M, z.b, seed="b").dimension


@pytest.mark.parametrize("name", WITH_METRIC)
def test_random_metrics_have_agreeing_invariance_verdicts(name):
    z = bundle(name)
    rng = random.Random(7)
    for _ in range(5):
        g = Metric(z.b, random_gmat(z.M, rng))
        a, b = left_invariance_verdicts(g)
        assert a == b
        a, b = right_invariance_verdicts(g)
        assert a == b
