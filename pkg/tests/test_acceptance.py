"""One test per acceptance criterion, exact equality throughout.

Timed criteria build their objects from scratch so that caches warmed by other
test modules do not flatter the measured runtime.
"""

import random
import time

import pytest
from zoo import NAMES, WITH_METRIC, Bundle

from bicotwist.braiding import braiding_squared_is_identity, construct_braiding, verify_braiding
from bicotwist.hopf import builtin_group, function_algebra, group_algebra, verify_hopf
from bicotwist.instances import builtin_instance
from bicotwist.linalg import Matrix, SparseMatrix
from bicotwist.metric import (
    Metric,
    beggs_majid_check,
    check_bi_invariant,
    check_metric,
    check_reconstruction,
    enumerate_biinvariant,
    ev_coev_check,
    left_invariance_verdicts,
    metric_inverse,
    nondegeneracy_kernels,
    random_gmat,
    two_forms,
)
from bicotwist.scalars import ONE, ZERO, root_of_unity
from bicotwist.twist import (
    biinvariant_correspondence,
    untwist_roundtrip,
    vg_twist_witness,
    xi_lemma_witness,
)


def _fresh(name: str) -> Bundle:
    return Bundle(builtin_instance(name))


def _sigma_order(b) -> int:
    F = b.full
    ident = SparseMatrix(F.rows, F.cols, [{i: ONE} for i in range(F.cols)])
    power, k = F, 1
    while power != ident:
        power, k = power @ F, k + 1
    return k


def _symmetrized(g: Metric, order: int) -> Metric:
    """g o (1 + sigma + ... + sigma^(order-1)), which satisfies g o sigma = g."""
    M, b = g.host, g.braiding
    T = b.square
    gmat = []
    for i in range(M.d):
        row = []
        for j in range(M.d):
            x = T.pair(M.omega(i), M.omega(j))
            acc = g.algebra.zero()
            for _ in range(order):
                acc = [p + q for p, q in zip(acc, g.value(x))]
                x = b.full.apply(x)
            row.append(acc)
        gmat.append(row)
    return Metric(b, gmat)


def test_criterion_1_hopf_axioms():
    t0 = time.perf_counter()
    for gname in ("Z2", "Z4", "Z2xZ2", "S3"):
        G = builtin_group(gname)
        for A in (group_algebra(G), function_algebra(G)):
            rep = verify_hopf(A)
            assert rep.passed, (gname, A.kind, rep.failures)
    for name in NAMES:
        z = _fresh(name)
        rep = verify_hopf(z.Ag)
        assert rep.passed, (name, rep.failures)
    assert time.perf_counter() - t0 < 5


def test_criterion_2_braiding():
    t0 = time.perf_counter()
    for name in NAMES:
        inst = builtin_instance(name)
        b = construct_braiding(inst.bimodule)
        rep = verify_braiding(b)
        assert rep.passed, (name, rep.failures)
        assert rep["uniqueness"].detail == "solution space dimension 0"
    assert time.perf_counter() - t0 < 30


def test_criterion_3_metric_axioms_on_z4():
    t0 = time.perf_counter()
    inst = builtin_instance("FIX-Z4")
    b = construct_braiding(inst.bimodule)
    g = Metric.from_scalars(b, [[0, 1], [1, 0]])
    rep = check_metric(g)
    assert rep.passed
    assert rep["nondegenerate"].ok
    ginv = metric_inverse(g)
    assert ginv @ g.scalar_matrix() == Matrix.identity(2)
    assert all(isinstance(x, type(ONE)) for r in ginv.data for x in r)
    assert nondegeneracy_kernels(g) == (0, 0)
    assert check_reconstruction(inst.bimodule) is None
    assert time.perf_counter() - t0 < 1


def test_criterion_4_invariance_verdicts_agree():
    for name in NAMES:
        z = _fresh(name)
        b = construct_braiding(z.M)
        rng = random.Random(f"criterion-4-{name}")
        for k in range(50):
            g = Metric(b, random_gmat(z.M, rng, scalar_only=k % 5 == 0))
            by_def, by_cov = left_invariance_verdicts(g)
            assert by_def == by_cov, (name, k)


def test_criterion_5_biinvariant_enumeration():
    z = _fresh("FIX-Z4")
    space = enumerate_biinvariant(z.M, construct_braiding(z.M))
    assert space.dimension == 1
    B = space.basis[0]
    c = B.data[0][1]
    assert c != ZERO
    assert B == Matrix([[ZERO, c], [c, ZERO]])
    one = _fresh("FIX-Z4-1dim")
    assert enumerate_biinvariant(one.M, construct_braiding(one.M)).dimension == 0


@pytest.mark.parametrize("name", WITH_METRIC)
def test_criterion_6_snake_identities(name):
    z = _fresh(name)
    rep = ev_coev_check(z.g)
    assert rep.passed, rep.failures
    assert rep["ev_bicovariant"].ok and rep["coev_bicovariant"].ok


def test_criterion_7_beggs_majid_equivalence():
    rng = random.Random("criterion-7")
    total = 0
    symmetric_seen = 0
    cases = []
    for name in NAMES:
        z = _fresh(name)
        b = construct_braiding(z.M)
        cases.append((z, b, two_forms(z.M, b), _sigma_order(b)))
    while total < 100:
        z, b, forms, order = cases[total % len(cases)]
        scalar_only = total % 4 == 0
        g = Metric(b, random_gmat(z.M, rng, scalar_only=scalar_only))
        if total % 2 == 1:
            g = _symmetrized(g, order)
        res = beggs_majid_check(g, forms)
        assert res.agree, (z.inst.name, total, res)
        symmetric_seen += res.symmetric
        total += 1
    assert symmetric_seen >= 50


def test_criterion_8_twist_theorems():
    t0 = time.perf_counter()
    for name in NAMES:
        z = _fresh(name)
        # (a)
        assert z.st.equal, name
        # (b)
        if braiding_squared_is_identity(z.b):
            assert braiding_squared_is_identity(z.st.constructed), name
        # (f)
        corr = biinvariant_correspondence(z.M, z.b, z.Mt, z.st.constructed)
        assert corr.ok, (name, corr)
        if z.g is None:
            continue
        tm = z.tm
        # (c)
        assert check_metric(tm.metric).passed, name
        assert check_bi_invariant(tm.metric), name
        # (d)
        assert vg_twist_witness(z.g, tm, z.Mt, z.maps) is None, name
        # (e)
        rt = untwist_roundtrip(tm, z.g, z.Mt, z.maps)
        assert rt.metric_restored and rt.retwist_restored, name
        assert rt.algebra_restored and rt.yd_restored and rt.bimodule_restored and rt.braiding_restored, name
    assert time.perf_counter() - t0 < 60


def test_criterion_9_z4_twisted_metric_values():
    z = _fresh("FIX-Z4")
    zeta = root_of_unity(4)
    expected = [[z.Ag.scalar_element(0), z.Ag.scalar_element(zeta)],
                [z.Ag.scalar_element(zeta), z.Ag.scalar_element(0)]]
    tm = z.tm
    assert tm.closed_form == expected
    assert tm.by_composition == expected
    assert tm.metric.scalar_matrix() == Matrix([[ZERO, zeta], [zeta, ZERO]])


@pytest.mark.parametrize("name", NAMES)
def test_criterion_10_xi_invariant_pair_lemma(name):
    z = _fresh(name)
    assert xi_lemma_witness(z.maps) is None
