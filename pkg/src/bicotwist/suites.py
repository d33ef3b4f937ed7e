"""Verification suites behind the CLI commands.

Every suite appends checks in a fixed order, so a report never depends on timing
or scheduling.  Stage durations are attached to the checks but only printed on
request.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .bicovariant import BicovBimodule, BimoduleError, check_r_identities, verify_bicovariance, verify_yd
from .braiding import (
    Braiding,
    braiding_by_linear_system,
    braiding_square_witness,
    construct_braiding,
    verify_braiding,
)
from .hopf import verify_hopf
from .instances import Instance, error_witness
from .metric import (
    Metric,
    MetricError,
    beggs_majid_check,
    check_bi_invariant,
    check_metric,
    check_reconstruction,
    enumerate_biinvariant,
    ev_coev_check,
    left_invariance_verdicts,
    right_invariance_verdicts,
    two_forms,
)
from .report import Report, VerificationError
from .twist import (
    Cocycle,
    TwistedBimodule,
    XiMaps,
    biinvariant_correspondence,
    cocycle_report,
    functional,
    metric_twist,
    metric_twist_report,
    sigma_twist,
    sigma_twist_report,
    twist_algebra,
    twist_bimodule,
    untwist_roundtrip,
    verify_cocycle,
    vg_module_report,
    xi_lemma_witness,
    xi_maps,
    xi_report,
)

COMMANDS = ("verify", "braiding", "metrics", "twist", "all")


def _matrix_json(rows) -> list:
    return [[x.to_json() for x in r] for r in rows]


@dataclass
class Session:
    """Lazily built objects shared by the suites of one run."""

    inst: Instance
    _cache: dict = field(default_factory=dict)

    def get(self, key: str, make: Callable):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def M(self) -> BicovBimodule:
        return self.get("M", lambda: self.inst.bimodule)

    @property
    def braiding(self) -> Braiding:
        return self.get("braiding", lambda: construct_braiding(self.M))

    @property
    def metric(self) -> Metric | None:
        gm = self.inst.gmat
        if gm is None:
            return None
        return self.get("metric", lambda: Metric.from_scalars(self.braiding, gm))


def _stage(rep: Report, prefix: str, fn: Callable[[], Report]) -> Report:
    t0 = time.perf_counter()
    sub = fn()
    dt = time.perf_counter() - t0
    start = len(rep.checks)
    rep.extend(sub, prefix)
    for c in rep.checks[start:]:
        c.seconds = dt
    return sub


# -- suites ------------------------------------------------------------------------


def suite_verify(s: Session, rep: Report) -> bool:
    """Group table, Hopf axioms, YD axioms, bicovariance, R identities, cocycle. False if later suites cannot run."""
    inst = s.inst
    err = inst.table_error
    if "table" in inst.spec.algebra:
        wit = None
        if err is not None:
            wit = error_witness(err)
        rep.add("algebra.group_axioms", err is None, wit, err or "")
    _stage(rep, "hopf.", lambda: verify_hopf(inst.algebra))
    if inst.yd is None:
        return False
    yrep = _stage(rep, "yd.", lambda: verify_yd(inst.yd))
    if not yrep.passed:
        return False
    A = inst.algebra
    rep.note("dim A", A.dim)
    rep.note("dim V", inst.yd.dim)
    rep.note("algebra commutative", A.is_commutative())
    rep.note("algebra cocommutative", A.is_cocommutative())
    rep.note("R", [[A.format(x) for x in r] for r in s.M.R])
    brep = _stage(rep, "bicovariance.", lambda: verify_bicovariance(s.M))
    _stage(rep, "r_identities.", lambda: check_r_identities(s.M))
    if inst.gamma is not None:
        crep = _stage(rep, "cocycle.", lambda: cocycle_report(functional(A, inst.gamma)))
        if crep.passed:
            c = s.get("cocycle", lambda: verify_cocycle(functional(A, inst.gamma)))
            Ag = s.get("A_gamma", lambda: twist_algebra(A, c))
            _stage(rep, "twisted_hopf.", lambda: verify_hopf(Ag))
    return brep.passed


def suite_braiding(s: Session, rep: Report) -> None:
    b = s.braiding
    _stage(rep, "braiding.", lambda: verify_braiding(b))
    oracle = braiding_by_linear_system(s.M, b.square)
    rep.add("braiding.agrees_with_linear_system", oracle == b.full)
    wit = braiding_square_witness(b)
    rep.note("sigma squared is identity", wit is None)
    if wit is not None:
        rep.note("sigma squared witness", wit)
    rep.note("sigma coefficients", _matrix_json(b.coeffs.data))


def suite_metrics(s: Session, rep: Report) -> None:
    M, b = s.M, s.braiding
    w = check_reconstruction(M)
    rep.add("dual_basis.reconstruction", w is None, w)
    g = s.metric
    if g is not None:
        mrep = _stage(rep, "metric.", lambda: check_metric(g))
        left = left_invariance_verdicts(g)
        right = right_invariance_verdicts(g)
        rep.add("metric.left_invariance_verdicts_agree", left[0] == left[1], None if left[0] == left[1] else list(left))
        rep.add("metric.right_invariance_verdicts_agree", right[0] == right[1],
                None if right[0] == right[1] else list(right))
        try:
            bi = check_bi_invariant(g)
            rep.add("metric.biinvariance_criteria_agree", True)
        except VerificationError as exc:
            bi = False
            rep.add("metric.biinvariance_criteria_agree", False, None, str(exc))
        rep.note("metric left-invariant", left[0])
        rep.note("metric right-invariant", right[0])
        rep.note("metric bi-invariant", bi)
        if mrep.passed and g.is_scalar():
            _stage(rep, "ev_coev.", lambda: ev_coev_check(g))
            bm = beggs_majid_check(g, s.get("two_forms", lambda: two_forms(M, b)))
            rep.add("beggs_majid.equivalence", bm.agree, None,
                    f"wedge(h) = 0: {str(bm.wedge_vanishes).lower()}, g o sigma = g: {str(bm.symmetric).lower()}")
        if mrep.passed and bi:
            _stage(rep, "vg_module.", lambda: vg_module_report(g))
    forms = s.get("two_forms", lambda: two_forms(M, b))
    rep.note("two-forms dimension", forms.dimension)
    rep.note("invariant two-forms dimension", forms.invariant_dimension)
    space = enumerate_biinvariant(M, b)
    rep.note("biinvariant space dimension", space.dimension)
    rep.note("biinvariant basis", [_matrix_json(B.data) for B in space.basis])
    if space.basis:
        rep.note("nondegenerate biinvariant sample",
                 None if space.sample is None else _matrix_json(space.sample.data))


def suite_twist(s: Session, rep: Report) -> None:
    inst = s.inst
    if inst.gamma is None:
        rep.note("twist", "no cocycle given")
        return
    A, M = inst.algebra, s.M
    crep = cocycle_report(functional(A, inst.gamma))
    if not crep.passed:
        _stage(rep, "cocycle.", lambda: crep)
        return
    c: Cocycle = s.get("cocycle", lambda: verify_cocycle(functional(A, inst.gamma)))
    Ag = s.get("A_gamma", lambda: twist_algebra(A, c))
    if "A_gamma_checked" not in s._cache:
        _stage(rep, "twisted_hopf.", lambda: verify_hopf(Ag))
    rep.note("twisted algebra commutative", Ag.is_commutative())
    rep.note("twisted algebra cocommutative", Ag.is_cocommutative())
    Mt: TwistedBimodule = twist_bimodule(M, c, Ag)
    _stage(rep, "twist_bimodule.", Mt.intertwining_report)
    _stage(rep, "twist_bimodule.bicovariance.", lambda: verify_bicovariance(Mt.bimodule))
    rep.note("R_gamma", [[Ag.format(x) for x in r] for r in Mt.bimodule.R])
    maps: XiMaps = xi_maps(Mt)
    _stage(rep, "xi.", lambda: xi_report(maps))
    w = xi_lemma_witness(maps)
    rep.add("xi.invariant_pair_identity", w is None, w)
    b = construct_braiding(M, maps.base_square)
    st = sigma_twist(Mt, maps, b)
    _stage(rep, "", lambda: sigma_twist_report(st, Mt, maps))
    _stage(rep, "braiding_gamma.", lambda: verify_braiding(st.constructed))
    rep.note("sigma_gamma coefficients", _matrix_json(st.constructed.coeffs.data))
    corr = biinvariant_correspondence(M, b, Mt, st.constructed)
    rep.add("biinvariant_spaces_correspond", corr.ok, None,
            f"dimensions {corr.dim_base} and {corr.dim_twisted}, image rank {corr.images_rank}")
    g = s.metric
    if g is None:
        return
    bi_ok = check_metric(g).passed and g.is_scalar() and check_bi_invariant(g)
    if not bi_ok:
        rep.note("metric twist", "skipped: metric is not a bi-invariant pseudo-Riemannian metric")
        return
    g = Metric.from_scalars(b, g.scalar_matrix().data)
    tm = metric_twist(g, Mt, maps, st.constructed)
    _stage(rep, "metric_twist.", lambda: metric_twist_report(tm, g, Mt, maps))
    rep.note("g_gamma", _matrix_json(tm.metric.scalar_matrix().data))
    rt = untwist_roundtrip(tm, g, Mt, maps)
    for key in ("algebra", "yd", "bimodule", "braiding", "metric"):
        rep.add(f"round_trip.{key}_restored", getattr(rt, f"{key}_restored"))
    rep.add("round_trip.retwist_restored", rt.retwist_restored)
    _stage(rep, "vg_module_gamma.", lambda: vg_module_report(tm.metric))


def run_suite(inst: Instance, command: str) -> Report:
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}")
    s = Session(inst)
    rep = Report(inst.name)
    try:
        if command in ("verify", "all"):
            ok = suite_verify(s, rep)
            if not ok:
                return rep
            s._cache["A_gamma_checked"] = True
        elif inst.yd is None:
            suite_verify(s, rep)
            return rep
        if command in ("braiding", "all"):
            suite_braiding(s, rep)
        if command in ("metrics", "all"):
            suite_metrics(s, rep)
        if command in ("twist", "all"):
            suite_twist(s, rep)
    except VerificationError as exc:
        rep.add("internal_consistency", False, None, str(exc))
    except (BimoduleError, MetricError) as exc:
        rep.add("construction", False, None, str(exc))
    return rep
