"""2-cocycle deformations of Hopf algebras, bicovariant bimodules, braidings and metrics.

Twisted actions are computed literally on the untwisted underlying space.  The
twisted bimodule is then rebuilt from its extracted Yetter-Drinfeld data, and an
explicit isomorphism ``phi`` (``e_a . w_v`` of the rebuilt module goes to
``e_a *_gamma w_v``) ties the two descriptions together.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache

from .bicovariant import (
    Bimodule,
    BicovBimodule,
    TensorProduct,
    YDModule,
    algebra_maps,
    build_bimodule,
    check_covariant_map,
    tensor_product,
    verify_bicovariance,
)
from .braiding import Braiding, braiding_squared_is_identity, construct_braiding
from .hopf import (
    ConvolutionError,
    Functional2,
    HopfAlgebra,
    HopfError,
    convolution,
    convolution_inverse,
    counit_functional,
    solve_antipode,
    verify_hopf,
)
from .linalg import Matrix, SparseMatrix, Tensor3, inverse, rank, sparse_kron
from .metric import (
    Metric,
    MetricError,
    check_bi_invariant,
    check_metric,
    enumerate_biinvariant,
    sr_identity_holds,
    vg_matrix,
)
from .report import Report, VerificationError
from .scalars import ONE, ZERO, Cyclotomic, scalar


class CocycleError(ValueError):
    pass


# -- cocycles --------------------------------------------------------------------


@dataclass(frozen=True, eq=False, repr=False)
class Cocycle:
    host: HopfAlgebra
    gamma: Functional2
    gammabar: Functional2

    def is_trivial(self) -> bool:
        return self.gamma == counit_functional(self.host)


def functional(A: HopfAlgebra, values) -> Functional2:
    return Functional2(A, values if isinstance(values, Matrix) else Matrix(values))


def _unital_witness(gamma: Functional2) -> list | None:
    A = gamma.host
    one = A.one()
    for a in range(A.dim):
        ea = A.basis(a)
        if gamma(ea, one) != A.counit[a] or gamma(one, ea) != A.counit[a]:
            return [a]
    return None


def _cocycle_witness(gamma: Functional2) -> list | None:
    """gamma(a1 (x) b1) gamma(a2 b2 (x) c) = gamma(b1 (x) c1) gamma(a (x) b2 c2) on basis triples."""
    A = gamma.host
    n = A.dim
    g = gamma.values.data
    # gamma(x (x) e_c) for x = e_p e_q, cached per (p, q)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = ZERO
                for a1, a2, ca in A.comult_nz[a]:
                    for b1, b2, cb in A.comult_nz[b]:
                        x = g[a1][b1]
                        if not x:
                            continue
                        for k, m in A.mult_nz[a2][b2]:
                            y = g[k][c]
                            if y:
                                lhs = lhs + ca * cb * x * m * y
                rhs = ZERO
                for b1, b2, cb in A.comult_nz[b]:
                    for c1, c2, cc in A.comult_nz[c]:
                        x = g[b1][c1]
                        if not x:
                            continue
                        for k, m in A.mult_nz[b2][c2]:
                            y = g[a][k]
                            if y:
                                rhs = rhs + cb * cc * x * m * y
                if lhs != rhs:
                    return [a, b, c]
    return None


def _inverse_identity_witness(gammabar: Functional2) -> list | None:
    """gbar(a1 b1 (x) c) gbar(a2 (x) b2) = gbar(a (x) b1 c1) gbar(b2 (x) c2)."""
    A = gammabar.host
    n = A.dim
    g = gammabar.values.data
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = ZERO
                for a1, a2, ca in A.comult_nz[a]:
                    for b1, b2, cb in A.comult_nz[b]:
                        y = g[a2][b2]
                        if not y:
                            continue
                        for k, m in A.mult_nz[a1][b1]:
                            x = g[k][c]
                            if x:
                                lhs = lhs + ca * cb * x * m * y
                rhs = ZERO
                for b1, b2, cb in A.comult_nz[b]:
                    for c1, c2, cc in A.comult_nz[c]:
                        y = g[b2][c2]
                        if not y:
                            continue
                        for k, m in A.mult_nz[b1][c1]:
                            x = g[a][k]
                            if x:
                                rhs = rhs + cb * cc * x * m * y
                if lhs != rhs:
                    return [a, b, c]
    return None


def cocycle_report(gamma: Functional2, name: str = "cocycle") -> Report:
    rep = Report(name)
    w = _unital_witness(gamma)
    rep.add("unital", w is None, w)
    w = _cocycle_witness(gamma)
    rep.add("cocycle_identity", w is None, w)
    try:
        gbar = convolution_inverse(gamma)
    except ConvolutionError:
        rep.add("convolution_invertible", False)
        return rep
    rep.add("convolution_invertible", True)
    w = _inverse_identity_witness(gbar)
    rep.add("inverse_identity", w is None, w)
    return rep


def verify_cocycle(gamma: Functional2) -> Cocycle:
    w = _unital_witness(gamma)
    if w is not None:
        raise CocycleError(f"not unital at basis element {w[0]}")
    w = _cocycle_witness(gamma)
    if w is not None:
        raise CocycleError("cocycle identity fails at ({},{},{})".format(*w))
    try:
        gbar = convolution_inverse(gamma)
    except ConvolutionError as exc:
        raise CocycleError("not convolution invertible") from exc
    w = _inverse_identity_witness(gbar)
    if w is not None:
        raise VerificationError("inverse cocycle identity fails at ({},{},{})".format(*w))
    return Cocycle(gamma.host, gamma, gbar)


def trivial_cocycle(A: HopfAlgebra) -> Cocycle:
    return verify_cocycle(counit_functional(A))


# -- twisted Hopf algebra --------------------------------------------------------


def twist_algebra(A: HopfAlgebra, c: Cocycle) -> HopfAlgebra:
    """a *_gamma b = gamma(a1 (x) b1) a2 b2 gammabar(a3 (x) b3); antipode solved from the axiom."""
    n = A.dim
    g = c.gamma.values.data
    gb = c.gammabar.values.data
    mult = Tensor3.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            row = mult.data[i][j]
            for i1, i2, i3, ci in A.comult3_nz[i]:
                for j1, j2, j3, cj in A.comult3_nz[j]:
                    x = g[i1][j1]
                    if not x:
                        continue
                    y = gb[i3][j3]
                    if not y:
                        continue
                    f = ci * cj * x * y
                    for k, m in A.mult_nz[i2][j2]:
                        row[k] = row[k] + f * m
    draft = HopfAlgebra(A.labels, mult, A.unit, A.comult, A.counit, A.antipode, A.order, A.group,
                        A.kind + "_twisted")
    try:
        S = solve_antipode(draft)
    except HopfError as exc:
        raise VerificationError("twisted algebra has no antipode") from exc
    return replace(draft, antipode=S)


# -- triple coactions and literal twisted actions ---------------------------------


@lru_cache(maxsize=64)
def triple_coaction(B: Bimodule) -> list[list[tuple[int, int, int, Cyclotomic]]]:
    """(id (x) rco) lco as (x, m0, y, coefficient) terms per basis vector: m_-1 (x) m_0 (x) m_1."""
    n, D = B.algebra.dim, B.dim
    out = []
    for m in range(D):
        acc: dict = defaultdict(lambda: ZERO)
        for idx, c in B.lco.columns[m].items():
            x, m1 = divmod(idx, D)
            for idx2, c2 in B.rco.columns[m1].items():
                m0, y = divmod(idx2, n)
                acc[(x, m0, y)] = acc[(x, m0, y)] + c * c2
        out.append([(x, m0, y, v) for (x, m0, y), v in sorted(acc.items()) if v])
    return out


def twist_literal(B: Bimodule, c: Cocycle, A_gamma: HopfAlgebra) -> Bimodule:
    """Same space and coactions; twisted actions

    a * m = gamma(a1 (x) m_-1) a2 . m0 gammabar(a3 (x) m1),
    m * a = gamma(m_-1 (x) a1) m0 . a2 gammabar(m1 (x) a3).
    """
    A = B.algebra
    n, D = A.dim, B.dim
    g = c.gamma.values.data
    gb = c.gammabar.values.data
    t3 = triple_coaction(B)

    def build(side: str) -> list[SparseMatrix]:
        mats = []
        acts = B.left if side == "left" else B.right
        for a in range(n):
            cols = []
            for m in range(D):
                acc: dict = defaultdict(lambda: ZERO)
                for a1, a2, a3, ca in A.comult3_nz[a]:
                    for x, m0, y, cm in t3[m]:
                        p = g[a1][x] if side == "left" else g[x][a1]
                        if not p:
                            continue
                        q = gb[a3][y] if side == "left" else gb[y][a3]
                        if not q:
                            continue
                        f = ca * cm * p * q
                        for k, v in acts[a2].columns[m0].items():
                            acc[k] = acc[k] + f * v
                cols.append({k: v for k, v in acc.items() if v})
            mats.append(SparseMatrix(D, D, cols))
        return mats

    left = build("left") if B.left is not None else None
    right = build("right")
    return Bimodule(A_gamma, D, left, right, B.lco, B.rco, B.name + "_gamma")


@dataclass(eq=False, repr=False)
class TwistedBimodule:
    """M_gamma: the literal twist of ``base`` and the bimodule rebuilt from its Yetter-Drinfeld data."""

    base: BicovBimodule
    cocycle: Cocycle
    algebra: HopfAlgebra
    literal: Bimodule
    bimodule: BicovBimodule
    phi: SparseMatrix  # rebuilt coordinates -> base coordinates
    phi_inv: SparseMatrix

    @cached_property
    def square(self) -> TensorProduct:
        return tensor_product(self.bimodule, self.bimodule)

    @cached_property
    def base_square(self) -> TensorProduct:
        return tensor_product(self.base, self.base)

    def intertwining_report(self) -> Report:
        """phi carries every structure map of the rebuilt module onto the literal twist."""
        L, Mp, phi = self.literal, self.bimodule, self.phi
        am = algebra_maps(self.algebra)
        rep = Report(f"{self.base.name}.phi")
        n = self.algebra.dim
        w = next(([b] for b in range(n) if phi @ Mp.left[b] != L.left[b] @ phi), None)
        rep.add("phi_left_action", w is None, w)
        w = next(([b] for b in range(n) if phi @ Mp.right[b] != L.right[b] @ phi), None)
        rep.add("phi_right_action", w is None, w)
        rep.add("phi_left_coaction", L.lco @ phi == sparse_kron(am.ident, phi) @ Mp.lco)
        rep.add("phi_right_coaction", L.rco @ phi == sparse_kron(phi, am.ident) @ Mp.rco)
        return rep


def _omega_coefficients(M: BicovBimodule, vec) -> list[Cyclotomic]:
    """Coefficients c with vec = sum_j c_j w_j; raises if vec is not left-invariant-spanned."""
    A = M.algebra
    x0 = next(x for x, u in enumerate(A.unit) if u)
    u0 = A.unit[x0]
    coeffs = [vec[x0 * M.d + j] / u0 for j in range(M.d)]
    rebuilt = [ZERO] * M.dim
    for j, cj in enumerate(coeffs):
        if cj:
            for k, y in enumerate(M.omega(j)):
                if y:
                    rebuilt[k] = rebuilt[k] + cj * y
    if rebuilt != list(vec):
        raise VerificationError(f"{M.name}: twisted adjoint action leaves the invariant subspace")
    return coeffs


def extract_yd(M: BicovBimodule, literal: Bimodule, A_gamma: HopfAlgebra) -> YDModule:
    """Yetter-Drinfeld data of the literal twist: w <|_gamma b = S_gamma(b1) * w * b2, coaction unchanged."""
    n, d = A_gamma.dim, M.d
    action = Tensor3.zeros(n, d, d)
    for b in range(n):
        for i in range(d):
            acc = [ZERO] * M.dim
            w = M.omega(i)
            for b1, b2, cb in A_gamma.comult_nz[b]:
                s = A_gamma.S(A_gamma.basis(b1))
                wb = literal.right[b2].apply(w)
                lhs = literal.left_by(s).apply(wb)
                for k, x in enumerate(lhs):
                    if x:
                        acc[k] = acc[k] + cb * x
            coeffs = _omega_coefficients(M, acc)
            for j, x in enumerate(coeffs):
                action.data[b][i][j] = x
    return YDModule(A_gamma, d, action, M.yd.coaction, M.yd.labels)


def twist_bimodule(M: BicovBimodule, c: Cocycle, A_gamma: HopfAlgebra | None = None) -> TwistedBimodule:
    A_gamma = A_gamma or twist_algebra(M.algebra, c)
    literal = twist_literal(M, c, A_gamma)
    V_gamma = extract_yd(M, literal, A_gamma)
    rebuilt = build_bimodule(A_gamma, V_gamma, M.name + "_gamma")
    n, d = A_gamma.dim, M.d
    cols = []
    for a in range(n):
        for v in range(d):
            image = literal.left[a].apply(M.omega(v))
            cols.append({k: x for k, x in enumerate(image) if x})
    phi = SparseMatrix(M.dim, M.dim, cols)
    try:
        phi_inv = SparseMatrix.from_matrix(inverse(phi.to_matrix()))
    except Exception as exc:
        raise VerificationError(f"{M.name}: twisted bimodule is not free on the invariant basis") from exc
    return TwistedBimodule(M, c, A_gamma, literal, rebuilt, phi, phi_inv)


# -- twisted maps ------------------------------------------------------------------


class NotCovariantError(ValueError):
    pass


def twist_map(T: SparseMatrix, source: TwistedBimodule | Bimodule, target: TwistedBimodule | Bimodule,
              c: Cocycle) -> SparseMatrix:
    """T_gamma = T as a linear map; refuses maps that are not bicovariant bimodule maps."""
    src = source.base if isinstance(source, TwistedBimodule) else source
    tgt = target.base if isinstance(target, TwistedBimodule) else target
    linear = "both" if src.left is not None and tgt.left is not None else "right"
    rep = check_covariant_map(T, src, tgt, "bi", linear)
    if not rep.passed:
        raise NotCovariantError("map is not a bicovariant bimodule map: "
                                + ", ".join(ch.id for ch in rep.failures))
    return T


def twisted_map_report(T: SparseMatrix, source: Bimodule, target: Bimodule, name: str = "twisted_map") -> Report:
    """Covariance and linearity of T between literal twisted structures."""
    linear = "both" if source.left is not None and target.left is not None else "right"
    return check_covariant_map(T, source, target, "bi", linear, name)


# -- xi ----------------------------------------------------------------------------


@dataclass(eq=False, repr=False)
class XiMaps:
    """xi: M_gamma (x) N_gamma -> (M (x) N)_gamma and its inverse.

    xi is indexed by the rebuilt tensor square's coordinates on the source side and by
    the base tensor square's coordinates on the target side."""

    first: TwistedBimodule
    second: TwistedBimodule
    base_square: TensorProduct
    twisted_square: TensorProduct
    xi: SparseMatrix
    xi_inv: SparseMatrix

    def twisted_pair(self, m, n) -> list[Cyclotomic]:
        """m (x)_{A_gamma} n for m, n given in base coordinates."""
        return self.twisted_square.pair(self.first.phi_inv.apply(m), self.second.phi_inv.apply(n))


def _bilinear_twisted_pair(maps_gamma, maps_gbar, t3m, t3n, m_vec, n_vec, pair, dim):
    """sum gamma(m_-1 (x) n_-1) pair(m0, n0) gammabar(m1 (x) n1) for basis-expanded m, n."""
    out = [ZERO] * dim
    for i, a in enumerate(m_vec):
        if not a:
            continue
        for j, b in enumerate(n_vec):
            if not b:
                continue
            for x, m0, y, c1 in t3m[i]:
                for x2, n0, y2, c2 in t3n[j]:
                    p = maps_gamma[x][x2]
                    if not p:
                        continue
                    q = maps_gbar[y][y2]
                    if not q:
                        continue
                    f = a * b * c1 * c2 * p * q
                    for k, v in pair(m0, n0).items():
                        out[k] = out[k] + f * v
    return out


def _basis_pair(T: TensorProduct):
    M = T.first
    dN, dP = T.second.d, T.product.d
    cache: dict = {}

    def pair(i: int, j: int) -> dict:
        key = (i, j)
        if key not in cache:
            b, w = divmod(j, dN)
            out = {}
            for k, r in M.right[b].columns[i].items():
                a2, v2 = divmod(k, M.d)
                out[a2 * dP + v2 * dN + w] = r
            cache[key] = out
        return cache[key]

    return pair


def xi_maps(Mt: TwistedBimodule, Nt: TwistedBimodule | None = None) -> XiMaps:
    Nt = Nt or Mt
    c = Mt.cocycle
    g = c.gamma.values.data
    gb = c.gammabar.values.data
    M, N = Mt.base, Nt.base
    base_sq = Mt.base_square if Nt is Mt else tensor_product(M, N)
    tw_sq = Mt.square if Nt is Mt else tensor_product(Mt.bimodule, Nt.bimodule)
    t3m, t3n = triple_coaction(M), triple_coaction(N)
    D2 = base_sq.product.dim
    if tw_sq.product.dim != D2:
        raise VerificationError("tensor squares have different dimensions")
    n, dM, dN = Mt.algebra.dim, M.d, N.d
    base_pair = _basis_pair(base_sq)

    xi_cols = []
    for a in range(n):
        for v in range(dM):
            m_vec = [Mt.phi.columns[a * dM + v].get(k, ZERO) for k in range(M.dim)]
            for w in range(dN):
                col = _bilinear_twisted_pair(g, gb, t3m, t3n, m_vec, N.omega(w), base_pair, D2)
                xi_cols.append({k: x for k, x in enumerate(col) if x})
    xi = SparseMatrix(D2, D2, xi_cols)

    tw_pair_cache: dict = {}
    tw_pair_basis = _basis_pair(tw_sq)

    def tw_pair(i: int, j: int) -> dict:
        key = (i, j)
        if key not in tw_pair_cache:
            acc: dict = defaultdict(lambda: ZERO)
            for p, x in Mt.phi_inv.columns[i].items():
                for q, y in Nt.phi_inv.columns[j].items():
                    for k, v in tw_pair_basis(p, q).items():
                        acc[k] = acc[k] + x * y * v
            tw_pair_cache[key] = {k: v for k, v in acc.items() if v}
        return tw_pair_cache[key]

    inv_cols = []
    for a in range(n):
        for v in range(dM):
            m_vec = M.basis_vector(a * dM + v)
            for w in range(dN):
                col = _bilinear_twisted_pair(gb, g, t3m, t3n, m_vec, N.omega(w), tw_pair, D2)
                inv_cols.append({k: x for k, x in enumerate(col) if x})
    xi_inv = SparseMatrix(D2, D2, inv_cols)
    maps = XiMaps(Mt, Nt, base_sq, tw_sq, xi, xi_inv)
    ident = SparseMatrix.identity(D2)
    if xi @ xi_inv != ident or xi_inv @ xi != ident:
        raise VerificationError("xi and xi^-1 are not mutually inverse")
    return maps


def xi_report(maps: XiMaps, name: str = "xi") -> Report:
    """Bicovariance and A_gamma-bilinearity of xi, checked against the literal twist of M (x) N."""
    rep = Report(name)
    D2 = maps.xi.rows
    ident = SparseMatrix.identity(D2)
    rep.add("round_trip", maps.xi @ maps.xi_inv == ident and maps.xi_inv @ maps.xi == ident)
    Mt = maps.first
    target = twist_literal(maps.base_square.product, Mt.cocycle, Mt.algebra)
    cov = check_covariant_map(maps.xi, maps.twisted_square.product, target, "bi", "both")
    for ch in cov.checks:
        rep.add("xi_" + ch.id, ch.ok, ch.witness)
    return rep


def xi_lemma_witness(maps: XiMaps) -> list[int] | None:
    """xi^-1(gamma(eta_-1 (x) 1) eta_0 (x) w_0 gammabar(1 (x) w_1)) = eta (x)_gamma w on all basis pairs."""
    Mt, Nt = maps.first, maps.second
    M, N = Mt.base, Nt.base
    A = M.algebra
    c = Mt.cocycle
    one = A.one()
    eps = [A.eps(A.basis(a)) for a in range(A.dim)]
    t3m, t3n = triple_coaction(M), triple_coaction(N)
    base_pair = _basis_pair(maps.base_square)
    D2 = maps.xi.rows
    for k in range(M.d):
        eta = M.eta(k)
        for i in range(N.d):
            w = N.omega(i)
            expr = [ZERO] * D2
            for p, x in enumerate(eta):
                if not x:
                    continue
                for q, y in enumerate(w):
                    if not y:
                        continue
                    # the unused outer legs are collapsed by the counit
                    for xl, m0, mr, c1 in t3m[p]:
                        left = c.gamma(A.basis(xl), one) * eps[mr]
                        if not left:
                            continue
                        for nl, n0, yr, c2 in t3n[q]:
                            right = c.gammabar(one, A.basis(yr)) * eps[nl]
                            if not right:
                                continue
                            f = x * y * c1 * c2 * left * right
                            for idx, v in base_pair(m0, n0).items():
                                expr[idx] = expr[idx] + f * v
            if maps.xi_inv.apply(expr) != maps.twisted_pair(eta, w):
                return [k, i]
    return None


# -- braiding ----------------------------------------------------------------------


@dataclass(eq=False, repr=False)
class SigmaTwist:
    transported: SparseMatrix  # xi^-1 sigma xi
    constructed: Braiding  # braiding built directly on the twisted bimodule
    base: Braiding

    @property
    def equal(self) -> bool:
        return self.transported == self.constructed.full


def sigma_twist(Mt: TwistedBimodule, maps: XiMaps | None = None, base: Braiding | None = None) -> SigmaTwist:
    maps = maps or xi_maps(Mt)
    base = base or construct_braiding(Mt.base, maps.base_square)
    transported = maps.xi_inv @ base.full @ maps.xi
    constructed = construct_braiding(Mt.bimodule, Mt.square)
    return SigmaTwist(transported, constructed, base)


def sigma_twist_report(st: SigmaTwist, Mt: TwistedBimodule, maps: XiMaps, name: str = "sigma_twist") -> Report:
    rep = Report(name)
    diff = st.transported.first_difference(st.constructed.full)
    rep.add("sigma_twist == braiding(twist_bimodule)", diff is None, None if diff is None else list(diff))
    M = Mt.base
    wit = None
    for i in range(M.d):
        for k in range(M.d):
            eta = M.eta(k)
            w = M.omega(i)
            if st.transported.apply(maps.twisted_pair(w, eta)) != maps.twisted_pair(eta, w):
                wit = [i, k]
                break
        if wit:
            break
    rep.add("sigma_twist_defining_property", wit is None, wit)
    if braiding_squared_is_identity(st.base):
        rep.add("sigma_twist_squared_identity", braiding_squared_is_identity(st.constructed))
    else:
        rep.add("sigma_twist_squared_identity", True, None, "vacuous: sigma^2 != 1")
    return rep


# -- metrics -----------------------------------------------------------------------


def closed_form_twisted_gmat(g: Metric, c: Cocycle) -> list[list[list[Cyclotomic]]]:
    """(g_gamma)_ij = sum_{kl} g_kl gammabar(R_ki (x) R_lj) for scalar g."""
    M = g.host
    A = M.algebra
    gm = g.scalar_matrix()
    R = M.R
    d = M.d
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            total = ZERO
            for k in range(d):
                for l in range(d):
                    if gm.data[k][l]:
                        total = total + gm.data[k][l] * c.gammabar(R[k][i], R[l][j])
            row.append(A.scalar_element(total))
        out.append(row)
    return out


@dataclass(eq=False, repr=False)
class TwistedMetric:
    metric: Metric  # on the rebuilt twisted bimodule
    closed_form: list[list[list[Cyclotomic]]]
    by_composition: list[list[list[Cyclotomic]]]
    composed_map: SparseMatrix  # g o xi

    @property
    def forms_agree(self) -> bool:
        return self.closed_form == self.by_composition


def metric_twist(g: Metric, Mt: TwistedBimodule, maps: XiMaps | None = None,
                 braiding_gamma: Braiding | None = None, require: bool = True) -> TwistedMetric:
    if require:
        if not check_metric(g).passed or not check_bi_invariant(g):
            raise MetricError("metric_twist needs a bi-invariant pseudo-Riemannian metric")
    maps = maps or xi_maps(Mt)
    b_gamma = braiding_gamma or construct_braiding(Mt.bimodule, Mt.square)
    composed = g.G @ maps.xi
    P = Mt.square.product
    d = Mt.base.d
    by_comp = [[composed.apply(P.omega(i * d + j)) for j in range(d)] for i in range(d)]
    closed = closed_form_twisted_gmat(g, Mt.cocycle)
    g_gamma = Metric(b_gamma, closed)
    return TwistedMetric(g_gamma, closed, by_comp, composed)


def metric_twist_report(tm: TwistedMetric, g: Metric, Mt: TwistedBimodule, maps: XiMaps,
                        name: str = "metric_twist") -> Report:
    rep = Report(name)
    rep.add("closed_form == g o xi", tm.forms_agree)
    rep.add("g_gamma map == g o xi", tm.metric.G == tm.composed_map)
    mrep = check_metric(tm.metric)
    for ch in mrep.checks:
        rep.add("g_gamma_" + ch.id, ch.ok, ch.witness)
    rep.add("g_gamma_bi_invariant", check_bi_invariant(tm.metric))
    w = vg_twist_witness(g, tm, Mt, maps)
    rep.add("vg_twist == vg_of_twist", w is None, w)
    return rep


def vg_twist_witness(g: Metric, tm: TwistedMetric, Mt: TwistedBimodule, maps: XiMaps) -> list | None:
    """Compare V_g and V_{g_gamma} on every (left-invariant, right-invariant) basis pair.

    Also checks that V_g stays right-linear as a map from M_gamma to the twisted
    module V_g(M)_gamma."""
    M = Mt.base
    for i in range(M.d):
        w = M.omega(i)
        for k in range(M.d):
            eta = M.eta(k)
            lhs = g.pair(w, eta)
            rhs = tm.metric.G.apply(maps.twisted_pair(w, eta))
            if lhs != rhs:
                return ["pair", i, k]
    V = vg_module(g)
    Vt = twist_literal(V.module, Mt.cocycle, Mt.algebra)
    T = SparseMatrix.from_matrix(V.map)
    for a in range(Mt.algebra.dim):
        if T @ Mt.literal.right[a] != Vt.right[a] @ T:
            return ["right_linear", a]
    return None


# -- bicovariant right modules ----------------------------------------------------


@dataclass(eq=False, repr=False)
class VgModule:
    """V_g(M) as the free right module on w*_i with its two coactions, and V_g: M -> V_g(M)."""

    module: Bimodule  # left action absent
    map: Matrix


def vg_module(g: Metric) -> VgModule:
    """Coordinates (i, a) -> i * n + a mean w*_i . e_a.

    Left coaction: w*_i a -> a1 (x) w*_i a2; right coaction: sum_j w*_j a1 (x) S(R_ij) a2.
    """
    M = g.host
    A = M.algebra
    n, d = A.dim, M.d
    D = n * d
    R = M.R
    right = []
    for b in range(n):
        cols = []
        for i in range(d):
            for a in range(n):
                cols.append({i * n + k: x for k, x in A.mult_nz[a][b]})
        right.append(SparseMatrix(D, D, cols))
    lco_cols, rco_cols = [], []
    SR = [[A.S(R[i][j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        for a in range(n):
            lco_cols.append({a1 * D + i * n + a2: x for a1, a2, x in A.comult_nz[a]})
            acc: dict = defaultdict(lambda: ZERO)
            for j in range(d):
                s = SR[i][j]
                for a1, a2, x in A.comult_nz[a]:
                    for p, y in enumerate(s):
                        if y:
                            for k, m in A.mult_nz[p][a2]:
                                idx = (j * n + a1) * n + k
                                acc[idx] = acc[idx] + x * y * m
            rco_cols.append({k: v for k, v in acc.items() if v})
    module = Bimodule(A, D, None, right, SparseMatrix(n * D, D, lco_cols), SparseMatrix(D * n, D, rco_cols),
                      f"V_g({M.name})")
    return VgModule(module, vg_matrix(g))


def vg_module_report(g: Metric, name: str = "vg_module") -> Report:
    V = vg_module(g)
    rep = Report(name)
    vr = verify_bicovariance(V.module)
    rep.add("right_bicovariant_module", vr.passed, [c.id for c in vr.failures] or None)
    cov = check_covariant_map(V.map, g.host, V.module, "bi", "right")
    for ch in cov.checks:
        rep.add("vg_" + ch.id, ch.ok, ch.witness)
    rep.add("sr_identity", sr_identity_holds(g))
    return rep


def twist_right_module(V: Bimodule, c: Cocycle, A_gamma: HopfAlgebra | None = None) -> Bimodule:
    if V.left is not None:
        raise ValueError("expected a right module without left action")
    A_gamma = A_gamma or twist_algebra(V.algebra, c)
    return twist_literal(V, c, A_gamma)


# -- untwisting ------------------------------------------------------------------


def inverse_cocycle(c: Cocycle, A_gamma: HopfAlgebra) -> Cocycle:
    """gammabar read as a cocycle on A_gamma; its convolution inverse there must be gamma."""
    gbar = Functional2(A_gamma, c.gammabar.values)
    inv = verify_cocycle(gbar)
    if inv.gammabar.values != c.gamma.values:
        raise VerificationError("convolution inverse of gammabar on A_gamma is not gamma")
    return inv


@dataclass(eq=False, repr=False)
class RoundTrip:
    algebra_restored: bool
    yd_restored: bool
    bimodule_restored: bool
    braiding_restored: bool
    metric_restored: bool
    retwist_restored: bool
    untwisted: Metric | None

    @property
    def ok(self) -> bool:
        return all((self.algebra_restored, self.yd_restored, self.bimodule_restored, self.braiding_restored,
                    self.metric_restored, self.retwist_restored))


def untwist_roundtrip(tm: TwistedMetric, g: Metric, Mt: TwistedBimodule, maps: XiMaps) -> RoundTrip:
    """Twist M_gamma and g_gamma back with gammabar and compare with M and g; then re-twist."""
    c_inv = inverse_cocycle(Mt.cocycle, Mt.algebra)
    A = Mt.base.algebra
    A2 = twist_algebra(Mt.algebra, c_inv)
    alg_ok = A2 == A
    Mt2 = twist_bimodule(Mt.bimodule, c_inv, A2)
    yd_ok = Mt2.bimodule.yd == Mt.base.yd
    bim_ok = Mt2.bimodule.same_structure(Mt.base)
    maps2 = xi_maps(Mt2)
    st2 = sigma_twist(Mt2, maps2, tm.metric.braiding)
    br_ok = st2.constructed.coeffs == g.braiding.coeffs and st2.transported == st2.constructed.full
    tm2 = metric_twist(tm.metric, Mt2, maps2, st2.constructed)
    met_ok = tm2.closed_form == g.gmat and tm2.forms_agree
    untwisted = tm2.metric
    retwist_ok = False
    if bim_ok:
        back = Metric(g.braiding, tm2.closed_form)
        tm3 = metric_twist(back, Mt, maps, tm.metric.braiding)
        retwist_ok = tm3.closed_form == tm.closed_form
    return RoundTrip(alg_ok, yd_ok, bim_ok, br_ok, met_ok, retwist_ok, untwisted)


@dataclass(eq=False, repr=False)
class SpaceCorrespondence:
    dim_base: int
    dim_twisted: int
    images_rank: int
    images_in_space: bool

    @property
    def ok(self) -> bool:
        return self.dim_base == self.dim_twisted == self.images_rank and self.images_in_space


def biinvariant_correspondence(M: BicovBimodule, b: Braiding, Mt: TwistedBimodule,
                               b_gamma: Braiding) -> SpaceCorrespondence:
    """Bi-invariant solution spaces on M and M_gamma, and the closed-form twist of a basis."""
    base = enumerate_biinvariant(M, b)
    tw = enumerate_biinvariant(Mt.bimodule, b_gamma)
    d = M.d
    images = []
    for B in base.basis:
        gm = Metric.from_scalars(b, B.data)
        cf = closed_form_twisted_gmat(gm, Mt.cocycle)
        images.append([M.algebra.eps(cf[i][j]) for i in range(d) for j in range(d)])
    img_rank = rank(Matrix.from_columns(images, d * d)) if images else 0
    tw_cols = [[B.data[i][j] for i in range(d) for j in range(d)] for B in tw.basis]
    joint = rank(Matrix.from_columns(tw_cols + images, d * d)) if (tw_cols or images) else 0
    return SpaceCorrespondence(base.dimension, tw.dimension, img_rank, joint == tw.dimension)
