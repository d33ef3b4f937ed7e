"""Right-linear metrics on M (x)_A M: symmetry, nondegeneracy, invariance, duality, two-forms."""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .bicovariant import BicovBimodule, algebra_maps, check_covariant_map
from .braiding import Braiding
from .hopf import Element
from .linalg import (
    Matrix,
    SparseMatrix,
    extend_to_basis,
    inverse,
    is_invertible,
    kernel,
    rank,
    sparse_kron,
)
from .report import Report, VerificationError
from .scalars import ONE, ZERO, Cyclotomic, scalar


class MetricError(ValueError):
    pass


@dataclass(eq=False, repr=False)
class Metric:
    """g(w_i (x) w_j) = gmat[i][j] in A, extended right-linearly."""

    braiding: Braiding
    gmat: list[list[Element]]

    def __post_init__(self):
        d, n = self.host.d, self.host.n
        if len(self.gmat) != d or any(len(r) != d for r in self.gmat) or any(
                len(x) != n for r in self.gmat for x in r):
            raise MetricError(f"metric matrix must be {d}x{d} with entries in a {n}-dimensional algebra")
        self.gmat = [[[scalar(c) for c in x] for x in r] for r in self.gmat]

    @classmethod
    def from_scalars(cls, b: Braiding, mat: Sequence[Sequence]) -> "Metric":
        A = b.host.algebra
        return cls(b, [[A.scalar_element(x) for x in row] for row in mat])

    @property
    def host(self) -> BicovBimodule:
        return self.braiding.host

    @property
    def algebra(self):
        return self.host.algebra

    @property
    def d(self) -> int:
        return self.host.d

    def is_scalar(self) -> bool:
        A = self.algebra
        return all(A.is_scalar(x) for r in self.gmat for x in r)

    def scalar_matrix(self) -> Matrix:
        if not self.is_scalar():
            raise MetricError("metric has non-scalar entries")
        A = self.algebra
        return Matrix([[A.eps(x) for x in r] for r in self.gmat])

    @cached_property
    def G(self) -> SparseMatrix:
        """g as an n x dim(M (x) M) matrix in left coordinates."""
        A = self.algebra
        P = self.braiding.square.product
        n, d = A.dim, self.d
        cols = []
        for ij in range(d * d):
            gij = self.gmat[ij // d][ij % d]
            for a in range(n):
                cols.append(A.mul(gij, A.basis(a)))
        right_form = Matrix.from_columns(cols, n)
        return SparseMatrix.from_matrix(right_form @ P.normal_form_matrix)

    def value(self, x: Sequence[Cyclotomic]) -> Element:
        return self.G.apply(x)

    def pair(self, e: Sequence[Cyclotomic], f: Sequence[Cyclotomic]) -> Element:
        """g(e (x) f) for e, f in M."""
        return self.G.apply(self.braiding.square.pair(e, f))

    def to_json(self) -> list:
        A = self.algebra
        if self.is_scalar():
            return [[A.eps(x).to_json() for x in r] for r in self.gmat]
        return [[A.element_json(x) for x in r] for r in self.gmat]


# -- axioms ------------------------------------------------------------------------


def vg_values(g: Metric) -> Matrix:
    """e -> (g(e (x) w_j))_j, a (d*n) x dim(M) matrix; V_g is injective iff this has zero kernel."""
    M = g.host
    n, d = M.n, M.d
    omegas = [M.omega(j) for j in range(d)]
    cols = []
    for idx in range(M.dim):
        e = M.basis_vector(idx)
        col = []
        for j in range(d):
            col.extend(g.pair(e, omegas[j]))
        cols.append(col)
    return Matrix.from_columns(cols, d * n)


def vg_values_left_slot(g: Metric) -> Matrix:
    """f -> (g(w_i (x) f))_i, the mirrored nondegeneracy map."""
    M = g.host
    n, d = M.n, M.d
    omegas = [M.omega(i) for i in range(d)]
    cols = []
    for idx in range(M.dim):
        f = M.basis_vector(idx)
        col = []
        for i in range(d):
            col.extend(g.pair(omegas[i], f))
        cols.append(col)
    return Matrix.from_columns(cols, d * n)


def _format_right(M: BicovBimodule, vec) -> str:
    A = M.algebra
    terms = []
    for i, c in enumerate(M.to_right(vec)):
        if any(c):
            s = A.format(c)
            terms.append(f"w{i + 1}" if c == A.one() else f"w{i + 1}.({s})")
    return " + ".join(terms) or "0"


def check_metric(g: Metric, name: str = "metric") -> Report:
    M = g.host
    A = M.algebra
    P = g.braiding.square.product
    am = algebra_maps(A)
    rep = Report(name)

    wit = None
    for b in range(A.dim):
        diff = (g.G @ P.right[b]).first_difference(am.rmul[b] @ g.G)
        if diff is not None:
            wit = [b, diff[1]]
            break
    rep.add("right_linear", wit is None, wit)

    diff = (g.G @ g.braiding.full).first_difference(g.G)
    wit = None
    if diff is not None:
        a, ij = divmod(diff[1], M.d * M.d)
        wit = [a, ij // M.d, ij % M.d]
    rep.add("symmetric", wit is None, wit)

    K = kernel(vg_values(g))
    if K.cols:
        rep.add("nondegenerate", False, _format_right(M, K.column(0)), f"kernel dimension {K.cols}")
    else:
        rep.add("nondegenerate", True)
    return rep


def nondegeneracy_kernels(g: Metric) -> tuple[int, int]:
    """Kernel dimensions of e -> g(e (x) -) and f -> g(- (x) f) tested on the invariant basis."""
    return kernel(vg_values(g)).cols, kernel(vg_values_left_slot(g)).cols


# -- invariance -----------------------------------------------------------------


def _left_invariance_pair(g: Metric) -> tuple[bool, bool]:
    A = g.algebra
    P = g.braiding.square.product
    am = algebra_maps(A)
    epsG = am.eps @ g.G
    by_definition = sparse_kron(am.ident, epsG) @ P.lco == g.G
    by_covariance = am.delta @ g.G == sparse_kron(am.ident, g.G) @ P.lco
    return by_definition, by_covariance


def _right_invariance_pair(g: Metric) -> tuple[bool, bool]:
    A = g.algebra
    P = g.braiding.square.product
    am = algebra_maps(A)
    epsG = am.eps @ g.G
    by_definition = sparse_kron(epsG, am.ident) @ P.rco == g.G
    by_covariance = am.delta @ g.G == sparse_kron(g.G, am.ident) @ P.rco
    return by_definition, by_covariance


def left_invariance_verdicts(g: Metric) -> tuple[bool, bool]:
    """(invariance identity, covariance identity) without asserting agreement."""
    return _left_invariance_pair(g)


def right_invariance_verdicts(g: Metric) -> tuple[bool, bool]:
    return _right_invariance_pair(g)


def check_left_invariant(g: Metric) -> bool:
    a, b = _left_invariance_pair(g)
    if a != b:
        raise VerificationError("left invariance and left covariance of g disagree")
    return a


def check_right_invariant(g: Metric) -> bool:
    a, b = _right_invariance_pair(g)
    if a != b:
        raise VerificationError("right invariance and right covariance of g disagree")
    return a


def r_identity_holds(g: Metric) -> bool:
    """g_ij = sum_{kl} g_kl R_ki R_lj in A."""
    A = g.algebra
    R = g.host.R
    d = g.d
    for i in range(d):
        for j in range(d):
            acc = A.zero()
            for k in range(d):
                for l in range(d):
                    if any(g.gmat[k][l]):
                        term = A.mul(g.gmat[k][l], A.mul(R[k][i], R[l][j]))
                        acc = [x + y for x, y in zip(acc, term)]
            if acc != g.gmat[i][j]:
                return False
    return True


def check_bi_invariant(g: Metric) -> bool:
    verdict = g.is_scalar() and r_identity_holds(g)
    both = check_left_invariant(g) and check_right_invariant(g)
    if verdict != both:
        raise VerificationError("R-matrix criterion disagrees with left and right invariance")
    return verdict


def sr_identity_holds(g: Metric) -> bool:
    """sum_j g_ij S(R_jm) = sum_j g_jm R_ji for all i, m."""
    A = g.algebra
    R = g.host.R
    d = g.d
    for i in range(d):
        for m in range(d):
            lhs = A.zero()
            rhs = A.zero()
            for j in range(d):
                lhs = [x + y for x, y in zip(lhs, A.mul(g.gmat[i][j], A.S(R[j][m])))]
                rhs = [x + y for x, y in zip(rhs, A.mul(g.gmat[j][m], R[j][i]))]
            if lhs != rhs:
                return False
    return True


# -- duality ---------------------------------------------------------------------


def metric_inverse(g: Metric) -> Matrix:
    mat = g.scalar_matrix()
    if not is_invertible(mat):
        raise MetricError("degenerate metric")
    return inverse(mat)


@dataclass(eq=False, repr=False)
class DualBasis:
    """w*_i(e) = i-th right coefficient of e."""

    host: BicovBimodule

    def __call__(self, i: int, e: Sequence[Cyclotomic]) -> Element:
        return self.host.to_right(e)[i]

    def reconstruct(self, e: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        """sum_i w_i . w*_i(e)."""
        M = self.host
        out = [ZERO] * M.dim
        for i in range(M.d):
            for k, x in enumerate(M.act_right(M.omega(i), self(i, e))):
                if x:
                    out[k] = out[k] + x
        return out


def dual_basis(M: BicovBimodule) -> DualBasis:
    db = DualBasis(M)
    A = M.algebra
    for i in range(M.d):
        for j in range(M.d):
            if db(i, M.omega(j)) != (A.one() if i == j else A.zero()):
                raise VerificationError(f"dual basis fails at ({i}, {j})")
    return db


def check_reconstruction(M: BicovBimodule) -> list[int] | None:
    """First basis index where e != sum_i w_i w*_i(e), or None."""
    db = DualBasis(M)
    for idx in range(M.dim):
        e = M.basis_vector(idx)
        if db.reconstruct(e) != e:
            return [idx]
    return None


def vg_matrix(g: Metric) -> Matrix:
    """V_g for bi-invariant g: right coordinates of e -> coordinates (j, a) of sum_j w*_j g_ij a."""
    M = g.host
    gm = g.scalar_matrix()
    n, d = M.n, M.d
    right = Matrix.zeros(d * n, d * n)
    for i in range(d):
        for j in range(d):
            if gm.data[i][j]:
                for a in range(n):
                    right.data[j * n + a][i * n + a] = gm.data[i][j]
    return right @ M.normal_form_matrix


def coevaluation(g: Metric) -> list[Cyclotomic]:
    """coev_g(1) = sum_i w_i (x) V_g^{-1}(w*_i) in the tensor square."""
    M = g.host
    T = g.braiding.square
    ginv = metric_inverse(g)
    d = M.d
    out = [ZERO] * T.product.dim
    for i in range(d):
        # V_g(f) = w*_i  <=>  sum_m c_m g_mk = delta_ik  <=>  c = row i of g^{-1}
        f = [ZERO] * M.dim
        for m in range(d):
            c = ginv.data[i][m]
            if c:
                for k, x in enumerate(M.omega(m)):
                    if x:
                        f[k] = f[k] + c * x
        for k, x in enumerate(T.pair(M.omega(i), f)):
            if x:
                out[k] = out[k] + x
    return out


def coev_partners(g: Metric) -> list[list[Cyclotomic]]:
    M = g.host
    ginv = metric_inverse(g)
    out = []
    for i in range(M.d):
        f = [ZERO] * M.dim
        for m in range(M.d):
            c = ginv.data[i][m]
            if c:
                for k, x in enumerate(M.omega(m)):
                    if x:
                        f[k] = f[k] + c * x
        out.append(f)
    return out


def ev_coev_check(g: Metric, name: str = "ev_coev") -> Report:
    if not g.is_scalar():
        raise MetricError("ev/coev need a metric with scalar entries")
    if check_metric(g)["nondegenerate"].ok is False:
        raise MetricError("degenerate metric")
    M = g.host
    A = M.algebra
    P = g.braiding.square.product
    am = algebra_maps(A)
    rep = Report(name)
    partners = coev_partners(g)
    omegas = [M.omega(i) for i in range(M.d)]

    wit = None
    for idx in range(M.dim):
        e = M.basis_vector(idx)
        acc = [ZERO] * M.dim
        for i in range(M.d):
            for k, x in enumerate(M.act_left(g.pair(e, omegas[i]), partners[i])):
                if x:
                    acc[k] = acc[k] + x
        if acc != e:
            wit = [idx]
            break
    rep.add("snake_left", wit is None, wit)

    wit = None
    for idx in range(M.dim):
        e = M.basis_vector(idx)
        acc = [ZERO] * M.dim
        for i in range(M.d):
            for k, x in enumerate(M.act_right(omegas[i], g.pair(partners[i], e))):
                if x:
                    acc[k] = acc[k] + x
        if acc != e:
            wit = [idx]
            break
    rep.add("snake_right", wit is None, wit)

    cov = check_covariant_map(g.G, P, _algebra_as_bimodule(A), "bi")
    rep.add("ev_bicovariant", cov.passed, [c.id for c in cov.failures] or None)

    coev = coevaluation(g)
    coev_map = SparseMatrix(P.dim, A.dim, [{k: x for k, x in enumerate(P.act_right(coev, A.basis(a))) if x}
                                           for a in range(A.dim)])
    cov = check_covariant_map(coev_map, _algebra_as_bimodule(A), P, "bi", "both")
    rep.add("coev_bicovariant", cov.passed, [c.id for c in cov.failures] or None)
    return rep


def _algebra_as_bimodule(A):
    from .bicovariant import Bimodule

    am = algebra_maps(A)
    return Bimodule(A, A.dim, am.lmul, am.rmul, am.delta, am.delta, "A")


# -- two-forms and the Beggs-Majid element -----------------------------------------


@dataclass(eq=False, repr=False)
class TwoForms:
    kernel: Matrix  # Ker(sigma - 1) on the whole tensor square
    wedge: Matrix  # projection to the coordinates of a complement
    invariant_kernel: Matrix  # Ker(sigma - 1) on span{w_i (x) w_j}

    @property
    def dimension(self) -> int:
        return self.wedge.rows

    @property
    def invariant_dimension(self) -> int:
        return self.invariant_kernel.rows - self.invariant_kernel.cols


def two_forms(M: BicovBimodule, b: Braiding) -> TwoForms:
    P = b.square.product
    full = (b.full.to_matrix() - Matrix.identity(P.dim))
    K = kernel(full)
    Q = extend_to_basis(K)
    Qinv = inverse(Q)
    wedge = Matrix([Qinv.data[r] for r in range(K.cols, P.dim)], P.dim - K.cols, P.dim)
    Kinv = kernel(b.coeffs - Matrix.identity(b.coeffs.rows))
    return TwoForms(K, wedge, Kinv)


def beggs_majid_element(g: Metric) -> list[Cyclotomic]:
    """h = sum_{ij} g_ij . (w_i (x) w_j) in left coordinates."""
    P = g.braiding.square.product
    d = g.d
    return P.from_left([g.gmat[ij // d][ij % d] for ij in range(d * d)])


@dataclass(frozen=True)
class BeggsMajidResult:
    wedge_vanishes: bool
    symmetric: bool

    @property
    def agree(self) -> bool:
        return self.wedge_vanishes == self.symmetric


def beggs_majid_check(g: Metric, forms: TwoForms | None = None) -> BeggsMajidResult:
    """Compare wedge(h) = 0 with g o sigma = g."""
    forms = forms or two_forms(g.host, g.braiding)
    h = beggs_majid_element(g)
    wedge_zero = all(not x for x in forms.wedge.apply(h))
    symmetric = (g.G @ g.braiding.full) == g.G
    return BeggsMajidResult(wedge_zero, symmetric)


# -- bi-invariant metrics ----------------------------------------------------------


@dataclass(eq=False, repr=False)
class BiinvariantSpace:
    basis: list[Matrix]
    sample: Matrix | None
    candidates_tried: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _seed_order(candidates: list, seed: str | None) -> list:
    if seed is None:
        return candidates
    out = list(candidates)
    random.Random(seed).shuffle(out)
    return out


def enumerate_biinvariant(M: BicovBimodule, b: Braiding, max_candidates: int = 625,
                          seed: str | None = None) -> BiinvariantSpace:
    """Solution space of g_ij = sum g_kl R_ki R_lj and g o sigma = g over scalar d x d matrices."""
    A = M.algebra
    n, d = A.dim, M.d
    R = M.R
    dd = d * d
    rows: list[list[Cyclotomic]] = []
    for i in range(d):
        for j in range(d):
            block = [[ZERO] * dd for _ in range(n)]
            for k in range(d):
                for l in range(d):
                    prod = A.mul(R[k][i], R[l][j])
                    for a, x in enumerate(prod):
                        if x:
                            block[a][k * d + l] = block[a][k * d + l] + x
            for a, u in enumerate(A.unit):
                if u:
                    block[a][i * d + j] = block[a][i * d + j] - u
            rows.extend(block)
    s = b.coeffs
    for ij in range(dd):
        row = [s.data[kl][ij] for kl in range(dd)]
        row[ij] = row[ij] - ONE
        rows.append(row)
    K = kernel(Matrix(rows, len(rows), dd))
    basis = [Matrix([[K.data[i * d + j][c] for j in range(d)] for i in range(d)]) for c in range(K.cols)]

    if seed is None:
        seed = os.environ.get("BICOTWIST_SEED")
    sample = None
    tried = 0
    if basis:
        combos = [c for c in itertools.product(range(-2, 3), repeat=len(basis)) if any(c)]
        combos.sort(key=lambda c: (sum(abs(x) for x in c), [abs(x) for x in c], [-x for x in c]))
        for combo in _seed_order(combos, seed)[:max_candidates]:
            tried += 1
            cand = Matrix.zeros(d, d)
            for coef, B in zip(combo, basis):
                if coef:
                    cand = cand + B.scale(coef)
            if rank(cand) == d:
                sample = cand
                break
    return BiinvariantSpace(basis, sample, tried)


def random_gmat(M: BicovBimodule, rng: random.Random, scalar_only: bool = False,
                density: float = 0.6) -> list[list[Element]]:
    """Random metric matrix with small integer coefficients; entries in C.1 if scalar_only."""
    A = M.algebra
    d = M.d
    out = []
    for _ in range(d):
        row = []
        for _ in range(d):
            if scalar_only:
                row.append(A.scalar_element(rng.randint(-3, 3)))
            else:
                row.append([scalar(rng.randint(-2, 2)) if rng.random() < density else ZERO for _ in range(A.dim)])
        out.append(row)
    return out
