"""Yetter-Drinfeld modules and the bicovariant bimodules they generate.

A bimodule built from ``(A, V)`` lives on ``A (x) V`` with coordinates
``(a, v) -> a * d + v`` meaning ``e_a . w_v`` (left coordinates).  Right normal
form uses coordinates ``(i, a) -> i * n + a`` meaning ``w_i . e_a``.

Structure maps are stored as :class:`SparseMatrix` columns:

* ``left[b]``, ``right[b]``: action of the basis element ``e_b``;
* ``lco``: ``M -> A (x) M``, output index ``x * D + m``;
* ``rco``: ``M -> M (x) A``, output index ``m * n + x``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .hopf import Element, HopfAlgebra
from .linalg import (
    Matrix,
    SparseMatrix,
    Tensor3,
    inverse,
    kernel,
    rank,
    sparse_kron,
    sparse_sum,
)
from .report import Report, VerificationError
from .scalars import ONE, ZERO, Cyclotomic, scalar


class BimoduleError(ValueError):
    pass


# -- algebra-side linear maps --------------------------------------------------------


@dataclass(frozen=True, eq=False, repr=False)
class AlgebraMaps:
    lmul: list[SparseMatrix]  # x -> e_a x
    rmul: list[SparseMatrix]  # x -> x e_a
    delta: SparseMatrix  # n^2 x n
    eps: SparseMatrix  # 1 x n
    unit: SparseMatrix  # n x 1
    ident: SparseMatrix


@lru_cache(maxsize=64)
def algebra_maps(A: HopfAlgebra) -> AlgebraMaps:
    n = A.dim
    lmul, rmul = [], []
    for a in range(n):
        lmul.append(SparseMatrix(n, n, [dict(A.mult_nz[a][x]) for x in range(n)]))
        rmul.append(SparseMatrix(n, n, [dict(A.mult_nz[x][a]) for x in range(n)]))
    delta = SparseMatrix(n * n, n, [{j * n + k: c for j, k, c in A.comult_nz[i]} for i in range(n)])
    eps = SparseMatrix(1, n, [{0: c} if c else {} for c in A.counit])
    unit = SparseMatrix(n, 1, [{i: c for i, c in enumerate(A.unit) if c}])
    return AlgebraMaps(lmul, rmul, delta, eps, unit, SparseMatrix.identity(n))


def element_map(maps: Sequence[SparseMatrix], x: Element, rows: int, cols: int) -> SparseMatrix:
    """Sum_b x_b maps[b]."""
    return sparse_sum((maps[b].scale(c) for b, c in enumerate(x) if c), rows, cols)


# -- Yetter-Drinfeld modules ------------------------------------------------------


@dataclass(frozen=True, eq=False, repr=False)
class YDModule:
    """Right-right Yetter-Drinfeld module.

    ``v_i <| e_a = sum_j action[a][i][j] v_j`` and
    ``rho(v_i) = sum_{j,a} coaction[i][j][a] v_j (x) e_a``.
    """

    host: HopfAlgebra
    dim: int
    action: Tensor3
    coaction: Tensor3
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n, d = self.host.dim, self.dim
        if self.action.dims != (n, d, d):
            raise BimoduleError(f"action tensor has shape {self.action.dims}, expected {(n, d, d)}")
        if self.coaction.dims != (d, d, n):
            raise BimoduleError(f"coaction tensor has shape {self.coaction.dims}, expected {(d, d, n)}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, YDModule):
            return NotImplemented
        return self.dim == other.dim and self.action == other.action and self.coaction == other.coaction

    __hash__ = object.__hash__

    @cached_property
    def action_nz(self) -> list[list[list[tuple[int, Cyclotomic]]]]:
        return [[[(j, c) for j, c in enumerate(self.action[a][i]) if c] for i in range(self.dim)]
                for a in range(self.host.dim)]

    @cached_property
    def coaction_nz(self) -> list[list[tuple[int, int, Cyclotomic]]]:
        return [self.coaction.nonzeros(i) for i in range(self.dim)]

    def act(self, vec: Sequence[Cyclotomic], x: Element) -> list[Cyclotomic]:
        out = [ZERO] * self.dim
        for a, c in enumerate(x):
            if not c:
                continue
            for i, v in enumerate(vec):
                if v:
                    for j, m in self.action_nz[a][i]:
                        out[j] = out[j] + c * v * m
        return out

    def coact(self, vec: Sequence[Cyclotomic]) -> dict[tuple[int, int], Cyclotomic]:
        out: dict = defaultdict(lambda: ZERO)
        for i, v in enumerate(vec):
            if v:
                for j, a, c in self.coaction_nz[i]:
                    out[(j, a)] = out[(j, a)] + v * c
        return {k: x for k, x in out.items() if x}

    def degree_matrix(self) -> list[list[Element]]:
        """R with rho(v_i) = sum_j v_j (x) R[j][i]."""
        n, d = self.host.dim, self.dim
        return [[[self.coaction[i][j][a] for a in range(n)] for i in range(d)] for j in range(d)]


def make_yd(A: HopfAlgebra, action, coaction, labels=None) -> YDModule:
    act = action if isinstance(action, Tensor3) else Tensor3(action)
    co = coaction if isinstance(coaction, Tensor3) else Tensor3(coaction)
    return YDModule(A, co.dims[0], act, co, tuple(labels) if labels else None)


def trivial_yd(A: HopfAlgebra, dim: int = 1) -> YDModule:
    """Trivial action v <| a = eps(a) v and coaction v -> v (x) 1."""
    n = A.dim
    action = Tensor3.zeros(n, dim, dim)
    coaction = Tensor3.zeros(dim, dim, n)
    for i in range(dim):
        for a in range(n):
            action.data[a][i][i] = A.counit[a]
            coaction.data[i][i][a] = A.unit[a]
    return YDModule(A, dim, action, coaction)


def character_yd(A: HopfAlgebra, degree: Element, character: Sequence | None = None) -> YDModule:
    """One-dimensional module: rho(v) = v (x) degree, v <| e_a = character[a] v (default: counit)."""
    n = A.dim
    chi = [scalar(c) for c in character] if character is not None else list(A.counit)
    action = Tensor3.zeros(n, 1, 1)
    coaction = Tensor3.zeros(1, 1, n)
    for a in range(n):
        action.data[a][0][0] = chi[a]
        coaction.data[0][0][a] = scalar(degree[a])
    return YDModule(A, 1, action, coaction)


def graded_yd(A: HopfAlgebra, degrees: Sequence[int], action: str | Sequence[Sequence[int]] = "trivial",
              labels=None) -> YDModule:
    """Module over a group algebra with rho(v_i) = v_i (x) g_i.

    ``action`` is ``"trivial"``, ``"conjugation"`` (v_i <| g = v_j with g_j = g^-1 g_i g;
    degrees must be distinct and closed under conjugation) or an explicit table
    ``perm[g][i] = j`` meaning v_i <| g = v_j.
    """
    G = A.group
    if G is None or A.kind != "group_algebra":
        raise BimoduleError("graded_yd needs a group algebra")
    d, n = len(degrees), A.dim
    coaction = Tensor3.zeros(d, d, n)
    for i, g in enumerate(degrees):
        coaction.data[i][i][g] = ONE
    act = Tensor3.zeros(n, d, d)
    if action == "trivial":
        for g in range(n):
            for i in range(d):
                act.data[g][i][i] = ONE
    elif action == "conjugation":
        if len(set(degrees)) != d:
            raise BimoduleError("conjugation action needs distinct degrees")
        for g in range(n):
            for i, t in enumerate(degrees):
                conj = G.mul(G.mul(G.inverse(g), t), g)
                if conj not in degrees:
                    raise BimoduleError("degrees are not closed under conjugation")
                act.data[g][i][degrees.index(conj)] = ONE
    else:
        for g in range(n):
            for i in range(d):
                act.data[g][i][action[g][i]] = ONE
    if labels is None:
        labels = tuple(f"w_{G.labels[g]}" for g in degrees) if len(set(degrees)) == d else None
    return YDModule(A, d, act, coaction, labels)


def tensor_yd(V: YDModule, W: YDModule) -> YDModule:
    """(v (x) w) <| a = v <| a1 (x) w <| a2 and rho = v0 (x) w0 (x) v1 w1; index i * dW + j."""
    A = V.host
    n, dv, dw = A.dim, V.dim, W.dim
    D = dv * dw
    action = Tensor3.zeros(n, D, D)
    for a in range(n):
        for a1, a2, c in A.comult_nz[a]:
            for i in range(dv):
                for i2, x in V.action_nz[a1][i]:
                    for j in range(dw):
                        for j2, y in W.action_nz[a2][j]:
                            row = action.data[a][i * dw + j]
                            row[i2 * dw + j2] = row[i2 * dw + j2] + c * x * y
    coaction = Tensor3.zeros(D, D, n)
    for i in range(dv):
        for i2, x, c in V.coaction_nz[i]:
            for j in range(dw):
                for j2, y, c2 in W.coaction_nz[j]:
                    row = coaction.data[i * dw + j][i2 * dw + j2]
                    for k, m in A.mult_nz[x][y]:
                        row[k] = row[k] + c * c2 * m
    labels = None
    if V.labels and W.labels:
        labels = tuple(f"{p}(x){q}" for p in V.labels for q in W.labels)
    return YDModule(A, D, action, coaction, labels)


def verify_yd(V: YDModule, name: str = "yd") -> Report:
    A = V.host
    n, d = A.dim, V.dim
    rep = Report(name)
    basis = [[ONE if k == i else ZERO for k in range(d)] for i in range(d)]

    wit = None
    for i in range(d):
        left: dict = defaultdict(lambda: ZERO)
        right: dict = defaultdict(lambda: ZERO)
        for j, a, c in V.coaction_nz[i]:
            for k, b, c2 in V.coaction_nz[j]:
                left[(k, b, a)] = left[(k, b, a)] + c * c2
            for a1, a2, c2 in A.comult_nz[a]:
                right[(j, a1, a2)] = right[(j, a1, a2)] + c * c2
        if {k: x for k, x in left.items() if x} != {k: x for k, x in right.items() if x}:
            wit = [i]
            break
    rep.add("coaction_coassociative", wit is None, wit)

    wit = None
    for i in range(d):
        v = [ZERO] * d
        for j, a, c in V.coaction_nz[i]:
            v[j] = v[j] + c * A.counit[a]
        if v != basis[i]:
            wit = [i]
            break
    rep.add("coaction_counit", wit is None, wit)

    wit = None
    for i in range(d):
        for a in range(n):
            va = V.act(basis[i], A.basis(a))
            for b in range(n):
                if V.act(va, A.basis(b)) != V.act(basis[i], A.mul(A.basis(a), A.basis(b))):
                    wit = [i, a, b]
                    break
            if wit:
                break
        if wit:
            break
    rep.add("action_associative", wit is None, wit)

    wit = next(([i] for i in range(d) if V.act(basis[i], A.one()) != basis[i]), None)
    rep.add("action_unit", wit is None, wit)

    # rho(v <| a) = v0 <| a2 (x) S(a1) v1 a3
    S_basis = [A.S(A.basis(a)) for a in range(n)]
    wit = None
    for i in range(d):
        for a in range(n):
            lhs = V.coact(V.act(basis[i], A.basis(a)))
            rhs: dict = defaultdict(lambda: ZERO)
            for j, x, c in V.coaction_nz[i]:
                ex = A.basis(x)
                for a1, a2, a3, c2 in A.comult3_nz[a]:
                    elem = A.mul(A.mul(S_basis[a1], ex), A.basis(a3))
                    for k, m in V.action_nz[a2][j]:
                        f = c * c2 * m
                        for b, y in enumerate(elem):
                            if y:
                                rhs[(k, b)] = rhs[(k, b)] + f * y
            if lhs != {k: x for k, x in rhs.items() if x}:
                wit = [i, a]
                break
        if wit:
            break
    rep.add("yd_compatibility", wit is None, wit)
    return rep


# -- bimodules -------------------------------------------------------------------


@dataclass(eq=False, repr=False)
class Bimodule:
    """Bimodule with left and right coactions, all as exact sparse matrices.

    ``left`` is None for a right module that only carries the two coactions.
    """

    algebra: HopfAlgebra
    dim: int
    left: list[SparseMatrix] | None
    right: list[SparseMatrix]
    lco: SparseMatrix
    rco: SparseMatrix
    name: str = "M"

    def left_by(self, x: Element) -> SparseMatrix:
        return element_map(self.left, x, self.dim, self.dim)

    def right_by(self, x: Element) -> SparseMatrix:
        return element_map(self.right, x, self.dim, self.dim)

    def act_left(self, x: Element, m: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        out = [ZERO] * self.dim
        for b, c in enumerate(x):
            if c:
                for i, y in enumerate(self.left[b].apply(m)):
                    if y:
                        out[i] = out[i] + c * y
        return out

    def act_right(self, m: Sequence[Cyclotomic], x: Element) -> list[Cyclotomic]:
        out = [ZERO] * self.dim
        for b, c in enumerate(x):
            if c:
                for i, y in enumerate(self.right[b].apply(m)):
                    if y:
                        out[i] = out[i] + c * y
        return out

    def same_structure(self, other: "Bimodule") -> bool:
        return (self.dim == other.dim and self.left == other.left and self.right == other.right
                and self.lco == other.lco and self.rco == other.rco)

    def first_structure_difference(self, other: "Bimodule") -> str | None:
        for key in ("left", "right"):
            for b, (x, y) in enumerate(zip(getattr(self, key), getattr(other, key))):
                if x != y:
                    return f"{key}[{b}]"
        for key in ("lco", "rco"):
            if getattr(self, key) != getattr(other, key):
                return key
        return None


@dataclass(eq=False, repr=False)
class BicovBimodule(Bimodule):
    """The bimodule A (x) V generated by a Yetter-Drinfeld module V."""

    yd: YDModule | None = None

    @property
    def d(self) -> int:
        return self.yd.dim

    @property
    def n(self) -> int:
        return self.algebra.dim

    def index(self, a: int, v: int) -> int:
        return a * self.d + v

    def omega(self, i: int) -> list[Cyclotomic]:
        """Left-invariant basis element w_i = 1 (x) v_i."""
        out = [ZERO] * self.dim
        for x, c in enumerate(self.algebra.unit):
            if c:
                out[x * self.d + i] = c
        return out

    @cached_property
    def R(self) -> list[list[Element]]:
        """Coaction matrix: right coaction of w_i is sum_j w_j (x) R[j][i]."""
        return self.yd.degree_matrix()

    @cached_property
    def right_basis(self) -> Matrix:
        """Columns w_i . e_a in left coordinates, column index i * n + a."""
        cols = []
        for i in range(self.d):
            w = self.omega(i)
            for a in range(self.n):
                cols.append(self.right[a].apply(w))
        return Matrix.from_columns(cols, self.dim)

    @cached_property
    def normal_form_matrix(self) -> Matrix:
        try:
            return inverse(self.right_basis)
        except Exception as exc:  # a failure would contradict freeness as a right module
            raise VerificationError(f"{self.name}: right module is not free on the invariant basis") from exc

    def from_left(self, coeffs: Sequence[Element]) -> list[Cyclotomic]:
        """sum_i b_i . w_i."""
        out = [ZERO] * self.dim
        for i, b in enumerate(coeffs):
            for a, c in enumerate(b):
                if c:
                    out[a * self.d + i] = c
        return out

    def to_left(self, vec: Sequence[Cyclotomic]) -> list[Element]:
        return [[vec[a * self.d + i] for a in range(self.n)] for i in range(self.d)]

    def from_right(self, coeffs: Sequence[Element]) -> list[Cyclotomic]:
        """sum_i w_i . a_i."""
        flat = [c for b in coeffs for c in b]
        return self.right_basis.apply(flat)

    def to_right(self, vec: Sequence[Cyclotomic]) -> list[Element]:
        flat = self.normal_form_matrix.apply(vec)
        n = self.n
        return [flat[i * n:(i + 1) * n] for i in range(self.d)]

    def eta(self, k: int) -> list[Cyclotomic]:
        """Right-invariant element sum_j w_j S(R_jk)."""
        A = self.algebra
        return self.from_right([A.S(self.R[j][k]) for j in range(self.d)])

    def basis_vector(self, idx: int) -> list[Cyclotomic]:
        v = [ZERO] * self.dim
        v[idx] = ONE
        return v


def build_bimodule(A: HopfAlgebra, V: YDModule, name: str = "M", check: bool = True) -> BicovBimodule:
    if V.host is not A and V.host != A:
        raise BimoduleError("YD module lives over a different algebra")
    if check:
        rep = verify_yd(V, f"{name}.yd")
        if not rep.passed:
            bad = rep.failures[0]
            raise BimoduleError(f"YD violation: {bad.id} at {bad.witness}")
    n, d = A.dim, V.dim
    D = n * d
    left = []
    for b in range(n):
        cols = []
        for a in range(n):
            for v in range(d):
                cols.append({k * d + v: c for k, c in A.mult_nz[b][a]})
        left.append(SparseMatrix(D, D, cols))
    right = []
    for b in range(n):
        cols = []
        for a in range(n):
            for v in range(d):
                acc: dict = defaultdict(lambda: ZERO)
                for b1, b2, c in A.comult_nz[b]:
                    for k, m in A.mult_nz[a][b1]:
                        for w, x in V.action_nz[b2][v]:
                            acc[k * d + w] = acc[k * d + w] + c * m * x
                cols.append({i: x for i, x in acc.items() if x})
        right.append(SparseMatrix(D, D, cols))
    lco_cols, rco_cols = [], []
    for a in range(n):
        for v in range(d):
            lco_cols.append({a1 * D + a2 * d + v: c for a1, a2, c in A.comult_nz[a]})
            acc = defaultdict(lambda: ZERO)
            for a1, a2, c in A.comult_nz[a]:
                for j, x, c2 in V.coaction_nz[v]:
                    for k, m in A.mult_nz[a2][x]:
                        idx = (a1 * d + j) * n + k
                        acc[idx] = acc[idx] + c * c2 * m
            rco_cols.append({i: x for i, x in acc.items() if x})
    return BicovBimodule(A, D, left, right, SparseMatrix(n * D, D, lco_cols), SparseMatrix(D * n, D, rco_cols),
                         name, V)


# -- elements in normal form -----------------------------------------------------


@dataclass(frozen=True, eq=False, repr=False)
class BimElement:
    """sum_i w_i . a_i stored by its right coefficients."""

    host: BicovBimodule
    coeffs: tuple[tuple[Cyclotomic, ...], ...]

    def vector(self) -> list[Cyclotomic]:
        return self.host.from_right(self.coeffs)

    def left_coeffs(self) -> list[Element]:
        return self.host.to_left(self.vector())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BimElement):
            return NotImplemented
        return self.host is other.host and self.coeffs == other.coeffs

    __hash__ = object.__hash__


def normal_form(M: BicovBimodule, vec: Sequence[Cyclotomic]) -> BimElement:
    return BimElement(M, tuple(tuple(c) for c in M.to_right(vec)))


def left_coeffs(M: BicovBimodule, x: BimElement | Sequence[Cyclotomic]) -> list[Element]:
    vec = x.vector() if isinstance(x, BimElement) else x
    return M.to_left(vec)


# -- tensor products -------------------------------------------------------------


@dataclass(eq=False, repr=False)
class TensorProduct:
    """M (x)_A N realised as the bimodule of the YD tensor product."""

    first: BicovBimodule
    second: BicovBimodule
    product: BicovBimodule

    def pair(self, m: Sequence[Cyclotomic], x: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        """Image of m (x)_A x: move the A-part of x across by the right action of M."""
        M, N = self.first, self.second
        dN = N.d
        out = [ZERO] * self.product.dim
        dP = self.product.d
        m_nz = [(i, c) for i, c in enumerate(m) if c]
        for j, y in enumerate(x):
            if not y:
                continue
            b, w = divmod(j, dN)
            cols = M.right[b].columns
            for i, c in m_nz:
                for k, r in cols[i].items():
                    a2, v2 = divmod(k, M.d)
                    idx = a2 * dP + v2 * dN + w
                    out[idx] = out[idx] + c * y * r
        return out

    def omega_pair(self, i: int, j: int) -> list[Cyclotomic]:
        return self.product.omega(i * self.second.d + j)


def tensor_product(M: BicovBimodule, N: BicovBimodule, name: str | None = None) -> TensorProduct:
    if M.algebra is not N.algebra and M.algebra != N.algebra:
        raise BimoduleError("tensor product over different algebras")
    P = build_bimodule(M.algebra, tensor_yd(M.yd, N.yd), name or f"{M.name}(x){N.name}", check=False)
    return TensorProduct(M, N, P)


@dataclass(frozen=True, eq=False, repr=False)
class TensorSqElement:
    """sum_{i,j} (w_i (x) w_j) . a_ij in a tensor square."""

    host: TensorProduct
    coeffs: tuple[tuple[Cyclotomic, ...], ...]  # flattened index i * d + j

    def vector(self) -> list[Cyclotomic]:
        return self.host.product.from_right(self.coeffs)

    def coefficient(self, i: int, j: int) -> tuple[Cyclotomic, ...]:
        return self.coeffs[i * self.host.second.d + j]

    @classmethod
    def from_vector(cls, host: TensorProduct, vec: Sequence[Cyclotomic]) -> "TensorSqElement":
        return cls(host, tuple(tuple(c) for c in host.product.to_right(vec)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSqElement):
            return NotImplemented
        return self.host is other.host and self.coeffs == other.coeffs

    __hash__ = object.__hash__


# -- verification ----------------------------------------------------------------


def _witness(lhs: SparseMatrix, rhs: SparseMatrix, prefix: list) -> list | None:
    diff = lhs.first_difference(rhs)
    return None if diff is None else prefix + [diff[1]]


def verify_bicovariance(M: Bimodule, name: str | None = None) -> Report:
    """Module, comodule, covariance and mixed compatibility identities; witness = [basis of A..., column]."""
    A = M.algebra
    am = algebra_maps(A)
    n, D = A.dim, M.dim
    I = SparseMatrix.identity(D)
    rep = Report(name or M.name)

    def first_bad(pairs):
        for prefix, lhs, rhs in pairs:
            w = _witness(lhs, rhs, prefix)
            if w is not None:
                return w
        return None

    def mult_expand(maps, a, b):
        return sparse_sum((maps[k].scale(c) for k, c in A.mult_nz[a][b]), D, D)

    has_left = M.left is not None
    if has_left:
        w = first_bad(([a, b], M.left[a] @ M.left[b], mult_expand(M.left, a, b))
                      for a in range(n) for b in range(n))
        if w is None and M.left_by(A.one()) != I:
            w = ["unit"]
        rep.add("left_module", w is None, w)

    w = first_bad(([a, b], M.right[b] @ M.right[a], mult_expand(M.right, a, b)) for a in range(n) for b in range(n))
    if w is None and M.right_by(A.one()) != I:
        w = ["unit"]
    rep.add("right_module", w is None, w)

    if has_left:
        w = first_bad(([a, b], M.left[a] @ M.right[b], M.right[b] @ M.left[a])
                      for a in range(n) for b in range(n))
        rep.add("bimodule", w is None, w)

    lhs = sparse_kron(am.delta, I) @ M.lco
    rhs = sparse_kron(am.ident, M.lco) @ M.lco
    w = _witness(lhs, rhs, [])
    if w is None:
        w = _witness(sparse_kron(am.eps, I) @ M.lco, I, ["counit"])
    rep.add("left_comodule", w is None, w)

    lhs = sparse_kron(M.rco, am.ident) @ M.rco
    rhs = sparse_kron(I, am.delta) @ M.rco
    w = _witness(lhs, rhs, [])
    if w is None:
        w = _witness(sparse_kron(I, am.eps) @ M.rco, I, ["counit"])
    rep.add("right_comodule", w is None, w)

    def delta_terms(a, f, g):
        return sparse_sum((sparse_kron(f(a1), g(a2)).scale(c) for a1, a2, c in A.comult_nz[a]),
                          f(0).rows * g(0).rows, f(0).cols * g(0).cols)

    w = first_bad(
        [([a], M.lco @ M.left[a], delta_terms(a, lambda k: am.lmul[k], lambda k: M.left[k]) @ M.lco)
         for a in range(n) if has_left]
        + [([a], M.lco @ M.right[a], delta_terms(a, lambda k: am.rmul[k], lambda k: M.right[k]) @ M.lco)
           for a in range(n)])
    rep.add("left_covariance", w is None, w)

    w = first_bad(
        [([a], M.rco @ M.left[a], delta_terms(a, lambda k: M.left[k], lambda k: am.lmul[k]) @ M.rco)
         for a in range(n) if has_left]
        + [([a], M.rco @ M.right[a], delta_terms(a, lambda k: M.right[k], lambda k: am.rmul[k]) @ M.rco)
           for a in range(n)])
    rep.add("right_covariance", w is None, w)

    lhs = sparse_kron(am.ident, M.rco) @ M.lco
    rhs = sparse_kron(M.lco, am.ident) @ M.rco
    w = _witness(lhs, rhs, [])
    rep.add("mixed_compatibility", w is None, w)
    return rep


def _unit_tensor_left(A: HopfAlgebra, D: int) -> SparseMatrix:
    """m -> 1 (x) m."""
    am = algebra_maps(A)
    return sparse_kron(am.unit, SparseMatrix.identity(D))


def _unit_tensor_right(A: HopfAlgebra, D: int) -> SparseMatrix:
    am = algebra_maps(A)
    return sparse_kron(SparseMatrix.identity(D), am.unit)


def invariant_subspace(M: Bimodule, side: str) -> Matrix:
    """Basis (as columns) of the left- or right-invariant elements."""
    if side == "left":
        diff = M.lco + _unit_tensor_left(M.algebra, M.dim).scale(-1)
    elif side == "right":
        diff = M.rco + _unit_tensor_right(M.algebra, M.dim).scale(-1)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return kernel(diff.to_matrix())


def left_invariants(M: BicovBimodule) -> list[list[Cyclotomic]]:
    A = M.algebra
    out = []
    for i in range(M.d):
        w = M.omega(i)
        expected = [ZERO] * (A.dim * M.dim)
        for x, c in enumerate(A.unit):
            if c:
                for k, y in enumerate(w):
                    if y:
                        expected[x * M.dim + k] = c * y
        if M.lco.apply(w) != expected:
            raise VerificationError(f"{M.name}: w_{i} is not left-invariant")
        out.append(w)
    return out


def right_invariants(M: BicovBimodule) -> list[list[Cyclotomic]]:
    A = M.algebra
    unit_r = _unit_tensor_right(A, M.dim)
    out = []
    for k in range(M.d):
        eta = M.eta(k)
        if M.rco.apply(eta) != unit_r.apply(eta):
            raise VerificationError(f"{M.name}: eta_{k} is not right-invariant")
        out.append(eta)
    if out and rank(Matrix.from_columns(out, M.dim)) != M.d:
        raise VerificationError(f"{M.name}: right-invariant elements are dependent")
    return out


def check_r_identities(M: BicovBimodule) -> Report:
    """Comatrix identities for R and its antipode inverse relations."""
    A = M.algebra
    d = M.d
    R = M.R
    rep = Report(f"{M.name}.R")
    wit = None
    for i in range(d):
        for j in range(d):
            lhs = A.coproduct(R[i][j])
            rhs: dict = defaultdict(lambda: ZERO)
            for k in range(d):
                for a, x in enumerate(R[i][k]):
                    if x:
                        for b, y in enumerate(R[k][j]):
                            if y:
                                rhs[(a, b)] = rhs[(a, b)] + x * y
            if lhs != {key: v for key, v in rhs.items() if v} or A.eps(R[i][j]) != (ONE if i == j else ZERO):
                wit = [i, j]
                break
        if wit:
            break
    rep.add("comatrix", wit is None, wit)
    wit = None
    for i in range(d):
        for j in range(d):
            s1 = A.zero()
            s2 = A.zero()
            for k in range(d):
                s1 = [p + q for p, q in zip(s1, A.mul(A.S(R[i][k]), R[k][j]))]
                s2 = [p + q for p, q in zip(s2, A.mul(R[i][k], A.S(R[k][j])))]
            target = A.one() if i == j else A.zero()
            if s1 != target or s2 != target:
                wit = [i, j]
                break
        if wit:
            break
    rep.add("antipode_inverse", wit is None, wit)
    return rep


def check_covariant_map(T: SparseMatrix | Matrix, M: Bimodule, N: Bimodule, which: str = "bi",
                        linear: str | None = None, name: str = "map") -> Report:
    """Covariance of T: M -> N (``which`` in left/right/bi); optionally A-linearity (left/right/both)."""
    if isinstance(T, Matrix):
        T = SparseMatrix.from_matrix(T)
    if T.shape != (N.dim, M.dim):
        raise BimoduleError(f"map of shape {T.shape} between spaces of dimension {M.dim} and {N.dim}")
    A = M.algebra
    am = algebra_maps(A)
    rep = Report(name)
    if which in ("left", "bi"):
        w = _witness(N.lco @ T, sparse_kron(am.ident, T) @ M.lco, [])
        rep.add("left_covariant", w is None, w)
    if which in ("right", "bi"):
        w = _witness(N.rco @ T, sparse_kron(T, am.ident) @ M.rco, [])
        rep.add("right_covariant", w is None, w)
    if which not in ("left", "right", "bi"):
        raise ValueError(f"which must be left, right or bi, not {which!r}")
    if linear in ("left", "both"):
        w = None
        for a in range(A.dim):
            w = _witness(T @ M.left[a], N.left[a] @ T, [a])
            if w:
                break
        rep.add("left_linear", w is None, w)
    if linear in ("right", "both"):
        w = None
        for a in range(A.dim):
            w = _witness(T @ M.right[a], N.right[a] @ T, [a])
            if w:
                break
        rep.add("right_linear", w is None, w)
    return rep
