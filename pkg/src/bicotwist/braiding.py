"""The canonical braiding on M (x)_A M that swaps left- and right-invariant elements."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .bicovariant import BicovBimodule, TensorProduct, TensorSqElement, check_covariant_map, tensor_product
from .linalg import Matrix, SparseMatrix, is_invertible, kernel, rank, solve, sparse_kron
from .report import Report, VerificationError
from .scalars import ONE, ZERO, Cyclotomic


@dataclass(eq=False, repr=False)
class Braiding:
    """sigma(w_i (x) w_j) = sum_{k,l} coeffs[k*d+l, i*d+j] w_k (x) w_l with scalar coefficients."""

    host: BicovBimodule
    square: TensorProduct
    coeffs: Matrix

    @property
    def d(self) -> int:
        return self.host.d

    def coefficient(self, i: int, j: int, k: int, l: int) -> Cyclotomic:
        d = self.d
        return self.coeffs.data[k * d + l][i * d + j]

    @cached_property
    def full(self) -> SparseMatrix:
        """The map on the whole tensor square in left coordinates: id_A (x) coeffs."""
        return sparse_kron(SparseMatrix.identity(self.host.n), SparseMatrix.from_matrix(self.coeffs))

    def __call__(self, vec):
        return self.full.apply(vec)


def _scalar_coefficients(M: BicovBimodule, P: BicovBimodule, vec, what: str) -> list[Cyclotomic]:
    A = M.algebra
    out = []
    for c in P.to_right(vec):
        if not A.is_scalar(c):
            raise VerificationError(f"{M.name}: {what} has a non-scalar coefficient {A.format(c)}")
        out.append(A.eps(c))
    return out


def construct_braiding(M: BicovBimodule, square: TensorProduct | None = None) -> Braiding:
    """sigma(w_i (x) w_j) = sum_k sigma(w_i (x) eta_k) R_kj = sum_k (eta_k (x) w_i) R_kj."""
    T = square or tensor_product(M, M)
    P = T.product
    d = M.d
    etas = [M.eta(k) for k in range(d)]
    cols = []
    for i in range(d):
        w_i = M.omega(i)
        flipped = [T.pair(etas[k], w_i) for k in range(d)]
        for j in range(d):
            acc = [ZERO] * P.dim
            for k in range(d):
                for idx, x in enumerate(P.act_right(flipped[k], M.R[k][j])):
                    if x:
                        acc[idx] = acc[idx] + x
            cols.append(_scalar_coefficients(M, P, acc, f"sigma(w_{i} (x) w_{j})"))
    return Braiding(M, T, Matrix.from_columns(cols, d * d))


def apply_braiding(b: Braiding, x: TensorSqElement) -> TensorSqElement:
    if x.host is not b.square:
        raise ValueError("element does not live in the braiding's tensor square")
    return TensorSqElement.from_vector(b.square, b.full.apply(x.vector()))


def braiding_squared_is_identity(b: Braiding) -> bool:
    return braiding_square_witness(b) is None


def braiding_square_witness(b: Braiding) -> list[int] | None:
    """A basis pair (i, j) with sigma^2(w_i (x) w_j) != w_i (x) w_j, or None."""
    sq = b.coeffs @ b.coeffs
    diff = sq.first_difference(Matrix.identity(sq.rows))
    return None if diff is None else list(divmod(diff[1], b.d))


# -- uniqueness ------------------------------------------------------------------


def _defining_system(M: BicovBimodule, T: TensorProduct) -> Matrix:
    """Matrix C of Y -> (sum_{jl} c^{ik}_{jl} Y_jl)_{ik}, with c the left coefficients of w_i (x) eta_k."""
    A = M.algebra
    n, d = A.dim, M.d
    size = n * d * d
    C = Matrix.zeros(size, size)
    for i in range(d):
        for k in range(d):
            lc = T.product.to_left(T.pair(M.omega(i), M.eta(k)))
            r0 = (i * d + k) * n
            for jl, c in enumerate(lc):
                for a in range(n):
                    prod = A.mul(c, A.basis(a))
                    for a2, x in enumerate(prod):
                        if x:
                            C.data[r0 + a2][jl * n + a] = x
    return C


def uniqueness_dimension(M: BicovBimodule, square: TensorProduct | None = None) -> int:
    """Dimension of the space of left-linear maps killing every w_i (x) eta_k.

    Zero means the defining property pins the braiding down (a fortiori among
    bimodule maps)."""
    T = square or tensor_product(M, M)
    C = _defining_system(M, T)
    d = M.d
    return d * d * (C.cols - rank(C))


def braiding_by_linear_system(M: BicovBimodule, square: TensorProduct | None = None) -> SparseMatrix:
    """Independent construction: solve sigma(w_i (x) eta_k) = eta_k (x) w_i for left-linear sigma."""
    T = square or tensor_product(M, M)
    P = T.product
    A = M.algebra
    n, d = A.dim, M.d
    C = _defining_system(M, T)
    dd = d * d
    B = Matrix.zeros(n * dd, dd)
    for i in range(d):
        for k in range(d):
            target = T.pair(M.eta(k), M.omega(i))
            r0 = (i * d + k) * n
            for idx, x in enumerate(target):
                if x:
                    a, p = divmod(idx, dd)
                    B.data[r0 + a][p] = x
    sol = solve(C, B)
    if not sol.exists:
        raise VerificationError(f"{M.name}: no left-linear map has the defining property")
    Y = sol.solution
    # column (a, jl) of the full map is e_a . sigma(w_j (x) w_l)
    cols = []
    for a in range(n):
        for jl in range(dd):
            image = [ZERO] * P.dim
            for b in range(n):
                for p in range(dd):
                    y = Y.data[jl * n + b][p]
                    if y:
                        image[b * dd + p] = y
            cols.append({i: x for i, x in enumerate(P.act_left(A.basis(a), image)) if x})
    return SparseMatrix(P.dim, P.dim, cols)


# -- verification ----------------------------------------------------------------


def braid_maps(b: Braiding) -> tuple[SparseMatrix, SparseMatrix]:
    """sigma (x) id and id (x) sigma on M (x) M (x) M in left coordinates over w_i (x) w_j (x) w_k."""
    d, n = b.d, b.host.n
    s = SparseMatrix.from_matrix(b.coeffs)
    Id = SparseMatrix.identity(d)
    In = SparseMatrix.identity(n)
    return sparse_kron(In, sparse_kron(s, Id)), sparse_kron(In, sparse_kron(Id, s))


def verify_braiding(b: Braiding, name: str | None = None) -> Report:
    M, T = b.host, b.square
    P = T.product
    d = M.d
    rep = Report(name or f"{M.name}.braiding")

    wit = None
    etas = [M.eta(k) for k in range(d)]
    for i in range(d):
        w_i = M.omega(i)
        for k in range(d):
            if b.full.apply(T.pair(w_i, etas[k])) != T.pair(etas[k], w_i):
                wit = [i, k]
                break
        if wit:
            break
    rep.add("defining_property", wit is None, wit)

    cov = check_covariant_map(b.full, P, P, "bi", "both")
    for c in cov.checks:
        rep.add(c.id, c.ok, c.witness)

    rep.add("invertible", is_invertible(b.coeffs))

    s12, s23 = braid_maps(b)
    lhs = s23 @ s12 @ s23
    rhs = s12 @ s23 @ s12
    diff = lhs.first_difference(rhs)
    wit = None
    if diff is not None:
        a, rest = divmod(diff[1], d ** 3)
        wit = [a, rest // (d * d), (rest // d) % d, rest % d]
    rep.add("braid_equation", wit is None, wit)

    dim = uniqueness_dimension(M, T)
    rep.add("uniqueness", dim == 0, None, f"solution space dimension {dim}")
    return rep
