"""Exact dense linear algebra over cyclotomic scalars.

Matrices are stored densely (row-major lists of :class:`Cyclotomic`), but
products and applications skip zero entries, which keeps the structure maps
of group-type Hopf algebras cheap to multiply.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Cyclotomic, scalar


class LinalgError(ValueError):
    pass


class Matrix:
    __slots__ = ("rows", "cols", "data", "__dict__")

    def __init__(self, data: Sequence[Sequence], rows: int | None = None, cols: int | None = None):
        data = [[scalar(x) for x in row] for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise LinalgError("ragged or mis-sized matrix data")
        self.rows, self.cols, self.data = rows, cols, data

    @classmethod
    def _raw(cls, data: list[list[Cyclotomic]], rows: int, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m.data = rows, cols, data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        cols = len(columns)
        data = [[ZERO] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise LinalgError("column length mismatch")
            for i, x in enumerate(col):
                if x:
                    data[i][j] = scalar(x)
        return cls._raw(data, rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> list[Cyclotomic]:
        return [self.data[i][j] for i in range(self.rows)]

    def row(self, i: int) -> list[Cyclotomic]:
        return list(self.data[i])

    def columns(self) -> list[list[Cyclotomic]]:
        return [self.column(j) for j in range(self.cols)]

    @cached_property
    def col_nonzeros(self) -> list[list[tuple[int, Cyclotomic]]]:
        out: list[list[tuple[int, Cyclotomic]]] = [[] for _ in range(self.cols)]
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                if x:
                    out[j].append((i, x))
        return out

    # -- algebra ----------------------------------------------------------------

    def apply(self, vec: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        if len(vec) != self.cols:
            raise LinalgError(f"vector of length {len(vec)} for a {self.shape} matrix")
        out = [ZERO] * self.rows
        nz = self.col_nonzeros
        for j, x in enumerate(vec):
            if x:
                for i, a in nz[j]:
                    out[i] = out[i] + a * x
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        mine = self.col_nonzeros
        for j, col in enumerate(other.col_nonzeros):
            for k, b in col:
                for i, a in mine[k]:
                    out[i][j] = out[i][j] + a * b
        return Matrix._raw(out, self.rows, other.cols)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.rows, self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.rows, self.cols
        )

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix._raw([[c * a for a in r] for r in self.data], self.rows, self.cols)

    def transpose(self) -> "Matrix":
        return Matrix._raw([list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                           self.cols, self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.data, other.data) for a, b in zip(r, s)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        self._same_shape(other)
        for i, (r, s) in enumerate(zip(self.data, other.data)):
            for j, (a, b) in enumerate(zip(r, s)):
                if a != b:
                    return i, j
        return None

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.data]

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self.data]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index (i, k) of the result is i * b.rows + k."""
    out = Matrix.zeros(a.rows * b.rows, a.cols * b.cols)
    for j, col in enumerate(a.col_nonzeros):
        for i, x in col:
            for l, bcol in enumerate(b.col_nonzeros):
                for k, y in bcol:
                    out.data[i * b.rows + k][j * b.cols + l] = x * y
    return out


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = Matrix.zeros(rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out.data[r0 + i][c0 + j] = b.data[i][j]
        r0 += b.rows
        c0 += b.cols
    return out


# -- elimination -------------------------------------------------------------------


def rref(a: Matrix) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting in column order."""
    rows = [list(r) for r in a.data]
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        piv = next((i for i in range(r, a.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        prow = [x * inv if x else x for x in rows[r]]
        rows[r] = prow
        nz = [k for k in range(c, a.cols) if prow[k]]
        for i in range(a.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for k in nz:
                    ri[k] = ri[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def kernel(a: Matrix) -> Matrix:
    """Null-space basis as the columns of the returned matrix (possibly 0 columns)."""
    rows, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            if rows[i][f]:
                v[p] = -rows[i][f]
        basis.append(v)
    if not basis:
        return Matrix.zeros(a.cols, 0)
    return Matrix.from_columns(basis, a.cols)


@dataclass(frozen=True)
class Solution:
    solution: Matrix | None
    exists: bool


def solve(a: Matrix, b: Matrix) -> Solution:
    """Particular solution of a @ x = b, verified exactly before returning."""
    if a.rows != b.rows:
        raise LinalgError(f"shape mismatch {a.shape} vs rhs {b.shape}")
    aug = Matrix._raw([list(ra) + list(rb) for ra, rb in zip(a.data, b.data)], a.rows, a.cols + b.cols)
    rows, pivots = rref(aug)
    if any(p >= a.cols for p in pivots):
        return Solution(None, False)
    x = Matrix.zeros(a.cols, b.cols)
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            x.data[p][j] = rows[i][a.cols + j]
    if a @ x != b:
        raise LinalgError("internal: solve produced a non-solution")
    return Solution(x, True)


def inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise LinalgError("inverse of a non-square matrix")
    sol = solve(a, Matrix.identity(a.rows))
    if not sol.exists:
        raise LinalgError("matrix is singular")
    return sol.solution


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


def extend_to_basis(cols: Matrix) -> Matrix:
    """Append standard basis vectors (lowest index first) until the columns span everything.

    The given columns must be independent."""
    n = cols.rows
    aug = Matrix._raw([list(r) + [ONE if i == k else ZERO for k in range(n)] for i, r in enumerate(cols.data)],
                      n, cols.cols + n)
    _, pivots = rref(aug)
    if pivots[:cols.cols] != list(range(cols.cols)):
        raise LinalgError("columns are not independent")
    chosen = cols.columns()
    for p in pivots[cols.cols:]:
        e = [ZERO] * n
        e[p - cols.cols] = ONE
        chosen.append(e)
    return Matrix.from_columns(chosen, n)


# -- tensors -----------------------------------------------------------------------


class Tensor3:
    """Order-3 array of scalars, T[i][j][k]."""

    def __init__(self, data, dims: tuple[int, int, int] | None = None):
        data = [[[scalar(x) for x in r] for r in plane] for plane in data]
        if dims is None:
            d1 = len(data)
            d2 = len(data[0]) if d1 else 0
            d3 = len(data[0][0]) if d2 else 0
            dims = (d1, d2, d3)
        d1, d2, d3 = dims
        if len(data) != d1 or any(len(p) != d2 or any(len(r) != d3 for r in p) for p in data):
            raise LinalgError("inconsistent Tensor3 shape")
        self.dims = dims
        self.data = data

    @classmethod
    def zeros(cls, d1: int, d2: int, d3: int) -> "Tensor3":
        t = cls.__new__(cls)
        t.dims = (d1, d2, d3)
        t.data = [[[ZERO] * d3 for _ in range(d2)] for _ in range(d1)]
        return t

    def __getitem__(self, i):
        return self.data[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and all(
            a == b for p, q in zip(self.data, other.data) for r, s in zip(p, q) for a, b in zip(r, s)
        )

    __hash__ = None  # type: ignore[assignment]

    def nonzeros(self, i: int) -> list[tuple[int, int, Cyclotomic]]:
        return [(j, k, x) for j, r in enumerate(self.data[i]) for k, x in enumerate(r) if x]

    def to_json(self):
        return [[[x.to_json() for x in r] for r in p] for p in self.data]


def _as_array(obj):
    """Nested-list view plus shape for Matrix, Tensor3, vectors and scalars."""
    if isinstance(obj, Matrix):
        return obj.data, (obj.rows, obj.cols)
    if isinstance(obj, Tensor3):
        return obj.data, obj.dims
    if isinstance(obj, (list, tuple)):
        shape = []
        cur = obj
        while isinstance(cur, (list, tuple)):
            shape.append(len(cur))
            cur = cur[0] if cur else None
        return obj, tuple(shape)
    return obj, ()


def _lookup(arr, idx):
    for i in idx:
        arr = arr[i]
    return arr


def contract(pattern: str, *operands):
    """Einstein-style contraction, e.g. ``contract("ijk,i,j->k", m, x, y)``.

    Returns a scalar, a list (order 1), a Matrix (order 2) or a Tensor3 (order 3).
    """
    if "->" not in pattern:
        raise LinalgError("pattern must contain '->'")
    lhs, out = pattern.replace(" ", "").split("->")
    specs = lhs.split(",")
    if len(specs) != len(operands):
        raise LinalgError(f"{len(specs)} index groups for {len(operands)} operands")
    sizes: dict[str, int] = {}
    arrays = []
    for spec, op in zip(specs, operands):
        arr, shape = _as_array(op)
        if len(spec) != len(shape):
            raise LinalgError(f"index group {spec!r} does not match operand of order {len(shape)}")
        for name, n in zip(spec, shape):
            if sizes.setdefault(name, n) != n:
                raise LinalgError(f"index {name!r} has mismatched dimensions")
        arrays.append(arr)
    for name in out:
        if name not in sizes:
            raise LinalgError(f"dangling output index {name!r}")
    if len(set(out)) != len(out):
        raise LinalgError("repeated output index")
    summed = [n for n in sizes if n not in out]
    out_shape = tuple(sizes[n] for n in out)
    result: dict[tuple, Cyclotomic] = {}
    for out_idx in itertools.product(*(range(s) for s in out_shape)):
        env = dict(zip(out, out_idx))
        total = ZERO
        for sum_idx in itertools.product(*(range(sizes[n]) for n in summed)):
            env.update(zip(summed, sum_idx))
            term = ONE
            for spec, arr in zip(specs, arrays):
                x = scalar(_lookup(arr, [env[c] for c in spec]))
                if not x:
                    term = ZERO
                    break
                term = term * x
            if term:
                total = total + term
        result[out_idx] = total
    if not out:
        return result[()]
    if len(out) == 1:
        return [result[(i,)] for i in range(out_shape[0])]
    if len(out) == 2:
        return Matrix._raw([[result[(i, j)] for j in range(out_shape[1])] for i in range(out_shape[0])],
                           *out_shape)
    if len(out) == 3:
        t = Tensor3.zeros(*out_shape)
        for (i, j, k), x in result.items():
            t.data[i][j][k] = x
        return t
    raise LinalgError("outputs of order > 3 are not supported")


def vec_is_zero(v: Iterable[Cyclotomic]) -> bool:
    return not any(v)


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_scale(c, v):
    c = scalar(c)
    return [c * x for x in v]


# -- sparse column maps ------------------------------------------------------------


class SparseMatrix:
    """Column-sparse matrix: ``columns[j]`` maps row index to a nonzero scalar."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns: list[dict[int, Cyclotomic]]):
        if len(columns) != cols:
            raise LinalgError("column count mismatch")
        self.rows, self.cols, self.columns = rows, cols, columns

    @classmethod
    def from_matrix(cls, m: Matrix) -> "SparseMatrix":
        return cls(m.rows, m.cols, [dict(col) for col in m.col_nonzeros])

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_matrix(self) -> Matrix:
        out = Matrix.zeros(self.rows, self.cols)
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                out.data[i][j] = x
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        mine = self.columns
        out = []
        for col in other.columns:
            acc: dict[int, Cyclotomic] = {}
            for k, b in col.items():
                for i, a in mine[k].items():
                    acc[i] = acc[i] + a * b if i in acc else a * b
            out.append({i: x for i, x in acc.items() if x})
        return SparseMatrix(self.rows, other.cols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} + {other.shape}")
        out = []
        for c1, c2 in zip(self.columns, other.columns):
            acc = dict(c1)
            for i, x in c2.items():
                acc[i] = acc[i] + x if i in acc else x
            out.append({i: x for i, x in acc.items() if x})
        return SparseMatrix(self.rows, self.cols, out)

    def scale(self, c) -> "SparseMatrix":
        c = scalar(c)
        if not c:
            return SparseMatrix(self.rows, self.cols, [{} for _ in range(self.cols)])
        return SparseMatrix(self.rows, self.cols, [{i: c * x for i, x in col.items()} for col in self.columns])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def first_difference(self, other: "SparseMatrix") -> tuple[int, int] | None:
        """(row, column) of the first entry where the matrices differ, column-major."""
        for j, (c1, c2) in enumerate(zip(self.columns, other.columns)):
            if c1 != c2:
                i = min(i for i in set(c1) | set(c2) if c1.get(i, ZERO) != c2.get(i, ZERO))
                return i, j
        return None

    def apply(self, vec: Sequence[Cyclotomic]) -> list[Cyclotomic]:
        out = [ZERO] * self.rows
        for j, x in enumerate(vec):
            if x:
                for i, a in self.columns[j].items():
                    out[i] = out[i] + a * x
        return out


def sparse_sum(terms: Iterable[SparseMatrix], rows: int, cols: int) -> SparseMatrix:
    acc = SparseMatrix(rows, cols, [{} for _ in range(cols)])
    for t in terms:
        acc = acc + t
    return acc


def sparse_kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product with the same index convention as :func:`kron`."""
    out = []
    for ca in a.columns:
        for cb in b.columns:
            out.append({i * b.rows + k: x * y for i, x in ca.items() for k, y in cb.items()})
    return SparseMatrix(a.rows * b.rows, a.cols * b.cols, out)
