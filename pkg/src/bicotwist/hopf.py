"""Finite-dimensional Hopf algebras as structure tensors, and functionals on A (x) A.

Basis elements are indexed ``0..n-1``; an element of ``A`` is a list of ``n``
scalars.  Conventions::

    e_i e_j   = sum_k mult[i][j][k] e_k
    Delta(e_i) = sum_{j,k} comult[i][j][k] e_j (x) e_k
    S(e_j)    = sum_i antipode[i, j] e_i
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .linalg import Matrix, Tensor3, is_invertible, solve
from .report import Report
from .scalars import ONE, ZERO, Cyclotomic, scalar

Element = list  # list[Cyclotomic] of length dim


class HopfError(ValueError):
    pass


class GroupError(HopfError):
    pass


# -- groups ------------------------------------------------------------------------


@dataclass(frozen=True)
class Group:
    """Finite group given by its multiplication table on indices ``0..n-1``."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    # abelian presentation: element label -> exponents over cyclic factors
    cyclic_orders: tuple[int, ...] | None = None
    exponents: tuple[tuple[int, ...], ...] | None = None

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @cached_property
    def identity(self) -> int:
        return _group_identity(self.table)

    def inverse(self, g: int) -> int:
        return next(h for h in range(self.order) if self.table[g][h] == self.identity)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"unknown group element {label!r}") from None

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[g][h] == self.table[h][g] for g in range(n) for h in range(n))


def _group_identity(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            return e
    raise GroupError("identity: no two-sided identity element")


def check_group_table(table: Sequence[Sequence[int]]) -> None:
    """Raise :class:`GroupError` naming the first failed group axiom."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise GroupError("closure: table is not square")
    for r in table:
        for x in r:
            if not isinstance(x, int) or not 0 <= x < n:
                raise GroupError(f"closure: entry {x!r} out of range")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise GroupError(f"associativity fails at ({i},{j},{k})")
    e = _group_identity(table)
    for g in range(n):
        if not any(table[g][h] == e and table[h][g] == e for h in range(n)):
            raise GroupError(f"inverses: element {g} has no inverse")


def make_group(table, labels=None, cyclic_orders=None, exponents=None) -> Group:
    table = tuple(tuple(int(x) for x in r) for r in table)
    check_group_table(table)
    if labels is None:
        labels = tuple(f"g{i}" for i in range(len(table)))
    return Group(tuple(labels), table,
                 tuple(cyclic_orders) if cyclic_orders else None,
                 tuple(tuple(e) for e in exponents) if exponents else None)


def cyclic_group(m: int, name: str = "u") -> Group:
    labels = ["e"] + [name if k == 1 else f"{name}{k}" for k in range(1, m)]
    table = [[(i + j) % m for j in range(m)] for i in range(m)]
    return make_group(table, labels, (m,), [(k,) for k in range(m)])


def klein_four() -> Group:
    # element (a1, a2) has index a1 + 2*a2
    labels = ["e", "a", "b", "ab"]
    exps = [(0, 0), (1, 0), (0, 1), (1, 1)]
    table = [[(exps[i][0] + exps[j][0]) % 2 + 2 * ((exps[i][1] + exps[j][1]) % 2) for j in range(4)]
             for i in range(4)]
    return make_group(table, labels, (2, 2), exps)


def symmetric_group_3() -> Group:
    """S_3 with c = (0 1 2), t = (0 1); elements e, c, c2, t, tc, tc2."""
    c = (1, 2, 0)
    t = (1, 0, 2)
    e = (0, 1, 2)

    def compose(p, q):  # (p q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(3))

    c2 = compose(c, c)
    perms = [e, c, c2, t, compose(t, c), compose(t, c2)]
    labels = ["e", "c", "c2", "t", "tc", "tc2"]
    table = [[perms.index(compose(p, q)) for q in perms] for p in perms]
    return make_group(table, labels)


BUILTIN_GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3, "c"),
    "Z4": lambda: cyclic_group(4),
    "Z2xZ2": klein_four,
    "S3": symmetric_group_3,
}


def builtin_group(name: str) -> Group:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown built-in group {name!r}") from None


# -- Hopf algebras -----------------------------------------------------------------


@dataclass(frozen=True, eq=False, repr=False)
class HopfAlgebra:
    labels: tuple[str, ...]
    mult: Tensor3
    unit: tuple[Cyclotomic, ...]
    comult: Tensor3
    counit: tuple[Cyclotomic, ...]
    antipode: Matrix
    order: int = 1
    group: Group | None = field(default=None, compare=False)
    kind: str = "custom"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (self.mult == other.mult and list(self.unit) == list(other.unit)
                and self.comult == other.comult and list(self.counit) == list(other.counit)
                and self.antipode == other.antipode)

    __hash__ = object.__hash__

    # -- sparse views (cached) --------------------------------------------------

    @cached_property
    def mult_nz(self) -> list[list[list[tuple[int, Cyclotomic]]]]:
        n = self.dim
        return [[[(k, x) for k, x in enumerate(self.mult[i][j]) if x] for j in range(n)] for i in range(n)]

    @cached_property
    def comult_nz(self) -> list[list[tuple[int, int, Cyclotomic]]]:
        return [self.comult.nonzeros(i) for i in range(self.dim)]

    @cached_property
    def comult3_nz(self) -> list[list[tuple[int, int, int, Cyclotomic]]]:
        """(Delta (x) id) Delta(e_i) as (j, k, l, coefficient) terms."""
        out = []
        for i in range(self.dim):
            acc: dict = defaultdict(lambda: ZERO)
            for j, l, c in self.comult_nz[i]:
                for a, b, c2 in self.comult_nz[j]:
                    acc[(a, b, l)] = acc[(a, b, l)] + c * c2
            out.append([(a, b, l, x) for (a, b, l), x in sorted(acc.items()) if x])
        return out

    @cached_property
    def antipode_cols(self) -> list[list[tuple[int, Cyclotomic]]]:
        return self.antipode.col_nonzeros

    # -- element operations -------------------------------------------------------

    def zero(self) -> Element:
        return [ZERO] * self.dim

    def one(self) -> Element:
        return list(self.unit)

    def basis(self, i: int) -> Element:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def element(self, coeffs: dict) -> Element:
        """Element from ``{label or index: scalar}``."""
        v = self.zero()
        for key, c in coeffs.items():
            i = key if isinstance(key, int) else self.labels.index(key)
            v[i] = v[i] + scalar(c)
        return v

    def scalar_element(self, c) -> Element:
        c = scalar(c)
        return [c * u for u in self.unit]

    def mul(self, x: Element, y: Element) -> Element:
        out = [ZERO] * self.dim
        nz = self.mult_nz
        for i, a in enumerate(x):
            if not a:
                continue
            row = nz[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, m in row[j]:
                    out[k] = out[k] + ab * m
        return out

    def mul_basis(self, i: int, j: int) -> list[tuple[int, Cyclotomic]]:
        return self.mult_nz[i][j]

    def coproduct(self, x: Element) -> dict[tuple[int, int], Cyclotomic]:
        out: dict = defaultdict(lambda: ZERO)
        for i, a in enumerate(x):
            if a:
                for j, k, c in self.comult_nz[i]:
                    out[(j, k)] = out[(j, k)] + a * c
        return {key: v for key, v in out.items() if v}

    def eps(self, x: Element) -> Cyclotomic:
        total = ZERO
        for a, c in zip(x, self.counit):
            if a and c:
                total = total + a * c
        return total

    def S(self, x: Element) -> Element:
        return self.antipode.apply(x)

    def left_mult_matrix(self, x: Element) -> Matrix:
        """Matrix of y -> x y."""
        cols = [self.mul(x, self.basis(a)) for a in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def is_scalar(self, x: Element) -> bool:
        """Whether x lies in C.1."""
        c = self.eps(x)
        return all(a == c * u for a, u in zip(x, self.unit))

    def scalar_part(self, x: Element) -> Cyclotomic:
        if not self.is_scalar(x):
            raise HopfError("element is not a multiple of the unit")
        return self.eps(x)

    def format(self, x: Element) -> str:
        terms = []
        for lab, c in zip(self.labels, x):
            if c:
                terms.append(lab if c == 1 else f"({c})*{lab}")
        return " + ".join(terms) if terms else "0"

    def element_json(self, x: Element) -> dict:
        return {lab: c.to_json() for lab, c in zip(self.labels, x) if c}

    # -- structural predicates -----------------------------------------------

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mult_nz[i][j] == self.mult_nz[j][i] for i in range(n) for j in range(n))

    def is_cocommutative(self) -> bool:
        n = self.dim
        return all(self.comult[i][j][k] == self.comult[i][k][j]
                   for i in range(n) for j in range(n) for k in range(n))


def _tensor_mul(A: HopfAlgebra, x: dict, y: dict) -> dict:
    out: dict = defaultdict(lambda: ZERO)
    for (a, b), c in x.items():
        for (a2, b2), c2 in y.items():
            for k, m in A.mult_nz[a][a2]:
                for l, m2 in A.mult_nz[b][b2]:
                    out[(k, l)] = out[(k, l)] + c * c2 * m * m2
    return {key: v for key, v in out.items() if v}


def _delta_dict(A: HopfAlgebra, i: int) -> dict:
    return {(j, k): c for j, k, c in A.comult_nz[i]}


def verify_hopf(A: HopfAlgebra, name: str = "hopf") -> Report:
    """Exact check of every Hopf algebra axiom; failures carry a basis witness."""
    n = A.dim
    rep = Report(name)
    if A.mult.dims != (n, n, n) or A.comult.dims != (n, n, n) or A.antipode.shape != (n, n) \
            or len(A.unit) != n or len(A.counit) != n:
        raise HopfError("structure tensors have inconsistent shapes")
    basis = [A.basis(i) for i in range(n)]

    wit = None
    for i in range(n):
        for j in range(n):
            ij = A.mul(basis[i], basis[j])
            for k in range(n):
                if A.mul(ij, basis[k]) != A.mul(basis[i], A.mul(basis[j], basis[k])):
                    wit = [i, j, k]
                    break
            if wit:
                break
        if wit:
            break
    rep.add("associativity", wit is None, wit)

    one = A.one()
    wit = next(([i] for i in range(n) if A.mul(one, basis[i]) != basis[i] or A.mul(basis[i], one) != basis[i]),
               None)
    rep.add("unit", wit is None, wit)

    wit = None
    for i in range(n):
        left: dict = defaultdict(lambda: ZERO)
        right: dict = defaultdict(lambda: ZERO)
        for j, k, c in A.comult_nz[i]:
            for a, b, c2 in A.comult_nz[j]:
                left[(a, b, k)] = left[(a, b, k)] + c * c2
            for a, b, c2 in A.comult_nz[k]:
                right[(j, a, b)] = right[(j, a, b)] + c * c2
        if {key: v for key, v in left.items() if v} != {key: v for key, v in right.items() if v}:
            wit = [i]
            break
    rep.add("coassociativity", wit is None, wit)

    wit = None
    for i in range(n):
        l = [ZERO] * n
        r = [ZERO] * n
        for j, k, c in A.comult_nz[i]:
            if A.counit[j]:
                l[k] = l[k] + c * A.counit[j]
            if A.counit[k]:
                r[j] = r[j] + c * A.counit[k]
        if l != basis[i] or r != basis[i]:
            wit = [i]
            break
    rep.add("counit", wit is None, wit)

    wit = None
    unit_ok = A.coproduct(one) == {(a, b): c for (a, b), c in _outer(A, one, one).items()}
    if not unit_ok:
        wit = ["unit"]
    else:
        for i in range(n):
            for j in range(n):
                lhs = A.coproduct(A.mul(basis[i], basis[j]))
                rhs = _tensor_mul(A, _delta_dict(A, i), _delta_dict(A, j))
                if lhs != rhs:
                    wit = [i, j]
                    break
            if wit:
                break
    rep.add("comultiplication_is_algebra_map", wit is None, wit)

    wit = None if A.eps(one) == 1 else ["unit"]
    if wit is None:
        for i in range(n):
            for j in range(n):
                if A.eps(A.mul(basis[i], basis[j])) != A.counit[i] * A.counit[j]:
                    wit = [i, j]
                    break
            if wit:
                break
    rep.add("counit_is_algebra_map", wit is None, wit)

    wit = None
    for i in range(n):
        lhs = A.zero()
        rhs = A.zero()
        for j, k, c in A.comult_nz[i]:
            sj = A.S(basis[j])
            sk = A.S(basis[k])
            lhs = [x + c * y for x, y in zip(lhs, A.mul(sj, basis[k]))]
            rhs = [x + c * y for x, y in zip(rhs, A.mul(basis[j], sk))]
        target = [A.counit[i] * u for u in A.unit]
        if lhs != target or rhs != target:
            wit = [i]
            break
    rep.add("antipode", wit is None, wit)

    rep.add("antipode_invertible", is_invertible(A.antipode))
    return rep


def _outer(A: HopfAlgebra, x: Element, y: Element) -> dict:
    return {(i, j): a * b for i, a in enumerate(x) if a for j, b in enumerate(y) if b}


def group_algebra(group: Group | Sequence[Sequence[int]], labels=None, order: int = 1) -> HopfAlgebra:
    """C[G]: every group element is group-like, S(g) = g^{-1}."""
    G = group if isinstance(group, Group) else make_group(group, labels)
    n = G.order
    mult = Tensor3.zeros(n, n, n)
    comult = Tensor3.zeros(n, n, n)
    S = Matrix.zeros(n, n)
    for g in range(n):
        comult.data[g][g][g] = ONE
        S.data[G.inverse(g)][g] = ONE
        for h in range(n):
            mult.data[g][h][G.mul(g, h)] = ONE
    unit = tuple(ONE if g == G.identity else ZERO for g in range(n))
    counit = tuple(ONE for _ in range(n))
    return HopfAlgebra(G.labels, mult, unit, comult, counit, S, order, G, "group_algebra")


def function_algebra(group: Group | Sequence[Sequence[int]], labels=None, order: int = 1) -> HopfAlgebra:
    """Fun(G) on delta functions: pointwise product, Delta(d_g) = sum_{hk=g} d_h (x) d_k."""
    G = group if isinstance(group, Group) else make_group(group, labels)
    n = G.order
    mult = Tensor3.zeros(n, n, n)
    comult = Tensor3.zeros(n, n, n)
    S = Matrix.zeros(n, n)
    for g in range(n):
        mult.data[g][g][g] = ONE
        S.data[G.inverse(g)][g] = ONE
        for h in range(n):
            comult.data[g][h][_solve_right(G, h, g)] = ONE
    unit = tuple(ONE for _ in range(n))
    counit = tuple(ONE if g == G.identity else ZERO for g in range(n))
    labels = tuple(f"d_{lab}" for lab in G.labels)
    return HopfAlgebra(labels, mult, unit, comult, counit, S, order, G, "function_algebra")


def _solve_right(G: Group, h: int, g: int) -> int:
    """The unique k with h k = g."""
    return G.mul(G.inverse(h), g)


# -- functionals on A (x) A --------------------------------------------------------


class ConvolutionError(HopfError):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class Functional2:
    """Linear map A (x) A -> C with values[i, j] = phi(e_i (x) e_j)."""

    host: HopfAlgebra
    values: Matrix

    def __post_init__(self):
        n = self.host.dim
        if self.values.shape != (n, n):
            raise HopfError(f"functional of shape {self.values.shape} on a {n}-dimensional algebra")

    def __call__(self, x: Element, y: Element) -> Cyclotomic:
        total = ZERO
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.values.data[i]
            for j, b in enumerate(y):
                if b and row[j]:
                    total = total + a * b * row[j]
        return total

    def at(self, i: int, j: int) -> Cyclotomic:
        return self.values.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functional2):
            return NotImplemented
        return self.values == other.values

    __hash__ = object.__hash__


def counit_functional(A: HopfAlgebra) -> Functional2:
    n = A.dim
    return Functional2(A, Matrix([[A.counit[i] * A.counit[j] for j in range(n)] for i in range(n)]))


def convolution(phi: Functional2, psi: Functional2) -> Functional2:
    """(phi * psi)(a (x) b) = phi(a1 (x) b1) psi(a2 (x) b2)."""
    A = phi.host
    if psi.host.dim != A.dim:
        raise HopfError("convolution of functionals on different algebras")
    n = A.dim
    out = Matrix.zeros(n, n)
    for a in range(n):
        for b in range(n):
            total = ZERO
            for a1, a2, c in A.comult_nz[a]:
                for b1, b2, c2 in A.comult_nz[b]:
                    x = phi.values.data[a1][b1]
                    if x:
                        y = psi.values.data[a2][b2]
                        if y:
                            total = total + c * c2 * x * y
            out.data[a][b] = total
    return Functional2(A, out)


def convolution_inverse(phi: Functional2) -> Functional2:
    """Solve phi * psi = eps (x) eps exactly; verify psi * phi as well."""
    A = phi.host
    n = A.dim
    # unknown psi[(a2, b2)] ; equation per (a, b)
    rows = Matrix.zeros(n * n, n * n)
    for a in range(n):
        for b in range(n):
            r = a * n + b
            for a1, a2, c in A.comult_nz[a]:
                for b1, b2, c2 in A.comult_nz[b]:
                    x = phi.values.data[a1][b1]
                    if x:
                        rows.data[r][a2 * n + b2] = rows.data[r][a2 * n + b2] + c * c2 * x
    unit = counit_functional(A)
    rhs = Matrix([[unit.values.data[a][b]] for a in range(n) for b in range(n)])
    sol = solve(rows, rhs)
    if not sol.exists:
        raise ConvolutionError("not convolution invertible")
    vals = Matrix([[sol.solution.data[a * n + b][0] for b in range(n)] for a in range(n)])
    psi = Functional2(A, vals)
    if convolution(phi, psi) != unit or convolution(psi, phi) != unit:
        raise ConvolutionError("not convolution invertible")
    return psi


def solve_antipode(A: HopfAlgebra) -> Matrix:
    """The unique S with m(S (x) id)Delta = eta eps, from the structure of A (its antipode is ignored)."""
    n = A.dim
    # unknown S[i, j] at position i * n + j; equation for (basis e_k, output coordinate o)
    rows = Matrix.zeros(2 * n * n, n * n)
    rhs = Matrix.zeros(2 * n * n, 1)
    for k in range(n):
        for j, l, c in A.comult_nz[k]:
            for i in range(n):
                for o, m in A.mult_nz[i][l]:  # S(e_j) contributes S[i, j] e_i e_l
                    r = k * n + o
                    rows.data[r][i * n + j] = rows.data[r][i * n + j] + c * m
                for o, m in A.mult_nz[j][i]:  # e_j S(e_l)
                    r = n * n + k * n + o
                    rows.data[r][i * n + l] = rows.data[r][i * n + l] + c * m
        for o in range(n):
            rhs.data[k * n + o][0] = A.counit[k] * A.unit[o]
            rhs.data[n * n + k * n + o][0] = A.counit[k] * A.unit[o]
    sol = solve(rows, rhs)
    if not sol.exists:
        raise HopfError("antipode equations are inconsistent")
    return Matrix([[sol.solution.data[i * n + j][0] for j in range(n)] for i in range(n)])

