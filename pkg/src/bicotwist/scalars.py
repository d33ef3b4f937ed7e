"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A :class:`Cyclotomic` stores the coefficients of a polynomial in ``zeta_N``
of degree ``< phi(N)``, reduced modulo the N-th cyclotomic polynomial.  Values
whose non-constant coefficients vanish are stored with ``order == 1`` so that
rational numbers have a single representation regardless of the field they
were computed in.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

Number = Union[int, Fraction, "Cyclotomic"]


class ScalarError(ArithmeticError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Uses x^n - 1 = prod_{d | n} Phi_d and exact polynomial division.
    """
    if n < 1:
        raise ScalarError("cyclotomic order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], lead)
        if r:
            raise ScalarError("inexact polynomial division")
        out[k] = q
        for i, c in enumerate(den):
            num[k + i] -= q * c
    if any(num[: len(den) - 1]):
        raise ScalarError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coefficient vectors of zeta_n^e for e = 0..n-1."""
    deg = _phi(n)
    poly = cyclotomic_polynomial(n)
    table = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        table.append(tuple(cur))
        # multiply by x and reduce using the monic Phi_n
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * poly[i]
        cur = nxt
    return tuple(table)


def _zero_vec(deg: int) -> list[Fraction]:
    return [Fraction(0)] * deg


class Cyclotomic:
    """Immutable element of Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ScalarError("cyclotomic order must be positive")
        deg = _phi(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            # reduce an arbitrary-length polynomial modulo Phi_order
            table = _power_table(order)
            red = _zero_vec(deg)
            for e, c in enumerate(cs):
                if c:
                    for i, t in enumerate(table[e % order]):
                        if t:
                            red[i] += c * t
            cs = red
        else:
            cs = cs + [Fraction(0)] * (deg - len(cs))
        if order > 1 and not any(cs[1:]):
            order, cs = 1, cs[:1]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        return cls(1, [Fraction(value)])

    @classmethod
    def coerce(cls, value: Number) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(1, [value])
        if isinstance(value, str):
            return cls(1, [Fraction(value)])
        raise TypeError(f"cannot interpret {value!r} as a cyclotomic number")

    # -- field embedding --------------------------------------------------------

    def embed(self, order: int) -> tuple[Fraction, ...]:
        """Coefficient vector of this value inside Q(zeta_order)."""
        if order % self.order:
            raise ScalarError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        if order == self.order:
            return self.coeffs
        deg = _phi(order)
        if self.order == 1:
            out = _zero_vec(deg)
            out[0] = self.coeffs[0]
            return tuple(out)
        step = order // self.order
        table = _power_table(order)
        out = _zero_vec(deg)
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(table[(k * step) % order]):
                    if t:
                        out[i] += c * t
        return tuple(out)

    def _common(self, other: "Cyclotomic"):
        if self.order == other.order:
            return self.order, self.coeffs, other.coeffs
        n = _lcm(self.order, other.order)
        return n, self.embed(n), other.embed(n)

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            cs = list(self.coeffs)
            cs[0] += other
            return Cyclotomic(self.order, cs)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.order == 1:
            return self + other.coeffs[0]
        if self.order == 1:
            return other + self.coeffs[0]
        n, a, b = self._common(other)
        return Cyclotomic(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-c for c in self.coeffs])

    def __sub__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other: Number) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.order == 1:
            return self * other.coeffs[0]
        if self.order == 1:
            return other * self.coeffs[0]
        n, a, b = self._common(other)
        table = _power_table(n)
        out = _zero_vec(_phi(n))
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, t in enumerate(table[(i + j) % n]):
                    if t:
                        out[k] += xy * t
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_N)")
        if self.order == 1:
            return Cyclotomic(1, [1 / self.coeffs[0]])
        n, deg = self.order, _phi(self.order)
        table = _power_table(n)
        # column k of the multiplication matrix is self * zeta^k
        cols = []
        for k in range(deg):
            col = _zero_vec(deg)
            for i, c in enumerate(self.coeffs):
                if c:
                    for r, t in enumerate(table[(i + k) % n]):
                        if t:
                            col[r] += c * t
            cols.append(col)
        rows = [[cols[k][r] for k in range(deg)] + [Fraction(int(r == 0))] for r in range(deg)]
        return Cyclotomic(n, _solve_small(rows, deg))

    def __truediv__(self, other: Number) -> "Cyclotomic":
        other = Cyclotomic.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "Cyclotomic":
        return Cyclotomic.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation, zeta_N -> zeta_N^{-1}."""
        n = self.order
        return Cyclotomic(n, _zero_vec(0) + _conj_poly(self.coeffs, n))

    # -- predicates and comparison --------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1

    def as_fraction(self) -> Fraction:
        if self.order != 1:
            raise ScalarError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.order == 1 and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        if self.order == 1 or other.order == 1:
            # a non-rational value is never stored with order 1
            return False
        _, a, b = self._common(other)
        return a == b

    def __hash__(self) -> int:
        if self._hash is None:
            n, cs = _minimal_form(self)
            h = hash(cs[0]) if n == 1 else hash((n, cs))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- text -------------------------------------------------------------------

    def __str__(self) -> str:
        if self.order == 1:
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if k == 0 else (f"z{self.order}" if k == 1 else f"z{self.order}^{k}")
            if not z:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append(f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def to_json(self):
        """Rationals as ``"p/q"`` strings, everything else as ``{"N", "coeffs"}``."""
        if self.order == 1:
            return str(self.coeffs[0])
        return {"N": self.order, "coeffs": [str(c) for c in self.coeffs]}


def _conj_poly(coeffs, n):
    out = [Fraction(0)] * n
    for k, c in enumerate(coeffs):
        out[(-k) % n] += c
    return out


def _solve_small(rows: list[list[Fraction]], n: int) -> list[Fraction]:
    """Gauss-Jordan on an augmented n x (n+1) rational system with a unique solution."""
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def _minimal_form(x: Cyclotomic) -> tuple[int, tuple[Fraction, ...]]:
    """Smallest conductor M | N with x in Q(zeta_M), and x's coefficients there."""
    n = x.order
    if n == 1:
        return 1, x.coeffs
    for m in _divisors(n)[1:-1]:
        deg = _phi(m)
        if deg >= _phi(n):
            continue
        # columns: embedded images of zeta_m^k, k < phi(m)
        cols = [Cyclotomic(m, [0] * k + [1]).embed(n) for k in range(deg)]
        sol = _least_solution(cols, x.coeffs)
        if sol is not None:
            return m, tuple(sol)
    return n, x.coeffs


def _least_solution(cols, target):
    rows = [[c[r] for c in cols] + [target[r]] for r in range(len(target))]
    ncols = len(cols)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][ncols] for i in range(r, len(rows))):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol


ZERO = Cyclotomic(1, [0])
ONE = Cyclotomic(1, [1])


def root_of_unity(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ScalarError("root_of_unity needs N >= 1")
    return Cyclotomic(n, _power_table(n)[k % n])


def field_arithmetic(x: Number, y: Number, op: str) -> Cyclotomic:
    x, y = Cyclotomic.coerce(x), Cyclotomic.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise ScalarError("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def parse_scalar(obj) -> Cyclotomic:
    """Inverse of :meth:`Cyclotomic.to_json`; also accepts plain ints."""
    if isinstance(obj, Cyclotomic):
        return obj
    if isinstance(obj, bool):
        raise ScalarError(f"not a scalar: {obj!r}")
    if isinstance(obj, int):
        return Cyclotomic(1, [obj])
    if isinstance(obj, str):
        try:
            return Cyclotomic(1, [Fraction(obj)])
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational {obj!r}") from exc
    if isinstance(obj, dict) and set(obj) == {"N", "coeffs"}:
        n = obj["N"]
        if not isinstance(n, int) or n < 1:
            raise ScalarError(f"bad cyclotomic order {n!r}")
        cs = [parse_scalar(c).as_fraction() for c in obj["coeffs"]]
        return Cyclotomic(n, cs)
    raise ScalarError(f"not a scalar: {obj!r}")


def scalar(value: Number) -> Cyclotomic:
    return Cyclotomic.coerce(value)
