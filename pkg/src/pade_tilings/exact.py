"""Exact rational arithmetic: dense polynomials, Laurent expansions, linear solves.

Scalars are ``fractions.Fraction`` (always reduced, denominator positive).
Nothing in this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import SingularMatrix

BigRational = Fraction
Scalar = Union[int, Fraction]


def to_rational(value) -> Fraction:
    """Parse ints, Fractions or strings like ``"3/4"`` into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def rational_str(value) -> str:
    """Serialize as ``"num/den"``, dropping the denominator when it is 1."""
    q = to_rational(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def binomial(n: int, k: int) -> int:
    """Generalized binomial n(n-1)...(n-k+1)/k!, zero for negative k."""
    if k < 0:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return num // den


class Poly:
    """Dense univariate polynomial with Fraction coefficients (index = degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Poly":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: Scalar) -> "Poly":
        return cls([c])

    @classmethod
    def linear_power(cls, c0: Scalar, c1: Scalar, power: int) -> "Poly":
        """(c0 + c1 z)^power via the binomial theorem."""
        c0 = to_rational(c0)
        c1 = to_rational(c1)
        return cls([binomial(power, i) * c0 ** (power - i) * c1**i for i in range(power + 1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _binop(self, other, sign: int) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + sign * other.coeff(i) for i in range(n))

    def __add__(self, other) -> "Poly":
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self._binop(other, -1)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rational(other)
            return Poly(x * c for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(rational_str(c) for c in self.coeffs)}])"

    def shift(self, c: Scalar) -> "Poly":
        """Coefficients of p(w + c) in w, i.e. the Taylor expansion at c."""
        c = to_rational(c)
        out = list(self.coeffs)
        n = len(out)
        # repeated synthetic division (Horner's shift)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                out[j] += c * out[j + 1]
        return Poly(out)

    def mul_z(self, k: int) -> "Poly":
        """Multiply by z^k (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def truncate(self, lo: int, hi: int) -> "Poly":
        """Keep only the terms with degree in [lo, hi]."""
        return Poly(c if lo <= i <= hi else 0 for i, c in enumerate(self.coeffs))

    def valuation(self) -> int:
        """Lowest degree with a nonzero coefficient (len for the zero poly)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return len(self.coeffs)

    def to_json(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]


Z = Poly([0, 1])


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent expansion sum_i coeffs[i] (z - point)^(lowest + i).

    ``order`` is the last exponent that is known exactly; trailing zero
    coefficients up to ``order`` are dropped from ``coeffs``.
    """

    point: Fraction
    lowest: int
    coeffs: tuple[Fraction, ...]
    order: int

    def coefficient(self, k: int) -> Fraction:
        if k > self.order:
            raise ValueError(f"exponent {k} beyond expansion order {self.order}")
        i = k - self.lowest
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def residue(self) -> Fraction:
        return self.coefficient(-1)

    def principal_part(self) -> Poly:
        """Numerator A of the principal part, written A(z) / (z - point)^d with d = -lowest."""
        if self.lowest >= 0:
            return Poly()
        d = -self.lowest
        # sum_{l=1..d} c_{-l} (z-p)^{-l} = sum_l c_{-l} (z-p)^{d-l} / (z-p)^d
        in_w = Poly([self.coefficient(k - d) for k in range(d)])
        return in_w.shift(-self.point)


def laurent_expand(num: Poly, den: Poly, point: Scalar, order: int) -> LaurentSeries:
    """Expand num/den around ``point`` through the (z - point)^order term."""
    if den.is_zero():
        raise ZeroDivisionError("denominator is the zero polynomial")
    point = to_rational(point)
    ns = num.shift(point)
    ds = den.shift(point)
    if ns.is_zero():
        return LaurentSeries(point, order + 1, (), order)
    e = ns.valuation()
    d = ds.valuation()
    lowest = e - d
    count = order - lowest + 1
    if count <= 0:
        return LaurentSeries(point, lowest, (), order)
    nc = ns.coeffs[e:]
    dc = ds.coeffs[d:]
    d0 = dc[0]
    out: list[Fraction] = []
    for t in range(count):
        acc = nc[t] if t < len(nc) else Fraction(0)
        for i in range(1, min(t, len(dc) - 1) + 1):
            acc -= dc[i] * out[t - i]
        out.append(acc / d0)
    while out and out[-1] == 0:
        out.pop()
    return LaurentSeries(point, lowest, tuple(out), order)


def taylor_coefficients(p: Poly, point: Scalar, count: int) -> list[Fraction]:
    """First ``count`` coefficients of p in powers of (z - point)."""
    s = p.shift(point)
    return [s.coeff(i) for i in range(count)]


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __init__(self, matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]):
        m = tuple(tuple(to_rational(x) for x in row) for row in matrix)
        b = tuple(to_rational(x) for x in rhs)
        if len(m) != len(b):
            raise ValueError("matrix and rhs have different row counts")
        if m and len({len(row) for row in m}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", b)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    out = []
    scales = []
    for row in rows:
        s = 1
        for x in row:
            s = lcm(s, x.denominator)
        out.append([int(x * s) for x in row])
        scales.append(s)
    return out, scales


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[int, int]:
    """In-place fraction-free elimination on the first ``ncols`` columns.

    Returns (sign of the row permutation, rank reached); stops at the first
    column without a pivot.
    """
    n = len(rows)
    prev = 1
    sign = 1
    for k in range(ncols):
        piv = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if piv is None:
            return sign, k
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        rk = rows[k]
        pk = rk[k]
        width = len(rk)
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            if f == 0:
                if pk != prev:
                    for j in range(k + 1, width):
                        ri[j] = ri[j] * pk // prev
            else:
                for j in range(k + 1, width):
                    ri[j] = (ri[j] * pk - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign, ncols


def solve_linear_exact(system: LinearSystem) -> list[Fraction]:
    """Solve a square system exactly; the result is checked by substitution."""
    n = len(system.matrix)
    if any(len(row) != n for row in system.matrix):
        raise ValueError("solve_linear_exact needs a square matrix")
    if n == 0:
        return []
    rows, _ = _integer_rows([list(r) + [b] for r, b in zip(system.matrix, system.rhs)])
    _, rank = _bareiss(rows, n)
    if rank < n:
        raise SingularMatrix(f"no pivot in column {rank} of a {n}x{n} system")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(rows[i][n])
        for j in range(i + 1, n):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    for row, b in zip(system.matrix, system.rhs):
        if sum((c * xi for c, xi in zip(row, x)), Fraction(0)) != b:
            raise AssertionError("back-substitution check failed")
    return x


def det_exact(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    """Determinant of a square rational matrix by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows, scales = _integer_rows([[to_rational(x) for x in row] for row in matrix])
    if any(len(r) != n for r in rows):
        raise ValueError("det_exact needs a square matrix")
    sign, rank = _bareiss(rows, n)
    if rank < n:
        return Fraction(0)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * rows[n - 1][n - 1], denom)
