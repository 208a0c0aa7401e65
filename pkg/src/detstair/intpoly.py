"""Exact integer arithmetic: dense univariate polynomials, Pascal-matrix
minors and small determinants of polynomial matrices.

Everything is plain Python big-int arithmetic.  In-scope degrees stay below a
few hundred while coefficients grow past 10**12, so dense coefficient tuples
are the right representation and schoolbook multiplication is plenty.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence


def binomial(a: int, b: int) -> int:
    """C(a, b) with the Pascal-matrix convention: 0 whenever b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


class IntPoly:
    """Dense univariate integer polynomial, lowest degree first.

    The zero polynomial stores an empty coefficient tuple and has degree -1.
    Instances are immutable; all operators return new polynomials.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls()

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def term(cls, coeff: int, power: int) -> "IntPoly":
        if power < 0:
            raise ValueError("power must be non-negative")
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def max_coeff(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no coefficients")
        return max(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t**k."""
        if k < 0:
            raise ValueError("negative shift")
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def divexact_tpow(self, k: int) -> "IntPoly":
        """Divide by t**k; the low k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ValueError("not divisible by t**%d" % k)
        return IntPoly(self.coeffs[k:])

    def divexact(self, other: "IntPoly") -> "IntPoly":
        """Exact division in Z[t]; raises ValueError if the division leaves
        a remainder or a non-integer quotient coefficient."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return IntPoly()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            raise ValueError("inexact polynomial division")
        lead = other.coeffs[-1]
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + other.degree]
            if top % lead:
                raise ValueError("inexact polynomial division")
            q = top // lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        if any(rem):
            raise ValueError("inexact polynomial division")
        return IntPoly(quot)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "IntPoly(%r)" % (list(self.coeffs),)


def geo(r: int) -> IntPoly:
    """The r-term geometric polynomial 1 + t + ... + t**(r-1); geo(1) = 1."""
    if r <= 0:
        raise ValueError("geo() needs r >= 1")
    return IntPoly((1,) * r)


class IntPolyMatrix:
    """Row-major matrix of IntPoly entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[IntPoly]):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(entries) != rows * cols:
            raise ValueError("entry count %d does not match %dx%d" % (len(entries), rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)

    def at(self, i: int, j: int) -> IntPoly:
        return self.entries[i * self.cols + j]

    def __eq__(self, other):
        return (
            isinstance(other, IntPolyMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))


def _int_det_bareiss(grid: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(grid)
    if n == 0:
        return 1
    m = [row[:] for row in grid]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def pascal_minor(rows: Sequence[int], cols: Sequence[int]) -> int:
    """Determinant of the submatrix of the infinite Pascal matrix C(i, j)
    picked out by the given row and column indices.

    Both index lists must be non-negative, strictly ascending and of equal
    length; the empty minor is 1.
    """
    if len(rows) != len(cols):
        raise ValueError("row/column index lists differ in length")
    for seq, what in ((rows, "row"), (cols, "column")):
        if any(v < 0 for v in seq):
            raise ValueError("%s indices must be non-negative" % what)
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise ValueError("%s indices must be strictly ascending" % what)
    grid = [[binomial(r, c) for c in cols] for r in rows]
    return _int_det_bareiss(grid)


def poly_det_cofactor(mat: IntPolyMatrix) -> IntPoly:
    """Determinant by first-row cofactor expansion.  Exponential in the size;
    kept as the independent oracle for the Bareiss path (sizes <= 4)."""
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.rows
    grid = [[mat.at(i, j) for j in range(n)] for i in range(n)]
    return _cofactor(grid)


def _cofactor(grid: list[list[IntPoly]]) -> IntPoly:
    n = len(grid)
    if n == 0:
        return IntPoly.one()
    if n == 1:
        return grid[0][0]
    acc = IntPoly()
    for j in range(n):
        top = grid[0][j]
        if top.is_zero():
            continue
        sub = [[row[c] for c in range(n) if c != j] for row in grid[1:]]
        term = top * _cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _poly_det_bareiss(mat: IntPolyMatrix) -> IntPoly:
    n = mat.rows
    if n == 0:
        return IntPoly.one()
    m = [[mat.at(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = IntPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divexact(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det(mat: IntPolyMatrix) -> IntPoly:
    """Exact determinant over Z[t] via fraction-free elimination.

    For sizes <= 4 the cofactor expansion is computed as well and the two
    results are required to agree.  Sizes beyond 16 are out of scope.
    """
    if mat.rows != mat.cols:
        raise ValueError("determinant of a non-square matrix")
    if mat.rows > 16:
        raise ValueError("matrix size %d exceeds the supported bound 16" % mat.rows)
    det = _poly_det_bareiss(mat)
    if mat.rows <= 4:
        check = poly_det_cofactor(mat)
        if det != check:
            raise AssertionError("Bareiss and cofactor determinants disagree")
    return det


def cauchy_binet_matrix(m: int, x: int, y: int) -> IntPolyMatrix:
    """The m x m matrix with (i, j) entry sum_k C(x-i, k) C(y-j, k) t**k,
    indices running 1..m and k running 0..m."""
    if m < 1:
        raise ValueError("matrix size must be >= 1")
    entries = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            entries.append(
                IntPoly(binomial(x - i, k) * binomial(y - j, k) for k in range(m + 1))
            )
    return IntPolyMatrix(m, m, entries)


def cauchy_binet_rhs(m: int, x: int, y: int) -> IntPoly:
    """Closed form for det(cauchy_binet_matrix(m, x, y)) / t**C(m, 2):
    sum_{k=0}^{m} C(x-m-1+k, k) C(y-m-1+k, k) t**k."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return IntPoly(
        binomial(x - m - 1 + k, k) * binomial(y - m - 1 + k, k) for k in range(m + 1)
    )
