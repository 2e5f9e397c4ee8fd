"""Exact rational matrices and integer normal forms.

Scalars are fractions.Fraction throughout: always reduced, positive
denominator, no floats anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import PivotError, ShapeError, SingularMatrixError

Rational = Fraction


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ShapeError(f"not an exact rational scalar: {x!r}")


class Mat:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "Mat":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Mat":
        return cls([[0] * ncols for _ in range(nrows)])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int):
        return self._rows[i]

    def col(self, j: int):
        return tuple(r[j] for r in self._rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __neg__(self) -> "Mat":
        return Mat([[-x for x in row] for row in self._rows])

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape()} by {other.shape()}")
        cols = [other.col(j) for j in range(other.ncols)]
        return Mat([[_dot(row, c) for c in cols] for row in self._rows])

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self._rows)))

    def shape(self):
        return (self.nrows, self.ncols)

    def submatrix(self, row_idx, col_idx) -> "Mat":
        return Mat([[self._rows[i][j] for j in col_idx] for i in row_idx])

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self._rows for x in row)

    def mul_vec(self, v):
        if len(v) != self.ncols:
            raise ShapeError("vector length does not match column count")
        v = tuple(as_fraction(x) for x in v)
        return tuple(_dot(row, v) for row in self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"Mat[{body}]"


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def hstack(a: Mat, b: Mat) -> Mat:
    if a.nrows != b.nrows:
        raise ShapeError("hstack: row counts differ")
    return Mat([ra + rb for ra, rb in zip(a.rows, b.rows)])


def vstack(a: Mat, b: Mat) -> Mat:
    if a.ncols != b.ncols:
        raise ShapeError("vstack: column counts differ")
    return Mat(list(a.rows) + list(b.rows))


def mat_det(m: Mat) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    if m.nrows != m.ncols:
        raise ShapeError("determinant needs a square matrix")
    n = m.nrows
    a = [list(row) for row in m.rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def mat_inverse(m: Mat) -> Mat:
    """Inverse by Gauss-Jordan elimination; raises on singular input."""
    if m.nrows != m.ncols:
        raise ShapeError("inverse needs a square matrix")
    n = m.nrows
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return Mat([row[n:] for row in a])


def mat_rank(m: Mat) -> int:
    """Rank over the rationals by row echelon reduction."""
    a = [list(row) for row in m.rows]
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for j in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][j]
        for i in range(rank + 1, nrows):
            if a[i][j] != 0:
                f = a[i][j] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def column_pivot_eliminate(m: Mat, pivot_row: int, pivot_col: int) -> Mat:
    """Clear pivot_row by column operations, leaving the pivot column itself
    unchanged.

    Every column s other than pivot_col gets col_s -= (m[pr,s]/m[pr,pc]) * col_pc,
    so afterwards row pivot_row is zero outside the pivot column. Indices are
    0-based.
    """
    p = m[pivot_row, pivot_col]
    if p == 0:
        raise PivotError(f"zero pivot at ({pivot_row}, {pivot_col})")
    factors = [m[pivot_row, s] / p for s in range(m.ncols)]
    out = []
    for row in m.rows:
        base = row[pivot_col]
        out.append(tuple(x - factors[s] * base if s != pivot_col else x
                         for s, x in enumerate(row)))
    return Mat(out)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form H = U * A * V with U, V unimodular."""

    U: Mat
    H: Mat
    V: Mat

    def diagonal(self):
        k = min(self.H.nrows, self.H.ncols)
        return tuple(self.H[i, i] for i in range(k))


def smith_normal_form(m: Mat) -> SnfResult:
    """Smith normal form over the integers by gcd-reduction.

    Input entries must be integers. Returns U, H, V with U*m*V = H, H
    diagonal with nonnegative entries satisfying h_i | h_{i+1}, and
    det U, det V = +-1.
    """
    if not m.is_integral():
        raise ShapeError("Smith normal form needs integer entries")
    nrows, ncols = m.nrows, m.ncols
    a = [[int(x) for x in row] for row in m.rows]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nrows, ncols)):
        while True:
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best != (t, t):
                if best[0] != t:
                    swap_rows(t, best[0])
                if best[1] != t:
                    swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // p
                    add_row(i, t, q)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // p
                    add_col(j, t, q)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # pivot divides its row and column; enforce divisibility of the rest
            fix = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p != 0), None)
            if fix is None:
                break
            add_col(t, fix[1], -1)  # pull the offending column into column t
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SnfResult(Mat(u), Mat(a), Mat(v))


def determinantal_divisors(m: Mat):
    """gcd of all k x k minors for each k, by brute force enumeration.

    Exponential in the matrix size; intended as an independent test oracle
    for small matrices only.
    """
    out = []
    for k in range(1, min(m.nrows, m.ncols) + 1):
        g = 0
        for ri in combinations(range(m.nrows), k):
            for ci in combinations(range(m.ncols), k):
                minor = mat_det(m.submatrix(ri, ci))
                g = gcd(g, int(minor))
        out.append(g)
    return tuple(out)


def lcm_int(values) -> int:
    out = 1
    for x in values:
        x = abs(int(x))
        if x:
            out = out * x // gcd(out, x)
    return out
