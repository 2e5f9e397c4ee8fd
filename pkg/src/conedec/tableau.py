"""Elimination tableau for constant-term extraction.

The tableau holds an (n+r) x (n+1) exact rational matrix. Rows 1..n
belong to the n series variables, rows n+1..n+r to the r auxiliary
variables being eliminated; the last column carries the numerator
exponent vector. Retired auxiliary rows (I) and retired columns (J)
stay in storage but are excluded from every computation.

Column j <= n encodes the denominator factor (1 - x^col_j), the last
column the numerator monomial x^col. A monomial is expanded forward or
backward depending on the sign of the first nonzero exponent, scanning
coordinates in variable order (series variables first, then auxiliary).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import (
    ConedecError,
    FormulaError,
    NoPositiveSolutionError,
    PivotError,
    RankError,
    ShapeError,
)
from .linalg import Mat, column_pivot_eliminate, hstack, mat_rank, sgn, vstack

INF = float("inf")


class ColumnClass(Enum):
    CONTRIBUTING = "contributing"
    DUALLY_CONTRIBUTING = "dually-contributing"
    NOT_CONTRIBUTING = "not-contributing"


class Formula(Enum):
    CONTRIBUTING = "contributing"
    DUAL = "dual"


@dataclass(frozen=True)
class CountPair:
    c: int | float
    d: int | float


def first_nonzero_sign(vec) -> int:
    """+1 if the first nonzero coordinate is positive, -1 if negative, 0 if none."""
    for x in vec:
        if x != 0:
            return 1 if x > 0 else -1
    return 0


@dataclass(frozen=True, eq=False)
class Tableau:
    n: int
    r: int
    m: Mat
    gone_rows: frozenset = field(default_factory=frozenset)
    gone_cols: frozenset = field(default_factory=frozenset)
    block_sign: int = 1
    homogeneous: bool = False

    # -- index helpers (public i, j are 1-based) --

    def live_rows(self) -> tuple:
        return tuple(i for i in range(1, self.r + 1) if i not in self.gone_rows)

    def live_cols(self) -> tuple:
        return tuple(j for j in range(1, self.n + 1) if j not in self.gone_cols)

    @property
    def rounds_done(self) -> int:
        return len(self.gone_rows)

    def is_terminal(self) -> bool:
        return len(self.gone_rows) == self.r

    def entry(self, row: int, col: int) -> Fraction:
        """Matrix entry with 1-based indices; row in 1..n+r, col in 1..n+1."""
        return self.m[row - 1, col - 1]

    def column_vector(self, j: int) -> tuple:
        return self.m.col(j - 1)

    def numerator_entry(self, i: int) -> Fraction:
        return self.m[self.n + i - 1, self.n]

    # -- classification --

    def column_orientation(self, j: int) -> int:
        return first_nonzero_sign(self.m.col(j - 1))

    def degree_order(self, i: int):
        """Degree and pole order of the form in auxiliary variable i."""
        if i in self.gone_rows:
            raise PivotError(f"row {i} already eliminated")
        row = self.m.row(self.n + i - 1)
        b0 = row[self.n]
        pos = sum((x for j in self.live_cols() if (x := row[j - 1]) > 0), Fraction(0))
        neg = sum((x for j in self.live_cols() if (x := row[j - 1]) < 0), Fraction(0))
        return b0 - pos, -b0 + neg

    def classify_columns(self, i: int) -> dict:
        """Classification of every live column against auxiliary row i."""
        if i in self.gone_rows:
            raise PivotError(f"row {i} already eliminated")
        row = self.m.row(self.n + i - 1)
        out = {}
        for j in self.live_cols():
            p = row[j - 1]
            if p == 0:
                out[j] = ColumnClass.NOT_CONTRIBUTING
                continue
            orient = sgn(p) * self.column_orientation(j)
            if orient > 0:
                out[j] = ColumnClass.CONTRIBUTING
            elif orient < 0:
                out[j] = ColumnClass.DUALLY_CONTRIBUTING
            else:
                raise ConedecError(f"column {j} is zero but has pivot entry {p}")
        return out

    def counts(self, i: int) -> CountPair:
        """Contributing and dually contributing counts, infinite when the
        matching formula is invalid for row i."""
        classes = self.classify_columns(i)
        c = sum(1 for v in classes.values() if v is ColumnClass.CONTRIBUTING)
        d = sum(1 for v in classes.values() if v is ColumnClass.DUALLY_CONTRIBUTING)
        deg, order = self.degree_order(i)
        if deg >= 0:
            c = INF
        if order >= 0:
            d = INF
        if c == INF and d == INF:
            raise ConedecError(
                f"row {i}: both counts infinite, full row rank precondition broken")
        return CountPair(c, d)

    def formula_valid(self, i: int, formula: Formula) -> bool:
        deg, order = self.degree_order(i)
        return deg < 0 if formula is Formula.CONTRIBUTING else order < 0

    # -- mutation (returns new tableaus) --

    def eliminate(self, i: int, j: int):
        """Pivot on auxiliary row i and column j; returns (sign, tableau).

        sign is the sign of the pivot entry. The pivot column is kept
        verbatim; every other column gets the multiple of it that clears
        row n+i. Row i and column j are retired afterwards.
        """
        if i in self.gone_rows:
            raise PivotError(f"row {i} already eliminated")
        if j in self.gone_cols or not (1 <= j <= self.n):
            raise PivotError(f"column {j} not available")
        p = self.m[self.n + i - 1, j - 1]
        if p == 0:
            raise PivotError(f"zero pivot at row {i}, column {j}")
        new_m = column_pivot_eliminate(self.m, self.n + i - 1, j - 1)
        nxt = Tableau(
            n=self.n,
            r=self.r,
            m=new_m,
            gone_rows=self.gone_rows | {i},
            gone_cols=self.gone_cols | {j},
            block_sign=self.block_sign,
            homogeneous=self.homogeneous,
        )
        if self.homogeneous:
            nxt.assert_both_signs()
        return sgn(p), nxt

    def expand(self, i: int, formula: Formula):
        """All single-pivot branches of the chosen extraction formula on row i.

        Returns (j, sign, tableau) triples ordered by column. Contributing
        branches carry the pivot sign, dual branches its negative. Raises
        FormulaError when the formula is invalid for this row.
        """
        deg, order = self.degree_order(i)
        if formula is Formula.CONTRIBUTING and deg >= 0:
            raise FormulaError(f"contributing formula needs degree < 0, got {deg}")
        if formula is Formula.DUAL and order >= 0:
            raise FormulaError(f"dual formula needs pole order < 0, got {order}")
        wanted = (ColumnClass.CONTRIBUTING if formula is Formula.CONTRIBUTING
                  else ColumnClass.DUALLY_CONTRIBUTING)
        flip = 1 if formula is Formula.CONTRIBUTING else -1
        out = []
        for j, cls in self.classify_columns(i).items():
            if cls is wanted:
                s, nxt = self.eliminate(i, j)
                out.append((j, flip * s, nxt))
        return out

    def assert_both_signs(self):
        """Every live auxiliary row must carry both signs on live columns.

        Holds for homogeneous systems with a strictly positive solution;
        checked after every elimination of a homogeneous run.
        """
        cols = self.live_cols()
        for i in self.live_rows():
            row = self.m.row(self.n + i - 1)
            has_pos = any(row[j - 1] > 0 for j in cols)
            has_neg = any(row[j - 1] < 0 for j in cols)
            if not (has_pos and has_neg):
                raise NoPositiveSolutionError(
                    f"auxiliary row {i} lost both signs: the homogeneous system "
                    f"has no strictly positive solution")

    # -- views --

    def reduced_matrix(self) -> Mat:
        """Series-variable rows restricted to live columns plus the numerator."""
        cols = [j - 1 for j in self.live_cols()] + [self.n]
        return self.m.submatrix(range(self.n), cols)

    def generators(self):
        """Generator vectors of a terminal tableau, one per live column."""
        if not self.is_terminal():
            raise ShapeError("generators are defined for terminal tableaus only")
        return tuple(tuple(self.m[t, j - 1] for t in range(self.n))
                     for j in self.live_cols())

    def vertex(self):
        if not self.is_terminal():
            raise ShapeError("vertex is defined for terminal tableaus only")
        return tuple(self.m[t, self.n] for t in range(self.n))

    # -- structural checks and comparison --

    def live_entries(self):
        rows = list(range(self.n)) + [self.n + i - 1 for i in self.live_rows()]
        cols = [j - 1 for j in self.live_cols()] + [self.n]
        return tuple(tuple(self.m[i, j] for j in cols) for i in rows)

    def __eq__(self, other):
        if not isinstance(other, Tableau):
            return NotImplemented
        return (self.n == other.n and self.r == other.r
                and self.gone_rows == other.gone_rows
                and self.gone_cols == other.gone_cols
                and self.block_sign == other.block_sign
                and self.live_entries() == other.live_entries())

    def __hash__(self):
        return hash((self.n, self.r, self.gone_rows, self.gone_cols,
                     self.block_sign, self.live_entries()))

    def validate(self):
        """Structural invariants; cheap, intended for tests."""
        if self.m.shape() != (self.n + self.r, self.n + 1):
            raise ShapeError(f"tableau matrix has shape {self.m.shape()}")
        if len(self.gone_rows) != len(self.gone_cols):
            raise ShapeError("retired row and column counts differ")
        if not self.gone_rows <= set(range(1, self.r + 1)):
            raise ShapeError("retired rows out of range")
        if not self.gone_cols <= set(range(1, self.n + 1)):
            raise ShapeError("retired columns out of range")
        live = self.live_cols()
        for j in live:
            for jp in live:
                want = self.block_sign if j == jp else 0
                if self.m[jp - 1, j - 1] != want:
                    raise ShapeError(
                        f"identity block broken at row {jp}, column {j}")
        for jp in live:
            if self.m[jp - 1, self.n] != 0:
                raise ShapeError(f"numerator column nonzero at live row {jp}")
        for i in self.gone_rows:
            row = self.m.row(self.n + i - 1)
            for j in live:
                if row[j - 1] != 0:
                    raise ShapeError(f"retired row {i} nonzero at live column {j}")
            if row[self.n] != 0:
                raise ShapeError(f"retired row {i} has nonzero numerator entry")
        return True


def build_initial(a: Mat, b, *, mirror: bool = False, check_signs: bool = True) -> Tableau:
    """Initial tableau for the system a*alpha = b, alpha >= 0.

    Stacks the identity over `a`, with -b as the numerator column. `a`
    must be integral with full row rank. With mirror=True the whole
    matrix is negated (used by the reciprocity check, where the run
    happens in the reversed series order). check_signs=False disables
    the positive-solution sign test on homogeneous systems; pivot
    pipelines on transformed systems need that, since the transform
    does not preserve positivity of solutions.
    """
    r, n = a.nrows, a.ncols
    if not a.is_integral():
        raise ShapeError("coefficient matrix must be integral")
    b = tuple(Fraction(x) for x in b)
    if len(b) != r:
        raise ShapeError(f"right-hand side has length {len(b)}, expected {r}")
    if any(x.denominator != 1 for x in b):
        raise ShapeError("right-hand side must be integral")
    rank = mat_rank(a)
    if rank != r:
        raise RankError(rank, r)
    top = hstack(Mat.identity(n), Mat.zeros(n, 1))
    bottom = hstack(a, Mat([[-x] for x in b]))
    m = vstack(top, bottom)
    sign = 1
    if mirror:
        m = -m
        sign = -1
    homogeneous = check_signs and all(x == 0 for x in b)
    t = Tableau(n=n, r=r, m=m, block_sign=sign, homogeneous=homogeneous)
    if t.homogeneous:
        t.assert_both_signs()
    return t


def from_inequalities(a: Mat, b):
    """Slack-variable embedding: a*alpha >= b becomes (a | -id) * (alpha, s) = b."""
    r = a.nrows
    return hstack(a, -Mat.identity(r)), tuple(b)
