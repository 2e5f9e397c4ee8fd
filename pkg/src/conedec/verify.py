"""Independent checks for decompositions.

Every check here goes through a route that does not share code with the
decomposition itself: direct enumeration of solutions, exact evaluation
of the rational functions at seeded points, or closed-form identities
between separately computed runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import cone_of, lattice_points, series_reading
from .decompose import Decomposition, S2, TermState, complete, decompose, get_strategy
from .errors import EvalPointError, FormulaError
from .genfunc import (admissible_point, cone_gf, decomposition_cone_gfs,
                      eval_point, gf_evaluate, total_value)
from .linalg import Mat, sgn
from .tableau import Tableau, ColumnClass


@dataclass(frozen=True)
class Box:
    bound: int


def _bound(box) -> int:
    b = box.bound if isinstance(box, Box) else int(box)
    if b < 0:
        raise ValueError("box bound must be nonnegative")
    return b


@dataclass(frozen=True)
class VerifyReport:
    checked_points: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def brute_force_points(a: Mat, b, box=4) -> set:
    """All alpha in [0,B]^n with a*alpha = b, by pruned recursion."""
    bound = _bound(box)
    r, n = a.nrows, a.ncols
    rows = [[int(a[i, j]) for j in range(n)] for i in range(r)]
    bvec = [int(x) for x in b]
    # best possible remaining contribution per row, from column j on
    hi = [[0] * (n + 1) for _ in range(r)]
    lo = [[0] * (n + 1) for _ in range(r)]
    for i in range(r):
        for j in range(n - 1, -1, -1):
            hi[i][j] = hi[i][j + 1] + max(rows[i][j], 0) * bound
            lo[i][j] = lo[i][j + 1] + min(rows[i][j], 0) * bound
    out = set()

    def rec(j, acc, prefix):
        for i in range(r):
            if acc[i] + hi[i][j] < bvec[i] or acc[i] + lo[i][j] > bvec[i]:
                return
        if j == n:
            out.add(tuple(prefix))
            return
        for v in range(bound + 1):
            rec(j + 1, [acc[i] + rows[i][j] * v for i in range(r)], prefix + [v])

    rec(0, [0] * r, [])
    return out


def has_positive_solution(a: Mat, bound: int = 6) -> bool:
    """Bounded search for alpha >= 1 with a*alpha = 0 (via alpha = 1 + beta)."""
    if bound < 1:
        return False
    shifted = tuple(-sum(a.row(i)) for i in range(a.nrows))
    return bool(brute_force_points(a, shifted, bound - 1))


def pointwise_check(dec: Decomposition, box=4) -> VerifyReport:
    """Signed point counts of the terms against direct enumeration.

    Over the whole signed box [-B,B]^n the weighted coefficient sum must
    be 1 exactly on the solutions and 0 everywhere else; lattice points
    claimed by single cones outside the orthant have to cancel.
    """
    bound = _bound(box)
    totals: dict = {}
    for term in dec.terms:
        rd = series_reading(cone_of(term))
        w = term.weight * rd.sign
        for pt in lattice_points(rd, bound):
            totals[pt] = totals.get(pt, 0) + w
    expected = brute_force_points(dec.a, dec.b, bound)
    failures = []
    seen = set(totals) | expected
    for pt in sorted(seen):
        want = 1 if pt in expected else 0
        got = totals.get(pt, 0)
        if got != want:
            failures.append((pt, want, got))
    return VerifyReport(checked_points=len(seen), failures=tuple(failures))


def _point_seed(seed: int, k: int) -> int:
    return seed * 97 + k


def cross_strategy_check(a: Mat, b, strategies=("s0", "s1", "s2"),
                         n_points: int = 3, seed: int = 0) -> VerifyReport:
    """All strategies must give the same rational function; compared by
    exact evaluation at shared admissible points."""
    decs = [decompose(a, b, get_strategy(s)) for s in strategies]
    cache: dict = {}

    def gf_of(term):
        c = cone_of(term)
        key = (c.cols, c.gens, c.vertex)
        if key not in cache:
            cache[key] = cone_gf(c)
        return cache[key]

    gf_sets = [[(t.weight, gf_of(t)) for t in d.terms] for d in decs]
    flat = list(cache.values())
    failures = []
    for k in range(n_points):
        point = admissible_point(flat, a.ncols, seed=_point_seed(seed, k))
        at_point = {id(g): gf_evaluate(g, point) for g in flat}
        values = [sum((w * at_point[id(g)] for w, g in gfs), Fraction(0))
                  for gfs in gf_sets]
        if any(v != values[0] for v in values[1:]):
            failures.append((point, values[0], tuple(values)))
    return VerifyReport(checked_points=n_points, failures=tuple(failures))


def bounded_solutions(a: Mat, b, box=6, margin: int = 2):
    """Solution set when it sits well inside the box, else None.

    Boundedness is judged heuristically: any coordinate within `margin`
    of the box edge is taken as a sign the enumeration may be truncated.
    """
    bound = _bound(box)
    pts = brute_force_points(a, b, bound)
    for p in pts:
        if any(x > bound - margin for x in p):
            return None
    return pts


def polytope_polynomial_check(a: Mat, b, strategy=S2, box=6, n_points: int = 3,
                              seed: int = 0, margin: int = 2):
    """For a bounded solution set, the decomposition's value must equal
    the honest polynomial sum over the solutions. Returns None when
    boundedness is not detected."""
    pts = bounded_solutions(a, b, box, margin)
    if pts is None:
        return None
    dec = decompose(a, b, strategy)
    gfs = decomposition_cone_gfs(dec)
    failures = []
    for k in range(n_points):
        point = admissible_point([g for _, g in gfs], a.ncols,
                                 seed=_point_seed(seed, k))
        total = total_value(gfs, point)
        poly = Fraction(0)
        for alpha in pts:
            mono = Fraction(1)
            for x, e in zip(point, alpha):
                mono *= x ** e
            poly += mono
        if total != poly:
            failures.append((point, poly, total))
    return VerifyReport(checked_points=n_points, failures=tuple(failures))


def relation_check(form: Tableau, i: int, strategy=S2, n_points: int = 3,
                   seed: int = 0) -> VerifyReport:
    """Branch sum identity for one homogeneous row.

    When both extraction formulas are valid for row i, the contributing
    branches and the dually contributing branches compute the same value,
    so the sum over all nonzero-pivot columns j of sgn(pivot) times the
    completed branch must vanish identically. Checked by exact evaluation.
    """
    for row in form.live_rows():
        if form.numerator_entry(row) != 0:
            raise FormulaError("relation identity needs a homogeneous form")
    deg, order = form.degree_order(i)
    if deg >= 0 or order >= 0:
        raise FormulaError(
            f"row {i} must admit both formulas (deg={deg}, ord={order})")
    weighted = []
    for j, cls in sorted(form.classify_columns(i).items()):
        if cls is ColumnClass.NOT_CONTRIBUTING:
            continue
        pivot_sign, child = form.eliminate(i, j)
        start = TermState(pivot_sign, child, ((i, j),))
        for t in complete(start, strategy):
            weighted.append((t.weight, cone_gf(cone_of(t))))
    failures = []
    nvars = form.n
    for k in range(n_points):
        point = admissible_point([g for _, g in weighted], nvars,
                                 seed=_point_seed(seed, k))
        value = total_value(weighted, point)
        if value != 0:
            failures.append((point, 0, value))
    return VerifyReport(checked_points=n_points, failures=tuple(failures))


def reciprocity_check(a: Mat, n_points: int = 3, seed: int = 0, box=3,
                      strategy=S2) -> VerifyReport:
    """Reflection identity for a homogeneous system.

    Runs the machinery twice: once as usual and once on the fully negated
    initial matrix, whose series live in the reversed variable order. As
    rational functions, value(standard at p) = (-1)^r * value(reflected
    at 1/p). The reflected run also counts exactly the strictly positive
    solutions, up to the sign (-1)^n; that is checked over a box.
    """
    r, n = a.nrows, a.ncols
    zero = (0,) * r
    std = decompose(a, zero, strategy)
    mir = decompose(a, zero, strategy, mirror=True)
    gfs_std = decomposition_cone_gfs(std)
    gfs_mir = decomposition_cone_gfs(mir)
    failures = []
    checked = 0
    for k in range(n_points):
        found = False
        for attempt in range(16):
            cand = eval_point(n, seed=_point_seed(seed, k), attempt=attempt)
            inv = tuple(1 / c for c in cand)
            try:
                lhs = total_value(gfs_std, cand)
                rhs = total_value(gfs_mir, inv)
            except EvalPointError:
                continue
            found = True
            break
        if not found:
            raise EvalPointError("no evaluation point admissible for both runs")
        checked += 1
        want = (-1) ** r * rhs
        if lhs != want:
            failures.append((cand, want, lhs))
    bound = _bound(box)
    flip = (-1) ** n
    totals: dict = {}
    for t in mir.terms:
        rd = series_reading(cone_of(t))
        w = t.weight * rd.sign
        for pt in lattice_points(rd, bound):
            totals[pt] = totals.get(pt, 0) + w
    interior = {p for p in brute_force_points(a, zero, bound)
                if all(x >= 1 for x in p)}
    for pt in sorted(set(totals) | interior):
        want = 1 if pt in interior else 0
        got = flip * totals.get(pt, 0)
        checked += 1
        if got != want:
            failures.append((pt, want, got))
    return VerifyReport(checked_points=checked, failures=tuple(failures))
