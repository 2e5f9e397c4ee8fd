"""Smith-form preprocessing of the elimination pipeline.

Renaming columns so a chosen nonsingular r x r block comes first and
replacing it by its Smith normal form H = U A1 V turns the iterated
elimination into r stages whose pivot items are the diagonal entries
h_1..h_r. The terminal tableau of the transformed system differs from
the original one by the unimodular substitution diag(V^-1, id), which
acts on generating functions as a monomial substitution.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import EvalPointError, ParseError, ShapeError, SingularMatrixError
from .linalg import Mat, SnfResult, hstack, mat_det, mat_inverse, smith_normal_form, vstack
from .tableau import Tableau, build_initial


def terminal_block(a: Mat, b, cols) -> Mat:
    """Terminal reduced matrix for retiring columns `cols`, computed in
    closed form: rows [[-A1^-1 A2, A1^-1 b], [id, 0]] up to row order.

    Row order follows the original variable order, so row j of the result
    matches variable j of the permuted system (retired columns first).
    """
    r, n = a.nrows, a.ncols
    cols = list(cols)
    rest = [j for j in range(1, n + 1) if j not in cols]
    a1 = a.submatrix(range(r), [j - 1 for j in cols])
    a1_inv = mat_inverse(a1)
    bvec = a1_inv.mul_vec(tuple(Fraction(x) for x in b))
    rows = []
    for pos in range(n):
        rows.append([Fraction(0)] * (n - r + 1))
    if rest:
        a2 = a.submatrix(range(r), [j - 1 for j in rest])
        top = -(a1_inv * a2)
        for t, j in enumerate(cols):
            for s in range(n - r):
                rows[t][s] = top[t, s]
    for t, j in enumerate(cols):
        rows[t][n - r] = bvec[t]
    for s, j in enumerate(rest):
        rows[r + s][s] = Fraction(1)
    return Mat(rows)


@dataclass(frozen=True)
class HatForm:
    cols: tuple          # retired original columns, sorted
    perm: tuple          # permuted column order (originals, 1-based)
    a_perm: Mat          # original matrix with permuted columns
    b: tuple
    snf: SnfResult
    base: Tableau        # initial tableau of the transformed system

    @property
    def r(self) -> int:
        return self.a_perm.nrows

    @property
    def n(self) -> int:
        return self.a_perm.ncols

    def a1(self) -> Mat:
        return self.a_perm.submatrix(range(self.r), range(self.r))

    def a2(self) -> Mat | None:
        if self.n == self.r:
            return None
        return self.a_perm.submatrix(range(self.r), range(self.r, self.n))

    def residual(self) -> Mat | None:
        """Columns of U*A2, the exponent data left after the stages."""
        a2 = self.a2()
        return None if a2 is None else self.snf.U * a2

    def shift(self):
        return self.snf.U.mul_vec(self.b)

    def stage_scales(self):
        return tuple(int(x) for x in self.snf.diagonal())

    def hat_terminal(self):
        """Iterated elimination of the transformed system on its first r
        columns; returns (pivot items, reduced terminal matrix)."""
        form = self.base
        pivots = []
        for i in range(1, self.r + 1):
            pivots.append(form.entry(self.n + i, i))
            _, form = form.eliminate(i, i)
        return tuple(pivots), form.reduced_matrix()

    def reference_terminal(self) -> Mat:
        """Terminal reduced matrix of the permuted original system."""
        return terminal_block(self.a_perm, self.b, range(1, self.r + 1))

    def basis_change(self) -> Mat:
        """diag(V^-1, id): maps the reference terminal to the hat terminal."""
        v_inv = mat_inverse(self.snf.V)
        n, r = self.n, self.r
        rows = []
        for i in range(n):
            row = [Fraction(0)] * n
            if i < r:
                for j in range(r):
                    row[j] = v_inv[i, j]
            else:
                row[i] = Fraction(1)
            rows.append(row)
        return Mat(rows)

    def identity_check(self) -> bool:
        pivots, hat = self.hat_terminal()
        if list(pivots) != [Fraction(h) for h in self.stage_scales()]:
            return False
        return hat == self.basis_change() * self.reference_terminal()


def build_hat(a: Mat, b, cols) -> HatForm:
    """Hat tableau for the system (a, b) with retired column set `cols`."""
    r, n = a.nrows, a.ncols
    cols = tuple(sorted(cols))
    if len(set(cols)) != r or not all(1 <= j <= n for j in cols):
        raise ShapeError(f"need {r} distinct columns in 1..{n}")
    perm = cols + tuple(j for j in range(1, n + 1) if j not in cols)
    a_perm = a.submatrix(range(r), [j - 1 for j in perm])
    a1 = a_perm.submatrix(range(r), range(r))
    if mat_det(a1) == 0:
        raise SingularMatrixError(f"columns {cols} give a singular block")
    snf = smith_normal_form(a1)
    b = tuple(Fraction(x) for x in b)
    u_b = snf.U.mul_vec(b)
    if n > r:
        a2 = a_perm.submatrix(range(r), range(r, n))
        base_a = hstack(snf.H, snf.U * a2)
    else:
        base_a = snf.H
    base = build_initial(base_a, u_b, check_signs=False)
    return HatForm(cols=cols, perm=perm, a_perm=a_perm, b=b, snf=snf, base=base)


@dataclass(frozen=True)
class DenumerantTask:
    stages: tuple        # (scale, variable label) per stage
    residual: tuple      # (variable label, exponent column) per remaining column
    shift: tuple
    is_denumerant: bool

    def to_text(self) -> str:
        lines = ["denumerant-task v1",
                 f"is-denumerant: {'yes' if self.is_denumerant else 'no'}"]
        for k, (scale, label) in enumerate(self.stages, start=1):
            lines.append(f"stage {k}: scale {scale} var {label}")
        lines.append("shift: " + " ".join(str(s) for s in self.shift))
        for label, col in self.residual:
            lines.append(f"residual {label}: " + " ".join(str(x) for x in col))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DenumerantTask":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or lines[0] != "denumerant-task v1":
            raise ParseError("missing denumerant-task header", 1)
        is_den = None
        stages, residual, shift = [], [], None
        for no, ln in enumerate(lines[1:], start=2):
            if ln.startswith("is-denumerant:"):
                is_den = ln.split(":", 1)[1].strip() == "yes"
            elif ln.startswith("stage "):
                body = ln.split(":", 1)[1].split()
                if len(body) != 4 or body[0] != "scale" or body[2] != "var":
                    raise ParseError(f"bad stage line: {ln}", no)
                stages.append((int(body[1]), body[3]))
            elif ln.startswith("shift:"):
                shift = tuple(int(x) for x in ln.split(":", 1)[1].split())
            elif ln.startswith("residual "):
                head, body = ln.split(":", 1)
                label = head.split()[1]
                residual.append((label, tuple(int(x) for x in body.split())))
            else:
                raise ParseError(f"unrecognized line: {ln}", no)
        if is_den is None or shift is None:
            raise ParseError("incomplete denumerant task record")
        return cls(tuple(stages), tuple(residual), shift, is_den)


def denumerant_task(h: HatForm) -> DenumerantTask:
    """Stage record handed to external counting backends.

    The run is a denumerant computation exactly when every stage scale
    except possibly the last equals one.
    """
    scales = h.stage_scales()
    stages = tuple((scales[i], f"y{h.perm[i]}") for i in range(h.r))
    res = h.residual()
    residual = ()
    if res is not None:
        residual = tuple(
            (f"y{h.perm[h.r + s]}", tuple(int(x) for x in res.col(s)))
            for s in range(h.n - h.r))
    shift = tuple(int(x) for x in h.shift())
    is_den = all(s == 1 for s in scales[:-1]) if scales else True
    return DenumerantTask(stages=stages, residual=residual, shift=shift,
                          is_denumerant=is_den)


def homogenize_cone(bmat: Mat):
    """Equality system whose solution cone is linearly isomorphic to the
    cone spanned by the columns of (B^-1)^T.

    Returns (A, expected): A = (B^T | -id) and the generator block that
    retiring the first d columns must reproduce.
    """
    d = bmat.nrows
    if bmat.ncols != d:
        raise ShapeError("dual matrix must be square")
    if not bmat.is_integral():
        raise ShapeError("dual matrix must be integral")
    if mat_det(bmat) == 0:
        raise SingularMatrixError("dual matrix is singular")
    a = hstack(bmat.transpose(), -Mat.identity(d))
    expected = vstack(mat_inverse(bmat).transpose(), Mat.identity(d))
    return a, expected


@dataclass(frozen=True)
class UnityEvalReport:
    term_count: int
    value: complex
    truncation_value: complex
    abs_error: float
    tail_estimate: float
    n_trunc: int


def unity_root_eval(h: HatForm, point, n_trunc: int = 60) -> UnityEvalReport:
    """Numeric check of the roots-of-unity expansion of a full-dimensional
    cone against direct lattice point truncation.

    `h` must come from a homogenized cone system (B^T | -id, b = 0); the
    point has one complex coordinate per variable (2d of them), all
    nonzero and well inside the unit disc.
    """
    d = h.r
    if h.n != 2 * d:
        raise ShapeError("expected a homogenized system with n = 2r")
    a2 = h.a2()
    if a2 != -Mat.identity(d):
        raise ShapeError("expected the slack block -id in columns d+1..2d")
    if any(x != 0 for x in h.b):
        raise ShapeError("homogenized cone system must have b = 0")
    point = tuple(complex(x) for x in point)
    if len(point) != 2 * d:
        raise ShapeError(f"need {2 * d} point coordinates, got {len(point)}")
    if any(x == 0 for x in point):
        raise EvalPointError("point coordinates must be nonzero")
    if any(abs(x) >= 1 for x in point):
        raise EvalPointError("point coordinates must lie inside the unit disc")

    a1 = h.a1()                      # = B^T
    scales = h.stage_scales()
    term_count = 1
    for s in scales:
        term_count *= s
    res = h.residual()               # U * A2 = -U, columns alpha_{d+i}
    alphas = [tuple(int(x) for x in res.col(i)) for i in range(d)]

    # substituted coordinates q_s = prod_u point_u ^ W[u, s],
    # W = [[V, 0], [-A1 V, id]]
    v = h.snf.V
    neg_a1v = -(a1 * v)
    q = []
    for s in range(2 * d):
        acc = complex(1.0)
        for u in range(2 * d):
            if s < d:
                w = v[u, s] if u < d else neg_a1v[u - d, s]
            else:
                w = Fraction(int(u == s))
            e = int(w)
            if e:
                acc *= point[u] ** e
        q.append(acc)

    bases = []
    for i in range(d):
        acc = q[d + i]
        for t in range(d):
            c = Fraction(alphas[i][t], scales[t])
            if c:
                acc *= q[t] ** float(-c)
        bases.append(acc)

    roots = [[cmath.exp(2j * cmath.pi * k / s) for k in range(s)] for s in scales]
    total = complex(0.0)
    for jt in product(*(range(s) for s in scales)):
        prod_term = complex(1.0)
        for i in range(d):
            zeta = complex(1.0)
            for t in range(d):
                e = alphas[i][t]
                if e:
                    zeta *= roots[t][jt[t]] ** e
            factor = 1 - bases[i] * zeta
            if abs(factor) < 1e-12:
                raise EvalPointError("denominator factor vanishes at this point")
            prod_term /= factor
        total += prod_term
    value = total / term_count

    # direct truncation: lattice points x with A1 x >= 0, |x|_inf <= n_trunc,
    # summed as prod point_t ^ x_t over the first d coordinates
    trunc = complex(0.0)
    rows = [[int(a1[i, j]) for j in range(d)] for i in range(d)]
    for x in product(range(-n_trunc, n_trunc + 1), repeat=d):
        if all(sum(rij * xj for rij, xj in zip(row, x)) >= 0 for row in rows):
            mono = complex(1.0)
            for t in range(d):
                mono *= point[t] ** x[t]
            trunc += mono

    # geometric tail heuristic from the extreme ray directions
    a1_inv = mat_inverse(a1)
    rho = 0.0
    for gcol in range(d):
        g = [a1_inv[i, gcol] for i in range(d)]
        mag = 1.0
        for t in range(d):
            mag *= abs(point[t]) ** float(g[t])
        norm = max(abs(float(x)) for x in g)
        if norm > 0:
            rho = max(rho, mag ** (1.0 / norm))
    shell = 2 * d * (2 * n_trunc + 1) ** (d - 1)
    tail = shell * rho ** (n_trunc + 1) / (1 - rho) if rho < 1 else float("inf")

    return UnityEvalReport(
        term_count=term_count,
        value=value,
        truncation_value=trunc,
        abs_error=abs(value - trunc),
        tail_estimate=tail,
        n_trunc=n_trunc,
    )
