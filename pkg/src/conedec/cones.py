"""Shifted simplicial cones read off terminal tableaus.

A terminal tableau with live columns j_1 < ... < j_{n-r} describes the
set {vertex + sum k_t * gen_t : k_t in N}, whose integer points are
counted with the term's weight. The series reading renormalizes every
backward generator so the multi-geometric expansion is valid in the
series order; each flip negates the generator, shifts the vertex by the
negated generator, and contributes a factor -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateConeError, ShapeError
from .linalg import lcm_int
from .tableau import first_nonzero_sign
from .decompose import TermState


@dataclass(frozen=True)
class ConeTerm:
    weight: int
    cols: tuple            # retired columns, sorted
    live_cols: tuple       # generator column indices, sorted
    gens: tuple            # one exponent vector per live column
    vertex: tuple

    @property
    def dim(self) -> int:
        return len(self.gens)


def cone_of(t: TermState) -> ConeTerm:
    """Cone data of a terminal term."""
    form = t.form
    if not form.is_terminal():
        raise ShapeError("cone reading needs a terminal tableau")
    return ConeTerm(
        weight=t.weight,
        cols=tuple(sorted(form.gone_cols)),
        live_cols=form.live_cols(),
        gens=form.generators(),
        vertex=form.vertex(),
    )


@dataclass(frozen=True)
class SeriesReading:
    sign: int              # (-1) ** number of flipped generators
    fgens: tuple
    fvertex: tuple
    live_cols: tuple
    units: tuple           # (coordinate index, +-1 unit entry) per generator


def series_reading(c: ConeTerm) -> SeriesReading:
    flips = 0
    fgens = []
    fvertex = list(c.vertex)
    for gen in c.gens:
        s = first_nonzero_sign(gen)
        if s == 0:
            raise DegenerateConeError("zero generator in cone term")
        if s < 0:
            gen = tuple(-x for x in gen)
            flips += 1
            fvertex = [v + g for v, g in zip(fvertex, gen)]
        fgens.append(gen)
    units = []
    for j, gen in zip(c.live_cols, fgens):
        e = gen[j - 1]
        if e not in (1, -1):
            raise ShapeError(f"generator for column {j} has non-unit entry {e}")
        units.append((j - 1, int(e)))
    return SeriesReading(
        sign=-1 if flips % 2 else 1,
        fgens=tuple(fgens),
        fvertex=tuple(fvertex),
        live_cols=c.live_cols,
        units=tuple(units),
    )


def coefficient(rd: SeriesReading, alpha) -> int:
    """Coefficient of x^alpha in the signed series of one cone term."""
    ks = []
    for (idx, e), gen in zip(rd.units, rd.fgens):
        k = (Fraction(alpha[idx]) - rd.fvertex[idx]) / e
        if k.denominator != 1 or k < 0:
            return 0
        ks.append(int(k))
    # the unit rows fix k uniquely; the retired rows decide membership
    for idx in (j - 1 for j in range(1, len(alpha) + 1) if j not in rd.live_cols):
        val = rd.fvertex[idx] + sum(k * g[idx] for k, g in zip(ks, rd.fgens))
        if val != alpha[idx]:
            return 0
    return rd.sign


def lattice_points(rd: SeriesReading, bound: int):
    """Integer points of the cone term within the box [-bound, bound]^n.

    The generator multiples k_t are fixed by the box on the unit
    coordinates; the walk over that grid is pruned by per-row reach
    bounds on the non-unit coordinates, in integer arithmetic scaled by
    the row's common denominator.
    """
    ranges = []
    for idx, e in rd.units:
        fv = rd.fvertex[idx]
        if e > 0:
            lo, hi = max(0, -bound - fv), bound - fv
        else:
            lo, hi = max(0, fv - bound), fv + bound
        if hi < lo:
            return []
        ranges.append((int(lo), int(hi)))
    n = len(rd.fvertex)
    m = len(ranges)
    rows = []
    for idx in (j - 1 for j in range(1, n + 1) if j not in rd.live_cols):
        d = lcm_int([rd.fvertex[idx].denominator]
                    + [g[idx].denominator for g in rd.fgens])
        base = int(rd.fvertex[idx] * d)
        coeffs = [int(g[idx] * d) for g in rd.fgens]
        hi_s = [0] * (m + 1)
        lo_s = [0] * (m + 1)
        for t in range(m - 1, -1, -1):
            c, (klo, khi) = coeffs[t], ranges[t]
            hi_s[t] = hi_s[t + 1] + c * (khi if c > 0 else klo)
            lo_s[t] = lo_s[t + 1] + c * (klo if c > 0 else khi)
        rows.append((idx, d, base, coeffs, hi_s, lo_s, d * bound))
    out = []

    def rec(t, acc, ks):
        for (_, _, _, _, hi_s, lo_s, cap), x in zip(rows, acc):
            if x + hi_s[t] < -cap or x + lo_s[t] > cap:
                return
        if t == m:
            alpha = [0] * n
            for (idx, d, _, _, _, _, _), x in zip(rows, acc):
                if x % d:
                    return
                alpha[idx] = x // d
            for (jdx, e), k in zip(rd.units, ks):
                alpha[jdx] = int(rd.fvertex[jdx]) + k * e
            out.append(tuple(alpha))
            return
        klo, khi = ranges[t]
        for k in range(klo, khi + 1):
            rec(t + 1, [x + row[3][t] * k for row, x in zip(rows, acc)],
                ks + (k,))

    rec(0, [row[2] for row in rows], ())
    return out
