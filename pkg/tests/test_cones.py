"""Cone readings of terminal tableaus: coefficients and lattice points."""

import random
from fractions import Fraction
from itertools import product

import pytest

from conedec.cones import (ConeTerm, cone_of, coefficient, lattice_points,
                           series_reading)
from conedec.decompose import S2, TermState, decompose
from conedec.errors import DegenerateConeError, ShapeError
from conedec.linalg import Mat, mat_rank
from conedec.tableau import build_initial

A_HOM = Mat([[1, -2, 1, -1], [-1, 2, 3, -1]])
A_INH = Mat([[3, 1, -4, -9, -1, 0], [2, -1, 1, -3, 0, -1]])
B_INH = (1, -3)


def hom_term(cols):
    """Terminal term of the homogeneous example with the given retired pair."""
    t0 = build_initial(A_HOM, (0, 0))
    j1, j2 = cols
    for i1, c1, i2, c2 in ((1, j1, 2, j2), (1, j2, 2, j1),
                           (2, j1, 1, j2), (2, j2, 1, j1)):
        if t0.m[t0.n + i1 - 1, c1 - 1] == 0:
            continue
        s1, f1 = t0.eliminate(i1, c1)
        if f1.m[f1.n + i2 - 1, c2 - 1] == 0:
            continue
        s2, f2 = f1.eliminate(i2, c2)
        return TermState(s1 * s2, f2, ((i1, c1), (i2, c2)))
    raise AssertionError(f"no valid pivot order for {cols}")


def frac(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def test_cone_of_homogeneous_pairs():
    c = cone_of(hom_term((1, 4)))
    assert c.cols == (1, 4) and c.live_cols == (2, 3)
    assert c.gens == frac([(2, 1, 0, 0), (1, 0, 1, 2)])
    assert c.vertex == (0, 0, 0, 0)
    assert c.dim == 2

    c = cone_of(hom_term((2, 4)))
    assert c.gens == frac([(1, Fraction(1, 2), 0, 0),
                           (0, Fraction(-1, 2), 1, 2)])
    assert c.live_cols == (1, 3)


def test_cone_of_inhomogeneous_vertex():
    dec = decompose(A_INH, B_INH, S2)
    by_cols = {cone_of(t).cols: cone_of(t) for t in dec.terms}
    assert by_cols[(1, 6)].vertex == (
        Fraction(1, 3), 0, 0, 0, 0, Fraction(11, 3))


def test_cone_of_requires_terminal_form():
    t0 = build_initial(A_HOM, (0, 0))
    _, half = t0.eliminate(1, 1)
    with pytest.raises(ShapeError):
        cone_of(TermState(1, half, ((1, 1),)))


def test_series_reading_unchanged_when_all_small():
    rd = series_reading(cone_of(hom_term((1, 4))))
    assert rd.sign == 1
    assert rd.fgens == frac([(2, 1, 0, 0), (1, 0, 1, 2)])
    assert rd.fvertex == (0, 0, 0, 0)
    assert rd.units == ((1, 1), (2, 1))


def test_series_reading_flips_large_generator():
    rd = series_reading(cone_of(hom_term((2, 4))))
    assert rd.sign == -1
    assert rd.fgens == frac([(1, Fraction(1, 2), 0, 0),
                             (0, Fraction(1, 2), -1, -2)])
    assert rd.fvertex == (0, Fraction(1, 2), -1, -2)
    assert rd.units == ((0, 1), (2, -1))

    rd = series_reading(cone_of(hom_term((3, 4))))
    assert rd.sign == 1
    assert rd.fgens == frac([(1, 0, 1, 2), (0, 1, -2, -4)])


def test_series_reading_rejects_degenerate_data():
    with pytest.raises(DegenerateConeError):
        series_reading(ConeTerm(weight=1, cols=(2,), live_cols=(1,),
                                gens=((Fraction(0), Fraction(0)),),
                                vertex=(Fraction(0), Fraction(0))))
    with pytest.raises(ShapeError):
        series_reading(ConeTerm(weight=1, cols=(2,), live_cols=(1,),
                                gens=((Fraction(2), Fraction(0)),),
                                vertex=(Fraction(0), Fraction(0))))


def test_coefficient_anchors():
    rd = series_reading(cone_of(hom_term((1, 4))))
    assert coefficient(rd, (3, 1, 1, 2)) == 1
    assert coefficient(rd, (0, 0, 0, 0)) == 1
    assert coefficient(rd, (1, 1, 0, 0)) == 0
    rd24 = series_reading(cone_of(hom_term((2, 4))))
    # the flipped reading counts its shifted vertex negatively from zero
    assert coefficient(rd24, (0, 0, 0, 0)) == 0
    assert rd24.sign == -1


def test_lattice_points_small_box():
    rd = series_reading(cone_of(hom_term((1, 4))))
    assert sorted(lattice_points(rd, 2)) == [
        (0, 0, 0, 0), (1, 0, 1, 2), (2, 1, 0, 0)]
    assert lattice_points(rd, 0) == [(0, 0, 0, 0)]


def test_lattice_points_empty_when_vertex_outside():
    rd = series_reading(ConeTerm(weight=1, cols=(), live_cols=(1,),
                                 gens=((Fraction(1),),),
                                 vertex=(Fraction(5),)))
    assert lattice_points(rd, 2) == []


def test_lattice_points_match_coefficient_scan():
    """The pruned walk returns exactly the box points with coefficient
    +-1, on both example systems."""
    for term, bound in ((hom_term((2, 4)), 3), (hom_term((1, 4)), 3)):
        rd = series_reading(cone_of(term))
        n = len(rd.fvertex)
        direct = {p for p in product(range(-bound, bound + 1), repeat=n)
                  if coefficient(rd, p) != 0}
        assert direct == set(lattice_points(rd, bound))

    dec = decompose(A_INH, B_INH, S2)
    for t in dec.terms:
        rd = series_reading(cone_of(t))
        bound = 3
        direct = {p for p in product(range(-bound, bound + 1), repeat=6)
                  if coefficient(rd, p) != 0}
        assert direct == set(lattice_points(rd, bound))


def test_lattice_points_random_cones():
    """Random decompositions: every reported point reproduces the cone
    membership test, and unit coordinates stay integral."""
    rng = random.Random(4401)
    done = 0
    while done < 10:
        r = rng.randint(1, 2)
        n = rng.randint(r + 1, 4)
        a = Mat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)])
        if mat_rank(a) != r:
            continue
        b = tuple(rng.randint(-3, 3) for _ in range(r))
        if not any(b):
            continue
        dec = decompose(a, b, S2)
        for t in dec.terms:
            rd = series_reading(cone_of(t))
            for idx, _ in rd.units:
                assert rd.fvertex[idx].denominator == 1
            pts = lattice_points(rd, 3)
            assert len(set(pts)) == len(pts)
            for p in pts:
                assert coefficient(rd, p) == rd.sign
                assert all(abs(x) <= 3 for x in p)
        done += 1
