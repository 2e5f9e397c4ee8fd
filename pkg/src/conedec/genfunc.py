"""Exact rational generating functions of cone terms.

A cone term with generators g_1..g_m and vertex v has the generating
function

    sum of x^e over the integer-exponent e in v + sum t_j g_j,
    0 <= t_j < p_j, divided by the product of (1 - x^(p_j g_j)),

where p_j is the least positive integer clearing the denominators of
g_j. Numerators are stored as exponent -> coefficient maps, denominators
as a sorted tuple of integer exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from random import Random

from .cones import ConeTerm, cone_of
from .errors import EvalPointError, ShapeError
from .linalg import Mat, lcm_int


@dataclass
class RationalGF:
    nvars: int
    numerator: dict = field(default_factory=dict)   # exponent tuple -> int
    denominator: tuple = ()                         # sorted integer exponent tuples

    def is_zero(self) -> bool:
        return not self.numerator


@dataclass
class ConeGF:
    """Evaluation-ready generating function of one cone term.

    The numerator is kept as the two half scans of the parallelepiped
    monomials, matched on fractional parts; integral exponents are never
    materialized. An evaluation pairs the halves through the shared key,
    so its cost stays near sqrt(prod(ps)) even when the expanded
    numerator would have prod(ps) terms.

    pre maps a fractional key to the integer floor vectors of the first
    half; suf lists (key, floor vector) for the second half, key being
    the fractional part the first half must supply. Matched exponents
    recombine as pre + suf + indicator(key != 0) coordinatewise.
    """
    nvars: int
    denominator: tuple
    pre: dict
    suf: tuple

    def is_zero(self) -> bool:
        return not self.suf


def _balanced_split(ps) -> int:
    split, best = 0, None
    for k in range(len(ps) + 1):
        cost = max(prod(ps[:k]), prod(ps[k:]))
        if best is None or cost < best:
            split, best = k, cost
    return split


def _half_scan(gens, ps, start):
    for ts in product(*(range(p) for p in ps)):
        expo = list(start)
        for t, gen in zip(ts, gens):
            if t:
                expo = [e + t * g for e, g in zip(expo, gen)]
        yield expo


def _cone_parts(c: ConeTerm):
    ps = [lcm_int(x.denominator for x in gen) for gen in c.gens]
    den = tuple(sorted(tuple(int(x * p) for x in gen) for gen, p in zip(c.gens, ps)))
    return ps, den, _balanced_split(ps)


def zy_rational(c: ConeTerm) -> RationalGF:
    """Exact rational generating function of one (unweighted) cone term.

    The numerator scan is split in two halves matched on fractional
    parts, so it costs about sqrt(prod(ps)) instead of prod(ps) before
    the surviving integral exponents are written out.
    """
    n = len(c.vertex)
    ps, den, split = _cone_parts(c)
    zero = [Fraction(0)] * n
    buckets: dict = {}
    for expo in _half_scan(c.gens[:split], ps[:split], zero):
        buckets.setdefault(tuple(e % 1 for e in expo), []).append(expo)
    num: dict = {}
    for expo in _half_scan(c.gens[split:], ps[split:], c.vertex):
        for part in buckets.get(tuple(-e % 1 for e in expo), ()):
            key = tuple(int(e + q) for e, q in zip(expo, part))
            num[key] = num.get(key, 0) + 1
    return RationalGF(nvars=n, numerator=num, denominator=den)


def cone_gf(c: ConeTerm) -> ConeGF:
    """Split form of zy_rational(c) for evaluation-only consumers."""
    n = len(c.vertex)
    ps, den, split = _cone_parts(c)
    zero = [Fraction(0)] * n
    pre: dict = {}
    for expo in _half_scan(c.gens[:split], ps[:split], zero):
        fr = tuple(e % 1 for e in expo)
        pre.setdefault(fr, []).append(tuple(int(e - f) for e, f in zip(expo, fr)))
    suf = []
    for expo in _half_scan(c.gens[split:], ps[split:], c.vertex):
        key = tuple(-e % 1 for e in expo)
        if key in pre:
            suf.append((key, tuple(int(e - (e % 1)) for e in expo)))
    return ConeGF(nvars=n, denominator=den,
                  pre={k: tuple(v) for k, v in pre.items()}, suf=tuple(suf))


def _power(point, expo) -> Fraction:
    out = Fraction(1)
    for p, e in zip(point, expo):
        if e:
            out *= p ** e
    return out


def _pow_table(base: int, top: int):
    out = [1]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def _denominator_value(point, denominator) -> Fraction:
    den = Fraction(1)
    for d in denominator:
        f = 1 - _power(point, d)
        if f == 0:
            raise EvalPointError(f"denominator factor vanishes at exponent {d}")
        den *= f
    return den


def _split_numerator_value(g: ConeGF, point) -> Fraction:
    cache = [dict() for _ in range(g.nvars)]

    def mono(q):
        v = Fraction(1)
        for i, e in enumerate(q):
            if e:
                c = cache[i].get(e)
                if c is None:
                    c = point[i] ** e
                    cache[i][e] = c
                v *= c
        return v

    pre_val: dict = {}
    corr: dict = {}
    total = Fraction(0)
    for key, q in g.suf:
        pv = pre_val.get(key)
        if pv is None:
            pv = sum(mono(p) for p in g.pre[key])
            pre_val[key] = pv
            corr[key] = _power(point, [1 if f else 0 for f in key])
        total += mono(q) * pv * corr[key]
    return total


def gf_evaluate(g, point) -> Fraction:
    """Evaluate at a rational point with nonzero coordinates, exactly.

    Accepts either form of a generating function. For a RationalGF the
    numerator is summed over one common integer denominator, which keeps
    the cost near linear in the number of numerator terms instead of
    paying a gcd per partial sum. For a ConeGF the two halves are paired
    through their fractional keys without expanding the numerator.
    """
    if len(point) != g.nvars:
        raise ShapeError(f"point has {len(point)} coordinates, expected {g.nvars}")
    point = tuple(Fraction(x) for x in point)
    if any(x == 0 for x in point):
        raise EvalPointError("evaluation point has a zero coordinate")
    if g.is_zero():
        return Fraction(0)
    den = _denominator_value(point, g.denominator)
    if isinstance(g, ConeGF):
        return _split_numerator_value(g, point) / den
    entries = list(g.numerator.items())
    lo = [min(e[i] for e, _ in entries) for i in range(g.nvars)]
    spans = [max(e[i] for e, _ in entries) - l for i, l in enumerate(lo)]
    ptab = [_pow_table(x.numerator, s) for x, s in zip(point, spans)]
    qtab = [_pow_table(x.denominator, s) for x, s in zip(point, spans)]
    total = 0
    for e, coeff in entries:
        v = coeff
        for i in range(g.nvars):
            f = e[i] - lo[i]
            v = v * ptab[i][f] * qtab[i][spans[i] - f]
        total += v
    scale = _power(point, lo)
    for x, s in zip(point, spans):
        if s:
            scale /= x.denominator ** s
    return total * scale / den


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
           67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131]


def _prime(k: int) -> int:
    while k >= len(_PRIMES):
        c = _PRIMES[-1] + 2
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[k]


def eval_point(nvars: int, seed: int = 0, attempt: int = 0):
    """Deterministic rational point: prime denominators with a seeded
    numerator offset; each retry shifts the prime window as well."""
    rng = Random(1000003 * seed + attempt)
    out = []
    for i in range(nvars):
        q = _prime(i + attempt)
        out.append(Fraction(1 + rng.randint(0, q - 2), q))
    return tuple(out)


def admissible_point(gfs, nvars: int, seed: int = 0, max_tries: int = 16):
    """First seeded point at which no denominator of any given GF vanishes."""
    for attempt in range(max_tries):
        point = eval_point(nvars, seed, attempt)
        if all(_power(point, d) != 1 for g in gfs for d in g.denominator):
            return point
    raise EvalPointError(f"no admissible point after {max_tries} attempts")


def decomposition_gfs(dec):
    """(weight, RationalGF) list for every term of a decomposition."""
    return [(t.weight, zy_rational(cone_of(t))) for t in dec.terms]


def decomposition_cone_gfs(dec):
    """(weight, ConeGF) list; the evaluation-only counterpart."""
    return [(t.weight, cone_gf(cone_of(t))) for t in dec.terms]


def total_value(weighted_gfs, point) -> Fraction:
    return sum((w * gf_evaluate(g, point) for w, g in weighted_gfs), Fraction(0))


def monomial_action(w: Mat, g: RationalGF) -> RationalGF:
    """Substitute monomials: every exponent vector e becomes w*e."""
    if w.nrows != w.ncols or w.nrows != g.nvars:
        raise ShapeError("action matrix must be square of matching size")
    if not w.is_integral():
        raise ShapeError("action matrix must be integral")

    def act(e):
        out = w.mul_vec(e)
        return tuple(int(x) for x in out)

    num = {}
    for e, coeff in g.numerator.items():
        key = act(e)
        num[key] = num.get(key, 0) + coeff
    return RationalGF(
        nvars=g.nvars,
        numerator=num,
        denominator=tuple(sorted(act(d) for d in g.denominator)),
    )
