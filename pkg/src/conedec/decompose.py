"""Iterated elimination of the auxiliary variables.

Each auxiliary row is removed by one application of an extraction
formula, branching into one term per usable column. After r rounds
every surviving term is a terminal tableau describing one signed,
shifted simplicial cone; their signed sum represents the solution set
generating function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PivotError
from .linalg import Mat
from .tableau import INF, Formula, Tableau, build_initial


@dataclass(frozen=True)
class TermState:
    weight: int
    form: Tableau
    path: tuple  # ((row, col), ...) pivots taken, in order

    def cols(self) -> tuple:
        return tuple(sorted(self.form.gone_cols))


class Strategy:
    name = "custom"

    def choose(self, form: Tableau, round_no: int):
        raise NotImplementedError

    def _fallback(self, form: Tableau, i: int, preferred: Formula) -> Formula:
        if form.formula_valid(i, preferred):
            return preferred
        other = Formula.DUAL if preferred is Formula.CONTRIBUTING else Formula.CONTRIBUTING
        return other


class NaturalStrategy(Strategy):
    """Rows in natural order; prefers the formula with more branches."""

    name = "s0"

    def choose(self, form: Tableau, round_no: int):
        i = round_no
        if i not in form.live_rows():
            raise PivotError(f"row {i} not available in round {round_no}")
        pair = form.counts(i)
        if pair.c == INF:
            return i, Formula.DUAL
        if pair.d == INF:
            return i, Formula.CONTRIBUTING
        return i, (Formula.CONTRIBUTING if pair.c >= pair.d else Formula.DUAL)


class ReverseStrategy(Strategy):
    """Rows in reverse order; picks by the sign of the numerator entry."""

    name = "s1"

    def choose(self, form: Tableau, round_no: int):
        i = form.r + 1 - round_no
        if i not in form.live_rows():
            raise PivotError(f"row {i} not available in round {round_no}")
        preferred = Formula.DUAL if form.numerator_entry(i) >= 0 else Formula.CONTRIBUTING
        return i, self._fallback(form, i, preferred)


class GreedyStrategy(Strategy):
    """Globally fewest branches: smallest count over all live rows."""

    name = "s2"

    def choose(self, form: Tableau, round_no: int):
        best = None
        for i in form.live_rows():
            pair = form.counts(i)
            m = min(pair.c, pair.d)
            if best is None or m < best[0]:
                best = (m, i, pair)
        m0, k0, pair = best
        formula = Formula.CONTRIBUTING if pair.c < pair.d else Formula.DUAL
        return k0, formula


class CustomStrategy(Strategy):
    def __init__(self, chooser, name: str = "custom"):
        self.chooser = chooser
        self.name = name

    def choose(self, form: Tableau, round_no: int):
        return self.chooser(form, round_no)


S0 = NaturalStrategy()
S1 = ReverseStrategy()
S2 = GreedyStrategy()

STRATEGIES = {"s0": S0, "s1": S1, "s2": S2}


def get_strategy(name) -> Strategy:
    if isinstance(name, Strategy):
        return name
    try:
        return STRATEGIES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown strategy {name!r}, expected one of {sorted(STRATEGIES)}")


@dataclass(frozen=True)
class Decomposition:
    a: Mat
    b: tuple
    strategy: str
    homogeneous: bool
    mirror: bool
    terms: tuple  # of TermState
    rounds: tuple  # term count after each round

    @property
    def n(self) -> int:
        return self.a.ncols

    @property
    def r(self) -> int:
        return self.a.nrows


def _term_key(t: TermState):
    return (t.cols(), t.path)


def _cancel(states: list) -> list:
    """Drop +1/-1 pairs of identical forms.

    Different pivot paths can reach the same form with opposite signs;
    such a pair contributes zero and would only spawn two identical
    subtrees of opposite weight. Pairing is done in sorted order, so the
    survivors are deterministic. Same-sign duplicates stay separate to
    keep every weight in {+1, -1}.
    """
    states = sorted(states, key=_term_key)
    groups: dict = {}
    for idx, st in enumerate(states):
        key = (st.cols(), st.form)
        pos, neg = groups.setdefault(key, ([], []))
        (pos if st.weight > 0 else neg).append(idx)
    drop = set()
    for pos, neg in groups.values():
        for a, b in zip(pos, neg):
            drop.add(a)
            drop.add(b)
    return [st for idx, st in enumerate(states) if idx not in drop]


def complete(state: TermState, strategy: Strategy = S2):
    """Drive one partially eliminated term to its terminal tableaus."""
    states = [state]
    while states and not states[0].form.is_terminal():
        round_no = states[0].form.rounds_done + 1
        nxt = []
        for st in states:
            k0, formula = strategy.choose(st.form, round_no)
            for j, s, f2 in st.form.expand(k0, formula):
                nxt.append(TermState(st.weight * s, f2, st.path + ((k0, j),)))
        states = nxt
    return sorted(states, key=_term_key)


def run(initial: Tableau, strategy=S2, a: Mat | None = None, b=None) -> Decomposition:
    strategy = get_strategy(strategy)
    states = [TermState(1, initial, ())]
    rounds = []
    for round_no in range(1, initial.r + 1):
        nxt = []
        for st in states:
            k0, formula = strategy.choose(st.form, round_no)
            for j, s, f2 in st.form.expand(k0, formula):
                nxt.append(TermState(st.weight * s, f2, st.path + ((k0, j),)))
        states = _cancel(nxt)
        rounds.append(len(states))
    if a is None:
        sub = initial.m.submatrix(range(initial.n, initial.n + initial.r), range(initial.n))
        bcol = tuple(-x for x in initial.m.col(initial.n)[initial.n:])
        if initial.block_sign < 0:
            sub, bcol = -sub, tuple(-x for x in bcol)
        a, b = sub, bcol
    return Decomposition(
        a=a,
        b=tuple(Fraction(x) for x in b),
        strategy=strategy.name,
        homogeneous=initial.homogeneous,
        mirror=initial.block_sign < 0,
        terms=tuple(sorted(states, key=_term_key)),
        rounds=tuple(rounds),
    )


def decompose(a: Mat, b, strategy=S2, *, mirror: bool = False) -> Decomposition:
    """Decompose the solution set of a*alpha = b, alpha >= 0 into signed
    simplicial cone terms."""
    initial = build_initial(a, b, mirror=mirror)
    return run(initial, strategy, a=a, b=tuple(b))


def decompose_counts(a: Mat, b, strategy=S2):
    dec = decompose(a, b, strategy)
    return len(dec.terms), dec.rounds
