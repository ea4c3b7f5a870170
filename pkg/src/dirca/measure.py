"""Exact Bernoulli word probabilities at time t.

mu(F^-t [w]_0) is a sum of product weights over all preimage words, which is
far too many to enumerate directly for deep t.  Instead each space-time cell
value F^tau(x)_j is represented as a reduced ordered multi-valued decision
diagram over the initial cells; the diagrams for one more step are obtained
by applying the local rule to the diagrams of the previous step, and shared
structure keeps them small for rules whose deep iterates have low
complexity.  The probability is then a weighted path count over the
indicator diagram of the word.  All arithmetic is exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Alphabet, Word, _check_same_alphabet
from .errors import TableTooLarge
from .rules import LocalRule

NODE_CAP = 1 << 20


@dataclass(frozen=True)
class BernoulliMeasure:
    """An i.i.d. product measure with positive rational symbol weights."""

    alphabet: Alphabet
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != self.alphabet.size:
            raise ValueError("one weight per symbol required")
        for w in self.weights:
            if not isinstance(w, Fraction) or w <= 0:
                raise ValueError("weights must be positive rationals")
        if sum(self.weights) != 1:
            raise ValueError("weights must sum to 1")

    @classmethod
    def uniform(cls, alphabet: Alphabet) -> "BernoulliMeasure":
        k = alphabet.size
        return cls(alphabet, (Fraction(1, k),) * k)

    @classmethod
    def from_weights(cls, alphabet: Alphabet, weights) -> "BernoulliMeasure":
        return cls(alphabet, tuple(Fraction(w) for w in weights))

    def word_weight(self, w: Word) -> Fraction:
        p = Fraction(1)
        for a in w.letters:
            p *= self.weights[a]
        return p


class _Mdd:
    """Hash-consed diagrams; node ids are ints, terminals are ('t', value)."""

    def __init__(self, k: int):
        self.k = k
        self.nodes = []  # id -> (var, children)
        self.unique = {}
        self.terms = {}
        self.apply_memo = {}

    def terminal(self, v: int):
        key = ("t", v)
        if key not in self.terms:
            self.terms[key] = key
        return key

    def make(self, var: int, children: tuple):
        if all(c == children[0] for c in children):
            return children[0]
        key = (var, children)
        got = self.unique.get(key)
        if got is not None:
            return got
        nid = len(self.nodes)
        if nid >= NODE_CAP:
            raise TableTooLarge("decision diagram exceeds the node cap")
        self.nodes.append(key)
        self.unique[key] = nid
        return nid

    def var_of(self, n):
        if isinstance(n, tuple):
            return None
        return self.nodes[n][0]

    def cell(self, var: int):
        """The diagram of the projection x -> x_var."""
        return self.make(var, tuple(self.terminal(v) for v in range(self.k)))

    def apply(self, fn_key, fn, args: tuple):
        """Pointwise combination of diagrams by fn over terminal values."""
        memo_key = (fn_key, args)
        got = self.apply_memo.get(memo_key)
        if got is not None:
            return got
        if all(isinstance(a, tuple) for a in args):
            res = self.terminal(fn(*(a[1] for a in args)))
        else:
            top = min(self.nodes[a][0] for a in args if not isinstance(a, tuple))
            children = []
            for c in range(self.k):
                sub = tuple(
                    self.nodes[a][1][c]
                    if not isinstance(a, tuple) and self.nodes[a][0] == top
                    else a
                    for a in args
                )
                children.append(self.apply(fn_key, fn, sub))
            res = self.make(top, tuple(children))
        self.apply_memo[memo_key] = res
        return res


class _CellEngine:
    """Diagrams for F^tau(x)_j, built bottom-up and shared across queries."""

    def __init__(self, rule: LocalRule):
        self.rule = rule
        self.mdd = _Mdd(rule.alphabet.size)
        self.cells = {}

    def diagram(self, j: int, tau: int):
        key = (j, tau)
        got = self.cells.get(key)
        if got is not None:
            return got
        if tau == 0:
            res = self.mdd.cell(j)
        else:
            args = tuple(
                self.diagram(j + r, tau - 1)
                for r in range(self.rule.memory, self.rule.anticipation + 1)
            )
            res = self.mdd.apply("f", lambda *vals: self.rule.apply_window(vals), args)
        self.cells[key] = res
        return res

    def indicator(self, w: Word, t: int):
        """Diagram of [F^t(x)_[0,|w|) = w] with 0/1 terminals."""
        acc = self.mdd.terminal(1)
        for j, a in enumerate(w.letters):
            eq = self.mdd.apply(("eq", a), lambda v, a=a: 1 if v == a else 0,
                                (self.diagram(j, t),))
            acc = self.mdd.apply("and", lambda p, q: p & q, (acc, eq))
        return acc

    def weighted(self, node, weights: tuple[Fraction, ...], memo=None) -> Fraction:
        """Total weight of accepting paths; skipped variables integrate to 1
        because the weights sum to 1."""
        if memo is None:
            memo = {}
        if isinstance(node, tuple):
            return Fraction(node[1])
        got = memo.get(node)
        if got is not None:
            return got
        _, children = self.mdd.nodes[node]
        total = Fraction(0)
        for wgt, c in zip(weights, children):
            total += wgt * self.weighted(c, weights, memo)
        memo[node] = total
        return total


def mu_word_probability(
    rule: LocalRule, mu: BernoulliMeasure, w: Word, t: int, engine=None
) -> Fraction:
    """mu(F^-t [w]_0), exactly."""
    _check_same_alphabet(rule.alphabet, mu.alphabet)
    _check_same_alphabet(rule.alphabet, w.alphabet)
    if t < 0:
        raise ValueError("t must be >= 0")
    if len(w) == 0:
        return Fraction(1)
    eng = engine if engine is not None else _CellEngine(rule)
    node = eng.indicator(w, t)
    return eng.weighted(node, mu.weights)


@dataclass(frozen=True)
class ProbabilityTable:
    """P[t][w] = mu(F^-t [w]_0) for all words w of one length, t <= horizon."""

    rule: LocalRule
    measure: BernoulliMeasure
    word_length: int
    horizon: int
    rows: tuple  # rows[t] = dict Word -> Fraction

    def dump(self) -> str:
        lines = []
        for t, row in enumerate(self.rows):
            for w in sorted(row, key=lambda w: w.letters):
                p = row[w]
                lines.append(f"{t}\t{w.text()}\t{p.numerator}/{p.denominator}\t{float(p)!r}")
        return "\n".join(lines) + "\n"


def mu_limit_probe(
    rule: LocalRule, mu: BernoulliMeasure, length: int, horizon: int
) -> ProbabilityTable:
    """Exact per-time probability rows; every row sums to 1."""
    if length < 1 or horizon < 0:
        raise ValueError("bad probe parameters")
    engine = _CellEngine(rule)
    rows = []
    for t in range(horizon + 1):
        row = {}
        for w in rule.alphabet.all_words(length):
            row[w] = mu_word_probability(rule, mu, w, t, engine=engine)
        assert sum(row.values()) == 1
        rows.append(row)
    return ProbabilityTable(rule, mu, length, horizon, tuple(rows))
