"""Exact image languages, surjectivity, nilpotency probes, and Monte Carlo
estimation of the generic limit set along a direction.

Image languages are computed from the exact table of F^t as reachability in
the preimage NFA whose states are overlap blocks; surjectivity is the exact
balance criterion (every word of length n has exactly |A|^(d-1) preimages of
length n+d-1).  Sampling uses Bernoulli-random periodic configurations with
a period wide enough that every observed window is boundary-free, drawn from
a fixed SplitMix64 stream for bit-exact reproducibility.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import FiniteLanguage, Word
from .curves import Curve, curve_eval, max_variation
from .measure import BernoulliMeasure
from .rules import LocalRule, power_rule


def image_language(rule: LocalRule, t: int, length: int) -> FiniteLanguage:
    """Exactly the words of the given length having an F^t-preimage."""
    if length < 1:
        raise ValueError("length must be >= 1")
    rt = power_rule(rule, t)
    k = rule.alphabet.size
    d = rt.diameter
    if d == 1:
        allowed = sorted(set(rt.table))
        words = frozenset(itertools.product(allowed, repeat=length))
        return FiniteLanguage(rule.alphabet, length, words)
    nstates = k ** (d - 1)
    tbl = np.asarray(rt.table)
    idx = np.arange(nstates * k)
    edges = []
    for a in range(k):
        sel = idx[tbl == a]
        edges.append((sel // k, sel % nstates))
    found = []

    def rec(prefix, mask):
        if len(prefix) == length:
            found.append(prefix)
            return
        for a in range(k):
            src, dst = edges[a]
            nmask = np.zeros(nstates, dtype=bool)
            nmask[dst[mask[src]]] = True
            if nmask.any():
                rec(prefix + (a,), nmask)

    rec((), np.ones(nstates, dtype=bool))
    return FiniteLanguage(rule.alphabet, length, frozenset(found))


@dataclass(frozen=True)
class LanguageTrace:
    """L_t restricted to one word length, for t = 0 .. horizon; the languages
    nest downward since images do."""

    rule: LocalRule
    word_length: int
    per_time: tuple[FiniteLanguage, ...]


def language_trace(rule: LocalRule, horizon: int, length: int) -> LanguageTrace:
    per = tuple(image_language(rule, t, length) for t in range(horizon + 1))
    return LanguageTrace(rule, length, per)


@dataclass(frozen=True)
class LimitApprox:
    """Over-approximation of the limit-set language at one horizon.

    stabilized means the language stopped shrinking at the horizon; that is
    informational only and does not prove equality with the true limit
    language.
    """

    language: FiniteLanguage
    stabilized: bool
    horizon: int
    word_length: int


def limit_language_approx(rule: LocalRule, horizon: int, length: int) -> LimitApprox:
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    prev = image_language(rule, horizon - 1, length)
    cur = image_language(rule, horizon, length)
    return LimitApprox(cur, cur.words == prev.words, horizon, length)


def is_surjective(rule: LocalRule) -> bool:
    """Exact balance criterion: surjective iff every word of every length n
    has exactly |A|^(d-1) preimage words of length n+d-1.

    Preimage counts are tracked per overlap block; the reachable count
    vectors are explored to a fixed point, stopping at the first unbalanced
    total.
    """
    k = rule.alphabet.size
    d = rule.diameter
    nstates = k ** (d - 1)
    target = nstates
    start = (1,) * nstates
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for a in range(k):
                out = [0] * nstates
                for b in range(nstates):
                    if v[b] == 0:
                        continue
                    for c in range(k):
                        i = b * k + c
                        if rule.table[i] == a:
                            out[i % nstates] += v[b]
                if sum(out) != target:
                    return False
                tv = tuple(out)
                if tv not in seen:
                    seen.add(tv)
                    nxt.append(tv)
        frontier = nxt
    return True


@dataclass(frozen=True)
class NilpotencyReport:
    nilpotent: bool
    time: Optional[int] = None
    symbol: Optional[str] = None
    certified_not: bool = False
    reason: str = ""


def nilpotency_probe(rule: LocalRule, horizon: int) -> NilpotencyReport:
    """NilpotentAt(t, a) iff the length-2 image language at some t <= horizon
    is the single word aa (then F^t is the constant map to uniform a).

    A negative answer is horizon-bounded evidence, upgraded to a certificate
    when the rule is surjective or has two monochrome fixed points.
    """
    k = rule.alphabet.size
    for t in range(1, horizon + 1):
        lang = image_language(rule, t, 2)
        if len(lang) == 1:
            (w,) = lang.words
            if w[0] == w[1]:
                return NilpotencyReport(True, t, rule.alphabet.symbols[w[0]])
    fixed = [
        a for a in range(k) if rule.apply_window((a,) * rule.diameter) == a
    ]
    if len(fixed) >= 2:
        syms = ", ".join(rule.alphabet.symbols[a] for a in fixed)
        return NilpotencyReport(
            False, certified_not=True,
            reason=f"two monochrome fixed points ({syms})",
        )
    if k > 1 and is_surjective(rule):
        return NilpotencyReport(
            False, certified_not=True,
            reason="surjective with more than one symbol",
        )
    return NilpotencyReport(False)


_SM_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _SM_MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _SM_MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _SM_MASK
    return state, z ^ (z >> 31)


def _draw_cells(seed: int, count: int, mu: BernoulliMeasure) -> list[int]:
    """count i.i.d. symbols by scaled rejection against cumulative weights."""
    q = math.lcm(*(w.denominator for w in mu.weights))
    ints = [w.numerator * (q // w.denominator) for w in mu.weights]
    cum = list(itertools.accumulate(ints))
    scale = (1 << 64) // q
    bound = scale * q
    state = seed & _SM_MASK
    out = []
    while len(out) < count:
        state, z = _splitmix64(state)
        if z >= bound:
            continue
        v = z // scale
        for i, c in enumerate(cum):
            if v < c:
                out.append(i)
                break
    return out


@dataclass(frozen=True)
class SampledLanguage:
    """Empirical window statistics of random orbits along a curve."""

    rule: LocalRule
    curve: Curve
    measure: BernoulliMeasure
    sample_count: int
    times: tuple[int, int]
    window_length: int
    histogram: dict
    seed: int

    def support(self) -> FiniteLanguage:
        return FiniteLanguage(
            self.rule.alphabet,
            self.window_length,
            frozenset(w.letters for w in self.histogram),
        )

    def total(self) -> int:
        return sum(self.histogram.values())

    def dump(self) -> str:
        lines = [
            f"{w.text()}\t{self.histogram[w]}"
            for w in sorted(self.histogram, key=lambda w: w.letters)
        ]
        a, b = self.times
        lines.append(
            f"# seed={self.seed} samples={self.sample_count} t=[{a},{b}] "
            f"w={self.window_length}"
        )
        return "\n".join(lines) + "\n"


def generic_limit_sample(
    rule: LocalRule,
    h: Curve,
    mu: BernoulliMeasure,
    samples: int,
    t_min: int,
    t_max: int,
    window_length: int,
    seed: int = 0,
) -> SampledLanguage:
    """Draw random periodic configurations and record the observed window
    (F^t sigma^(h(t)) x)_[0,w) for every t in [t_min, t_max].

    The period makes the dependency cone of every observed window narrower
    than one period, so each observation equals the value on a genuine
    Bernoulli-random configuration.  Sample i uses the SplitMix64 stream
    seeded with seed XOR (i+1); the result is independent of evaluation
    order.
    """
    if mu.alphabet != rule.alphabet:
        raise ValueError("measure alphabet does not match the rule")
    if not (0 <= t_min <= t_max) or window_length < 1 or samples < 1:
        raise ValueError("bad sampling parameters")
    w = window_length
    reach = max(abs(rule.memory), abs(rule.anticipation))
    period = 2 * (w + reach * t_max + max_variation(h) * t_max) + 1
    k = rule.alphabet.size
    rows = [
        _draw_cells(seed ^ (i + 1), period, mu) for i in range(samples)
    ]
    x = np.array(rows, dtype=np.int64)  # cell c lives at column c mod period
    tbl = np.asarray(rule.table, dtype=np.int64)
    counts: Counter = Counter()
    for t in range(t_max + 1):
        if t >= t_min:
            off = curve_eval(h, t)
            cols = [(off + j) % period for j in range(w)]
            obs = x[:, cols]
            for row in obs:
                counts[tuple(int(v) for v in row)] += 1
        if t == t_max:
            break
        idx = np.zeros_like(x)
        for j in range(rule.memory, rule.anticipation + 1):
            idx = idx * k + np.roll(x, -j, axis=1)
        x = tbl[idx]
    hist = {Word(rule.alphabet, lt): c for lt, c in counts.items()}
    return SampledLanguage(
        rule, h, mu, samples, (t_min, t_max), w, hist, seed
    )
