"""Local rules, exact stepping, rule powers/products, and orbit traces.

A rule table is a flat tuple indexed by the mixed-radix encoding of the
neighborhood word (leftmost cell is the most significant digit).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Alphabet, PeriodicConfig, Word, _check_same_alphabet
from .curves import Curve, curve_eval
from .errors import RuleFormatError, TableTooLarge

TABLE_CAP = 1 << 24  # entries


@dataclass(frozen=True)
class LocalRule:
    """F(x)_i = table[encode(x_{i+memory} ... x_{i+anticipation})]."""

    alphabet: Alphabet
    memory: int
    anticipation: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.anticipation < self.memory:
            raise ValueError("anticipation must be >= memory")
        if len(self.table) != self.alphabet.size**self.diameter:
            raise ValueError("table size does not match diameter")
        for v in self.table:
            if not 0 <= v < self.alphabet.size:
                raise ValueError("table entry out of range")

    @property
    def diameter(self) -> int:
        return self.anticipation - self.memory + 1

    def encode(self, window) -> int:
        k = self.alphabet.size
        idx = 0
        for s in window:
            idx = idx * k + s
        return idx

    def apply_window(self, window) -> int:
        return self.table[self.encode(window)]

    def apply_word(self, letters: tuple[int, ...]) -> tuple[int, ...]:
        """One application to a finite word; the result is shorter by d-1."""
        d = self.diameter
        return tuple(
            self.apply_window(letters[i : i + d]) for i in range(len(letters) - d + 1)
        )

    def iterate_word(self, letters: tuple[int, ...], t: int) -> tuple[int, ...]:
        for _ in range(t):
            letters = self.apply_word(letters)
        return letters

    @classmethod
    def from_function(cls, alphabet: Alphabet, memory: int, anticipation: int, fn) -> "LocalRule":
        d = anticipation - memory + 1
        table = tuple(
            fn(*w) for w in itertools.product(range(alphabet.size), repeat=d)
        )
        return cls(alphabet, memory, anticipation, table)


def step(rule: LocalRule, x: PeriodicConfig) -> PeriodicConfig:
    """Exact image of a periodic configuration; period and phase are kept."""
    _check_same_alphabet(rule.alphabet, x.alphabet)
    p = x.period
    letters = tuple(
        rule.apply_window(
            tuple(x.cell(i + j) for j in range(rule.memory, rule.anticipation + 1))
        )
        for i in range(x.phase, x.phase + p)
    )
    return PeriodicConfig(x.alphabet, Word(x.alphabet, letters), x.phase)


def iterate(rule: LocalRule, x: PeriodicConfig, t: int) -> PeriodicConfig:
    for _ in range(t):
        x = step(rule, x)
    return x


@dataclass(frozen=True)
class OrbitTrace:
    """Rows of the directional orbit F^t sigma^{h(t)}(x) on cells [-W, W]."""

    rule: LocalRule
    curve: Curve
    initial: PeriodicConfig
    half_window: int
    rows: tuple[Word, ...]

    @property
    def width(self) -> int:
        return 2 * self.half_window + 1

    @property
    def steps(self) -> int:
        return len(self.rows) - 1


def directional_orbit(
    rule: LocalRule, h: Curve, x: PeriodicConfig, steps: int, half_window: int
) -> OrbitTrace:
    """Trace the orbit along h: row t shows cells [h(t)-W, h(t)+W] of F^t(x)."""
    if steps < 0 or half_window < 0:
        raise ValueError("steps and half_window must be >= 0")
    _check_same_alphabet(rule.alphabet, x.alphabet)
    rows = []
    y = x
    for t in range(steps + 1):
        off = curve_eval(h, t)
        rows.append(y.cells(off - half_window, off + half_window))
        if t < steps:
            y = step(rule, y)
    return OrbitTrace(rule, h, x, half_window, tuple(rows))


def power_rule(rule: LocalRule, t: int) -> LocalRule:
    """The exact table of F^t, with memory t*r- and anticipation t*r+."""
    if t < 0:
        raise ValueError("t must be >= 0")
    k = rule.alphabet.size
    if t == 0:
        return LocalRule(rule.alphabet, 0, 0, tuple(range(k)))
    d = rule.diameter
    dt = t * (d - 1) + 1
    n = k**dt
    if n > TABLE_CAP:
        raise TableTooLarge(f"power table would need {k}^{dt} entries")
    tbl = np.asarray(rule.table, dtype=np.int64)
    powers = k ** np.arange(dt - 1, -1, -1, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    chunk = 1 << 16
    for lo in range(0, n, chunk):
        idxs = np.arange(lo, min(lo + chunk, n), dtype=np.int64)
        arr = (idxs[:, None] // powers[None, :]) % k
        for _ in range(t):
            width = arr.shape[1] - d + 1
            enc = np.zeros((arr.shape[0], width), dtype=np.int64)
            for j in range(d):
                enc = enc * k + arr[:, j : j + width]
            arr = tbl[enc]
        out[lo : lo + chunk] = arr[:, 0]
    return LocalRule(
        rule.alphabet, t * rule.memory, t * rule.anticipation, tuple(out.tolist())
    )


def _dead_coordinates(rule: LocalRule) -> list[bool]:
    """dead[i] iff toggling coordinate i never changes the table output."""
    k = rule.alphabet.size
    d = rule.diameter
    dead = []
    for i in range(d):
        stride = k ** (d - 1 - i)
        block = stride * k
        is_dead = True
        for base in range(0, len(rule.table), block):
            ref = rule.table[base : base + stride]
            for v in range(1, k):
                off = base + v * stride
                if rule.table[off : off + stride] != ref:
                    is_dead = False
                    break
            if not is_dead:
                break
        dead.append(is_dead)
    return dead


CONSTANT = "Constant"


def iterated_extents(rule: LocalRule, t: int):
    """Minimal memory/anticipation of F^t, or CONSTANT if F^t ignores everything.

    Strips contiguous dead coordinates from both ends of the exact F^t table.
    """
    pw = power_rule(rule, t)
    dead = _dead_coordinates(pw)
    if all(dead):
        if len(set(pw.table)) == 1:
            return CONSTANT
        # single live "virtual" coordinate cannot happen: all-dead means constant
        return CONSTANT
    lead = 0
    while dead[lead]:
        lead += 1
    trail = 0
    while dead[-1 - trail]:
        trail += 1
    return pw.memory + lead, pw.anticipation - trail


def minimal_extents(rule: LocalRule) -> tuple[int, int]:
    """Minimal (memory, anticipation); a constant rule reports (0, 0)."""
    ext = iterated_extents(rule, 1)
    if ext == CONSTANT:
        return 0, 0
    return ext


def shift_composed_rule(rule: LocalRule, k: int) -> LocalRule:
    """The rule of sigma^k compose F: same table, extents moved by k."""
    return LocalRule(rule.alphabet, rule.memory + k, rule.anticipation + k, rule.table)


def product_alphabet(a: Alphabet, b: Alphabet) -> Alphabet:
    return Alphabet(tuple(f"{sa}|{sb}" for sa in a.symbols for sb in b.symbols))


def product_rule(a: LocalRule, b: LocalRule) -> LocalRule:
    """Componentwise product over the product alphabet; tokens are `x|y` joins."""
    alph = product_alphabet(a.alphabet, b.alphabet)
    mem = min(a.memory, b.memory)
    ant = max(a.anticipation, b.anticipation)
    d = ant - mem + 1
    if alph.size**d > TABLE_CAP:
        raise TableTooLarge("product table too large")
    kb = b.alphabet.size
    table = []
    for w in itertools.product(range(alph.size), repeat=d):
        wa = tuple(s // kb for s in w)
        wb = tuple(s % kb for s in w)
        oa = a.apply_window(wa[a.memory - mem : a.memory - mem + a.diameter])
        ob = b.apply_window(wb[b.memory - mem : b.memory - mem + b.diameter])
        table.append(oa * kb + ob)
    return LocalRule(alph, mem, ant, tuple(table))


def parse_rule(text: str) -> LocalRule:
    """Parse the rule file format.

    Lines: `alphabet: s0 s1 ...`, `memory: r`, `anticipation: r`, `table:`,
    then one `w -> a` line per neighborhood.  `#` starts a comment.  Every
    neighborhood must appear exactly once.
    """
    alphabet = None
    memory = None
    anticipation = None
    entries = {}
    in_table = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = Alphabet(tuple(line[len("alphabet:") :].split()))
        elif line.startswith("memory:"):
            memory = int(line[len("memory:") :].strip())
        elif line.startswith("anticipation:"):
            anticipation = int(line[len("anticipation:") :].strip())
        elif line.startswith("table:"):
            in_table = True
        elif in_table and "->" in line:
            if alphabet is None or memory is None or anticipation is None:
                raise RuleFormatError("table before alphabet/memory/anticipation")
            lhs, rhs = (part.strip() for part in line.split("->", 1))
            d = anticipation - memory + 1
            toks = lhs.split()
            if len(toks) == 1 and alphabet.single_char and d > 1:
                toks = list(lhs)
            if len(toks) != d:
                raise RuleFormatError(f"neighborhood {lhs!r} must have {d} symbols")
            try:
                window = tuple(alphabet.index(tk) for tk in toks)
                out = alphabet.index(rhs)
            except ValueError as e:
                raise RuleFormatError(str(e)) from None
            if window in entries:
                raise RuleFormatError(f"duplicate table row for {lhs!r}")
            entries[window] = out
        else:
            raise RuleFormatError(f"unrecognized line {raw!r}")
    if alphabet is None or memory is None or anticipation is None:
        raise RuleFormatError("missing alphabet/memory/anticipation header")
    if anticipation < memory:
        raise RuleFormatError("anticipation < memory")
    d = anticipation - memory + 1
    expected = alphabet.size**d
    if len(entries) != expected:
        raise RuleFormatError(
            f"incomplete table: {len(entries)} of {expected} rows present"
        )
    table = tuple(
        entries[w] for w in itertools.product(range(alphabet.size), repeat=d)
    )
    return LocalRule(alphabet, memory, anticipation, table)


def dump_rule(rule: LocalRule) -> str:
    """Inverse of parse_rule, up to comments and row order."""
    lines = [
        "alphabet: " + " ".join(rule.alphabet.symbols),
        f"memory: {rule.memory}",
        f"anticipation: {rule.anticipation}",
        "table:",
    ]
    for w in itertools.product(range(rule.alphabet.size), repeat=rule.diameter):
        lhs = " ".join(rule.alphabet.symbols[s] for s in w)
        rhs = rule.alphabet.symbols[rule.apply_window(w)]
        lines.append(f"{lhs} -> {rhs}")
    return "\n".join(lines) + "\n"
