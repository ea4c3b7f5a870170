"""Blocking-word certification along directions, spreading states, and the
wedge/periodic consequences of blocking certificates.

Certification strategy.  The exact reachable set of strip contents over a
dependency cone grows exponentially with the horizon, so the verifier tracks
an over-approximation instead: a set of possible window contents around the
observed strip, padded with unconstrained symbols wherever a needed cell
falls outside the retained window.  Padding only ever enlarges the set, so

* a single-valued strip through the horizon is a sound certificate, and
* a multi-valued strip is only a candidate failure; it is confirmed against
  an exact (or sampled) enumeration of the true dependency cone at the
  failing time, which either produces a genuine witness pair or sends the
  verifier back with wider margins.

One-sided (left/right) blocking tracks pairs of configurations that agree on
one half-line; equality is checked on the boundary cells whose equality,
by induction on time, implies equality of the whole half-line.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .core import PeriodicConfig, Word, _check_same_alphabet, is_subword
from .curves import Curve, curve_eval, increment_range
from .errors import ConeTooWide
from .rules import CONSTANT, LocalRule, iterated_extents, step

WIDTH_CAP = 64
SET_CAP = 1 << 15
CONFIRM_CAP = 1 << 16
CONFIRM_SAMPLES = 400

STRONG = "StrongBlocking"
LEFT = "LeftBlocking"
RIGHT = "RightBlocking"
NOT_BLOCKING = "NotBlocking"


@dataclass(frozen=True)
class Witness:
    """Two extensions of u inside the dependency cone whose strips differ.

    x and y occupy cells lo .. lo+len-1 at time 0; the strips they force
    differ at the given absolute cell at the given time.  For strong-mode
    witnesses any completion outside the words leaves the difference intact,
    so embedding them as periodic configurations reproduces it.
    """

    time: int
    cell: int
    lo: int
    x: Word
    y: Word

    def configs(self) -> tuple[PeriodicConfig, PeriodicConfig]:
        a = self.x.alphabet
        return (
            PeriodicConfig(a, self.x, self.lo),
            PeriodicConfig(a, self.y, self.lo),
        )


@dataclass(frozen=True)
class BlockingVerdict:
    word: Word
    offset: int
    curve: Curve
    horizon: int
    kind: str
    colors: Optional[tuple[Word, ...]] = None  # strong mode only
    witness: Optional[Witness] = None
    note: str = ""

    @property
    def blocking(self) -> bool:
        return self.kind != NOT_BLOCKING


@functools.lru_cache(maxsize=64)
def minimized_rule(rule: LocalRule) -> LocalRule:
    """An equal map with dead boundary coordinates stripped from the table.

    A constant rule reduces to the diameter-1 constant table.
    """
    ext = iterated_extents(rule, 1)
    if ext == CONSTANT:
        return LocalRule(rule.alphabet, 0, 0, (rule.table[0],) * rule.alphabet.size)
    rm, rp = ext
    if (rm, rp) == (rule.memory, rule.anticipation):
        return rule
    k = rule.alphabet.size
    lead = rm - rule.memory
    d = rp - rm + 1
    table = tuple(
        rule.apply_window((0,) * lead + w + (0,) * (rule.diameter - lead - d))
        for w in itertools.product(range(k), repeat=d)
    )
    return LocalRule(rule.alphabet, rm, rp, table)


def strip_width(rule: LocalRule, h: Curve) -> int:
    """M = max(-r_- + max_t(h(t)-h(t+1)), r_+ + max_t(h(t+1)-h(t))), with
    minimal memory/anticipation; always >= 0."""
    m = minimized_rule(rule)
    inc_lo, inc_hi = increment_range(h)
    return max(-m.memory + (-inc_lo), m.anticipation + inc_hi, 0)


def _apply_all(table, k: int, d: int, ext: tuple[int, ...]) -> tuple[int, ...]:
    """Apply a flat table to every window of ext."""
    out = []
    for i in range(len(ext) - d + 1):
        idx = 0
        for s in ext[i : i + d]:
            idx = idx * k + s
        out.append(table[idx])
    return tuple(out)


@functools.lru_cache(maxsize=64)
def _pair_table(rule: LocalRule) -> tuple[int, ...]:
    """The componentwise table on encoded pairs a*k+b."""
    k = rule.alphabet.size
    d = rule.diameter
    out = []
    for w in itertools.product(range(k * k), repeat=d):
        wa = tuple(c // k for c in w)
        wb = tuple(c % k for c in w)
        out.append(rule.apply_window(wa) * k + rule.apply_window(wb))
    return tuple(out)


class _Engine:
    """One windowed over-approximation run at fixed margins."""

    def __init__(self, rule: LocalRule, h: Curve, u: Word, s: int, mode: str, extra: int):
        self.rule = rule
        self.h = h
        self.u = u
        self.s = s
        self.mode = mode
        k = rule.alphabet.size
        self.k = k
        rm, rp = rule.memory, rule.anticipation
        inc_lo, inc_hi = increment_range(h)
        maxdec, maxinc = -inc_lo, inc_hi
        self.M = strip_width(rule, h)
        if mode == "strong":
            self.k_work = k
            self.table = rule.table
            self.rel_lo = -extra
            self.rel_hi = self.M - 1 + extra
            self.lpad = self.rpad = tuple(range(k))
        else:
            self.k_work = k * k
            self.table = _pair_table(rule)
            diag = tuple(a * k + a for a in range(k))
            full = tuple(range(k * k))
            if mode == "right":
                self.rel_lo = -(max(0, rp - 1 + maxinc) + extra)
                self.rel_hi = max(0, rp + maxinc) + extra
                self.lpad, self.rpad = diag, full
            else:
                self.rel_lo = -(max(0, -rm + maxdec) + extra)
                self.rel_hi = max(0, maxdec - rm - 1) + extra
                self.lpad, self.rpad = full, diag
        self.rm, self.rp = rm, rp
        self.d = rule.diameter

    def initial(self):
        s, u = self.s, self.u
        lo = min(self.rel_lo, s)
        hi = max(self.rel_hi, s + len(u) - 1)
        if hi - lo + 1 > WIDTH_CAP:
            raise ConeTooWide(f"initial window {hi - lo + 1} cells exceeds cap")
        choices = []
        k = self.k
        count = 1
        for c in range(lo, hi + 1):
            if s <= c < s + len(u):
                a = u.letters[c - s]
                choices.append((a,) if self.mode == "strong" else (a * k + a,))
            elif self.mode == "strong":
                choices.append(tuple(range(k)))
            elif self.mode == "right":
                choices.append(tuple(a * k + a for a in range(k)) if c < s else tuple(range(k * k)))
            else:
                choices.append(tuple(a * k + a for a in range(k)) if c >= s else tuple(range(k * k)))
            count *= len(choices[-1])
            if count > SET_CAP:
                raise ConeTooWide("initial cone enumeration exceeds the set cap")
        return lo, hi, set(itertools.product(*choices))

    def check_region(self, t: int) -> tuple[int, int]:
        """Absolute cell range (inclusive) that must be single-valued / equal
        at time t; empty when lo > hi."""
        ht = curve_eval(self.h, t)
        if self.mode == "strong":
            return ht, ht + self.M - 1
        if t == 0:
            # handled by the offset precondition
            return 0, -1
        hp = curve_eval(self.h, t - 1)
        if self.mode == "right":
            return hp - self.rp + 1, ht
        return ht, hp - self.rm - 1

    def run(self, horizon: int):
        """('ok', colors) or ('fail', t, region)."""
        lo, hi, states = self.initial()
        colors = []
        for t in range(horizon + 1):
            rlo, rhi = self.check_region(t)
            if rlo <= rhi:
                assert lo <= rlo and rhi <= hi, "check region escaped the window"
                seen = {w[rlo - lo : rhi - lo + 1] for w in states}
                if self.mode == "strong":
                    if len(seen) > 1:
                        return "fail", t, (rlo, rhi)
                    colors.append(Word(self.rule.alphabet, next(iter(seen))))
                else:
                    k = self.k
                    for w in seen:
                        if any(c // k != c % k for c in w):
                            return "fail", t, (rlo, rhi)
            elif self.mode == "strong":
                colors.append(Word(self.rule.alphabet, ()))
            if t == horizon:
                break
            ht1 = curve_eval(self.h, t + 1)
            nlo, nhi = ht1 + self.rel_lo, ht1 + self.rel_hi
            lo, hi, states = self._advance(lo, hi, states, nlo, nhi)
        return "ok", tuple(colors)

    def _advance(self, lo, hi, states, nlo, nhi):
        need_lo, need_hi = nlo + self.rm, nhi + self.rp
        elo, ehi = min(lo, need_lo), max(hi, need_hi)
        if ehi - elo + 1 > WIDTH_CAP:
            raise ConeTooWide("window exceeds the width cap")
        lcombos = list(itertools.product(self.lpad, repeat=lo - elo))
        rcombos = list(itertools.product(self.rpad, repeat=ehi - hi))
        a0 = nlo + self.rm - elo
        a1 = nhi + self.rp - elo + 1
        out = set()
        for w in states:
            for lc in lcombos:
                for rc in rcombos:
                    ext = lc + w + rc
                    row = _apply_all(self.table, self.k_work, self.d, ext[a0:a1])
                    out.add(row)
                    if len(out) > SET_CAP:
                        raise ConeTooWide("state set exceeds the cap")
        return nlo, nhi, out


def _confirm(rule: LocalRule, u: Word, s: int, mode: str, t: int, region, seed=0xD1CA):
    """Exactly (or by seeded sampling) re-check a candidate failure against
    the true dependency cone at time t; returns a Witness or None."""
    rm, rp = rule.memory, rule.anticipation
    k = rule.alphabet.size
    rlo, rhi = region
    lo = min(rlo + t * rm, s)
    hi = max(rhi + t * rp, s + len(u) - 1)
    cells = list(range(lo, hi + 1))
    in_u = lambda c: s <= c < s + len(u)
    base = [u.letters[c - s] if in_u(c) else 0 for c in cells]
    if mode == "strong":
        free_x = [c for c in cells if not in_u(c)]
        free_y = []
    elif mode == "right":
        free_x = [c for c in cells if not in_u(c)]
        free_y = [c for c in cells if not in_u(c) and c >= s + len(u)]
    else:
        free_x = [c for c in cells if not in_u(c)]
        free_y = [c for c in cells if not in_u(c) and c < s]
    dims = len(free_x) + len(free_y)

    def assignments():
        if k**dims <= CONFIRM_CAP:
            yield from itertools.product(range(k), repeat=dims)
        else:
            rng = random.Random(seed ^ t)
            for _ in range(CONFIRM_SAMPLES):
                yield tuple(rng.randrange(k) for _ in range(dims))

    def strip_of(letters):
        res = rule.iterate_word(tuple(letters), t)
        # res covers cells [lo - t*rm, hi - t*rp]
        off = lo - t * rm
        return tuple(res[rlo - off : rhi - off + 1])

    first = None  # (strip, x letters, y letters)
    for asg in assignments():
        x = list(base)
        for c, v in zip(free_x, asg):
            x[c - lo] = v
        y = list(x)
        for c, v in zip(free_y, asg[len(free_x) :]):
            y[c - lo] = v
        sx, sy = strip_of(x), (strip_of(y) if free_y else None)
        if free_y:
            if sx != sy:
                j = next(i for i in range(len(sx)) if sx[i] != sy[i])
                a = rule.alphabet
                return Witness(t, rlo + j, lo, Word(a, tuple(x)), Word(a, tuple(y)))
        else:
            if first is None:
                first = (sx, tuple(x))
            elif sx != first[0]:
                j = next(i for i in range(len(sx)) if sx[i] != first[0][i])
                a = rule.alphabet
                return Witness(t, rlo + j, lo, Word(a, first[1]), Word(a, tuple(x)))
    return None


def verify_blocking(
    rule: LocalRule, h: Curve, u: Word, s: int, horizon: int, mode: str = "strong"
) -> BlockingVerdict:
    """Certify (u, s) blocking along h up to the horizon, or refute it with a
    concrete witness pair.  mode is 'strong', 'left' or 'right'.

    A positive verdict is horizon-bounded evidence only for t <= horizon; a
    NotBlocking verdict is exact (the witness is checkable).
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if mode not in ("strong", "left", "right"):
        raise ValueError(f"unknown mode {mode!r}")
    _check_same_alphabet(rule.alphabet, u.alphabet)
    m = minimized_rule(rule)
    kind = {"strong": STRONG, "left": LEFT, "right": RIGHT}[mode]
    M = strip_width(m, h)
    if mode == "strong" and M == 0:
        colors = tuple(Word(rule.alphabet, ()) for _ in range(horizon + 1))
        return BlockingVerdict(u, s, h, horizon, STRONG, colors,
                               note="empty strip (M=0): vacuously blocking")
    k = rule.alphabet.size
    # one-sided offset preconditions: the t=0 half-line must already be pinned
    if k > 1 and mode == "right" and s + len(u) <= 0:
        c0 = s + len(u)
        lo = min(s, c0)
        base = tuple(u.letters[c - s] if s <= c < s + len(u) else 0 for c in range(lo, 1))
        y = list(base)
        y[c0 - lo] = 1
        w = Witness(0, c0, lo, Word(rule.alphabet, base), Word(rule.alphabet, tuple(y)))
        return BlockingVerdict(u, s, h, horizon, NOT_BLOCKING, witness=w,
                               note="offset precondition: cells right of u reach cell 0")
    if k > 1 and mode == "left" and s >= 1:
        lo = min(0, s)
        hi = s + len(u) - 1
        base = tuple(u.letters[c - s] if s <= c <= hi else 0 for c in range(lo, hi + 1))
        y = list(base)
        y[0 - lo] = 1
        w = Witness(0, 0, lo, Word(rule.alphabet, base), Word(rule.alphabet, tuple(y)))
        return BlockingVerdict(u, s, h, horizon, NOT_BLOCKING, witness=w,
                               note="offset precondition: cells left of u reach cell 0")
    for extra in (2, 5, 10):
        try:
            res = _Engine(m, h, u, s, mode, extra).run(horizon)
        except ConeTooWide:
            if extra == 2:
                raise
            break
        if res[0] == "ok":
            colors = res[1] if mode == "strong" else None
            return BlockingVerdict(u, s, h, horizon, kind, colors)
        _, t, region = res
        w = _confirm(m, u, s, mode, t, region)
        if w is not None:
            return BlockingVerdict(u, s, h, horizon, NOT_BLOCKING, witness=w)
        # over-approximation was too loose; widen the window and retry
    raise ConeTooWide("could not certify or refute within the window caps")


def search_blocking(rule: LocalRule, h: Curve, max_len: int, horizon: int):
    """All (word, offset) pairs with length <= max_len and offset in
    [-max_len - M, M] certified StrongBlocking at the horizon, in
    lexicographic (word, offset) order.

    Candidates that exceed the enumeration caps are skipped (not certified);
    an empty result is sensitivity evidence at this (max_len, horizon) only.
    """
    if max_len < 1 or horizon < 1:
        raise ValueError("max_len and horizon must be >= 1")
    M = strip_width(rule, h)
    hits = []
    for n in range(1, max_len + 1):
        for u in rule.alphabet.all_words(n):
            for s in range(-max_len - M, M + 1):
                try:
                    v = verify_blocking(rule, h, u, s, horizon)
                except ConeTooWide:
                    continue
                if v.kind == STRONG:
                    hits.append((u, s))
    hits.sort(key=lambda p: (p[0].letters, p[1]))
    return hits


def detect_spreading(rule: LocalRule) -> set:
    """Symbols a with f(u) = a for every neighborhood u containing a.

    Checked on the minimized table, padded with a dead coordinate when the
    minimal diameter is 1.  Exact; each spreading state is a length-1
    blocking word along every direction in [-r_+, -r_-].
    """
    m = minimized_rule(rule)
    k = m.alphabet.size
    d = m.diameter
    if d == 1:
        table = tuple(m.table[b] for a in range(k) for b in range(k))
        m = LocalRule(m.alphabet, m.memory - 1, m.anticipation, table)
        d = 2
    out = set()
    for a in range(k):
        if all(
            m.apply_window(w) == a
            for w in itertools.product(range(k), repeat=d)
            if a in w
        ):
            out.add(m.alphabet.symbols[a])
    return out


@dataclass(frozen=True)
class WedgeReport:
    ok: bool
    horizon: int
    violation: Optional[tuple[int, int, str, str]] = None  # (t, j, expected, got)


def monochrome_wedge_check(
    rule: LocalRule,
    u: Word,
    h1: Curve,
    s1: int,
    v: Word,
    h2: Curve,
    s2: int,
    z: PeriodicConfig,
    horizon: int,
) -> WedgeReport:
    """Check that the wedge between the two blocking directions is filled with
    the color forced by u: for every t <= horizon and j in [q'(t), q''(t))
    with q' = h1 + |v| - s1 and q'' = h2 - s2, F^t(z)_j equals the color
    a(t) pinned at cell h1(t) by the blocking word u.

    Both (u, s1, h1) and (v, s2, h2) must certify StrongBlocking at the
    horizon, and z must lie in [v]_0.
    """
    cert1 = verify_blocking(rule, h1, u, s1, horizon)
    cert2 = verify_blocking(rule, h2, v, s2, horizon)
    if cert1.kind != STRONG or cert2.kind != STRONG:
        raise ValueError("wedge check requires certified blocking words")
    if cert1.colors is None or any(len(c) == 0 for c in cert1.colors):
        raise ValueError("blocking certificate along h1 carries no color (M=0)")
    if z.cells(0, len(v) - 1).letters != v.letters:
        raise ValueError("z does not lie in [v]_0")
    a = [c[0] for c in cert1.colors]
    y = z
    alph = rule.alphabet
    for t in range(horizon + 1):
        q1 = curve_eval(h1, t) + len(v) - s1
        q2 = curve_eval(h2, t) - s2
        for j in range(q1, q2):
            if y.cell(j) != a[t]:
                return WedgeReport(
                    False, horizon,
                    (t, j, alph.symbols[a[t]], alph.symbols[y.cell(j)]),
                )
        if t < horizon:
            y = step(rule, y)
    return WedgeReport(True, horizon)


@dataclass(frozen=True)
class ProbeResult:
    reached: bool
    time: Optional[int] = None
    symbol: Optional[str] = None


def periodic_monochrome_probe(
    rule: LocalRule, h: Curve, u: Word, z: PeriodicConfig, horizon: int
) -> ProbeResult:
    """First time T0 <= horizon at which the orbit of z becomes monochrome
    (and is checked to stay monochrome through the horizon).

    u must occur in z's period; blocking-ness of u along directions around h
    is the caller's responsibility.
    """
    doubled = z.cells(z.phase, z.phase + 2 * z.period - 1)
    if not is_subword(u, doubled):
        raise ValueError("u does not occur in z")
    y = z
    t0 = None
    sym = None
    for t in range(horizon + 1):
        if y.is_monochrome():
            if t0 is None:
                t0 = t
                sym = rule.alphabet.symbols[y.cell(0)]
        elif t0 is not None:
            raise AssertionError("orbit left the monochrome set after reaching it")
        if t < horizon:
            y = step(rule, y)
    if t0 is None:
        return ProbeResult(False)
    return ProbeResult(True, t0, sym)
