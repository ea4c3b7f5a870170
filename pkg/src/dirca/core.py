"""Alphabets, words, periodic configurations, the Cantor metric, and SFT languages.

Everything here is immutable and hashable.  Configurations are always
spatially periodic: cell(i) = period_word[(i - phase) mod p], which is enough
to carry out every exact computation in the rest of the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlphabetMismatch


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of symbol tokens.

    The token order is significant: it fixes index mapping, palette colors,
    lexicographic word order and sampling order everywhere downstream.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.symbols) < 1:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        for s in self.symbols:
            if not s or any(c.isspace() for c in s):
                raise ValueError(f"bad symbol token {s!r}")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, token: str) -> int:
        try:
            return self.symbols.index(token)
        except ValueError:
            raise ValueError(f"unknown symbol {token!r}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def word(self, letters) -> "Word":
        return Word(self, tuple(letters))

    def word_from_text(self, text: str) -> "Word":
        """Parse a word: one char per symbol if all tokens are single chars,
        otherwise whitespace- or comma-separated tokens."""
        if text == "":
            return Word(self, ())
        if self.single_char and ("," not in text and " " not in text):
            return Word(self, tuple(self.index(c) for c in text))
        tokens = text.replace(",", " ").split()
        return Word(self, tuple(self.index(t) for t in tokens))

    def all_words(self, length: int):
        """All words of the given length, in lexicographic order."""
        for letters in itertools.product(range(self.size), repeat=length):
            yield Word(self, letters)


def _check_same_alphabet(a: Alphabet, b: Alphabet):
    if a != b:
        raise AlphabetMismatch(f"alphabet mismatch: {a.symbols} vs {b.symbols}")


@dataclass(frozen=True)
class Word:
    """A finite word, stored as a tuple of symbol indices."""

    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self):
        for x in self.letters:
            if not 0 <= x < self.alphabet.size:
                raise ValueError(f"letter index {x} out of range")

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.letters[i])
        return self.letters[i]

    def __iter__(self):
        return iter(self.letters)

    def text(self) -> str:
        toks = [self.alphabet.symbols[i] for i in self.letters]
        return "".join(toks) if self.alphabet.single_char else " ".join(toks)

    def __add__(self, other: "Word") -> "Word":
        _check_same_alphabet(self.alphabet, other.alphabet)
        return Word(self.alphabet, self.letters + other.letters)


def is_subword(v: Word, u: Word) -> bool:
    """True iff v occurs as a contiguous factor of u.  The empty word always does."""
    _check_same_alphabet(v.alphabet, u.alphabet)
    n, m = len(v), len(u)
    if n == 0:
        return True
    return any(u.letters[i : i + n] == v.letters for i in range(m - n + 1))


@dataclass(frozen=True)
class PeriodicConfig:
    """The spatially periodic configuration repeating period_word, with
    period_word[0] sitting at cell `phase`."""

    alphabet: Alphabet
    period_word: Word
    phase: int = 0

    def __post_init__(self):
        _check_same_alphabet(self.alphabet, self.period_word.alphabet)
        if len(self.period_word) < 1:
            raise ValueError("period word must be nonempty")

    @property
    def period(self) -> int:
        return len(self.period_word)

    def cell(self, i: int) -> int:
        p = self.period
        return self.period_word.letters[(i - self.phase) % p]

    def cells(self, lo: int, hi: int) -> Word:
        """The word occupying cells lo..hi inclusive."""
        return Word(self.alphabet, tuple(self.cell(i) for i in range(lo, hi + 1)))

    def shift(self, k: int = 1) -> "PeriodicConfig":
        """sigma^k: cell(i) of the result is cell(i + k) of self."""
        return PeriodicConfig(self.alphabet, self.period_word, self.phase - k)

    def canonical(self) -> "PeriodicConfig":
        """Normal form: minimal period, phase 0, period word starting at cell 0."""
        p = self.period
        w = self.period_word.letters
        best = p
        for d in range(1, p):
            if p % d == 0 and all(w[i] == w[(i + d) % p] for i in range(p)):
                best = d
                break
        letters = tuple(self.cell(i) for i in range(best))
        return PeriodicConfig(self.alphabet, Word(self.alphabet, letters), 0)

    def same_configuration(self, other: "PeriodicConfig") -> bool:
        _check_same_alphabet(self.alphabet, other.alphabet)
        return self.canonical() == other.canonical()

    def is_monochrome(self) -> bool:
        return len(set(self.period_word.letters)) == 1

    @classmethod
    def monochrome(cls, alphabet: Alphabet, letter: int) -> "PeriodicConfig":
        return cls(alphabet, Word(alphabet, (letter,)), 0)


def metric_distance(x: PeriodicConfig, y: PeriodicConfig) -> Fraction:
    """Cantor distance 2^-n, n the least radius at which x and y disagree.

    Equality is decidable: both configurations are L-periodic for
    L = lcm of the two periods, so agreement on [-L, L] means equality.
    """
    _check_same_alphabet(x.alphabet, y.alphabet)
    limit = math.lcm(x.period, y.period)
    for n in range(limit + 1):
        if x.cell(n) != y.cell(n) or x.cell(-n) != y.cell(-n):
            return Fraction(1, 2**n)
    return Fraction(0)


@dataclass(frozen=True)
class FiniteLanguage:
    """A set of words of one fixed length, stored as letter tuples."""

    alphabet: Alphabet
    word_length: int
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for w in self.words:
            if len(w) != self.word_length:
                raise ValueError("all words must have the declared length")

    def __len__(self):
        return len(self.words)

    def __contains__(self, w) -> bool:
        if isinstance(w, Word):
            w = w.letters
        return tuple(w) in self.words

    def __le__(self, other: "FiniteLanguage") -> bool:
        return self.words <= other.words

    def sorted_words(self) -> list[Word]:
        return [Word(self.alphabet, w) for w in sorted(self.words)]

    @classmethod
    def full(cls, alphabet: Alphabet, length: int) -> "FiniteLanguage":
        return cls(
            alphabet,
            length,
            frozenset(itertools.product(range(alphabet.size), repeat=length)),
        )

    @classmethod
    def from_words(cls, alphabet: Alphabet, length: int, words) -> "FiniteLanguage":
        out = set()
        for w in words:
            out.add(tuple(w.letters if isinstance(w, Word) else w))
        return cls(alphabet, length, frozenset(out))


@dataclass(frozen=True)
class Sft:
    """A subshift of finite type given by forbidden words of length <= order."""

    alphabet: Alphabet
    order: int
    forbidden: frozenset = field(default_factory=frozenset)  # letter tuples

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        for f in self.forbidden:
            if not 0 < len(f) <= self.order:
                raise ValueError("forbidden words must have length in [1, order]")

    @classmethod
    def from_forbidden_words(cls, alphabet: Alphabet, words) -> "Sft":
        tups = frozenset(tuple(w.letters if isinstance(w, Word) else w) for w in words)
        order = max((len(t) for t in tups), default=1)
        return cls(alphabet, max(order, 1), tups)

    def window_admissible(self, letters: tuple[int, ...]) -> bool:
        """No forbidden word occurs as a factor of the given letters."""
        for f in self.forbidden:
            n = len(f)
            if any(letters[i : i + n] == f for i in range(len(letters) - n + 1)):
                return False
        return True

    def _follower_graph(self):
        """Nodes: admissible (order-1)-blocks lying on a biinfinite path.
        Edges: node -> node[1:]+a when the joined order-window is admissible."""
        k = self.order
        nodes = {
            b
            for b in itertools.product(range(self.alphabet.size), repeat=k - 1)
            if self.window_admissible(b)
        }
        edges = {}
        for b in nodes:
            outs = []
            for a in range(self.alphabet.size):
                if self.window_admissible(b + (a,)):
                    nb = (b + (a,))[1:]
                    if nb in nodes:
                        outs.append((a, nb))
            edges[b] = outs
        # trim to nodes with an infinite future and an infinite past
        while True:
            dead = {b for b in nodes if not any(nb in nodes for _, nb in edges[b])}
            has_in = set()
            for b in nodes:
                for _, nb in edges[b]:
                    if b in nodes:
                        has_in.add(nb)
            dead |= nodes - has_in
            if not dead:
                break
            nodes -= dead
        edges = {b: [(a, nb) for a, nb in outs if nb in nodes] for b, outs in edges.items() if b in nodes}
        return nodes, edges


def sft_language(sft: Sft, length: int) -> FiniteLanguage:
    """Words of the given length occurring in some biinfinite admissible point.

    Admissible-but-not-extendable words are excluded: the follower graph is
    trimmed to nodes with biinfinite paths before enumeration.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    nodes, edges = sft._follower_graph()
    k = sft.order
    if not nodes:
        return FiniteLanguage(sft.alphabet, length, frozenset())
    if length == 0:
        return FiniteLanguage(sft.alphabet, 0, frozenset({()}))
    if length < k - 1:
        # factors of extendable (k-1)-blocks
        out = set()
        for b in nodes:
            for i in range(k - 1 - length + 1):
                out.add(b[i : i + length])
        return FiniteLanguage(sft.alphabet, length, frozenset(out))
    words = set()
    frontier = {b: {b} for b in nodes}  # node -> words of current length ending there
    cur_len = k - 1
    if cur_len == length:
        return FiniteLanguage(sft.alphabet, length, frozenset(nodes))
    while cur_len < length:
        nxt: dict = {}
        for b, ws in frontier.items():
            for a, nb in edges[b]:
                bucket = nxt.setdefault(nb, set())
                for w in ws:
                    bucket.add(w + (a,))
        frontier = nxt
        cur_len += 1
    for ws in frontier.values():
        words |= ws
    return FiniteLanguage(sft.alphabet, length, frozenset(words))


def sft_contains(sft: Sft, x: PeriodicConfig) -> bool:
    """True iff every window of x avoids the forbidden words.

    By periodicity it is enough to scan p consecutive windows of length order.
    """
    _check_same_alphabet(sft.alphabet, x.alphabet)
    p = x.period
    k = sft.order
    stretch = tuple(x.cell(i) for i in range(p + k - 1))
    for i in range(p):
        if not sft.window_admissible(stretch[i : i + k]):
            return False
    return True


def golden_mean_sft(alphabet: Alphabet | None = None) -> Sft:
    """The SFT over {0,1} forbidding '11'; a convenient standard fixture."""
    if alphabet is None:
        alphabet = Alphabet(("0", "1"))
    return Sft.from_forbidden_words(alphabet, [(1, 1)])
