"""Built-in example automata and their auxiliary oracles.

The two glider rules are frozen as explicit tables (built once from their
case conditions) so that a transcription error in the conditions is caught
by the balance/arrow oracles instead of being reproduced by them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Alphabet, PeriodicConfig, Word
from .rules import LocalRule, product_rule, shift_composed_rule

BINARY = Alphabet(("0", "1"))
GLIDERS = Alphabet(("<", "0", ">"))  # <- , background, ->
LONELY = Alphabet(("cr", "cl", "ar", "al"))  # > , < , -> , <-


def _min_rule() -> LocalRule:
    return LocalRule.from_function(BINARY, 0, 1, min)


def _min3_rule() -> LocalRule:
    return LocalRule.from_function(BINARY, -1, 1, lambda a, b, c: min(a, b, c))


def _shift_rule() -> LocalRule:
    return LocalRule(BINARY, 1, 1, (0, 1))


def _identity_rule() -> LocalRule:
    return LocalRule(BINARY, 0, 0, (0, 1))


def _const0_rule() -> LocalRule:
    return LocalRule(BINARY, 0, 0, (0, 0))


def _gliders_rule() -> LocalRule:
    L, Z, R = 0, 1, 2  # indices of < , 0 , > in GLIDERS

    def f(a, b, c):
        if a == R and b != L and (c != L or b == R):
            return R
        if c == L and b != R and (a != R or b == L):
            return L
        return Z

    return LocalRule.from_function(GLIDERS, -1, 1, f)


def _lonely_rule() -> LocalRule:
    CR, CL, AR, AL = 0, 1, 2, 3  # > , < , -> , <-

    def f(a, b, c):
        if a == AR and b == CL:
            return AR
        if a != CR and b == AL:
            return AR
        if a == CR and b == AL:
            return CL
        if b == AR and c == CL:
            return CR
        if b == AR and c != CL:
            return AL
        if b == CR and c == AL:
            return AL
        return b

    return LocalRule.from_function(LONELY, -1, 1, f)


@dataclass(frozen=True)
class ZooEntry:
    name: str
    rule: LocalRule
    expected_verdict: str
    expected_ae: Optional[tuple[Fraction, ...]]  # slopes, None = unspecified
    notes: str


def _entries() -> dict:
    min_rule = _min_rule()
    sminv = shift_composed_rule(min_rule, -1)  # min of the left pair
    entries = [
        ZooEntry(
            "shift", _shift_rule(), "Class2_EquicontinuousDirection",
            (Fraction(-1),),
            "left shift; reversible, equicontinuous along slope -1 only",
        ),
        ZooEntry(
            "identity", _identity_rule(), "Class2_EquicontinuousDirection",
            (Fraction(0),),
            "identity map; equicontinuous along slope 0 only",
        ),
        ZooEntry(
            "min", min_rule, "Class3_AEInterval",
            tuple(Fraction(n, 4) for n in range(-4, 1)),
            "pairwise minimum; 0 is spreading, almost equicontinuous on [-1,0]",
        ),
        ZooEntry(
            "min3", _min3_rule(), "Class3_AEInterval",
            tuple(Fraction(n, 4) for n in range(-4, 5)),
            "three-neighbor minimum; almost equicontinuous on [-1,1]",
        ),
        ZooEntry(
            "just-gliders", _gliders_rule(), "Class5_SensitiveEverywhere",
            (),
            "annihilating particles on a 0 background; sensitive in every direction",
        ),
        ZooEntry(
            "lonely-gliders", _lonely_rule(), "Class4_SingleAEDirection",
            (Fraction(0),),
            "reversible bouncing arrows; surjective, one almost equicontinuous direction",
        ),
        ZooEntry(
            "min-x-sminv", product_rule(min_rule, sminv),
            "Class4p_SingleAEDirection_FiniteGLS", (Fraction(0),),
            "product of opposite-leaning minima; single almost equicontinuous "
            "direction with a finite generic limit set",
        ),
        ZooEntry(
            "sminv-x-shift", product_rule(sminv, _shift_rule()),
            "Class5_SensitiveEverywhere", (),
            "left-pair minimum times shift; no common almost equicontinuous direction",
        ),
        ZooEntry(
            "const0", _const0_rule(), "Class1_Nilpotent", None,
            "constant map to 0; nilpotent in one step",
        ),
    ]
    return {e.name: e for e in entries}


_ZOO = None


def zoo_names() -> list[str]:
    return list(_zoo())


def _zoo() -> dict:
    global _ZOO
    if _ZOO is None:
        _ZOO = _entries()
    return _ZOO


def builtin(name: str) -> ZooEntry:
    try:
        return _zoo()[name]
    except KeyError:
        raise ValueError(
            f"unknown builtin rule {name!r}; known: {', '.join(_zoo())}"
        ) from None


_GAMMA = {0: -1, 1: 0, 2: +1}  # < , 0 , >


def _check_gliders_alphabet(alphabet: Alphabet):
    if alphabet != GLIDERS:
        raise ValueError("expected the just-gliders alphabet")


def is_right_balanced(w: Word) -> bool:
    """No prefix of w sends a net particle to the left: all prefix sums of
    gamma (+1 for >, 0 for 0, -1 for <) are nonnegative."""
    _check_gliders_alphabet(w.alphabet)
    s = 0
    for a in w.letters:
        s += _GAMMA[a]
        if s < 0:
            return False
    return True


def is_left_balanced(w: Word) -> bool:
    """Mirror condition: all suffix sums of gamma are nonpositive."""
    _check_gliders_alphabet(w.alphabet)
    s = 0
    for a in reversed(w.letters):
        s += _GAMMA[a]
        if s > 0:
            return False
    return True


def gliders_arrow_oracle(x: PeriodicConfig, t: int, k: int) -> bool:
    """Closed-form test for F^t(x)_k = > without simulation: the arrow must
    start at cell k-t and the pattern x_[k-t+1, k+t] must be right-balanced."""
    _check_gliders_alphabet(x.alphabet)
    if t < 0:
        raise ValueError("t must be >= 0")
    if x.cell(-t + k) != 2:
        return False
    return is_right_balanced(x.cells(-t + k + 1, t + k))
