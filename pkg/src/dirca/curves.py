"""Directions h : N -> Z of bounded variation, and their comparison order.

Two representations are supported:

* Linear(slope, intercept): h(t) = floor(slope * t) + intercept, slope an
  exact rational.
* Tabulated(increments): h(0) = 0 and h(t+1) - h(t) given by the increment
  list, with the final increment repeated forever.  The tail is therefore
  affine, which is what makes the comparison relations decidable.

Comparison verdicts are certificates: an exact verdict is only emitted when
the eventually-affine analysis warrants it, and a horizon-bounded
contradiction downgrades the answer to UnknownAtHorizon instead of lying.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction


class Verdict(enum.Enum):
    EQUIVALENT = "Equivalent"
    STRICTLY_BELOW = "StrictlyBelow"
    FAR_BELOW = "FarBelow"
    STRICTLY_ABOVE = "StrictlyAbove"
    FAR_ABOVE = "FarAbove"
    INCOMPARABLE = "Incomparable"
    UNKNOWN_AT_HORIZON = "UnknownAtHorizon"


@dataclass(frozen=True)
class CurveOrder:
    verdict: Verdict
    witness: tuple[int, int, int] | None = None  # (t, h(t), h'(t))


class Interval(enum.Enum):
    INSIDE = "Inside"
    INSIDE_INTERIOR = "InsideInterior"
    OUTSIDE = "Outside"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Curve:
    """A direction.  Exactly one of (slope, intercept) / increments is set."""

    slope: Fraction | None = None
    intercept: int = 0
    increments: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.slope is None) == (self.increments is None):
            raise ValueError("curve must be either linear or tabulated")
        if self.increments is not None and len(self.increments) == 0:
            raise ValueError("tabulated curve needs at least one increment")

    @classmethod
    def linear(cls, slope, intercept: int = 0) -> "Curve":
        return cls(slope=Fraction(slope), intercept=intercept)

    @classmethod
    def tabulated(cls, increments) -> "Curve":
        return cls(increments=tuple(int(d) for d in increments))

    @property
    def is_linear(self) -> bool:
        return self.slope is not None

    def __call__(self, t: int) -> int:
        return curve_eval(self, t)

    def tail_slope(self) -> Fraction:
        """The asymptotic slope: exact for both representations."""
        if self.is_linear:
            return self.slope
        return Fraction(self.increments[-1])

    def text(self) -> str:
        if self.is_linear:
            s = str(self.slope)
            return s if self.intercept == 0 else f"{s}{self.intercept:+d}"
        return "tab:" + ",".join(str(d) for d in self.increments)

    def __str__(self):
        return self.text()


def parse_curve(text: str) -> Curve:
    """CLI format: a rational slope like `-1/2` or `3`, or `tab:d0,d1,...`."""
    text = text.strip()
    if text.startswith("tab:"):
        body = text[4:]
        try:
            incs = [int(p) for p in body.split(",") if p != ""]
        except ValueError:
            raise ValueError(f"bad tabulated curve {text!r}") from None
        if not incs:
            raise ValueError(f"bad tabulated curve {text!r}")
        return Curve.tabulated(incs)
    try:
        return Curve.linear(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad curve text {text!r}") from None


def curve_eval(h: Curve, t: int) -> int:
    if t < 0:
        raise ValueError("curves are defined on t >= 0")
    if h.is_linear:
        num = h.slope.numerator * t
        return num // h.slope.denominator + h.intercept
    incs = h.increments
    if t <= len(incs):
        return sum(incs[:t])
    return sum(incs) + incs[-1] * (t - len(incs))


def increment_range(h: Curve) -> tuple[int, int]:
    """Exact (min, max) of h(t+1) - h(t) over all t in N.

    For a linear curve the increments are periodic with the slope's
    denominator, so one denominator period suffices.
    """
    if h.is_linear:
        q = h.slope.denominator
        deltas = [curve_eval(h, t + 1) - curve_eval(h, t) for t in range(q)]
        return min(deltas), max(deltas)
    return min(h.increments), max(h.increments)


def max_variation(h: Curve, horizon: int = 1) -> int:
    """M_h = sup_t |h(t+1) - h(t)|, exact.  The horizon is only a sanity check."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    lo, hi = increment_range(h)
    m = max(abs(lo), abs(hi))
    observed = max(
        abs(curve_eval(h, t + 1) - curve_eval(h, t)) for t in range(horizon)
    )
    assert observed <= m
    return m


def _tail_params(h: Curve) -> tuple[Fraction, int]:
    """(slope, prefix length): for t >= prefix length, h(t) = h(pl) + slope*(t-pl)
    up to the bounded floor error for linear curves."""
    if h.is_linear:
        return h.slope, 0
    return Fraction(h.increments[-1]), len(h.increments)


def compare(h: Curve, h2: Curve, horizon: int = 32) -> CurveOrder:
    """Order h against h2: Equivalent when the difference stays bounded,
    FarBelow/FarAbove when h2 - h diverges to +/- infinity.

    Both representations are eventually affine, so slopes decide.  The
    prefix of a tabulated curve can only delay divergence; when the horizon
    is too short to look past it, UnknownAtHorizon is returned rather than
    an unverified certificate.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    s1, p1 = _tail_params(h)
    s2, p2 = _tail_params(h2)
    if s1 == s2:
        return CurveOrder(Verdict.EQUIVALENT)
    far_below = s1 < s2  # h eventually falls far below h2
    prefix = max(p1, p2)
    # find a horizon-bounded witness of the ordering past the prefix
    for t in range(prefix, horizon + 1):
        a, b = curve_eval(h, t), curve_eval(h2, t)
        if (b - a > 0) == far_below and a != b:
            verdict = Verdict.FAR_BELOW if far_below else Verdict.FAR_ABOVE
            return CurveOrder(verdict, witness=(t, a, b))
    if prefix == 0:
        # purely linear: no witness needed, slopes are exact
        verdict = Verdict.FAR_BELOW if far_below else Verdict.FAR_ABOVE
        return CurveOrder(verdict)
    return CurveOrder(Verdict.UNKNOWN_AT_HORIZON)


def in_interval(h: Curve, lo: Curve, hi: Curve, horizon: int = 32) -> Interval:
    """Locate h relative to the closed interval [lo, hi] of directions."""
    bound = compare(lo, hi, horizon)
    if bound.verdict in (Verdict.STRICTLY_ABOVE, Verdict.FAR_ABOVE):
        raise ValueError("malformed interval: lower bound above upper bound")
    against_lo = compare(h, lo, horizon).verdict
    against_hi = compare(h, hi, horizon).verdict
    if Verdict.UNKNOWN_AT_HORIZON in (against_lo, against_hi):
        return Interval.UNKNOWN
    if against_lo == Verdict.FAR_BELOW or against_hi == Verdict.FAR_ABOVE:
        return Interval.OUTSIDE
    if against_lo == Verdict.FAR_ABOVE and against_hi == Verdict.FAR_BELOW:
        return Interval.INSIDE_INTERIOR
    return Interval.INSIDE
