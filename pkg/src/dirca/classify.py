"""Assemble exact certificates and horizon-bounded evidence into a verdict.

Exact facts (nilpotency certificate, surjectivity, spreading states) decide
what they can; the rest of the pipeline is a slope-grid exploration whose
conclusions are explicitly horizon-bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .blocking import detect_spreading, search_blocking
from .curves import Curve
from .errors import CapExceeded
from .langs import NilpotencyReport, generic_limit_sample, nilpotency_probe
from .langs import is_surjective
from .measure import BernoulliMeasure
from .rules import LocalRule, minimal_extents

CLASS1 = "Class1_Nilpotent"
CLASS2 = "Class2_EquicontinuousDirection"
CLASS3 = "Class3_AEInterval"
CLASS4 = "Class4_SingleAEDirection"
CLASS4P = "Class4p_SingleAEDirection_FiniteGLS"
CLASS5 = "Class5_SensitiveEverywhere"
INCONCLUSIVE = "Inconclusive"

CERTIFIED = "Certified"
HORIZON_BOUNDED = "HorizonBounded"


@dataclass(frozen=True)
class McParams:
    samples: int = 200
    time: int = 40
    window: int = 4
    seed: int = 0


@dataclass(frozen=True)
class SlopeFinding:
    slope: Fraction
    hits: tuple  # ((Word, offset), ...) certified StrongBlocking
    ae: bool
    equicontinuous: bool
    skipped: bool = False  # enumeration cap hit for this slope


@dataclass(frozen=True)
class ClassReport:
    rule_id: str
    verdict: str
    confidence: str
    surjective: bool
    spreading: tuple  # sorted symbol tokens
    nilpotency: NilpotencyReport
    findings: tuple  # SlopeFinding per grid slope, in grid order
    ae_slopes: tuple
    equicontinuous_slopes: tuple
    monochrome_rate: Optional[float]
    word_len: int
    horizon: int
    notes: tuple = ()

    def machine_block(self) -> str:
        lines = [
            f"verdict={self.verdict}",
            f"confidence={self.confidence}",
            "ae_slopes=" + ",".join(str(s) for s in self.ae_slopes),
            f"surjective={'true' if self.surjective else 'false'}",
            "spreading=" + ",".join(self.spreading),
            "equicontinuous_slopes="
            + ",".join(str(s) for s in self.equicontinuous_slopes),
            f"nilpotent={'true' if self.nilpotency.nilpotent else 'false'}",
        ]
        if self.monochrome_rate is not None:
            lines.append(f"monochrome_rate={self.monochrome_rate:.3f}")
        return "\n".join(lines) + "\n"


def default_slope_grid(rule: LocalRule) -> tuple[Fraction, ...]:
    """Multiples of 1/4 spanning [-r_+ - 1, -r_- + 1] (minimal extents)."""
    rm, rp = minimal_extents(rule)
    lo, hi = -rp - 1, -rm + 1
    return tuple(Fraction(n, 4) for n in range(4 * lo, 4 * hi + 1))


PROBE_TABLE_CAP = 1 << 20  # smaller than TABLE_CAP: probe cost, not soundness


def _nilpotency_horizon(rule: LocalRule, cap_t: int = 8) -> int:
    k = rule.alphabet.size
    d = rule.diameter
    t = 1
    while t < cap_t and k ** ((t + 1) * (d - 1) + 1) <= PROBE_TABLE_CAP:
        t += 1
    return t


def _monochrome_rate(rule: LocalRule, slope: Fraction, mc: McParams) -> float:
    mu = BernoulliMeasure.uniform(rule.alphabet)
    sampled = generic_limit_sample(
        rule, Curve.linear(slope), mu, mc.samples, mc.time, mc.time,
        mc.window, mc.seed,
    )
    mono = sum(
        c for w, c in sampled.histogram.items() if len(set(w.letters)) == 1
    )
    return mono / sampled.total()


def classify(
    rule: LocalRule,
    slope_grid=None,
    word_len: int = 2,
    horizon: int = 50,
    mc: McParams = McParams(),
    rule_id: str = "rule",
) -> ClassReport:
    """Grid-of-slopes classification.

    Confidence is Certified only when an exact fact (nilpotency certificate
    or spreading state) decided the verdict; everything inferred from
    blocking searches is HorizonBounded evidence.
    """
    grid = tuple(slope_grid) if slope_grid is not None else default_slope_grid(rule)
    if not grid:
        raise ValueError("slope grid must be nonempty")
    notes = []

    nilp = nilpotency_probe(rule, _nilpotency_horizon(rule))
    surj = is_surjective(rule)
    spreading = tuple(sorted(detect_spreading(rule)))

    findings = []
    for slope in grid:
        try:
            hits = tuple(search_blocking(rule, Curve.linear(slope), word_len, horizon))
        except CapExceeded:
            findings.append(SlopeFinding(slope, (), False, False, skipped=True))
            notes.append(f"slope {slope}: enumeration cap hit, slope skipped")
            continue
        full = [w for w in rule.alphabet.all_words(word_len)]
        per_word = {
            w.letters: {s for (v, s) in hits if v.letters == w.letters}
            for w in full
        }
        shared = None
        for offs in per_word.values():
            shared = offs if shared is None else (shared & offs)
            if not shared:
                break
        equi = bool(shared)
        findings.append(SlopeFinding(slope, hits, bool(hits), equi))

    ae = tuple(f.slope for f in findings if f.ae)
    equi_slopes = tuple(f.slope for f in findings if f.equicontinuous)
    ae_idx = [i for i, f in enumerate(findings) if f.ae]
    contiguous = not ae_idx or ae_idx == list(range(ae_idx[0], ae_idx[-1] + 1))

    mono_rate = None
    if nilp.nilpotent:
        verdict, confidence = CLASS1, CERTIFIED
        if surj and rule.alphabet.size > 1:
            verdict, confidence = INCONCLUSIVE, CERTIFIED
            notes.append("contradictory exact facts: nilpotent and surjective")
    elif spreading:
        verdict, confidence = CLASS3, CERTIFIED
        if surj:
            verdict, confidence = INCONCLUSIVE, CERTIFIED
            notes.append("contradictory exact facts: spreading state and surjective")
    elif not contiguous:
        verdict, confidence = INCONCLUSIVE, HORIZON_BOUNDED
        notes.append("almost equicontinuous slopes are not contiguous in the grid")
    elif len(ae) >= 2:
        if surj:
            verdict, confidence = INCONCLUSIVE, HORIZON_BOUNDED
            notes.append("surjective rule cannot be in Class 3; evidence conflicts")
        else:
            verdict, confidence = CLASS3, HORIZON_BOUNDED
    elif len(ae) == 1:
        if equi_slopes == ae:
            verdict, confidence = CLASS2, HORIZON_BOUNDED
        else:
            mono_rate = _monochrome_rate(rule, ae[0], mc)
            if mono_rate >= 0.95 and not surj:
                verdict, confidence = CLASS4P, HORIZON_BOUNDED
            else:
                verdict, confidence = CLASS4, HORIZON_BOUNDED
    else:
        verdict, confidence = CLASS5, HORIZON_BOUNDED
        if nilp.certified_not:
            notes.append(f"not nilpotent: {nilp.reason}")

    return ClassReport(
        rule_id, verdict, confidence, surj, spreading, nilp,
        tuple(findings), ae, equi_slopes, mono_rate, word_len, horizon,
        tuple(notes),
    )
