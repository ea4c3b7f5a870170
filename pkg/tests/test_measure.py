"""Exact Bernoulli word probabilities and their Monte Carlo agreement."""

import itertools
import math
from fractions import Fraction

import pytest

from dirca import (
    BernoulliMeasure,
    Curve,
    Word,
    builtin,
    generic_limit_sample,
    mu_word_probability,
)
from dirca.measure import mu_limit_probe

MIN = builtin("min").rule
GLIDERS = builtin("just-gliders").rule
BIN = MIN.alphabet


def brute_probability(rule, mu, w, t):
    """Oracle: sum the weights of all preimage words of w at time t."""
    d1 = t * (rule.diameter - 1)
    k = rule.alphabet.size
    total = Fraction(0)
    for pre in itertools.product(range(k), repeat=len(w) + d1):
        if rule.iterate_word(pre, t) == w.letters:
            p = Fraction(1)
            for a in pre:
                p *= mu.weights[a]
            total += p
    return total


class TestMeasure:
    def test_weight_validation(self):
        with pytest.raises(ValueError):
            BernoulliMeasure(BIN, (Fraction(1, 2),))
        with pytest.raises(ValueError):
            BernoulliMeasure(BIN, (Fraction(1, 2), Fraction(1, 3)))
        with pytest.raises(ValueError):
            BernoulliMeasure(BIN, (Fraction(0), Fraction(1)))

    def test_word_weight(self):
        mu = BernoulliMeasure.from_weights(BIN, (Fraction(1, 4), Fraction(3, 4)))
        w = BIN.word_from_text("011")
        assert mu.word_weight(w) == Fraction(9, 64)


class TestExactProbabilities:
    def test_against_brute_force(self):
        mu3 = BernoulliMeasure.uniform(GLIDERS.alphabet)
        mu2 = BernoulliMeasure.from_weights(BIN, (Fraction(1, 3), Fraction(2, 3)))
        cases = [
            (GLIDERS, mu3, GLIDERS.alphabet.word_from_text(">"), 2),
            (GLIDERS, mu3, GLIDERS.alphabet.word_from_text("0>"), 1),
            (MIN, mu2, BIN.word_from_text("10"), 3),
            (MIN, mu2, BIN.word_from_text("1"), 4),
        ]
        for rule, mu, w, t in cases:
            assert mu_word_probability(rule, mu, w, t) == brute_probability(rule, mu, w, t)

    def test_gliders_arrow_value(self):
        mu = BernoulliMeasure.uniform(GLIDERS.alphabet)
        arrow = GLIDERS.alphabet.word_from_text(">")
        assert mu_word_probability(GLIDERS, mu, arrow, 1) == Fraction(5, 27)

    def test_min_one_decays_geometrically(self):
        mu = BernoulliMeasure.uniform(BIN)
        one = BIN.word_from_text("1")
        for t in range(11):
            assert mu_word_probability(MIN, mu, one, t) == Fraction(1, 2 ** (t + 1))

    def test_time_zero_is_the_measure(self):
        mu = BernoulliMeasure.from_weights(BIN, (Fraction(1, 5), Fraction(4, 5)))
        for w in BIN.all_words(3):
            assert mu_word_probability(MIN, mu, w, 0) == mu.word_weight(w)

    def test_empty_word(self):
        mu = BernoulliMeasure.uniform(BIN)
        assert mu_word_probability(MIN, mu, Word(BIN, ()), 3) == 1


class TestProbabilityTable:
    def test_rows_sum_to_one(self):
        mu = BernoulliMeasure.uniform(GLIDERS.alphabet)
        table = mu_limit_probe(GLIDERS, mu, 2, 6)
        for row in table.rows:
            assert sum(row.values()) == 1

    def test_marginal_consistency(self):
        """P[t][w] = sum_a P[t][wa]: rows of adjacent lengths agree."""
        mu = BernoulliMeasure.uniform(BIN)
        t1 = mu_limit_probe(MIN, mu, 1, 5)
        t2 = mu_limit_probe(MIN, mu, 2, 5)
        for t in range(6):
            for w in BIN.all_words(1):
                ext = sum(
                    t2.rows[t][Word(BIN, w.letters + (a,))] for a in range(2)
                )
                assert t1.rows[t][w] == ext

    def test_arrow_probability_strictly_decreasing(self):
        mu = BernoulliMeasure.uniform(GLIDERS.alphabet)
        arrow = GLIDERS.alphabet.word_from_text(">")
        table = mu_limit_probe(GLIDERS, mu, 1, 10)
        probs = [table.rows[t][arrow] for t in range(1, 11)]
        assert all(a > b for a, b in zip(probs, probs[1:]))

    def test_dump_format(self):
        mu = BernoulliMeasure.uniform(BIN)
        table = mu_limit_probe(MIN, mu, 1, 1)
        lines = table.dump().splitlines()
        assert lines[0].split("\t")[:3] == ["0", "0", "1/2"]
        assert len(lines) == 4


class TestMonteCarloAgreement:
    def test_empirical_matches_exact(self):
        """Sampled frequencies track the exact probabilities within four
        standard deviations."""
        mu = BernoulliMeasure.uniform(GLIDERS.alphabet)
        n = 10000
        for t in (2, 5, 8):
            s = generic_limit_sample(GLIDERS, Curve.linear(0), mu, n, t, t, 1, seed=3)
            for w in GLIDERS.alphabet.all_words(1):
                p = float(mu_word_probability(GLIDERS, mu, w, t))
                emp = s.histogram.get(w, 0) / n
                tol = 4 * math.sqrt(p * (1 - p) / n) + 1e-9
                assert abs(emp - p) <= tol
