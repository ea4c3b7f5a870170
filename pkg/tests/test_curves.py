"""Directions: evaluation, increments, and the comparison order."""

from fractions import Fraction

import pytest

from dirca import Curve, Verdict, compare, in_interval, max_variation, parse_curve
from dirca.curves import Interval, curve_eval, increment_range


class TestEvaluation:
    def test_linear_floor(self):
        h = Curve.linear(Fraction(-1, 2))
        assert [h(t) for t in range(5)] == [0, -1, -1, -2, -2]

    def test_linear_intercept(self):
        h = Curve.linear(Fraction(1), intercept=3)
        assert h(0) == 3 and h(4) == 7

    def test_tabulated_tail_repeats(self):
        h = Curve.tabulated([2, 0, -1])
        assert [h(t) for t in range(6)] == [0, 2, 2, 1, 0, -1]

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            curve_eval(Curve.linear(0), -1)

    def test_exactly_one_representation(self):
        with pytest.raises(ValueError):
            Curve(slope=Fraction(1), increments=(1,))
        with pytest.raises(ValueError):
            Curve()


class TestIncrements:
    def test_linear_increment_range(self):
        assert increment_range(Curve.linear(Fraction(-1, 2))) == (-1, 0)
        assert increment_range(Curve.linear(Fraction(3, 2))) == (1, 2)
        assert increment_range(Curve.linear(2)) == (2, 2)

    def test_tabulated_increment_range(self):
        assert increment_range(Curve.tabulated([3, -2, 1])) == (-2, 3)

    def test_max_variation(self):
        assert max_variation(Curve.linear(Fraction(-1, 2))) == 1
        assert max_variation(Curve.tabulated([3, -2, 1])) == 3
        assert max_variation(Curve.linear(0)) == 0


class TestParsing:
    def test_rational_slopes(self):
        assert parse_curve("-1/2").slope == Fraction(-1, 2)
        assert parse_curve("3").slope == Fraction(3)

    def test_tabulated(self):
        assert parse_curve("tab:1,0,-1").increments == (1, 0, -1)

    def test_roundtrip_text(self):
        for s in ("-1/2", "3", "tab:1,0,-1"):
            assert parse_curve(parse_curve(s).text()) == parse_curve(s)

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_curve("north")
        with pytest.raises(ValueError):
            parse_curve("tab:")


class TestCompare:
    def test_equivalent_same_tail(self):
        a = Curve.linear(Fraction(1, 2))
        b = Curve.linear(Fraction(1, 2), intercept=100)
        assert compare(a, b).verdict == Verdict.EQUIVALENT

    def test_far_below_with_witness(self):
        a = Curve.tabulated([5, 0])
        b = Curve.tabulated([0, 1])
        order = compare(a, b, horizon=64)
        assert order.verdict == Verdict.FAR_BELOW
        t, ha, hb = order.witness
        assert ha == a(t) and hb == b(t) and ha < hb

    def test_far_above_linear_needs_no_witness(self):
        order = compare(Curve.linear(1), Curve.linear(0))
        assert order.verdict == Verdict.FAR_ABOVE

    def test_unknown_at_short_horizon(self):
        # huge head start, slope difference only pays off much later
        a = Curve.tabulated([1000, 0])
        b = Curve.linear(1)
        assert compare(a, b, horizon=10).verdict == Verdict.UNKNOWN_AT_HORIZON
        assert compare(a, b, horizon=2000).verdict == Verdict.FAR_BELOW

    def test_tabulated_vs_its_tail(self):
        a = Curve.tabulated([7, -1])
        b = Curve.linear(-1)
        assert compare(a, b).verdict == Verdict.EQUIVALENT


class TestInterval:
    def test_interior(self):
        h = Curve.linear(Fraction(-1, 2))
        assert in_interval(h, Curve.linear(-1), Curve.linear(0)) == Interval.INSIDE_INTERIOR

    def test_boundary(self):
        assert in_interval(Curve.linear(-1), Curve.linear(-1), Curve.linear(0)) == Interval.INSIDE

    def test_outside(self):
        assert in_interval(Curve.linear(2), Curve.linear(-1), Curve.linear(0)) == Interval.OUTSIDE

    def test_malformed_interval(self):
        with pytest.raises(ValueError):
            in_interval(Curve.linear(0), Curve.linear(1), Curve.linear(0))
