"""Piecewise-constant functions: evaluation, canonical form, integrals, I/O."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from levelmeasure.numeric import INF
from levelmeasure.stepfun import StepFunction

F = Fraction
dyadic = st.integers(min_value=0, max_value=64).map(lambda k: F(k, 8))
thirds = st.integers(min_value=0, max_value=30).map(lambda k: F(k, 3))


@st.composite
def step_functions(draw, attach=st.sampled_from(["left", "right"]), values=dyadic):
    bps = sorted(set(draw(st.lists(st.one_of(dyadic, thirds), max_size=6))) - {0})
    vals = draw(st.lists(values, min_size=len(bps) + 1, max_size=len(bps) + 1))
    return StepFunction(tuple(bps), tuple(vals), draw(attach))


def test_left_attached_pieces_include_right_ends():
    s = StepFunction((F(1, 4), 1), (1, F(1, 2), 0))
    assert s(0) == 1 and s(F(1, 4)) == 1
    assert s(F(1, 2)) == F(1, 2) and s(1) == F(1, 2)
    assert s(F(11, 10)) == 0


def test_right_attached_pieces_include_left_ends():
    s = StepFunction((F(1, 4), 1), (3, 2, 0), "right")
    assert s(0) == 3 and s(F(1, 4)) == 2 and s(1) == 0


def test_validation():
    with pytest.raises(ValueError):
        StepFunction((1,), (1,))
    with pytest.raises(ValueError):
        StepFunction((2, 1), (1, 1, 1))
    with pytest.raises(ValueError):
        StepFunction((), (1,), "middle")
    with pytest.raises(ValueError):
        StepFunction((), (1,))(-1)


def test_build_merges_equal_pieces_and_drops_leading_zero():
    s = StepFunction.build([1, 2, 3], [5, 5, 4, 4])
    assert s.breakpoints == (2,) and s.values == (5, 4)
    r = StepFunction.build([0, 1], [9, 3, 0], "right")
    assert r.breakpoints == (1,) and r.values == (3, 0)


@given(step_functions())
def test_build_preserves_pointwise_values(s):
    canon = StepFunction.build(s.breakpoints, s.values, s.attach)
    probes = {0, *s.breakpoints, *(b + F(1, 97) for b in s.breakpoints)}
    assert all(canon(a) == s(a) for a in probes)
    assert all(u != v for u, v in zip(canon.values, canon.values[1:]))


def test_integral_values():
    assert StepFunction((F(1, 4), 1), (1, F(1, 2), 0)).integral() == F(5, 8)
    assert StepFunction((), (0,)).integral() == 0
    assert StepFunction((1,), (1, 2)).integral() == INF
    assert StepFunction((1,), (INF, 0)).integral() == INF


@given(step_functions())
def test_integral_is_sum_over_pieces(s):
    if s.values[-1] != 0:
        assert s.integral() == INF
        return
    edges = (0, *s.breakpoints)
    expected = sum((hi - lo) * v for lo, hi, v in zip(edges, edges[1:], s.values))
    assert s.integral() == expected


@given(step_functions(values=st.one_of(dyadic, thirds)))
def test_json_round_trip(s):
    assert StepFunction.from_json(s.to_json()) == s


def test_json_uses_inf_and_rational_strings():
    s = StepFunction((F(1, 3),), (INF, F(1, 2)))
    text = s.to_json()
    assert '"1/3"' in text and '"inf"' in text and "0.5" in text
    assert StepFunction.from_json(text) == s


def test_csv_and_describe():
    s = StepFunction((F(1, 4), 1), (1, F(1, 2), 0))
    assert s.to_csv() == "start,value\n0,1\n0.25,0.5\n1,0\n"
    assert s.describe() == "[0, 0.25] -> 1\n(0.25, 1] -> 0.5\n(1, inf) -> 0"
    r = StepFunction((1,), (2, 0), "right")
    assert r.describe() == "[0, 1) -> 2\n[1, inf) -> 0"
