"""Lasso trace structure, wrapping and completion."""

import json

import pytest

from mpltl.trace import LassoTrace, complete_trace


def _trace():
    # loop over positions 2..4: S_1 == S_4 must hold
    states = [{"p"}, {"q"}, {"p", "q"}, set(), {"q"}]
    return LassoTrace(k=4, states=states, lf=2)


def test_state_count_is_checked():
    with pytest.raises(ValueError):
        LassoTrace(k=3, states=[set(), set()])


def test_validate_rejects_broken_forward_loop():
    tr = LassoTrace(k=2, states=[{"p"}, set(), {"p"}], lf=2)
    with pytest.raises(ValueError):
        tr.validate()


def test_validate_rejects_broken_backward_loop():
    tr = LassoTrace(k=2, states=[{"p"}, set(), set()], lf=1, lp=0)
    tr.states[1] = frozenset({"q"})
    with pytest.raises(ValueError):
        tr.validate()


def test_forward_wrapping():
    tr = _trace()
    # period 3, so position 5 repeats position 2
    assert tr.holds("p", 5) == tr.holds("p", 2)
    assert tr.holds("q", 7) == tr.holds("q", 4)
    assert tr.holds("q", 100) == tr.holds("q", 2 + (100 - 2) % 3)


def test_backward_wrapping():
    states = [{"a"}, set(), {"a"}, set(), set()]
    tr = LassoTrace(k=4, states=states, lf=4, lp=1)
    # backward period 2: position -1 repeats position 1
    assert tr.holds("a", -1) == tr.holds("a", 1)
    assert tr.holds("a", -2) == tr.holds("a", 0)
    assert tr.holds("a", -7) == tr.holds("a", 1)


def test_complete_trace_stutters_missing_loops():
    tr = LassoTrace(k=2, states=[{"p"}, {"q"}, {"q"}])
    done, offset = complete_trace(tr, "bi")
    done.validate()
    assert offset == 1
    assert done.lf is not None and done.lp is not None
    assert done.holds("q", 10)
    assert done.holds("p", -10)


def test_complete_trace_keeps_existing_loops():
    tr = _trace()
    done, offset = complete_trace(tr, "mono")
    assert offset == 0
    assert done.lf == 2
    assert done.lp is None


def test_to_json_and_render():
    tr = _trace()
    data = json.loads(tr.to_json())
    assert data["k"] == 4
    assert data["lf"] == 2
    text = tr.render()
    assert "p" in text and "q" in text
