"""Trace oracle semantics, cross-checked against a direct evaluator."""

import random

from hypothesis import given, settings, strategies as st

from mpltl import formula as F
from mpltl.difftest import random_formula
from mpltl.oracle import check_trace, eval_on_lasso, naive_eval
from mpltl.pipeline import prepare
from mpltl.trace import LassoTrace


def _random_trace(rng, atoms, k, time_model):
    states = [set(a for a in atoms if rng.random() < 0.5)
              for _ in range(k + 1)]
    lf = rng.randint(1, k)
    lp = None
    if time_model == "bi":
        # keep the two loop writes from clobbering each other
        lp = rng.randint(0, k - 2)
        states[lp + 1] = states[0]
    states[k] = states[lf - 1]
    tr = LassoTrace(k=k, states=states, lf=lf, lp=lp)
    tr.validate()
    return tr


def test_oracle_agrees_with_naive_evaluator():
    rng = random.Random(6)
    for _ in range(300):
        tm = rng.choice(("mono", "bi"))
        k = rng.randint(2, 8)
        tr = _random_trace(rng, ("p", "q"), k, tm)
        f = random_formula(rng, atoms=("p", "q"), depth=4, max_const=4)
        core = prepare(f, "metric")
        for at in (0, rng.randint(0, k)):
            assert eval_on_lasso(core, tr, tm, at) == \
                naive_eval(core, tr, tm, at), (f, tm, k, at)


def test_oracle_agrees_on_tau_expanded_forms():
    rng = random.Random(7)
    for _ in range(150):
        tm = rng.choice(("mono", "bi"))
        k = rng.randint(2, 7)
        tr = _random_trace(rng, ("p", "q"), k, tm)
        f = random_formula(rng, atoms=("p", "q"), depth=3, max_const=3)
        a = eval_on_lasso(prepare(f, "metric"), tr, tm)
        b = eval_on_lasso(prepare(f, "nonmetric"), tr, tm)
        assert a == b, (f, tm, k)


def test_exact_eventually_on_a_concrete_trace():
    # p only at instant 3; loop repeats instants 2..4
    tr = LassoTrace(k=4, states=[set(), set(), set(), {"p"}, set()], lf=3)
    f = prepare(F.ev_eq(F.atom("p"), 3), "metric")
    assert eval_on_lasso(f, tr, "mono", 0)
    assert not eval_on_lasso(f, tr, "mono", 1)
    # from instant 4 the word continues 3,4,3,4,... so p is 3 ahead
    assert eval_on_lasso(prepare(F.ev_eq(F.atom("p"), 3), "metric"),
                         tr, "mono", 4)
    assert not eval_on_lasso(prepare(F.ev_eq(F.atom("p"), 2), "metric"),
                             tr, "mono", 4)


def test_past_window_near_the_origin_is_truncated():
    tr = LassoTrace(k=2, states=[{"p"}, set(), set()], lf=2)
    pev = prepare(F.pev_le(F.atom("p"), 5), "metric")
    assert eval_on_lasso(pev, tr, "mono", 0)
    palw = prepare(F.palw_le(F.atom("p"), 5), "metric")
    assert not eval_on_lasso(palw, tr, "mono", 0)
    wpalw = prepare(F.wpalw_le(F.atom("p"), 5), "metric")
    assert eval_on_lasso(wpalw, tr, "mono", 0)


def test_check_trace_reports_a_culprit():
    tr = LassoTrace(k=2, states=[set(), set(), set()], lf=1)
    rep = check_trace(prepare(F.ev(F.atom("p")), "metric"), tr, "mono")
    assert not rep.ok
    assert rep.failure is not None


def test_check_trace_accepts_loopless_traces():
    tr = LassoTrace(k=2, states=[{"p"}, {"p"}, {"p"}])
    rep = check_trace(prepare(F.alw(F.atom("p")), "metric"), tr, "mono")
    assert rep.ok


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 30), st.integers(2, 7))
def test_negation_flips_the_oracle(seed, k):
    rng = random.Random(seed)
    tm = rng.choice(("mono", "bi"))
    tr = _random_trace(rng, ("p", "q"), k, tm)
    f = random_formula(rng, atoms=("p", "q"), depth=3, max_const=3)
    a = eval_on_lasso(prepare(f, "metric"), tr, tm)
    b = eval_on_lasso(prepare(F.not_(f), "metric"), tr, tm)
    assert a != b
