"""Encoding structure: variable allocation, banks and loop shape."""

import pytest

from mpltl import formula as F
from mpltl.encoder import VariableMap, metric_banks
from mpltl.pipeline import check_formula, encode, prepare


def test_metric_banks_take_the_largest_bound_per_operand():
    p = F.atom("p")
    f = F.and_(F.ev_le(p, 3), F.ev_eq(p, 7))
    core = prepare(f, "metric")
    future, past = metric_banks(F.closure(core), "mono")
    assert future[p] == 7
    assert past == {}


def test_past_banks_only_over_bi_infinite_time():
    f = prepare(F.pev_le(F.atom("p"), 4), "metric")
    _, past_mono = metric_banks(F.closure(f), "mono")
    _, past_bi = metric_banks(F.closure(f), "bi")
    assert past_mono == {}
    assert past_bi == {F.atom("p"): 4}


def test_variable_map_rejects_bad_time_model():
    with pytest.raises(ValueError):
        VariableMap(F.atom("p"), 4, "circular")


def test_formula_vars_cover_instants_zero_to_k_plus_one():
    p = F.atom("p")
    core = prepare(F.alw(p), "metric")
    vm, _ = encode(core, 6, "mono")
    assert vm.count_formula_vars([p]) == 8


def test_variable_allocation_is_deterministic():
    f = prepare(F.until(F.atom("p"), F.ev_eq(F.atom("q"), 3)), "metric")
    vm1, _ = encode(f, 5, "bi")
    vm2, _ = encode(f, 5, "bi")
    assert vm1.num_vars == vm2.num_vars
    assert vm1.names == vm2.names


def test_loop_invariants_on_sat_results():
    cases = [
        (F.alw(F.iff(F.atom("in"), F.ev_eq(F.atom("out"), 3))), 8, "bi"),
        (F.ev(F.and_(F.atom("p"), F.next_(F.not_(F.atom("p"))))), 6, "mono"),
        (F.since(F.atom("a"), F.atom("b")), 5, "bi"),
    ]
    for f, k, tm in cases:
        for encoder in ("metric", "nonmetric"):
            res = check_formula(f, k, tm, encoder=encoder)
            assert res.sat, (f, encoder)
            tr = res.trace
            tr.validate()  # checks S_{lf-1} == S_k and S_{lp+1} == S_0
            assert tr.lf is not None
            if tm == "bi":
                assert tr.lp is not None


def test_decoded_loop_selectors_are_unique():
    f = F.alw(F.ev(F.atom("p")))
    res = check_formula(f, 7, "mono", keep_cnf=True)
    assert res.sat
    # the trace decoder raised if more than one selector was set; also
    # check the model directly
    vm = res.vm
    from mpltl.solver import solve_embedded
    model = solve_embedded(res.cnf)
    hits = [i for i in range(1, 8) if model[vm.loop_sel[i]]]
    assert len(hits) == 1


def test_force_loops_rejects_prefix_only_witnesses():
    # p and next not p is satisfiable at k=1 only with the loop forced
    # open; with forced loops the two states cannot close into a lasso
    f = F.and_(F.atom("p"), F.next_(F.not_(F.atom("p"))))
    assert not check_formula(f, 1, "mono", force_loops=True).sat
    assert check_formula(f, 2, "mono", force_loops=True).sat
