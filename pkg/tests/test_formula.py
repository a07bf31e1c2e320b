"""Formula construction, desugaring and normal forms."""

import random

import pytest

from mpltl import formula as F
from mpltl.difftest import random_formula


def test_atoms_are_interned():
    assert F.atom("p") is F.atom("p")
    assert F.atom("p") is not F.atom("q")


def test_formulas_are_immutable():
    f = F.and_(F.atom("p"), F.atom("q"))
    with pytest.raises(AttributeError):
        f.kind = "or"


def test_atom_name_validation():
    with pytest.raises(ValueError):
        F.atom("")
    with pytest.raises(ValueError):
        F.atom(3)


def test_zero_bound_operators_desugar_to_operand():
    p = F.atom("p")
    assert F.desugar(F.ev_eq(p, 0)) is p
    assert F.desugar(F.pev_eq(p, 0)) is p
    assert F.desugar(F.alw_le(p, 0)) is p


def test_desugar_output_is_core_after_pnf():
    rng = random.Random(2)
    for _ in range(200):
        f = random_formula(rng, depth=4, max_const=4)
        core = F.to_pnf(F.desugar(f))
        assert F.is_core(core), core


def _no_negated_compounds(f):
    if f.kind == "not" and f.left.kind != "atom":
        return False
    return all(_no_negated_compounds(c) for c in f.children())


def test_pnf_pushes_negation_to_atoms():
    rng = random.Random(3)
    for _ in range(200):
        f = random_formula(rng, depth=4, max_const=4)
        core = F.to_pnf(F.desugar(f))
        assert _no_negated_compounds(core), core


def test_closure_contains_all_subformulas():
    p, q = F.atom("p"), F.atom("q")
    f = F.until(p, F.and_(q, F.next_(p)))
    cl = F.closure(f)
    for g in (f, p, q, F.next_(p)):
        assert g in cl


def test_atoms_of_collects_names():
    f = F.since(F.atom("a"), F.or_(F.atom("b"), F.atom("a")))
    assert F.atoms_of(f) == ["a", "b"]


def test_max_metric_constant():
    f = F.and_(F.ev_le(F.atom("p"), 7), F.pev_eq(F.atom("q"), 3))
    assert F.max_metric_constant(f) == 7


def test_tau_expand_unrolls_exact_eventually():
    p = F.atom("p")
    core = F.to_pnf(F.desugar(F.ev_eq(p, 3)))
    expanded = F.tau_expand(core)
    assert expanded is F.next_(F.next_(F.next_(p)))


def test_tau_expanded_formulas_have_no_metric_operators():
    rng = random.Random(4)
    for _ in range(100):
        f = random_formula(rng, depth=4, max_const=4)
        core = F.tau_expand(F.to_pnf(F.desugar(f)))
        assert not any(g.kind in F.METRIC for g in F.closure(core))
