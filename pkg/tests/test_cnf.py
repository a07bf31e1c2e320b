"""Clausification structure and DIMACS I/O."""

import io

from mpltl.cnf import clausify, read_model, write_dimacs
from mpltl.constraints import ConstraintSet, conj, disj, iff, imp, neg


class _FakeVm:
    def __init__(self, n):
        self.num_vars = n
        self.names = {}

    def var_counts(self):
        return {}


def _clausify(*items, nvars=10):
    cs = ConstraintSet()
    for e in items:
        cs.add("prop", e)
    return clausify(cs, _FakeVm(nvars))


def test_literal_iff_conjunction_reuses_the_head():
    # a iff (b and c): three clauses, no auxiliary variable
    cnf = _clausify(iff(1, conj(2, 3)))
    assert cnf.nvars == 10
    assert sorted(tuple(sorted(c)) for c in cnf.clauses) == \
        [(-3, -2, 1), (-1, 2), (-1, 3)]


def test_guarded_equivalence_needs_no_auxiliary():
    # sel -> (a iff b) becomes two ternary clauses
    cnf = _clausify(imp(5, iff(1, 2)))
    assert cnf.nvars == 10
    assert sorted(tuple(sorted(c)) for c in cnf.clauses) == \
        [(-5, -2, 1), (-5, -1, 2)]


def test_guarded_conjunction_distributes():
    cnf = _clausify(imp(5, conj(iff(1, 2), iff(3, 4), 6)))
    assert cnf.nvars == 10
    assert len(cnf.clauses) == 5


def test_double_negation_is_canonicalised():
    assert iff(neg(1), neg(2)) == iff(1, 2)
    assert iff(-1, -2) == iff(1, 2)


def test_shared_subexpressions_are_translated_once():
    shared = conj(1, 2, 3)
    cnf = _clausify(disj(4, shared), disj(5, shared))
    # one definition of the conjunction serves both disjunctions
    assert cnf.nvars == 11


def test_constant_folding_in_builders():
    assert conj(1, True, 2) == ("and", 1, 2)
    assert conj(1, False, 2) is False
    assert disj(1, True) is True
    assert imp(False, 1) is True
    assert iff(True, 5) == 5
    assert neg(neg(("and", 1, 2))) == ("and", 1, 2)


def test_dimacs_output_is_deterministic():
    cnf1 = _clausify(imp(1, conj(2, 3)), disj(4, 5))
    cnf2 = _clausify(imp(1, conj(2, 3)), disj(4, 5))
    buf1, buf2 = io.StringIO(), io.StringIO()
    write_dimacs(cnf1, buf1)
    write_dimacs(cnf2, buf2)
    text = buf1.getvalue()
    assert text == buf2.getvalue()
    assert text.startswith("p cnf 10 ")


def test_read_model_parses_v_lines():
    out = "c comment\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n"
    model = read_model(out, 4)
    assert model[1] and not model[2] and model[3] and not model[4]
