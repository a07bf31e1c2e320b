"""Embedded CDCL solver (both cores) and the external bridge."""

import itertools
import random
import subprocess
import sys

import pytest

from mpltl.cnf import Cnf
from mpltl.solver import (CdclSolver, ExternalSolver, SolverTimeout, _luby,
                          solve, solve_embedded)
from mpltl import solver as solver_mod


def _cnf(n, clauses):
    cnf = Cnf(n)
    cnf.clauses = [tuple(c) for c in clauses]
    return cnf


def _brute_sat(n, clauses):
    for bits in itertools.product([False, True], repeat=n):
        assign = (None,) + bits
        if all(any(assign[abs(l)] == (l > 0) for l in cl) for cl in clauses):
            return True
    return False


def _model_ok(model, clauses):
    return all(any((model[abs(l)]) == (l > 0) for l in cl) for cl in clauses)


def test_luby_sequence_prefix():
    assert [_luby(i) for i in range(15)] == \
        [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


@pytest.mark.parametrize("compiled", [False, True] if
                         solver_mod._compiled is not None else [False])
def test_random_cnfs_against_brute_force(compiled):
    rng = random.Random(12)
    for _ in range(150):
        n = rng.randint(1, 10)
        m = rng.randint(1, 40)
        clauses = [[rng.choice([1, -1]) * rng.randint(1, n)
                    for _ in range(rng.randint(1, 4))] for _ in range(m)]
        expected = _brute_sat(n, clauses)
        model = solve_embedded(_cnf(n, clauses), compiled=compiled)
        assert (model is not None) == expected, (n, clauses)
        if model is not None:
            assert _model_ok(model, clauses)


def test_tautological_and_unit_clauses():
    model = solve_embedded(_cnf(3, [(1, -1), (2,), (-2, 3)]))
    assert model is not None and model[2] and model[3]


def test_empty_and_contradictory_cases():
    assert solve_embedded(_cnf(2, [])) is not None
    assert solve_embedded(_cnf(1, [(1,), (-1,)])) is None
    assert solve_embedded(_cnf(1, [()])) is None


def _pigeonhole(pigeons, holes):
    # unsatisfiable for pigeons > holes; hard enough to force conflicts
    var = lambda p, h: p * holes + h + 1
    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p1 in range(pigeons):
            for p2 in range(p1 + 1, pigeons):
                clauses.append([-var(p1, h), -var(p2, h)])
    return pigeons * holes, clauses


def test_pigeonhole_unsat():
    n, clauses = _pigeonhole(6, 5)
    assert solve_embedded(_cnf(n, clauses)) is None


def test_pure_python_solver_times_out():
    n, clauses = _pigeonhole(9, 8)
    solver = CdclSolver(n, clauses, time_limit=0.01)
    with pytest.raises(SolverTimeout):
        solver.solve()


def test_solve_dispatches_to_backend():
    calls = []

    class Fake:
        def solve(self, cnf, time_limit=None):
            calls.append(cnf)
            return None

    assert solve(_cnf(1, [(1,)]), backend=Fake()) is None
    assert len(calls) == 1


def test_external_bridge_round_trip():
    bridge = ExternalSolver(
        [sys.executable, "-m", "mpltl.cli", "dimacs", "{cnf}"])
    model = bridge.solve(_cnf(3, [(1, 2), (-1,), (-2, 3)]))
    assert model is not None
    assert not model[1] and model[2] and model[3]
    assert bridge.solve(_cnf(1, [(1,), (-1,)])) is None


def test_external_bridge_agrees_with_embedded():
    rng = random.Random(13)
    bridge = ExternalSolver(
        [sys.executable, "-m", "mpltl.cli", "dimacs", "{cnf}"])
    for _ in range(5):
        n = rng.randint(3, 8)
        clauses = [[rng.choice([1, -1]) * rng.randint(1, n)
                    for _ in range(3)] for _ in range(25)]
        cnf = _cnf(n, clauses)
        a = solve_embedded(cnf) is not None
        b = bridge.solve(cnf) is not None
        assert a == b
