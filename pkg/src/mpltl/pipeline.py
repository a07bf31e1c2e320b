"""End-to-end checking: normalise, encode, clausify, solve, decode.

Two encoder routes produce equisatisfiable CNFs: the metric route
constrains the bounded operators natively, the nonmetric route first
unrolls them into next/yesterday chains and encodes the purely
qualitative result.  Timing separates formula generation from solving.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import formula as F
from . import metric as M
from .cnf import clausify
from .constraints import ConstraintSet
from .encoder import (VariableMap, emit_boundary, emit_eventualities,
                      emit_loop, emit_prop, emit_root, emit_temporal)
from .solver import solve
from .trace import LassoTrace


def prepare(f, encoder="metric"):
    """Desugared positive normal form of f, per the chosen encoder."""
    core = F.to_pnf(F.desugar(f))
    if encoder == "nonmetric":
        core = F.tau_expand(core)
    elif encoder != "metric":
        raise ValueError("encoder must be 'metric' or 'nonmetric'")
    return core


def encode(core, k, time_model, atoms=None, force_loops=True,
           include_current=True):
    """Encode a core PNF formula; returns (VariableMap, ConstraintSet)."""
    vm = VariableMap(core, k, time_model, atoms=atoms)
    cs = ConstraintSet()
    emit_prop(vm, cs)
    emit_temporal(vm, cs)
    emit_loop(vm, cs, force_loops=force_loops)
    emit_eventualities(vm, cs)
    emit_boundary(vm, cs)
    if vm.future_banks or vm.past_banks or any(
            g.kind in F.METRIC for g in vm.closure):
        M.emit_metric(vm, cs, include_current=include_current,
                      force_loops=force_loops)
    emit_root(vm, cs)
    return vm, cs


def decode_trace(model, vm):
    """Read a witness trace out of a satisfying assignment."""
    k = vm.k
    states = []
    for i in range(k + 1):
        states.append(frozenset(
            p for p in vm.atoms if model[vm.state(p, i)]))
    lf = None
    lp = None
    if model[vm.loop_exists]:
        hits = [i for i in range(1, k + 1) if model[vm.loop_sel[i]]]
        if len(hits) != 1:
            raise ValueError("expected exactly one forward loop selector, "
                             "got %r" % hits)
        lf = hits[0]
    if vm.time_model == "bi" and model[vm.loop_existsp]:
        hits = [i for i in range(k) if model[vm.loop_selp[i]]]
        if len(hits) != 1:
            raise ValueError("expected exactly one backward loop selector, "
                             "got %r" % hits)
        lp = hits[0]
    tr = LassoTrace(k=k, states=states, lf=lf, lp=lp)
    tr.validate()
    return tr


@dataclass
class RunStats:
    gen_s: float = 0.0
    sat_s: float = 0.0
    vars: int = 0
    clauses: int = 0
    categories: dict = field(default_factory=dict)


@dataclass
class CheckResult:
    sat: bool
    trace: LassoTrace | None
    stats: RunStats
    core: object = None
    vm: object = None
    cnf: object = None


def check_formula(f, k, time_model, encoder="metric", backend=None,
                  time_limit=None, force_loops=True, include_current=True,
                  keep_cnf=False):
    """Bounded satisfiability check of a surface formula."""
    t0 = time.perf_counter()
    core = prepare(f, encoder)
    vm, cs = encode(core, k, time_model, force_loops=force_loops,
                    include_current=include_current)
    cnf = clausify(cs, vm)
    gen_s = time.perf_counter() - t0

    t1 = time.perf_counter()
    model = solve(cnf, backend=backend, time_limit=time_limit)
    sat_s = time.perf_counter() - t1

    stats = RunStats(gen_s=gen_s, sat_s=sat_s, vars=cnf.nvars,
                     clauses=len(cnf.clauses),
                     categories=cnf.stats()["categories"])
    trace = decode_trace(model, vm) if model is not None else None
    return CheckResult(sat=model is not None, trace=trace, stats=stats,
                       core=core, vm=vm, cnf=cnf if keep_cnf else None)


def check_problem(problem, bound=None, backend=None, time_limit=None,
                  encoder=None, **kw):
    """Check a parsed problem; encoder/bound default to the problem's."""
    return check_formula(problem.checked_formula(),
                         problem.bound if bound is None else bound,
                         problem.time_model,
                         encoder=encoder or problem.encoder,
                         backend=backend, time_limit=time_limit, **kw)
