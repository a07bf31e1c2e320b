"""Differential testing of the two encoder routes.

Random formulas are checked with both the metric and the unrolled
nonmetric encoding; the verdicts must agree, and satisfiable outcomes
must produce traces the independent evaluator accepts for both forms.
Discrepancies are shrunk to small reproducers by greedily replacing
operators with their operands and lowering bounds.

One sanctioned divergence exists: a bounded check may miss a witness
when a past subformula needs more instants than the bound to reach its
periodic phase, and the two routes stabilize at different bounds.  A
verdict mismatch where the satisfiable side's trace passes the
evaluator on both forms is therefore a certified completeness miss by
the other route, not an encoding bug; such cases are reported
separately from genuine discrepancies.

The exhaustive enumerator provides ground truth for tiny metric-free
instances by trying every lasso of a given bound.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import formula as F
from .oracle import check_trace, eval_on_lasso
from .pipeline import check_formula, prepare
from .trace import LassoTrace


def random_formula(rng, atoms=("p", "q", "r"), depth=3, max_const=5,
                   allow_metric=True):
    """A random surface formula, biased toward small shapes."""
    if depth <= 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.85:
            return F.atom(rng.choice(atoms))
        return F.TRUE if r < 0.93 else F.FALSE
    ops = ["not", "and", "or", "implies", "next", "yesterday", "wyesterday",
           "until", "release", "since", "trigger", "ev", "alw", "pev", "palw"]
    if allow_metric:
        ops += ["ev_eq", "ev_le", "alw_le", "pev_eq", "pev_le", "palw_le",
                "wpev_eq", "wpev_le", "wpalw_le",
                "ev_eq", "ev_le", "pev_le", "palw_le"]
    op = rng.choice(ops)
    sub = lambda: random_formula(rng, atoms, depth - 1, max_const, allow_metric)
    if op in ("not", "next", "yesterday", "wyesterday", "ev", "alw",
              "pev", "palw"):
        fn = {"not": F.not_, "next": F.next_}.get(op) or getattr(F, op)
        return fn(sub())
    if op in ("and", "or", "implies", "until", "release", "since", "trigger"):
        fn = {"and": F.and_, "or": F.or_, "implies": F.implies,
              "until": F.until, "release": F.release, "since": F.since,
              "trigger": F.trigger}[op]
        return fn(sub(), sub())
    t = rng.randint(0, max_const)
    return getattr(F, op)(sub(), t)


def _shrink_candidates(f):
    """Structurally smaller variants of f, most aggressive first."""
    out = []
    for c in f.children():
        out.append(c)
    k = f.kind
    if k in F.METRIC or k in F.SUGAR_METRIC:
        if f.bound > 0:
            out.append(getattr(F, k)(f.left, f.bound - 1))
            if f.bound > 1:
                out.append(getattr(F, k)(f.left, f.bound // 2))
    if f.left is not None:
        for c2 in _shrink_candidates(f.left):
            out.append(_rebuild(f, c2, f.right))
    if f.right is not None:
        for c2 in _shrink_candidates(f.right):
            out.append(_rebuild(f, f.left, c2))
    return out


def _rebuild(f, left, right):
    k = f.kind
    if k in F.METRIC or k in F.SUGAR_METRIC:
        return getattr(F, k)(left, f.bound)
    if k == "not":
        return F.not_(left)
    fn = {"and": F.and_, "or": F.or_, "implies": F.implies, "iff": F.iff,
          "next": F.next_, "yesterday": F.yesterday,
          "wyesterday": F.wyesterday, "until": F.until,
          "release": F.release, "since": F.since, "trigger": F.trigger,
          "ev": F.ev, "alw": F.alw, "pev": F.pev, "palw": F.palw,
          "alwt": F.alwt, "somt": F.somt}[k]
    if right is None:
        return fn(left)
    return fn(left, right)


@dataclass
class Discrepancy:
    formula: object
    k: int
    time_model: str
    kind: str  # 'verdict', 'trace' or 'miss'
    detail: str = ""
    reduced: object = None

    def __str__(self):
        head = "%s discrepancy at k=%d (%s): %s" % (
            self.kind, self.k, self.time_model, self.formula)
        if self.reduced is not None and self.reduced is not self.formula:
            head += "\n  reduced: %s" % (self.reduced,)
        if self.detail:
            head += "\n  %s" % self.detail
        return head


@dataclass
class DifftestReport:
    count: int = 0
    discrepancies: list = field(default_factory=list)
    misses: list = field(default_factory=list)

    def __str__(self):
        lines = ["%d cases, %d discrepancies, %d certified misses"
                 % (self.count, len(self.discrepancies), len(self.misses))]
        for d in self.discrepancies:
            lines.append(str(d))
        for d in self.misses:
            lines.append(str(d))
        return "\n".join(lines)


def _one_case(f, k, time_model, include_current=True):
    """Run both encoders on one formula.

    Returns (status, detail) where status is 'ok', 'verdict', 'trace'
    or 'miss'.  A 'miss' is a verdict mismatch whose satisfiable side
    carries a witness the evaluator certifies on both forms, so the
    other route merely needs a larger bound to stabilize its past
    subformulas.
    """
    rm = check_formula(f, k, time_model, encoder="metric",
                       include_current=include_current)
    rn = check_formula(f, k, time_model, encoder="nonmetric")
    core = prepare(f, "metric")
    tau = prepare(f, "nonmetric")
    if rm.sat != rn.sat:
        satside = rm if rm.sat else rn
        certified = all(check_trace(form, satside.trace, time_model).ok
                        for form in (core, tau))
        kind = "miss" if certified else "verdict"
        return kind, "metric=%s nonmetric=%s" % (rm.sat, rn.sat)
    for tag, res in (("metric", rm), ("nonmetric", rn)):
        if not res.sat:
            continue
        for form_tag, form in (("metric-form", core), ("tau-form", tau)):
            rep = check_trace(form, res.trace, time_model)
            if not rep.ok:
                return "trace", "%s witness fails oracle on %s at %r" \
                    % (tag, form_tag, rep.failure)
    return "ok", ""


def difftest(count=500, seed=0, k_range=(4, 10), time_models=("mono", "bi"),
             depth=3, max_const=5, include_current=True, stop_at=None):
    """Run `count` random cases; returns a DifftestReport."""
    rng = random.Random(seed)
    report = DifftestReport()
    for n in range(count):
        f = random_formula(rng, depth=depth, max_const=max_const)
        k = rng.randint(*k_range)
        report.count += 1
        for tm in time_models:
            status, detail = _one_case(f, k, tm,
                                       include_current=include_current)
            if status == "ok":
                continue
            reduced = _shrink(f, k, tm, status, include_current)
            d = Discrepancy(formula=f, k=k, time_model=tm,
                            kind=status, detail=detail, reduced=reduced)
            if status == "miss":
                report.misses.append(d)
            else:
                report.discrepancies.append(d)
            if stop_at is not None and len(report.discrepancies) >= stop_at:
                return report
    return report


def _shrink(f, k, tm, status, include_current, budget=200):
    cur = f
    spent = 0
    improved = True
    while improved and spent < budget:
        improved = False
        for cand in _shrink_candidates(cur):
            spent += 1
            if spent >= budget:
                break
            try:
                st, _ = _one_case(cand, k, tm,
                                  include_current=include_current)
            except Exception:
                continue
            if st == status:
                cur = cand
                improved = True
                break
    return cur


def enumerate_lassos(atoms, k, time_model):
    """Yield every lasso trace of bound k over the given atoms."""
    states_space = [frozenset(c) for n in range(len(atoms) + 1)
                    for c in itertools.combinations(atoms, n)]
    for word in itertools.product(states_space, repeat=k + 1):
        states = list(word)
        lfs = [i for i in range(1, k + 1) if states[i - 1] == states[k]]
        if time_model == "mono":
            for lf in lfs:
                yield LassoTrace(k=k, states=states, lf=lf)
        else:
            lps = [i for i in range(k) if states[i + 1] == states[0]]
            for lf in lfs:
                for lp in lps:
                    yield LassoTrace(k=k, states=states, lf=lf, lp=lp)


def exhaustive_sat(core, atoms, k, time_model):
    """Ground-truth bounded satisfiability by trying every lasso."""
    for tr in enumerate_lassos(atoms, k, time_model):
        if eval_on_lasso(core, tr, time_model):
            return True
    return False
