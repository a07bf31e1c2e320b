"""SAT solving: an embedded CDCL solver and an external-command bridge.

The embedded solver is a conventional conflict-driven clause learner:
two watched literals per clause, first-UIP learning with activity-based
variable ordering (VSIDS-style decay), saved phases, Luby restarts and
periodic deletion of inactive learned clauses.  It is deterministic:
the same CNF always explores the same search tree.  The hot loops are
written against flat literal-indexed arrays; literal l is stored at
index l + nvars.

The external bridge shells out to any DIMACS solver.  Exit codes and
output are interpreted per the usual convention (10 satisfiable, 20
unsatisfiable, `v` lines carry the model); both codes are configurable.
"""

from __future__ import annotations

import heapq
import os
import subprocess
import tempfile
import time
from dataclasses import dataclass

from .cnf import read_model, write_dimacs


class SolverTimeout(Exception):
    pass


def _luby(i):
    """The Luby restart sequence 1 1 2 1 1 2 4 ... at index i >= 0."""
    size, seq = 1, 0
    while size < i + 1:
        size = 2 * size + 1
        seq += 1
    while size - 1 != i:
        size = (size - 1) // 2
        seq -= 1
        i %= size
    return 1 << seq


class CdclSolver:
    def __init__(self, nvars, clauses, time_limit=None):
        n = nvars
        self.nvars = n
        self.time_limit = time_limit
        self.off = n
        self.litval = [0] * (2 * n + 1)  # 1 true, -1 false, 0 unset
        self.level = [0] * (n + 1)
        self.reason = [None] * (n + 1)
        self.phase = [False] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.seen = [False] * (n + 1)
        self.var_inc = 1.0
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.watches = [[] for _ in range(2 * n + 1)]
        self.bins = [[] for _ in range(2 * n + 1)]
        self.clauses = []
        self.learnts = []
        self.empty = False
        self.cla_inc = 1.0
        self.cla_activity = {}
        self.conflicts = 0
        self.max_learnts = max(4000, len(clauses) // 3)
        self.order = [(0.0, v) for v in range(1, n + 1)]
        heapq.heapify(self.order)
        for cl in clauses:
            if not self._add_clause(list(cl)):
                self.empty = True
                return

    # -- clause plumbing -------------------------------------------------

    def _add_clause(self, lits, learnt=False):
        n = self.off
        if not learnt:
            seen = set()
            out = []
            for l in lits:
                if -l in seen:
                    return True  # tautology
                if l not in seen:
                    seen.add(l)
                    out.append(l)
            lits = out
            if not lits:
                return False
            if len(lits) == 1:
                v = self.litval[lits[0] + n]
                if v < 0:
                    return False
                if v == 0:
                    self._enqueue(lits[0], None)
                return True
        if len(lits) == 2:
            # binary clauses live in direct implication lists
            a, b = lits
            self.bins[a + n].append(b)
            self.bins[b + n].append(a)
            return True
        cl = lits
        store = self.learnts if learnt else self.clauses
        store.append(cl)
        self.watches[cl[0] + n].append((cl[1], cl))
        self.watches[cl[1] + n].append((cl[0], cl))
        if learnt:
            self.cla_activity[id(cl)] = self.cla_inc
        return True

    def _enqueue(self, lit, reason):
        n = self.off
        self.litval[lit + n] = 1
        self.litval[-lit + n] = -1
        v = lit if lit > 0 else -lit
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    # -- propagation -----------------------------------------------------

    def _propagate(self):
        n = self.off
        litval = self.litval
        watches = self.watches
        bins = self.bins
        trail = self.trail
        level = self.level
        reason = self.reason
        lvl = len(self.trail_lim)
        qhead = self.qhead
        while qhead < len(trail):
            falsified = -trail[qhead]
            qhead += 1
            for other in bins[falsified + n]:
                v = litval[other + n]
                if v == 0:
                    litval[other + n] = 1
                    litval[-other + n] = -1
                    u = other if other > 0 else -other
                    level[u] = lvl
                    reason[u] = (other, falsified)
                    trail.append(other)
                elif v < 0:
                    self.qhead = qhead
                    return (other, falsified)
            ws = watches[falsified + n]
            if not ws:
                continue
            wp = 0
            i = 0
            nw = len(ws)
            while i < nw:
                entry = ws[i]
                i += 1
                if litval[entry[0] + n] > 0:  # blocking literal satisfied
                    ws[wp] = entry
                    wp += 1
                    continue
                cl = entry[1]
                if cl[0] == falsified:
                    cl[0] = cl[1]
                    cl[1] = falsified
                first = cl[0]
                if litval[first + n] > 0:
                    ws[wp] = (first, cl)
                    wp += 1
                    continue
                moved = False
                for j in range(2, len(cl)):
                    cj = cl[j]
                    if litval[cj + n] >= 0:
                        cl[1] = cj
                        cl[j] = falsified
                        watches[cj + n].append((first, cl))
                        moved = True
                        break
                if moved:
                    continue
                ws[wp] = (first, cl)
                wp += 1
                if litval[first + n] < 0:
                    while i < nw:
                        ws[wp] = ws[i]
                        wp += 1
                        i += 1
                    del ws[wp:]
                    self.qhead = qhead
                    return cl
                litval[first + n] = 1
                litval[-first + n] = -1
                v = first if first > 0 else -first
                level[v] = lvl
                reason[v] = cl
                trail.append(first)
            del ws[wp:]
        self.qhead = qhead
        return None

    # -- learning --------------------------------------------------------

    def _bump_var(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.nvars + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            self.order = [(-self.activity[u], u)
                          for u in range(1, self.nvars + 1)
                          if self.litval[u + self.off] == 0]
            heapq.heapify(self.order)
        else:
            heapq.heappush(self.order, (-self.activity[v], v))

    def _analyze(self, confl):
        learnt = [0]
        seen = self.seen
        touched = []
        counter = 0
        lit = None
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        level = self.level
        reason_lits = confl
        skip = None
        while True:
            for q in reason_lits:
                if q == skip:
                    continue
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    touched.append(v)
                    self._bump_var(v)
                    if level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while True:
                lit = self.trail[idx]
                idx -= 1
                if seen[lit if lit > 0 else -lit]:
                    break
            counter -= 1
            if counter == 0:
                break
            reason_lits = self.reason[lit if lit > 0 else -lit]
            skip = lit
        learnt[0] = -lit
        # clause minimisation: drop literals implied by the rest
        marked = set(q if q > 0 else -q for q in learnt)
        out = [learnt[0]]
        for q in learnt[1:]:
            r = self.reason[q if q > 0 else -q]
            if r is None:
                out.append(q)
                continue
            if any((x if x > 0 else -x) not in marked
                   and level[x if x > 0 else -x] > 0
                   for x in r if x != -q):
                out.append(q)
        learnt = out
        for v in touched:
            seen[v] = False
        if len(learnt) == 1:
            return learnt, 0
        back = max(level[q if q > 0 else -q] for q in learnt[1:])
        second = max(range(1, len(learnt)),
                     key=lambda j: level[abs(learnt[j])])
        learnt[1], learnt[second] = learnt[second], learnt[1]
        return learnt, back

    def _cancel_until(self, lvl):
        trail_lim = self.trail_lim
        if len(trail_lim) <= lvl:
            self.qhead = min(self.qhead, len(self.trail))
            return
        n = self.off
        litval = self.litval
        trail = self.trail
        order = self.order
        activity = self.activity
        phase = self.phase
        reason = self.reason
        heappush = heapq.heappush
        bound = trail_lim[lvl]
        del trail_lim[lvl:]
        for idx in range(len(trail) - 1, bound - 1, -1):
            lit = trail[idx]
            v = lit if lit > 0 else -lit
            phase[v] = lit > 0
            litval[lit + n] = 0
            litval[-lit + n] = 0
            reason[v] = None
            heappush(order, (-activity[v], v))
        del trail[bound:]
        self.qhead = bound

    def _reduce_db(self):
        if len(self.learnts) < self.max_learnts:
            return
        self.max_learnts = int(self.max_learnts * 1.2)
        self.learnts.sort(key=lambda c: self.cla_activity.get(id(c), 0.0))
        locked = {id(self.reason[l if l > 0 else -l]) for l in self.trail
                  if self.reason[l if l > 0 else -l] is not None}
        cut = len(self.learnts) // 2
        dead = set()
        kept = []
        for i, cl in enumerate(self.learnts):
            if i < cut and len(cl) > 2 and id(cl) not in locked:
                dead.add(id(cl))
                self.cla_activity.pop(id(cl), None)
            else:
                kept.append(cl)
        self.learnts = kept
        for idx in range(len(self.watches)):
            ws = self.watches[idx]
            if ws:
                self.watches[idx] = [e for e in ws if id(e[1]) not in dead]

    # -- search ----------------------------------------------------------

    def _decide(self):
        # lazy heap: entries may be stale (already assigned, or pushed
        # with an outdated activity); drop those until a live one shows
        n = self.off
        litval = self.litval
        activity = self.activity
        order = self.order
        heappop = heapq.heappop
        while order:
            negact, v = heappop(order)
            if litval[v + n] == 0 and -negact == activity[v]:
                return v
        for v in range(1, self.nvars + 1):
            if litval[v + n] == 0:
                heapq.heappush(order, (-activity[v], v))
                return v
        return 0

    def solve(self):
        if self.empty:
            return None
        confl = self._propagate()
        if confl is not None:
            return None
        deadline = None
        if self.time_limit is not None:
            deadline = time.monotonic() + self.time_limit
        conflicts = self.conflicts
        restart_idx = 1
        restart_budget = 100 * _luby(restart_idx)
        n = self.off
        while True:
            confl = self._propagate()
            if confl is not None:
                conflicts += 1
                self.conflicts = conflicts
                if not self.trail_lim:
                    return None
                learnt, back = self._analyze(confl)
                self._cancel_until(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._add_clause(learnt, learnt=True)
                    self.cla_activity[id(learnt)] = self.cla_inc
                    self._enqueue(learnt[0], learnt)
                self.var_inc /= 0.95
                self.cla_inc /= 0.999
                if conflicts % 512 == 0:
                    if deadline is not None and time.monotonic() > deadline:
                        raise SolverTimeout()
                    self._reduce_db()
                restart_budget -= 1
                if restart_budget <= 0:
                    restart_idx += 1
                    restart_budget = 100 * _luby(restart_idx)
                    self._cancel_until(0)
            else:
                v = self._decide()
                if v == 0:
                    litval = self.litval
                    model = [False] * (self.nvars + 1)
                    for u in range(1, self.nvars + 1):
                        model[u] = litval[u + n] > 0
                    return model
                self.trail_lim.append(len(self.trail))
                self._enqueue(v if self.phase[v] else -v, None)


try:
    from . import _cdcl as _compiled
except ImportError:
    _compiled = None


def solve_embedded(cnf, time_limit=None, compiled=None):
    """Solve a Cnf; returns a model list (1-indexed) or None.

    Uses the compiled core when the extension built, else the
    pure-Python solver above.  `compiled` forces one or the other.
    """
    use_compiled = _compiled is not None if compiled is None else compiled
    if use_compiled:
        if _compiled is None:
            raise RuntimeError("compiled solver core is not available")
        try:
            return _compiled.solve_cnf(cnf.nvars, cnf.clauses,
                                       time_limit=time_limit)
        except TimeoutError:
            raise SolverTimeout()
    solver = CdclSolver(cnf.nvars, cnf.clauses, time_limit=time_limit)
    return solver.solve()


@dataclass
class ExternalSolver:
    """Bridge to a DIMACS solver run as a subprocess.

    `command` is a list of argv words; the CNF file path is appended
    (or substituted for a '{cnf}' placeholder).
    """

    command: list
    sat_exit: int = 10
    unsat_exit: int = 20

    def solve(self, cnf, time_limit=None):
        with tempfile.NamedTemporaryFile(
                "w", suffix=".cnf", delete=False) as fh:
            path = fh.name
            write_dimacs(cnf, fh)
        try:
            argv = []
            placed = False
            for w in self.command:
                if "{cnf}" in w:
                    argv.append(w.replace("{cnf}", path))
                    placed = True
                else:
                    argv.append(w)
            if not placed:
                argv.append(path)
            try:
                proc = subprocess.run(
                    argv, capture_output=True, text=True, timeout=time_limit)
            except subprocess.TimeoutExpired:
                raise SolverTimeout()
            out = proc.stdout
            if proc.returncode == self.unsat_exit:
                return None
            if proc.returncode == self.sat_exit:
                model = read_model(out, cnf.nvars)
                if model is None:
                    raise RuntimeError(
                        "solver exited satisfiable but printed no model")
                return model
            # fall back to the printed verdict if the exit code is odd
            try:
                return read_model(out, cnf.nvars)
            except ValueError:
                raise RuntimeError(
                    "solver exited with unexpected status %d" % proc.returncode)
        finally:
            os.unlink(path)


def solve(cnf, backend=None, time_limit=None):
    if backend is None:
        return solve_embedded(cnf, time_limit=time_limit)
    return backend.solve(cnf, time_limit=time_limit)
