"""Propositional encoding of core formulas over a bounded structure.

The structure has states S_0..S_k plus virtual instants -1 and k+1 that
carry formula variables but no state variables.  A forward loop selector
l_i asserts S_{i-1} = S_k; over bi-infinite time a backward selector
l'_i asserts S_{i+1} = S_0.  Every closure subformula gets one variable
per instant; until/release (and since/trigger over bi-infinite time)
additionally get eventuality variables that force their promises to be
discharged inside the loop.

This module covers the qualitative operators; the bounded metric ones
are constrained in the metric module against the same variable map.
"""

from __future__ import annotations

from . import formula as F
from .constraints import conj, disj, iff, imp, neg

_EV_KINDS_FUTURE = ("until", "release")
_EV_KINDS_PAST = ("since", "trigger")


def metric_banks(closure, time_model):
    """Sizes of the loop-value variable banks, keyed by operand.

    One bank serves every metric operator sharing an operand; its size
    is the largest bound among them.  Past banks only exist over
    bi-infinite time (there is no backward loop otherwise).
    """
    future = {}
    past = {}
    for g in closure:
        if g.kind in F.FUTURE_METRIC:
            future[g.left] = max(future.get(g.left, 0), g.bound)
        elif g.kind in F.PAST_METRIC and time_model == "bi":
            past[g.left] = max(past.get(g.left, 0), g.bound)
    return future, past


class VariableMap:
    """Deterministic allocation of all encoding variables."""

    def __init__(self, root, k, time_model, atoms=None):
        if time_model not in ("mono", "bi"):
            raise ValueError("time_model must be 'mono' or 'bi'")
        self.root = root
        self.k = k
        self.time_model = time_model
        self.closure = F.closure(root)
        self.atoms = atoms if atoms is not None else F.atoms_of(root)
        self.lo = -1 if time_model == "bi" else 0

        self._n = 0
        self.names = {}
        self.var_category = {}
        self._state = {}
        self._fv = {}
        self._ev = {}
        self._mf = {}
        self._mp = {}

        for i in range(k + 1):
            for p in self.atoms:
                self._state[(p, i)] = self._new("s[%s]@%d" % (p, i), "state")

        self.loop_sel = [self._new("l@%d" % i, "loop") for i in range(k + 1)]
        self.inloop = [self._new("InLoop@%d" % i, "loop") for i in range(k + 1)]
        self.loop_exists = self._new("LoopExists", "loop")
        if time_model == "bi":
            self.loop_selp = [self._new("l'@%d" % i, "loop")
                              for i in range(k + 1)]
            self.inloopp = [self._new("InLoop'@%d" % i, "loop")
                            for i in range(k + 1)]
            self.loop_existsp = self._new("LoopExists'", "loop")

        self.form_ids = {g: n for n, g in enumerate(self.closure)}
        for g in self.closure:
            fid = self.form_ids[g]
            for i in range(self.lo, k + 2):
                self._fv[(g, i)] = self._new("fv[f%d]@%d" % (fid, i), "formula")

        for g in self.closure:
            if g.kind in _EV_KINDS_FUTURE or (
                    time_model == "bi" and g.kind in _EV_KINDS_PAST):
                fid = self.form_ids[g]
                for i in range(k + 1):
                    self._ev[(g, i)] = self._new(
                        "ev[f%d]@%d" % (fid, i), "eventuality")

        fut, pst = metric_banks(self.closure, time_model)
        self.future_banks = fut
        self.past_banks = pst
        for c, d in fut.items():
            fid = self.form_ids[c]
            for j in range(d):
                self._mf[(c, j)] = self._new("MF[f%d]@%d" % (fid, j), "metric")
        for c, d in pst.items():
            fid = self.form_ids[c]
            for j in range(d):
                self._mp[(c, j)] = self._new("MP[f%d]@%d" % (fid, j), "metric")

    def _new(self, name, category):
        self._n += 1
        self.names[self._n] = name
        self.var_category[self._n] = category
        return self._n

    @property
    def num_vars(self):
        return self._n

    def state(self, p, i):
        return self._state[(p, i)]

    def fv(self, g, i):
        return self._fv[(g, i)]

    def ev(self, g, i):
        return self._ev[(g, i)]

    def mf(self, c, j):
        return self._mf[(c, j)]

    def mp(self, c, j):
        return self._mp[(c, j)]

    def state_eq(self, i, j):
        return conj([iff(self.state(p, i), self.state(p, j))
                     for p in self.atoms])

    def count_formula_vars(self, forms=None):
        """Formula variables over instants 0..k+1 for the given
        subformulas (all closure members by default).

        The window deliberately excludes the virtual instant -1 so the
        count is comparable between the two time models.
        """
        if forms is None:
            forms = self.closure
        total = 0
        for g in forms:
            for i in range(0, self.k + 2):
                if (g, i) in self._fv:
                    total += 1
        return total

    def var_counts(self):
        out = {}
        for v, cat in self.var_category.items():
            out[cat] = out.get(cat, 0) + 1
        return out


def emit_prop(vm, cs):
    """Tie formula variables of boolean-level nodes to the state bits."""
    for g in vm.closure:
        kd = g.kind
        if kd == "atom":
            for i in range(vm.k + 1):
                cs.add("prop", iff(vm.fv(g, i), vm.state(g.name, i)))
        elif kd == "not":
            if g.left.kind != "atom":
                raise ValueError("negation above an atom; normalise first")
            for i in range(vm.k + 1):
                cs.add("prop", iff(vm.fv(g, i), -vm.state(g.left.name, i)))
        elif kd == "true":
            for i in range(vm.k + 1):
                cs.add("prop", vm.fv(g, i))
        elif kd == "false":
            for i in range(vm.k + 1):
                cs.add("prop", neg(vm.fv(g, i)))
        elif kd == "and" or kd == "or":
            op = conj if kd == "and" else disj
            for i in range(vm.k + 1):
                cs.add("prop", iff(vm.fv(g, i),
                                   op(vm.fv(g.left, i), vm.fv(g.right, i))))


def emit_temporal(vm, cs):
    """Unrolling rules for the qualitative temporal operators.

    Future rules run from the first virtual instant up to k, past ones
    from the first real instant with a predecessor up to k+1; weak and
    strong yesterday only differ over mono-infinite time, at instant 0,
    which the first-state constraints cover.
    """
    k = vm.k
    for g in vm.closure:
        kd = g.kind
        if kd == "next":
            for i in range(vm.lo, k + 1):
                cs.add("temporal", iff(vm.fv(g, i), vm.fv(g.left, i + 1)))
        elif kd == "until" or kd == "release":
            p, q = g.left, g.right
            for i in range(vm.lo, k + 1):
                if kd == "until":
                    rhs = disj(vm.fv(q, i),
                               conj(vm.fv(p, i), vm.fv(g, i + 1)))
                else:
                    rhs = conj(vm.fv(q, i),
                               disj(vm.fv(p, i), vm.fv(g, i + 1)))
                cs.add("temporal", iff(vm.fv(g, i), rhs))
        elif kd == "yesterday" or kd == "wyesterday":
            start = 0 if vm.time_model == "bi" else 1
            for i in range(start, k + 2):
                cs.add("temporal", iff(vm.fv(g, i), vm.fv(g.left, i - 1)))
        elif kd == "since" or kd == "trigger":
            p, q = g.left, g.right
            start = 0 if vm.time_model == "bi" else 1
            for i in range(start, k + 2):
                if kd == "since":
                    rhs = disj(vm.fv(q, i),
                               conj(vm.fv(p, i), vm.fv(g, i - 1)))
                else:
                    rhs = conj(vm.fv(q, i),
                               disj(vm.fv(p, i), vm.fv(g, i - 1)))
                cs.add("temporal", iff(vm.fv(g, i), rhs))


def emit_loop(vm, cs, force_loops=True):
    """Loop selector structure; at most one selector per direction.

    With force_loops the structure must actually close into a loop
    (both directions over bi-infinite time), so every witness denotes
    an ultimately periodic word rather than a bare finite prefix.
    """
    k = vm.k
    cs.add("loop", neg(vm.loop_sel[0]))
    cs.add("loop", neg(vm.inloop[0]))
    for i in range(1, k + 1):
        cs.add("loop", imp(vm.loop_sel[i], vm.state_eq(i - 1, k)))
        cs.add("loop", iff(vm.inloop[i],
                           disj(vm.inloop[i - 1], vm.loop_sel[i])))
        cs.add("loop", imp(vm.inloop[i - 1], neg(vm.loop_sel[i])))
    cs.add("loop", iff(vm.loop_exists, vm.inloop[k]))
    if vm.time_model == "bi":
        cs.add("loop", neg(vm.loop_selp[k]))
        cs.add("loop", neg(vm.inloopp[k]))
        for i in range(k - 1, -1, -1):
            cs.add("loop", imp(vm.loop_selp[i], vm.state_eq(i + 1, 0)))
            cs.add("loop", iff(vm.inloopp[i],
                               disj(vm.inloopp[i + 1], vm.loop_selp[i])))
            cs.add("loop", imp(vm.inloopp[i + 1], neg(vm.loop_selp[i])))
        cs.add("loop", iff(vm.loop_existsp, vm.inloopp[0]))
    if force_loops:
        cs.add("loop", vm.loop_exists)
        if vm.time_model == "bi":
            cs.add("loop", vm.loop_existsp)


def emit_eventualities(vm, cs):
    """Promise bookkeeping for until/release (and since/trigger)."""
    k = vm.k
    for g in vm.closure:
        kd = g.kind
        if kd in _EV_KINDS_FUTURE:
            q = g.right
            if kd == "until":
                cs.add("eventuality", neg(vm.ev(g, 0)))
                cs.add("eventuality",
                       imp(vm.loop_exists, imp(vm.fv(g, k), vm.ev(g, k))))
            else:
                cs.add("eventuality", vm.ev(g, 0))
                cs.add("eventuality",
                       imp(vm.loop_exists, imp(vm.ev(g, k), vm.fv(g, k))))
            for i in range(1, k + 1):
                if kd == "until":
                    rhs = disj(vm.ev(g, i - 1),
                               conj(vm.inloop[i], vm.fv(q, i)))
                else:
                    rhs = conj(vm.ev(g, i - 1),
                               disj(neg(vm.inloop[i]), vm.fv(q, i)))
                cs.add("eventuality", iff(vm.ev(g, i), rhs))
        elif kd in _EV_KINDS_PAST and vm.time_model == "bi":
            q = g.right
            if kd == "since":
                cs.add("eventuality", neg(vm.ev(g, k)))
                cs.add("eventuality",
                       imp(vm.loop_existsp, imp(vm.fv(g, 0), vm.ev(g, 0))))
            else:
                cs.add("eventuality", vm.ev(g, k))
                cs.add("eventuality",
                       imp(vm.loop_existsp, imp(vm.ev(g, 0), vm.fv(g, 0))))
            for i in range(k - 1, -1, -1):
                if kd == "since":
                    rhs = disj(vm.ev(g, i + 1),
                               conj(vm.inloopp[i], vm.fv(q, i)))
                else:
                    rhs = conj(vm.ev(g, i + 1),
                               disj(neg(vm.inloopp[i]), vm.fv(q, i)))
                cs.add("eventuality", iff(vm.ev(g, i), rhs))


def emit_boundary(vm, cs):
    """Last state constraints at k+1 and first state constraints.

    Over bi-infinite time the virtual instant -1 mirrors k+1: without a
    backward loop nothing holds there, with one it is identified with
    the selector's instant.  Over mono-infinite time the first state
    instead fixes the base cases of the past operators at instant 0.
    """
    k = vm.k
    for g in vm.closure:
        cs.add("last", imp(neg(vm.loop_exists), neg(vm.fv(g, k + 1))))
        for i in range(1, k + 1):
            cs.add("last", imp(vm.loop_sel[i],
                               iff(vm.fv(g, k + 1), vm.fv(g, i))))
    if vm.time_model == "bi":
        for g in vm.closure:
            cs.add("first", imp(neg(vm.loop_existsp), neg(vm.fv(g, -1))))
            for i in range(k):
                cs.add("first", imp(vm.loop_selp[i],
                                    iff(vm.fv(g, -1), vm.fv(g, i))))
    else:
        for g in vm.closure:
            kd = g.kind
            if kd == "yesterday":
                cs.add("first", neg(vm.fv(g, 0)))
            elif kd == "wyesterday":
                cs.add("first", vm.fv(g, 0))
            elif kd == "since" or kd == "trigger":
                cs.add("first", iff(vm.fv(g, 0), vm.fv(g.right, 0)))


def emit_root(vm, cs):
    cs.add("root", vm.fv(vm.root, 0))
