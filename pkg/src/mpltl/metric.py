"""Native constraints for the bounded metric operators.

Instead of unrolling a bound-t operator into a chain of t+1 nested
subformulas, each operand gets a bank of loop-value variables: MF(c,j)
is the value of c at the j-th instant after the forward loop selector,
MP(c,j) the value j instants before the backward one.  An operator's
value at instant i then reads operand values directly, switching to the
bank once i plus the bound runs past the edge of the structure.

All window operators include the current instant (bound 0 would be the
operand itself; desugaring removes that case).  `include_current=False`
drops that term, which is wrong on purpose: the differential tests use
it as a planted bug to prove they can detect one.

Over bi-infinite time a third group of constraints keeps values
consistent where one operator's window crosses the opposite loop; over
mono-infinite time the past operators instead get default values near
the time origin and wrap-around rules inside the forward loop.
"""

from __future__ import annotations

from . import formula as F
from .constraints import conj, disj, iff, imp, neg


def emit_metric(vm, cs, include_current=True, force_loops=True):
    emit_loop_values(vm, cs, force_loops)
    emit_in_bound(vm, cs, include_current)
    if vm.time_model == "bi":
        emit_cross_loop(vm, cs, include_current)
    else:
        emit_mono_past(vm, cs, include_current)


def emit_loop_values(vm, cs, force_loops=True):
    """Definitions of the MF/MP banks in terms of the loop selectors.

    With forced loops exactly one selector holds, so each definition is
    a per-selector conditional equality instead of one big disjunction.
    A bank whose operand negates another bank's operand holds the
    complement value, so it is defined off that bank directly.
    """
    k = vm.k
    for banks, sel, pos in (
            (vm.future_banks, vm.loop_sel,
             lambda i, j: i + (j % (k - i + 1))),
            (vm.past_banks, getattr(vm, "loop_selp", None),
             lambda i, j: i - (j % (i + 1)))):
        if not banks:
            continue
        get = vm.mf if banks is vm.future_banks else vm.mp
        rng = range(1, k + 1) if banks is vm.future_banks else range(k)
        for c, d in banks.items():
            base = c.left if c.kind == "not" else None
            tied = vm.future_banks.get(base, 0) if banks is vm.future_banks \
                else vm.past_banks.get(base, 0)
            for j in range(d):
                if base is not None and j < tied:
                    cs.add("metric-mfp", iff(get(c, j), neg(get(base, j))))
                elif force_loops:
                    for i in rng:
                        cs.add("metric-mfp",
                               imp(sel[i], iff(get(c, j),
                                               vm.fv(c, pos(i, j)))))
                else:
                    rhs = disj([conj(sel[i], vm.fv(c, pos(i, j)))
                                for i in rng])
                    cs.add("metric-mfp", iff(get(c, j), rhs))


def _fv_or_mf(vm, c, pos):
    """Operand value at a forward position, from the bank beyond k."""
    if pos <= vm.k:
        return vm.fv(c, pos)
    return vm.mf(c, pos - vm.k - 1)


def _fv_or_mp(vm, c, pos):
    """Operand value at a backward position, from the bank below 0."""
    if pos >= 0:
        return vm.fv(c, pos)
    return vm.mp(c, -pos - 1)


def emit_in_bound(vm, cs, include_current=True):
    """Value of each metric operator at the in-bound instants.

    Future operators are constrained from the lowest virtual instant up
    to k (beyond that the last state constraints identify them with an
    in-loop instant); over bi-infinite time past operators run from 0
    to k+1 symmetrically.  Over mono-infinite time past operators are
    handled by emit_mono_past instead.
    """
    k = vm.k
    for g in vm.closure:
        kd = g.kind
        c = g.left
        t = g.bound if kd in F.METRIC else 0
        if kd in F.FUTURE_METRIC:
            for i in range(vm.lo, k + 1):
                if kd == "ev_eq":
                    cs.add("metric-inbound",
                           iff(vm.fv(g, i), _fv_or_mf(vm, c, i + t)))
                else:
                    terms = [vm.fv(c, i)] if include_current else []
                    terms += [_fv_or_mf(vm, c, i + j) for j in range(1, t + 1)]
                    op = disj if kd == "ev_le" else conj
                    cs.add("metric-inbound", iff(vm.fv(g, i), op(terms)))
        elif kd in F.PAST_METRIC and vm.time_model == "bi":
            # the weak operators coincide with the strong ones here
            for i in range(0, k + 2):
                if kd in ("pev_eq", "wpev_eq"):
                    cs.add("metric-inbound",
                           iff(vm.fv(g, i), _fv_or_mp(vm, c, i - t)))
                else:
                    terms = [vm.fv(c, i)] if include_current else []
                    terms += [_fv_or_mp(vm, c, i - j) for j in range(1, t + 1)]
                    op = disj if kd in ("pev_le", "wpalw_le") else conj
                    cs.add("metric-inbound", iff(vm.fv(g, i), op(terms)))


def emit_cross_loop(vm, cs, include_current=True):
    """Consistency of metric windows that cross the opposite loop.

    An instant inside the backward loop stands for infinitely many
    instants of the past; a future operator there must agree with the
    wrapped reading that re-enters the loop at position 0.  The mirror
    holds for past operators inside the forward loop, whose windows
    reach the bank of the backward loop when they cross instant 0.
    """
    k = vm.k
    for g in vm.closure:
        kd = g.kind
        c = g.left
        t = g.bound if kd in F.METRIC else 0
        if kd == "ev_eq":
            for i in range(k):
                parts = []
                for j in range(1, t + 1):
                    wrapped = vm.fv(c, (j - 1) % (i + 1))
                    parts.append(iff(_fv_or_mf(vm, c, i + j), wrapped))
                cs.add("metric-crossloop", imp(vm.loop_selp[i], conj(parts)))
        elif kd == "alw_le" or kd == "ev_le":
            isdisj = kd == "ev_le"
            for i in range(k):
                parts = [vm.fv(c, i)] if include_current else []
                for j in range(1, min(k - i, t) + 1):
                    if isdisj:
                        parts.append(conj(vm.inloopp[i + j], vm.fv(c, i + j)))
                    else:
                        parts.append(disj(neg(vm.inloopp[i + j]),
                                          vm.fv(c, i + j)))
                for j in range(0, min(i, t - 1) + 1):
                    guard = vm.inloopp[min(k, i + t - j)]
                    if isdisj:
                        parts.append(conj(neg(guard), vm.fv(c, j)))
                    else:
                        parts.append(disj(guard, vm.fv(c, j)))
                op = disj if isdisj else conj
                cs.add("metric-crossloop",
                       imp(vm.inloopp[i], iff(vm.fv(g, i), op(parts))))
        elif kd in ("pev_eq", "wpev_eq"):
            for i in range(1, k + 1):
                parts = []
                for j in range(1, min(t, i) + 1):
                    wrapped = vm.fv(c, k - ((j - 1) % (k - i + 1)))
                    parts.append(iff(vm.fv(c, i - j), wrapped))
                for j in range(i + 1, t + 1):
                    wrapped = vm.fv(c, k - ((j - 1) % (k - i + 1)))
                    parts.append(iff(vm.mp(c, j - i - 1), wrapped))
                cs.add("metric-crossloop", imp(vm.loop_sel[i], conj(parts)))
        elif kd in ("palw_le", "wpalw_le", "pev_le", "wpev_le"):
            isdisj = kd in ("pev_le", "wpalw_le")
            for i in range(1, k + 1):
                parts = [vm.fv(c, i)] if include_current else []
                for j in range(1, min(i, t) + 1):
                    if isdisj:
                        parts.append(conj(vm.inloop[i - j], vm.fv(c, i - j)))
                    else:
                        parts.append(disj(neg(vm.inloop[i - j]),
                                          vm.fv(c, i - j)))
                for j in range(0, min(k - i, t - 1) + 1):
                    guard = vm.inloop[max(0, i - t + j)]
                    if isdisj:
                        parts.append(conj(neg(guard), vm.fv(c, k - j)))
                    else:
                        parts.append(disj(guard, vm.fv(c, k - j)))
                op = disj if isdisj else conj
                cs.add("metric-crossloop",
                       imp(vm.inloop[i], iff(vm.fv(g, i), op(parts))))


def emit_mono_past(vm, cs, include_current=True):
    """Past metric operators over mono-infinite time.

    Near the origin a window operator is truncated to the instants that
    exist; the strong exact-distance operators default to false before
    instant t and the weak ones to true.  Inside the forward loop the
    wrap-around rules mirror the bi-infinite cross-loop constraints,
    with out-of-domain references fixed to the defaults.
    """
    k = vm.k
    for g in vm.closure:
        kd = g.kind
        if kd not in F.PAST_METRIC:
            continue
        c = g.left
        t = g.bound
        strong = not kd.startswith("w")
        isdisj = kd in ("pev_le", "wpalw_le")
        exact = kd in ("pev_eq", "wpev_eq")
        for i in range(0, k + 2):
            if i >= t:
                if exact:
                    cs.add("metric-inbound", iff(vm.fv(g, i), vm.fv(c, i - t)))
                else:
                    terms = [vm.fv(c, i)] if include_current else []
                    terms += [vm.fv(c, i - j) for j in range(1, t + 1)]
                    op = disj if isdisj else conj
                    cs.add("metric-inbound", iff(vm.fv(g, i), op(terms)))
            else:
                if exact or (not isdisj and strong) or (isdisj and not strong):
                    # the window reaches before the origin and an
                    # out-of-domain reference decides the value outright
                    lit = vm.fv(g, i)
                    cs.add("metric-inbound", lit if not strong else neg(lit))
                    continue
                # truncated window: pev_le and wpev_le keep their
                # in-domain instants
                terms = [vm.fv(c, i)] if include_current else []
                terms += [vm.fv(c, i - j) for j in range(1, min(i, t) + 1)]
                op = disj if isdisj else conj
                cs.add("metric-inbound", iff(vm.fv(g, i), op(terms)))
        # wrap-around inside the forward loop
        if exact:
            for i in range(1, k + 1):
                parts = []
                for j in range(1, min(t, i) + 1):
                    wrapped = vm.fv(c, k - ((j - 1) % (k - i + 1)))
                    parts.append(iff(vm.fv(c, i - j), wrapped))
                for j in range(i + 1, t + 1):
                    wrapped = vm.fv(c, k - ((j - 1) % (k - i + 1)))
                    parts.append(wrapped if not strong else neg(wrapped))
                cs.add("metric-crossloop", imp(vm.loop_sel[i], conj(parts)))
        else:
            for i in range(1, k + 1):
                parts = [vm.fv(c, i)] if include_current else []
                for j in range(1, min(i, t) + 1):
                    if isdisj:
                        parts.append(conj(vm.inloop[i - j], vm.fv(c, i - j)))
                    else:
                        parts.append(disj(neg(vm.inloop[i - j]),
                                          vm.fv(c, i - j)))
                for j in range(0, min(k - i, t - 1) + 1):
                    guard = vm.inloop[max(0, i - t + j)]
                    if isdisj:
                        parts.append(conj(neg(guard), vm.fv(c, k - j)))
                    else:
                        parts.append(disj(guard, vm.fv(c, k - j)))
                op = disj if isdisj else conj
                cs.add("metric-crossloop",
                       imp(vm.inloop[i], iff(vm.fv(g, i), op(parts))))
