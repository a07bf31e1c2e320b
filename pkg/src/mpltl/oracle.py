"""Exact evaluation of core formulas on ultimately periodic traces.

This is the reference semantics the encoders are tested against, built
without any of the encoding machinery.  A formula's truth value at
every position of a window around the trace is computed bottom-up as
one big integer bitmask per subformula.  The window is padded far
enough beyond both ends of the trace that every mask is exactly
periodic in the margins, so positions outside the window can always be
read back through the loop periods.

Until/release (and since/trigger over bi-infinite time) wrap around a
loop, so their recurrences are seeded by solving the fixpoint on one
period of the loop first: least fixpoint for until/since, greatest for
release/trigger.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formula as F
from .trace import complete_trace


class _Mask:
    __slots__ = ("mask", "shi", "slo")

    def __init__(self, mask, shi, slo):
        self.mask = mask
        self.shi = shi  # periodic (period Pf) at positions >= shi
        self.slo = slo  # periodic (period Pp) at positions <= slo


class _Window:
    """Evaluation context for one trace."""

    def __init__(self, f, trace, time_model):
        trace.validate()
        if trace.lf is None:
            raise ValueError("evaluation needs a forward loop; "
                             "use complete_trace first")
        if time_model == "bi" and trace.lp is None:
            raise ValueError("bi-infinite evaluation needs a backward loop")
        self.trace = trace
        self.time_model = time_model
        self.k = trace.k
        self.pf = trace.k - trace.lf + 1
        self.pp = (trace.lp + 1) if time_model == "bi" else None
        self.closure = F.closure(f)

        grow_hi = 0
        grow_lo = 0
        for g in self.closure:
            kd = g.kind
            if kd in ("yesterday", "wyesterday"):
                grow_hi += 1
            elif kd in ("since", "trigger"):
                grow_hi += 2 * self.pf
            elif kd in F.PAST_METRIC:
                grow_hi += g.bound
            if kd == "next":
                grow_lo += 1
            elif kd in ("until", "release"):
                grow_lo += 2 * (self.pp or 0)
            elif kd in F.FUTURE_METRIC:
                grow_lo += g.bound
        self.hi = self.k + grow_hi + 2 * self.pf + 1
        self.lo = -(grow_lo + 2 * self.pp + 1) if time_model == "bi" else 0
        self.width = self.hi - self.lo + 1
        self.full = (1 << self.width) - 1
        self.vals = {}
        self._atom_masks = {}
        self._compute()

    # -- position helpers ------------------------------------------------

    def _bitpos(self, p):
        return p - self.lo

    def _read(self, m, p):
        """Bit of mask-info m at any position, wrapping into the window."""
        if p > self.hi:
            p -= ((p - self.hi + self.pf - 1) // self.pf) * self.pf
        elif p < self.lo:
            p += ((self.lo - p + self.pp - 1) // self.pp) * self.pp
        return (m.mask >> (p - self.lo)) & 1

    def _atom_mask(self, name):
        mk = self._atom_masks.get(name)
        if mk is None:
            mk = 0
            for p in range(self.lo, self.hi + 1):
                if self.trace.holds(name, p):
                    mk |= 1 << (p - self.lo)
            self._atom_masks[name] = mk
        return mk

    def _shifted(self, m, d, fill=0):
        """Mask of child value at position p+d, for p across the window.

        Positions pushed past an edge are read back through the loop;
        over mono-infinite time positions before 0 take `fill`, which is
        how the weak/strong defaults of the past operators arise.
        """
        if d == 0:
            return m.mask
        if d > 0:
            out = m.mask >> d
            for p in range(max(self.lo, self.hi - d + 1), self.hi + 1):
                if self._read(m, p + d):
                    out |= 1 << (p - self.lo)
            return out
        out = (m.mask << (-d)) & self.full
        for p in range(self.lo, min(self.lo - d, self.hi + 1)):
            if self.time_model == "bi":
                b = self._read(m, p + d)
            else:
                b = fill
            if b:
                out |= 1 << (p - self.lo)
            else:
                out &= ~(1 << (p - self.lo))
        return out

    # -- fixpoint recurrences for the unbounded operators ----------------

    def _bits(self, mask):
        return [(mask >> j) & 1 for j in range(self.width)]

    def _until_like(self, pm, qm, least):
        """Backward recurrence v_p = q_p op (p_p, v_{p+1}) seeded on the
        forward loop.  least=True gives until, False gives release."""
        pb = self._bits(pm.mask)
        qb = self._bits(qm.mask)
        n = self.width
        pf = self.pf
        # solve on the top period, positions hi-pf+1 .. hi
        cyc = [0 if least else 1] * pf
        for _ in range(pf + 1):
            changed = False
            for j in range(pf - 1, -1, -1):
                nxt = cyc[(j + 1) % pf]
                pj = n - pf + j
                if least:
                    v = qb[pj] | (pb[pj] & nxt)
                else:
                    v = qb[pj] & (pb[pj] | nxt)
                if v != cyc[j]:
                    cyc[j] = v
                    changed = True
            if not changed:
                break
        out = 0
        above = cyc[0]  # value at hi+1 == hi+1-pf
        for j in range(n - 1, -1, -1):
            if least:
                v = qb[j] | (pb[j] & above)
            else:
                v = qb[j] & (pb[j] | above)
            if v:
                out |= 1 << j
            above = v
        return out

    def _since_like(self, pm, qm, least):
        """Forward recurrence v_p = q_p op (p_p, v_{p-1}).  Over
        bi-infinite time the seed comes from the backward loop; over
        mono-infinite time from the fixed value before the origin."""
        pb = self._bits(pm.mask)
        qb = self._bits(qm.mask)
        n = self.width
        if self.time_model == "bi":
            pp = self.pp
            cyc = [0 if least else 1] * pp
            for _ in range(pp + 1):
                changed = False
                for j in range(pp):
                    prv = cyc[(j - 1) % pp]
                    if least:
                        v = qb[j] | (pb[j] & prv)
                    else:
                        v = qb[j] & (pb[j] | prv)
                    if v != cyc[j]:
                        cyc[j] = v
                        changed = True
                if not changed:
                    break
            below = cyc[pp - 1]  # value at lo-1 == lo-1+pp
        else:
            below = 0 if least else 1
        out = 0
        for j in range(n):
            if least:
                v = qb[j] | (pb[j] & below)
            else:
                v = qb[j] & (pb[j] | below)
            if v:
                out |= 1 << j
            below = v
        return out

    # -- main bottom-up pass ---------------------------------------------

    def _compute(self):
        for g in self.closure:
            kd = g.kind
            c = self.vals.get(g.left)
            r = self.vals.get(g.right)
            pf, pp = self.pf, self.pp
            lo_default = self.lo
            hi_default = self.hi
            if kd == "atom":
                mi = _Mask(self._atom_mask(g.name), self.trace.lf,
                           self.trace.lp if self.time_model == "bi" else 0)
            elif kd == "true":
                mi = _Mask(self.full, lo_default, hi_default)
            elif kd == "false":
                mi = _Mask(0, lo_default, hi_default)
            elif kd == "not":
                mi = _Mask(~c.mask & self.full, c.shi, c.slo)
            elif kd == "and":
                mi = _Mask(c.mask & r.mask, max(c.shi, r.shi),
                           min(c.slo, r.slo))
            elif kd == "or":
                mi = _Mask(c.mask | r.mask, max(c.shi, r.shi),
                           min(c.slo, r.slo))
            elif kd == "next":
                mi = _Mask(self._shifted(c, 1), c.shi, c.slo - 1)
            elif kd in ("yesterday", "wyesterday"):
                fill = 1 if kd == "wyesterday" else 0
                mi = _Mask(self._shifted(c, -1, fill), c.shi + 1, c.slo)
            elif kd == "until" or kd == "release":
                mk = self._until_like(c, r, kd == "until")
                mi = _Mask(mk, max(c.shi, r.shi),
                           min(c.slo, r.slo) - 2 * (pp or 0))
            elif kd == "since" or kd == "trigger":
                mk = self._since_like(c, r, kd == "since")
                mi = _Mask(mk, max(c.shi, r.shi) + 2 * pf,
                           min(c.slo, r.slo))
            elif kd == "ev_eq":
                mi = _Mask(self._shifted(c, g.bound), c.shi, c.slo - g.bound)
            elif kd == "ev_le" or kd == "alw_le":
                acc = c.mask if kd == "ev_le" else c.mask
                for j in range(1, g.bound + 1):
                    s = self._shifted(c, j)
                    acc = (acc | s) if kd == "ev_le" else (acc & s)
                mi = _Mask(acc, c.shi, c.slo - g.bound)
            elif kd in ("pev_eq", "wpev_eq"):
                fill = 1 if kd == "wpev_eq" else 0
                mi = _Mask(self._shifted(c, -g.bound, fill),
                           c.shi + g.bound, c.slo)
            elif kd in ("pev_le", "wpalw_le", "palw_le", "wpev_le"):
                # strong/weak pairs: pev_le (strong) with wpev_le (weak)
                # are disjunctive/conjunctive respectively; palw_le with
                # wpalw_le the other way around
                disj = kd in ("pev_le", "wpalw_le")
                fill = 1 if kd.startswith("w") else 0
                acc = self._shifted(c, 0)
                for j in range(1, g.bound + 1):
                    s = self._shifted(c, -j, fill)
                    acc = (acc | s) if disj else (acc & s)
                mi = _Mask(acc, c.shi + g.bound, c.slo)
            else:
                raise ValueError("oracle expects a core formula, got %r" % kd)
            self.vals[g] = mi
        top_need = max(v.shi for v in self.vals.values())
        if top_need > self.hi - pf:
            raise AssertionError("window underestimated toward the future")
        if self.time_model == "bi":
            low_need = min(v.slo for v in self.vals.values())
            if low_need < self.lo + pp:
                raise AssertionError("window underestimated toward the past")

    def value(self, g, p):
        return self._read(self.vals[g], p)


def eval_on_lasso(f, trace, time_model, at=0):
    """Truth value of core formula f at instant `at` of the trace."""
    if not F.is_core(f):
        raise ValueError("eval_on_lasso expects a core formula; desugar first")
    w = _Window(f, trace, time_model)
    return bool(w.value(f, at))


@dataclass
class CheckReport:
    ok: bool
    failure: tuple | None = None  # (subformula, instant)


def check_trace(f, trace, time_model, at=0):
    """Check a (possibly loop-less) trace against a core formula.

    Missing loops are filled in by stuttering: a witness without a
    forward loop claims its last state can repeat forever, and
    symmetrically for the past over bi-infinite time.  On failure the
    report carries a culprit subformula and instant found by descending
    through falsified connectives.
    """
    full, offset = complete_trace(trace, time_model)
    w = _Window(f, full, time_model)
    pos = at + offset
    if w.value(f, pos):
        return CheckReport(ok=True)
    g, p = _find_cause(w, f, pos)
    return CheckReport(ok=False, failure=(g, p - offset))


def _find_cause(w, g, p, depth=0):
    """Walk into a falsified formula looking for a small explanation."""
    if depth > 200:
        return g, p
    kd = g.kind
    if kd == "and":
        for c in (g.left, g.right):
            if not w.value(c, p):
                return _find_cause(w, c, p, depth + 1)
    elif kd == "or":
        return _find_cause(w, g.left, p, depth + 1)
    elif kd == "next":
        return _find_cause(w, g.left, p + 1, depth + 1)
    elif kd in ("yesterday", "wyesterday") and p > w.lo:
        return _find_cause(w, g.left, p - 1, depth + 1)
    elif kd in ("until", "release"):
        # find where the obligation dies within one window sweep
        limit = min(w.hi, p + w.width)
        r = p
        while r <= limit:
            if kd == "release":
                if not w.value(g.right, r):
                    return _find_cause(w, g.right, r, depth + 1)
                if w.value(g.left, r):
                    break
            else:
                if not w.value(g.left, r):
                    return _find_cause(w, g.right, r, depth + 1)
            r += 1
        return g, p
    elif kd in ("since", "trigger"):
        r = p
        while r >= w.lo:
            if kd == "trigger":
                if not w.value(g.right, r):
                    return _find_cause(w, g.right, r, depth + 1)
                if w.value(g.left, r):
                    break
            else:
                if not w.value(g.left, r):
                    return _find_cause(w, g.right, r, depth + 1)
            r -= 1
        return g, p
    elif kd == "alw_le":
        for j in range(g.bound + 1):
            if not w.value(g.left, p + j):
                return _find_cause(w, g.left, p + j, depth + 1)
    elif kd in ("palw_le", "wpalw_le"):
        for j in range(g.bound + 1):
            if p - j < w.lo:
                break
            if not w.value(g.left, p - j):
                return _find_cause(w, g.left, p - j, depth + 1)
    elif kd in ("ev_eq", "pev_eq", "wpev_eq"):
        q = p + g.bound if kd == "ev_eq" else p - g.bound
        if w.lo <= q <= w.hi:
            return _find_cause(w, g.left, q, depth + 1)
    return g, p


def naive_eval(f, trace, time_model, at=0):
    """Slow direct-recursion evaluator used to cross-check the oracle.

    Same semantics, computed pointwise with memoisation and an explicit
    horizon for the unbounded operators: beyond one full loop period
    past the window the word repeats, so until/since can stop after
    scanning two periods without finding a witness change.
    """
    trace.validate()
    pf = trace.k - trace.lf + 1
    pp = (trace.lp + 1) if time_model == "bi" else 0
    memo = {}

    def holds(name, p):
        return trace.holds(name, p)

    def ev(g, p):
        key = (g, p)
        if key in memo:
            return memo[key]
        kd = g.kind
        if kd == "atom":
            v = holds(g.name, p)
        elif kd == "true":
            v = True
        elif kd == "false":
            v = False
        elif kd == "not":
            v = not ev(g.left, p)
        elif kd == "and":
            v = ev(g.left, p) and ev(g.right, p)
        elif kd == "or":
            v = ev(g.left, p) or ev(g.right, p)
        elif kd == "next":
            v = ev(g.left, p + 1)
        elif kd == "yesterday":
            v = p - 1 >= 0 and ev(g.left, p - 1) if time_model == "mono" \
                else ev(g.left, p - 1)
        elif kd == "wyesterday":
            v = p - 1 < 0 or ev(g.left, p - 1) if time_model == "mono" \
                else ev(g.left, p - 1)
        elif kd == "until":
            v = _scan_until(g, p)
        elif kd == "release":
            v = not _scan_until_neg(g, p)
        elif kd == "since":
            v = _scan_since(g, p)
        elif kd == "trigger":
            v = not _scan_since_neg(g, p)
        elif kd == "ev_eq":
            v = ev(g.left, p + g.bound)
        elif kd == "ev_le":
            v = any(ev(g.left, p + j) for j in range(g.bound + 1))
        elif kd == "alw_le":
            v = all(ev(g.left, p + j) for j in range(g.bound + 1))
        elif kd in ("pev_eq", "wpev_eq"):
            q = p - g.bound
            if time_model == "mono" and q < 0:
                v = kd == "wpev_eq"
            else:
                v = ev(g.left, q)
        elif kd in ("pev_le", "wpev_le", "palw_le", "wpalw_le"):
            disj = kd in ("pev_le", "wpalw_le")
            weak = kd.startswith("w")
            vals = []
            for j in range(g.bound + 1):
                q = p - j
                if time_model == "mono" and q < 0:
                    vals.append(weak)
                else:
                    vals.append(ev(g.left, q))
            v = any(vals) if disj else all(vals)
        else:
            raise ValueError(kd)
        memo[key] = v
        return v

    def _horizon(p):
        return p + 2 * pf * (len(F.closure(f)) + trace.k + 2) + 2 * trace.k + 4

    def _scan_until(g, p):
        r = p
        stop = _horizon(p)
        while r <= stop:
            if ev(g.right, r):
                return True
            if not ev(g.left, r):
                return False
            r += 1
        return False

    def _scan_until_neg(g, p):
        # release fails iff (not right) until (not right and not left)
        r = p
        stop = _horizon(p)
        while r <= stop:
            if not ev(g.right, r):
                return True
            if ev(g.left, r):
                return False
            r += 1
        return False

    def _phorizon(p):
        if time_model == "mono":
            return 0
        return p - 2 * pp * (len(F.closure(f)) + trace.k + 2) - 2 * trace.k - 4

    def _scan_since(g, p):
        r = p
        stop = _phorizon(p)
        while r >= stop:
            if ev(g.right, r):
                return True
            if not ev(g.left, r):
                return False
            r -= 1
        return False

    def _scan_since_neg(g, p):
        r = p
        stop = _phorizon(p)
        while r >= stop:
            if not ev(g.right, r):
                return True
            if ev(g.left, r):
                return False
            r -= 1
        return False

    return ev(f, at)
