# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled CDCL core.

Same algorithm as the pure-Python CdclSolver (two watched literals,
first-UIP learning, VSIDS with an indexed heap, saved phases, Luby
restarts) over a flat clause arena.  Binary clauses live in per-literal
implication lists; longer clauses are linked through per-watch next
pointers, so propagation never scans the clause database.

solve_arrays() is the only entry point; the wrapper in solver.py
flattens the CNF and interprets the result.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

import time as _time


cdef inline int _var(int lit) nogil:
    return lit if lit > 0 else -lit


cdef struct BinNode:
    int other
    int next


cdef class _Core:
    cdef int n, off
    cdef signed char *val        # literal value, index lit + off
    cdef signed char *phase
    cdef signed char *seen
    cdef int *level
    cdef long *reason            # clause ref, -1 decision/none, -2 binary
    cdef int *reason_bin         # antecedent literal for binary reasons
    cdef int *trail
    cdef int *trail_lim
    cdef int trail_size, n_lims, qhead

    cdef long *cdb               # arena: [size, next0, next1, lits...]
    cdef long cdb_size, cdb_cap
    cdef long *watch_head        # per literal, index lit + off

    cdef BinNode *binpool
    cdef long bin_size, bin_cap
    cdef long *bin_head          # per literal, index lit + off

    cdef double *activity
    cdef double var_inc
    cdef int *heap               # indexed max-heap of variables
    cdef int *heap_pos           # position in heap, -1 if absent
    cdef int heap_size

    cdef int *learnt_buf
    cdef long conflicts

    def __cinit__(self, int nvars):
        cdef int n = nvars
        self.n = n
        self.off = n
        self.val = <signed char *> malloc((2 * n + 1) * sizeof(signed char))
        memset(self.val, 0, (2 * n + 1) * sizeof(signed char))
        self.phase = <signed char *> malloc((n + 1) * sizeof(signed char))
        memset(self.phase, 0, (n + 1) * sizeof(signed char))
        self.seen = <signed char *> malloc((n + 1) * sizeof(signed char))
        memset(self.seen, 0, (n + 1) * sizeof(signed char))
        self.level = <int *> malloc((n + 1) * sizeof(int))
        self.reason = <long *> malloc((n + 1) * sizeof(long))
        self.reason_bin = <int *> malloc((n + 1) * sizeof(int))
        self.trail = <int *> malloc((n + 2) * sizeof(int))
        self.trail_lim = <int *> malloc((n + 2) * sizeof(int))
        self.trail_size = 0
        self.n_lims = 0
        self.qhead = 0
        self.cdb_cap = 1 << 16
        self.cdb = <long *> malloc(self.cdb_cap * sizeof(long))
        self.cdb_size = 0
        self.watch_head = <long *> malloc((2 * n + 1) * sizeof(long))
        cdef long i
        for i in range(2 * n + 1):
            self.watch_head[i] = -1
        self.bin_cap = 1 << 12
        self.binpool = <BinNode *> malloc(self.bin_cap * sizeof(BinNode))
        self.bin_size = 0
        self.bin_head = <long *> malloc((2 * n + 1) * sizeof(long))
        for i in range(2 * n + 1):
            self.bin_head[i] = -1
        self.activity = <double *> malloc((n + 1) * sizeof(double))
        memset(self.activity, 0, (n + 1) * sizeof(double))
        self.var_inc = 1.0
        self.heap = <int *> malloc((n + 1) * sizeof(int))
        self.heap_pos = <int *> malloc((n + 1) * sizeof(int))
        self.heap_size = 0
        for i in range(1, n + 1):
            self.heap[self.heap_size] = <int> i
            self.heap_pos[i] = self.heap_size
            self.heap_size += 1
        self.learnt_buf = <int *> malloc((n + 1) * sizeof(int))
        self.conflicts = 0

    def __dealloc__(self):
        free(self.val)
        free(self.phase)
        free(self.seen)
        free(self.level)
        free(self.reason)
        free(self.reason_bin)
        free(self.trail)
        free(self.trail_lim)
        free(self.cdb)
        free(self.watch_head)
        free(self.binpool)
        free(self.bin_head)
        free(self.activity)
        free(self.heap)
        free(self.heap_pos)
        free(self.learnt_buf)

    # -- indexed max-heap on activity ------------------------------------

    cdef void _heap_up(self, int pos) nogil:
        cdef int v = self.heap[pos]
        cdef double a = self.activity[v]
        cdef int parent
        while pos > 0:
            parent = (pos - 1) >> 1
            if self.activity[self.heap[parent]] >= a:
                break
            self.heap[pos] = self.heap[parent]
            self.heap_pos[self.heap[pos]] = pos
            pos = parent
        self.heap[pos] = v
        self.heap_pos[v] = pos

    cdef void _heap_down(self, int pos) nogil:
        cdef int v = self.heap[pos]
        cdef double a = self.activity[v]
        cdef int child
        while True:
            child = 2 * pos + 1
            if child >= self.heap_size:
                break
            if (child + 1 < self.heap_size and
                    self.activity[self.heap[child + 1]] >
                    self.activity[self.heap[child]]):
                child += 1
            if self.activity[self.heap[child]] <= a:
                break
            self.heap[pos] = self.heap[child]
            self.heap_pos[self.heap[pos]] = pos
            pos = child
        self.heap[pos] = v
        self.heap_pos[v] = pos

    cdef void _heap_insert(self, int v) nogil:
        if self.heap_pos[v] >= 0:
            return
        self.heap[self.heap_size] = v
        self.heap_pos[v] = self.heap_size
        self.heap_size += 1
        self._heap_up(self.heap_size - 1)

    cdef int _heap_pop(self) nogil:
        cdef int v = self.heap[0]
        self.heap_size -= 1
        self.heap_pos[v] = -1
        if self.heap_size > 0:
            self.heap[0] = self.heap[self.heap_size]
            self.heap_pos[self.heap[0]] = 0
            self._heap_down(0)
        return v

    cdef void _bump(self, int v) nogil:
        cdef int u
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            for u in range(1, self.n + 1):
                self.activity[u] *= 1e-100
            self.var_inc *= 1e-100
            for u in range(self.heap_size - 1, -1, -1):
                self._heap_down(u)
            return
        if self.heap_pos[v] >= 0:
            self._heap_up(self.heap_pos[v])

    # -- clause storage --------------------------------------------------

    cdef long _alloc(self, long need):
        cdef long ref = self.cdb_size
        while self.cdb_size + need > self.cdb_cap:
            self.cdb_cap *= 2
            self.cdb = <long *> realloc(self.cdb,
                                        self.cdb_cap * sizeof(long))
        self.cdb_size += need
        return ref

    cdef void _add_bin(self, int a, int b):
        if self.bin_size + 2 > self.bin_cap:
            self.bin_cap *= 2
            self.binpool = <BinNode *> realloc(
                self.binpool, self.bin_cap * sizeof(BinNode))
        self.binpool[self.bin_size].other = b
        self.binpool[self.bin_size].next = <int> self.bin_head[a + self.off]
        self.bin_head[a + self.off] = self.bin_size
        self.bin_size += 1
        self.binpool[self.bin_size].other = a
        self.binpool[self.bin_size].next = <int> self.bin_head[b + self.off]
        self.bin_head[b + self.off] = self.bin_size
        self.bin_size += 1

    cdef long _add_long(self, int *lits, int size):
        cdef long ref = self._alloc(3 + size)
        cdef long *c = self.cdb + ref
        cdef int i
        c[0] = size
        for i in range(size):
            c[3 + i] = lits[i]
        c[1] = self.watch_head[lits[0] + self.off]
        self.watch_head[lits[0] + self.off] = ref
        c[2] = self.watch_head[lits[1] + self.off]
        self.watch_head[lits[1] + self.off] = ref
        return ref

    cdef void _enqueue(self, int lit, long ref, int rbin) nogil:
        cdef int v = _var(lit)
        self.val[lit + self.off] = 1
        self.val[-lit + self.off] = -1
        self.level[v] = self.n_lims
        self.reason[v] = ref
        self.reason_bin[v] = rbin
        self.trail[self.trail_size] = lit
        self.trail_size += 1

    # -- propagation -----------------------------------------------------

    cdef long _propagate(self, int *confl_bin) nogil:
        # returns a conflicting clause ref, -2 for a binary conflict
        # (with the pair in confl_bin), or -1 for no conflict
        cdef int off = self.off
        cdef signed char *val = self.val
        cdef long *cdb = self.cdb
        cdef int fal, other, first, cj, size, i, v
        cdef long ref, nxt, prev, b
        cdef long *c
        cdef int wslot
        while self.qhead < self.trail_size:
            fal = -self.trail[self.qhead]
            self.qhead += 1
            b = self.bin_head[fal + off]
            while b != -1:
                other = self.binpool[b].other
                if val[other + off] == 0:
                    self._enqueue(other, -2, fal)
                elif val[other + off] < 0:
                    confl_bin[0] = other
                    confl_bin[1] = fal
                    return -2
                b = self.binpool[b].next
            ref = self.watch_head[fal + off]
            prev = -1
            while ref != -1:
                c = cdb + ref
                size = <int> c[0]
                if c[3] == fal:
                    c[3] = c[4]
                    c[4] = fal
                    nxt = c[1]
                    c[1] = c[2]
                    c[2] = nxt
                wslot = 2
                nxt = c[2]
                first = <int> c[3]
                if val[first + off] > 0:
                    prev = ref + wslot
                    ref = nxt
                    continue
                i = 2
                while i < size:
                    cj = <int> c[3 + i]
                    if val[cj + off] >= 0:
                        break
                    i += 1
                if i < size:
                    # move this watch to cj's list
                    c[4] = cj
                    c[3 + i] = fal
                    if prev == -1:
                        self.watch_head[fal + off] = nxt
                    else:
                        cdb[prev] = nxt
                    c[2] = self.watch_head[cj + off]
                    self.watch_head[cj + off] = ref
                    ref = nxt
                    continue
                if val[first + off] < 0:
                    return ref
                self._enqueue(first, ref, 0)
                prev = ref + wslot
                ref = nxt
        return -1

    # -- learning --------------------------------------------------------

    cdef int _analyze(self, long confl_ref, int cb0, int cb1,
                      int *out_size) nogil:
        # first-UIP; fills learnt_buf, returns backjump level
        cdef int *learnt = self.learnt_buf
        cdef signed char *seen = self.seen
        cdef int nlearnt = 1
        cdef int counter = 0
        cdef int lit = 0
        cdef int idx = self.trail_size - 1
        cdef int cur_level = self.n_lims
        cdef long ref = confl_ref
        cdef long *c
        cdef int i, q, v, size, back, second, j
        cdef int bin_a = cb0
        cdef int bin_b = cb1
        cdef int skip = 0
        while True:
            if ref == -2:
                for i in range(2):
                    q = bin_a if i == 0 else bin_b
                    if q == skip:
                        continue
                    v = _var(q)
                    if seen[v] == 0 and self.level[v] > 0:
                        seen[v] = 1
                        self._bump(v)
                        if self.level[v] >= cur_level:
                            counter += 1
                        else:
                            learnt[nlearnt] = q
                            nlearnt += 1
            else:
                c = self.cdb + ref
                size = <int> c[0]
                for i in range(size):
                    q = <int> c[3 + i]
                    if q == skip:
                        continue
                    v = _var(q)
                    if seen[v] == 0 and self.level[v] > 0:
                        seen[v] = 1
                        self._bump(v)
                        if self.level[v] >= cur_level:
                            counter += 1
                        else:
                            learnt[nlearnt] = q
                            nlearnt += 1
            while True:
                lit = self.trail[idx]
                idx -= 1
                if seen[_var(lit)]:
                    break
            counter -= 1
            if counter == 0:
                break
            v = _var(lit)
            ref = self.reason[v]
            if ref == -2:
                bin_a = lit
                bin_b = self.reason_bin[v]
            skip = lit
        learnt[0] = -lit
        # minimisation: drop literals implied by the rest of the clause
        cdef int keep, x, w
        cdef long r
        w = 1
        for i in range(1, nlearnt):
            q = learnt[i]
            v = _var(q)
            r = self.reason[v]
            keep = 1
            if r == -2:
                x = self.reason_bin[v]
                if seen[_var(x)] == 1 or self.level[_var(x)] == 0:
                    keep = 0
            elif r >= 0:
                c = self.cdb + r
                keep = 0
                for j in range(<int> c[0]):
                    x = <int> c[3 + j]
                    if x == -q or x == q:
                        continue
                    if seen[_var(x)] == 0 and self.level[_var(x)] > 0:
                        keep = 1
                        break
            if keep:
                learnt[w] = q
                w += 1
        nlearnt = w
        for i in range(nlearnt):
            seen[_var(learnt[i])] = 0
        # clear seen flags possibly left on dropped literals
        for i in range(self.trail_size):
            seen[_var(self.trail[i])] = 0
        out_size[0] = nlearnt
        if nlearnt == 1:
            return 0
        back = 0
        second = 1
        for i in range(1, nlearnt):
            if self.level[_var(learnt[i])] > back:
                back = self.level[_var(learnt[i])]
                second = i
        q = learnt[1]
        learnt[1] = learnt[second]
        learnt[second] = q
        return back

    cdef void _cancel_until(self, int lvl) nogil:
        cdef int bound, idx, lit, v
        if self.n_lims <= lvl:
            return
        bound = self.trail_lim[lvl]
        for idx in range(self.trail_size - 1, bound - 1, -1):
            lit = self.trail[idx]
            v = _var(lit)
            self.phase[v] = 1 if lit > 0 else 0
            self.val[lit + self.off] = 0
            self.val[-lit + self.off] = 0
            self.reason[v] = -1
            self._heap_insert(v)
        self.trail_size = bound
        self.qhead = bound
        self.n_lims = lvl

    cdef int _decide(self) nogil:
        cdef int v
        while self.heap_size > 0:
            v = self._heap_pop()
            if self.val[v + self.off] == 0:
                return v
        return 0

    # -- driver ----------------------------------------------------------

    def add_clause(self, lits):
        """Add an original clause; returns False on contradiction."""
        cdef list uniq = []
        cdef set seenl = set()
        cdef int l
        for l in lits:
            if -l in seenl:
                return True
            if l not in seenl:
                seenl.add(l)
                uniq.append(l)
        if not uniq:
            return False
        cdef int a, b, i
        if len(uniq) == 1:
            a = uniq[0]
            if self.val[a + self.off] < 0:
                return False
            if self.val[a + self.off] == 0:
                self._enqueue(a, -1, 0)
            return True
        if len(uniq) == 2:
            self._add_bin(uniq[0], uniq[1])
            return True
        cdef int *tmp = <int *> malloc(len(uniq) * sizeof(int))
        for i in range(len(uniq)):
            tmp[i] = uniq[i]
        self._add_long(tmp, len(uniq))
        free(tmp)
        return True

    def solve(self, time_limit=None):
        """Returns (status, model): 1 SAT, 0 UNSAT, -1 timeout."""
        cdef int confl_bin[2]
        cdef long ref
        cdef int v, i, nlearnt, back
        cdef int lsize = 0
        cdef long restart_idx = 1
        cdef long restart_budget = 100 * _luby(1)
        cdef double deadline = -1.0
        if time_limit is not None:
            deadline = _time.monotonic() + time_limit
        ref = self._propagate(confl_bin)
        if ref != -1:
            return 0, None
        while True:
            ref = self._propagate(confl_bin)
            if ref != -1:
                self.conflicts += 1
                if self.n_lims == 0:
                    return 0, None
                back = self._analyze(ref, confl_bin[0], confl_bin[1],
                                     &lsize)
                nlearnt = lsize
                self._cancel_until(back)
                if nlearnt == 1:
                    self._enqueue(self.learnt_buf[0], -1, 0)
                elif nlearnt == 2:
                    self._add_bin(self.learnt_buf[0], self.learnt_buf[1])
                    self._enqueue(self.learnt_buf[0], -2,
                                  self.learnt_buf[1])
                else:
                    self._enqueue(self.learnt_buf[0],
                                  self._add_long(self.learnt_buf, nlearnt),
                                  0)
                self.var_inc /= 0.95
                if self.conflicts % 1024 == 0 and deadline > 0:
                    if _time.monotonic() > deadline:
                        return -1, None
                restart_budget -= 1
                if restart_budget <= 0:
                    restart_idx += 1
                    restart_budget = 100 * _luby(restart_idx)
                    self._cancel_until(0)
            else:
                v = self._decide()
                if v == 0:
                    model = [False] * (self.n + 1)
                    for i in range(1, self.n + 1):
                        model[i] = self.val[i + self.off] > 0
                    return 1, model
                self.trail_lim[self.n_lims] = self.trail_size
                self.n_lims += 1
                self._enqueue(v if self.phase[v] else -v, -1, 0)


def _luby(long i):
    cdef long size = 1
    cdef long seq = 0
    while size < i + 1:
        size = 2 * size + 1
        seq += 1
    while size - 1 != i:
        size = (size - 1) // 2
        seq -= 1
        i %= size
    return 1 << seq


def solve_cnf(int nvars, clauses, time_limit=None):
    """Solve a clause list; returns a model list or None, or raises
    TimeoutError when the time limit runs out."""
    core = _Core(nvars)
    for cl in clauses:
        if not core.add_clause(cl):
            return None
    status, model = core.solve(time_limit)
    if status == -1:
        raise TimeoutError()
    return model if status == 1 else None
