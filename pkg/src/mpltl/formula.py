"""Formula ASTs and the normal forms used by the encoders.

Formulas are immutable and hash-consed: building the same shape twice
returns the same object, so equality and hashing are identity checks and
shared subterms stay shared through every rewrite.

Three rewrites matter downstream:

  desugar     surface operators -> core operators (boolean connectives,
              U/R/S/T, next/yesterday/weak-yesterday, and the bounded
              metric primitives); zero bounds are folded away here.
  to_pnf      negations pushed down to atoms (positive normal form).
  tau_expand  bounded metric operators unrolled into next/yesterday
              chains, giving the purely qualitative form of a formula.
"""

from __future__ import annotations

# Core operator kinds.  "not" is core but after to_pnf it only wraps atoms.
CORE_NULLARY = {"true", "false"}
CORE_UNARY = {"not", "next", "yesterday", "wyesterday"}
CORE_BINARY = {"and", "or", "until", "release", "since", "trigger"}
# Bounded metric primitives.  The "w" variants are the weak (reflexive at
# the time origin) duals, which only differ from the plain ones over
# mono-infinite time.
FUTURE_METRIC = {"ev_eq", "ev_le", "alw_le"}
PAST_METRIC = {"pev_eq", "pev_le", "palw_le", "wpev_eq", "wpev_le", "wpalw_le"}
METRIC = FUTURE_METRIC | PAST_METRIC

SUGAR_UNARY = {"ev", "alw", "pev", "palw", "alwt", "somt"}
SUGAR_BINARY = {"implies", "iff"}
SUGAR_METRIC = {"ev_ge", "ev_gt", "ev_lt", "alw_eq", "pev_lt"}

ALL_KINDS = (
    {"atom"}
    | CORE_NULLARY
    | CORE_UNARY
    | CORE_BINARY
    | METRIC
    | SUGAR_UNARY
    | SUGAR_BINARY
    | SUGAR_METRIC
)


class Formula:
    """A node of a formula AST.  Construct via the module functions."""

    __slots__ = ("kind", "name", "left", "right", "bound")

    def __init__(self, kind, name=None, left=None, right=None, bound=None):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "bound", bound)

    def __setattr__(self, *_):
        raise AttributeError("formulas are immutable")

    def children(self):
        out = []
        if self.left is not None:
            out.append(self.left)
        if self.right is not None:
            out.append(self.right)
        return out

    def __repr__(self):
        from .parser import format_formula

        return format_formula(self)


_table: dict = {}


def _mk(kind, name=None, left=None, right=None, bound=None):
    key = (kind, name, id(left) if left is not None else None,
           id(right) if right is not None else None, bound)
    f = _table.get(key)
    if f is None:
        f = Formula(kind, name, left, right, bound)
        _table[key] = f
    return f


def atom(name):
    if not isinstance(name, str) or not name:
        raise ValueError("atom name must be a non-empty string")
    return _mk("atom", name=name)


TRUE = _mk("true")
FALSE = _mk("false")


def not_(f):
    return _mk("not", left=f)


def and_(*fs):
    fs = _flatten(fs)
    if not fs:
        return TRUE
    g = fs[0]
    for h in fs[1:]:
        g = _mk("and", left=g, right=h)
    return g


def or_(*fs):
    fs = _flatten(fs)
    if not fs:
        return FALSE
    g = fs[0]
    for h in fs[1:]:
        g = _mk("or", left=g, right=h)
    return g


def _flatten(fs):
    if len(fs) == 1 and isinstance(fs[0], (list, tuple)):
        return list(fs[0])
    return list(fs)


def next_(f):
    return _mk("next", left=f)


def yesterday(f):
    return _mk("yesterday", left=f)


def wyesterday(f):
    return _mk("wyesterday", left=f)


def until(p, q):
    return _mk("until", left=p, right=q)


def release(p, q):
    return _mk("release", left=p, right=q)


def since(p, q):
    return _mk("since", left=p, right=q)


def trigger(p, q):
    return _mk("trigger", left=p, right=q)


def _metric(kind, f, t):
    if not isinstance(t, int) or t < 0:
        raise ValueError("metric bound must be a non-negative integer, got %r" % (t,))
    return _mk(kind, left=f, bound=t)


def ev_eq(f, t):
    return _metric("ev_eq", f, t)


def ev_le(f, t):
    return _metric("ev_le", f, t)


def alw_le(f, t):
    return _metric("alw_le", f, t)


def pev_eq(f, t):
    return _metric("pev_eq", f, t)


def pev_le(f, t):
    return _metric("pev_le", f, t)


def palw_le(f, t):
    return _metric("palw_le", f, t)


def wpev_eq(f, t):
    return _metric("wpev_eq", f, t)


def wpev_le(f, t):
    return _metric("wpev_le", f, t)


def wpalw_le(f, t):
    return _metric("wpalw_le", f, t)


def implies(a, b):
    return _mk("implies", left=a, right=b)


def iff(a, b):
    return _mk("iff", left=a, right=b)


def ev(f):
    return _mk("ev", left=f)


def alw(f):
    return _mk("alw", left=f)


def pev(f):
    return _mk("pev", left=f)


def palw(f):
    return _mk("palw", left=f)


def alwt(f):
    return _mk("alwt", left=f)


def somt(f):
    return _mk("somt", left=f)


def ev_ge(f, t):
    return _metric("ev_ge", f, t)


def ev_gt(f, t):
    return _metric("ev_gt", f, t)


def ev_lt(f, t):
    return _metric("ev_lt", f, t)


def alw_eq(f, t):
    return _metric("alw_eq", f, t)


def pev_lt(f, t):
    return _metric("pev_lt", f, t)


_BY_KIND = {
    "not": not_, "next": next_, "yesterday": yesterday, "wyesterday": wyesterday,
    "and": lambda a, b: _mk("and", left=a, right=b),
    "or": lambda a, b: _mk("or", left=a, right=b),
    "until": until, "release": release, "since": since, "trigger": trigger,
}

_METRIC_BY_KIND = {k: (lambda f, t, _k=k: _metric(_k, f, t)) for k in METRIC}


def is_core(f):
    """True if every node of f is a core kind (desugar output)."""
    if f.kind == "atom" or f.kind in CORE_NULLARY:
        return True
    if f.kind in CORE_UNARY or f.kind in CORE_BINARY or f.kind in METRIC:
        if f.kind in METRIC and f.bound == 0:
            return False
        return all(is_core(c) for c in f.children())
    return False


def desugar(f, _memo=None):
    """Rewrite to core operators only.

    Derived operators expand to their definitions (ev p == true U p, an
    implication becomes a disjunction, and so on) and metric bounds of
    zero collapse to the operand, so the encoders never see a t=0
    operator or a derived one.
    """
    if _memo is None:
        _memo = {}
    g = _memo.get(f)
    if g is not None:
        return g
    k = f.kind
    if k == "atom" or k in CORE_NULLARY:
        g = f
    elif k in CORE_UNARY:
        g = _BY_KIND[k](desugar(f.left, _memo))
    elif k in CORE_BINARY:
        g = _BY_KIND[k](desugar(f.left, _memo), desugar(f.right, _memo))
    elif k in METRIC:
        c = desugar(f.left, _memo)
        g = c if f.bound == 0 else _METRIC_BY_KIND[k](c, f.bound)
    elif k == "implies":
        g = or_(not_(desugar(f.left, _memo)), desugar(f.right, _memo))
    elif k == "iff":
        a = desugar(f.left, _memo)
        b = desugar(f.right, _memo)
        g = or_(and_(a, b), and_(not_(a), not_(b)))
    elif k == "ev":
        g = until(TRUE, desugar(f.left, _memo))
    elif k == "alw":
        g = not_(until(TRUE, not_(desugar(f.left, _memo))))
    elif k == "pev":
        g = since(TRUE, desugar(f.left, _memo))
    elif k == "palw":
        g = not_(since(TRUE, not_(desugar(f.left, _memo))))
    elif k == "alwt":
        g = desugar(and_(alw(f.left), palw(f.left)), _memo)
    elif k == "somt":
        g = desugar(or_(ev(f.left), pev(f.left)), _memo)
    elif k == "ev_ge":
        # ev>=t p == ev=t (ev p); at t=0 just ev p
        inner = desugar(ev(f.left), _memo)
        g = inner if f.bound == 0 else ev_eq(inner, f.bound)
    elif k == "ev_gt":
        g = ev_eq(desugar(ev(f.left), _memo), f.bound + 1)
    elif k == "ev_lt":
        g = FALSE if f.bound == 0 else desugar(ev_le(f.left, f.bound - 1), _memo)
    elif k == "alw_eq":
        # a single instant, so alw=t and ev=t coincide
        g = desugar(ev_eq(f.left, f.bound), _memo)
    elif k == "pev_lt":
        g = FALSE if f.bound == 0 else desugar(pev_le(f.left, f.bound - 1), _memo)
    else:
        raise ValueError("unknown kind %r" % k)
    _memo[f] = g
    return g


_PNF_DUAL = {
    "until": "release", "release": "until",
    "since": "trigger", "trigger": "since",
    "ev_le": "alw_le", "alw_le": "ev_le",
    "pev_eq": "wpev_eq", "wpev_eq": "pev_eq",
    "pev_le": "wpev_le", "wpev_le": "pev_le",
    "palw_le": "wpalw_le", "wpalw_le": "palw_le",
}


def to_pnf(f):
    """Push negations down to atoms.  Expects core input.

    Future metric operators dualise among themselves (ev=t is self-dual
    over infinite future time); past ones dualise into their weak
    counterparts so that the time-origin default flips along with the
    polarity.
    """
    return _pnf(f, False, {})


def _pnf(f, neg, memo):
    key = (f, neg)
    g = memo.get(key)
    if g is not None:
        return g
    k = f.kind
    if k == "atom":
        g = not_(f) if neg else f
    elif k == "true":
        g = FALSE if neg else TRUE
    elif k == "false":
        g = TRUE if neg else FALSE
    elif k == "not":
        g = _pnf(f.left, not neg, memo)
    elif k == "and":
        a = _pnf(f.left, neg, memo)
        b = _pnf(f.right, neg, memo)
        g = or_(a, b) if neg else and_(a, b)
    elif k == "or":
        a = _pnf(f.left, neg, memo)
        b = _pnf(f.right, neg, memo)
        g = and_(a, b) if neg else or_(a, b)
    elif k == "next":
        g = next_(_pnf(f.left, neg, memo))
    elif k == "yesterday":
        c = _pnf(f.left, neg, memo)
        g = wyesterday(c) if neg else yesterday(c)
    elif k == "wyesterday":
        c = _pnf(f.left, neg, memo)
        g = yesterday(c) if neg else wyesterday(c)
    elif k in ("until", "release", "since", "trigger"):
        a = _pnf(f.left, neg, memo)
        b = _pnf(f.right, neg, memo)
        g = _BY_KIND[_PNF_DUAL[k] if neg else k](a, b)
    elif k == "ev_eq":
        g = ev_eq(_pnf(f.left, neg, memo), f.bound)
    elif k in METRIC:
        c = _pnf(f.left, neg, memo)
        g = _METRIC_BY_KIND[_PNF_DUAL[k] if neg else k](c, f.bound)
    else:
        raise ValueError("to_pnf expects a core formula, got %r" % k)
    memo[key] = g
    return g


def tau_expand(f, _memo=None):
    """Unroll bounded metric operators into next/yesterday chains.

    ev=t nests t nexts; ev<=t builds the inclusive disjunction chain
    p or next (p or next (...)); alw<=t the conjunctive one.  Past
    operators mirror these with yesterday, the weak variants with weak
    yesterday so the mono-infinite defaults at the origin carry over.
    Expects core input; output is metric-free core.
    """
    if _memo is None:
        _memo = {}
    g = _memo.get(f)
    if g is not None:
        return g
    k = f.kind
    if k == "atom" or k in CORE_NULLARY:
        g = f
    elif k in CORE_UNARY:
        g = _BY_KIND[k](tau_expand(f.left, _memo))
    elif k in CORE_BINARY:
        g = _BY_KIND[k](tau_expand(f.left, _memo), tau_expand(f.right, _memo))
    elif k in METRIC:
        c = tau_expand(f.left, _memo)
        t = f.bound
        if k == "ev_eq":
            g = c
            for _ in range(t):
                g = next_(g)
        elif k == "pev_eq" or k == "wpev_eq":
            step = yesterday if k == "pev_eq" else wyesterday
            g = c
            for _ in range(t):
                g = step(g)
        else:
            comb = or_ if k in ("ev_le", "pev_le", "wpalw_le") else and_
            step = {"ev_le": next_, "alw_le": next_,
                    "pev_le": yesterday, "palw_le": yesterday,
                    "wpev_le": wyesterday, "wpalw_le": wyesterday}[k]
            g = c
            for _ in range(t):
                g = comb(c, step(g))
    else:
        raise ValueError("tau_expand expects a core formula, got %r" % k)
    _memo[f] = g
    return g


def closure(f):
    """Distinct subformulas of f, children strictly before parents."""
    out = []
    seen = set()

    stack = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if g in seen:
            continue
        if expanded:
            seen.add(g)
            out.append(g)
        else:
            stack.append((g, True))
            for c in reversed(g.children()):
                if c not in seen:
                    stack.append((c, False))
    return out


def atoms_of(f):
    """Sorted atom names occurring in f."""
    return sorted({g.name for g in closure(f) if g.kind == "atom"})


def max_metric_constant(f):
    """Largest bound on any metric operator in f, 0 if none."""
    best = 0
    for g in closure(f):
        if g.kind in METRIC or g.kind in SUGAR_METRIC:
            best = max(best, g.bound)
    return best
