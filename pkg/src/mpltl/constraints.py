"""Boolean constraint expressions over integer variables.

An expression is a signed integer literal, a Python bool, or a tuple
('and' | 'or', args...), ('imp', a, b), ('iff', a, b), ('not', a).
The constructors fold constants so downstream code never sees True or
False inside a compound expression, and a constraint that folds to a
constant is either dropped or becomes an empty clause at clausification.

A ConstraintSet is an ordered list of (category, expression) pairs; the
category tags carry through to the CNF statistics.
"""

from __future__ import annotations

CATEGORIES = ("prop", "temporal", "loop", "eventuality", "last", "first",
              "metric-mfp", "metric-inbound", "metric-crossloop", "root")


def neg(e):
    if e is True:
        return False
    if e is False:
        return True
    if isinstance(e, int):
        return -e
    if e[0] == "not":
        return e[1]
    return ("not", e)


def conj(*es):
    return _nary("and", es, absorb=False, unit=True)


def disj(*es):
    return _nary("or", es, absorb=True, unit=False)


def _nary(op, es, absorb, unit):
    # a single list argument is an iterable of operands; tuples are
    # always expressions
    if len(es) == 1 and isinstance(es[0], list):
        es = es[0]
    out = []
    for e in es:
        if e is absorb:
            return absorb
        if e is unit:
            continue
        out.append(e)
    if not out:
        return unit
    if len(out) == 1:
        return out[0]
    return (op,) + tuple(out)


def imp(a, b):
    if a is False or b is True:
        return True
    if a is True:
        return b
    if b is False:
        return neg(a)
    return ("imp", a, b)


def _neg_core(e):
    if isinstance(e, int) and e < 0:
        return -e
    if isinstance(e, tuple) and e[0] == "not":
        return e[1]
    return None


def iff(a, b):
    if a is True:
        return b
    if b is True:
        return a
    if a is False:
        return neg(b)
    if b is False:
        return neg(a)
    # (not a <-> not b) is (a <-> b); canonicalise so equal rows merge
    na, nb = _neg_core(a), _neg_core(b)
    if na is not None and nb is not None:
        a, b = na, nb
    return ("iff", a, b)


class ConstraintSet:
    """Ordered, category-tagged constraints."""

    def __init__(self):
        self.items = []

    def add(self, category, expr):
        if category not in CATEGORIES:
            raise ValueError("unknown category %r" % category)
        if expr is True:
            return
        self.items.append((category, expr))

    def count(self, category=None):
        if category is None:
            return len(self.items)
        return sum(1 for c, _ in self.items if c == category)

    def by_category(self):
        out = {}
        for c, _ in self.items:
            out[c] = out.get(c, 0) + 1
        return out
