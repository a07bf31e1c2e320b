"""Structure-preserving clausification and DIMACS I/O.

Constraints are turned into clauses Tseitin-style: each compound
subexpression gets a defining auxiliary variable, memoised so a shared
subexpression is translated once.  When an equivalence pins a literal
to a compound expression, that literal itself becomes the definition
head, so `a iff (b and c)` yields exactly the three clauses
{-a b}, {-a c}, {a -b -c} with no fresh variable.

Statistics are kept per constraint category (clauses, and auxiliary
variables charged to the category that first needed them) next to the
variable totals of the encoding itself.
"""

from __future__ import annotations

import json


class Cnf:
    def __init__(self, nvars=0):
        self.nvars = nvars
        self.clauses = []
        self.clause_category = []
        self.aux_vars = {}  # category -> count
        self.var_counts = {}  # encoding variables per allocation group
        self.names = {}

    def stats(self):
        cats = {}
        for i, cat in enumerate(self.clause_category):
            d = cats.setdefault(cat, {"clauses": 0, "aux_vars": 0})
            d["clauses"] += 1
        for cat, n in self.aux_vars.items():
            cats.setdefault(cat, {"clauses": 0, "aux_vars": 0})["aux_vars"] = n
        return {
            "vars": self.nvars,
            "clauses": len(self.clauses),
            "variable_groups": dict(self.var_counts),
            "categories": cats,
        }

    def stats_json(self):
        return json.dumps(self.stats(), indent=2, sort_keys=True)


def clausify(cs, vm):
    """Translate a ConstraintSet against a VariableMap into a Cnf."""
    cnf = Cnf(nvars=vm.num_vars)
    cnf.var_counts = vm.var_counts()
    cnf.names = dict(vm.names)
    memo = {}
    clauses = cnf.clauses
    cats = cnf.clause_category

    state = {"cat": None}

    def new_aux():
        cnf.nvars += 1
        cat = state["cat"]
        cnf.aux_vars[cat] = cnf.aux_vars.get(cat, 0) + 1
        return cnf.nvars

    def emit(lits):
        clauses.append(tuple(lits))
        cats.append(state["cat"])

    def lit_of(e):
        if isinstance(e, bool):
            raise AssertionError("constant reached clausification")
        if isinstance(e, int):
            return e
        v = memo.get(e)
        if v is not None:
            return v
        op = e[0]
        if op == "not":
            v = -lit_of(e[1])
        elif op == "imp":
            v = lit_of(("or", ("not", e[1]), e[2]))
        elif op == "iff":
            a = lit_of(e[1])
            b = lit_of(e[2])
            v = new_aux()
            emit((-v, -a, b))
            emit((-v, a, -b))
            emit((v, a, b))
            emit((v, -a, -b))
        else:
            args = [lit_of(x) for x in e[1:]]
            v = new_aux()
            if op == "and":
                for a in args:
                    emit((-v, a))
                emit(tuple([v] + [-a for a in args]))
            elif op == "or":
                for a in args:
                    emit((v, -a))
                emit(tuple([-v] + args))
            else:
                raise AssertionError("unknown operator %r" % op)
        memo[e] = v
        return v

    def define_as(head, e):
        """Constrain literal `head` to equal compound expression e, and
        let `head` stand for e from now on."""
        op = e[0]
        if op == "not":
            define_or_link(-head, e[1])
            return
        if op == "imp":
            define_as(head, ("or", ("not", e[1]), e[2]))
            return
        if op == "iff":
            a = lit_of(e[1])
            b = lit_of(e[2])
            emit((-head, -a, b))
            emit((-head, a, -b))
            emit((head, a, b))
            emit((head, -a, -b))
            return
        args = [lit_of(x) for x in e[1:]]
        if op == "and":
            for a in args:
                emit((-head, a))
            emit(tuple([head] + [-a for a in args]))
        elif op == "or":
            for a in args:
                emit((head, -a))
            emit(tuple([-head] + args))
        else:
            raise AssertionError("unknown operator %r" % op)

    def define_or_link(head, e):
        if isinstance(e, int):
            emit((-head, e))
            emit((head, -e))
            return
        v = memo.get(e)
        if v is not None:
            emit((-head, v))
            emit((head, -v))
            return
        define_as(head, e)
        memo[e] = head

    def is_lit(e):
        return isinstance(e, int) or (isinstance(e, tuple) and e[0] == "not"
                                      and isinstance(e[1], int))

    def guarded_def(guards, head, e):
        """Clauses for guards -> (head iff e), with e compound."""
        op = e[0]
        if op == "not":
            x = e[1]
            if isinstance(x, tuple):
                guarded_def(guards, -head, x)
            else:
                emit(guards + (-head, -x))
                emit(guards + (head, x))
            return
        if op == "imp":
            guarded_def(guards, head, ("or", ("not", e[1]), e[2]))
            return
        if op == "iff":
            a = lit_of(e[1])
            b = lit_of(e[2])
            emit(guards + (-head, -a, b))
            emit(guards + (-head, a, -b))
            emit(guards + (head, a, b))
            emit(guards + (head, -a, -b))
            return
        args = [lit_of(x) for x in e[1:]]
        if op == "and":
            for a in args:
                emit(guards + (-head, a))
            emit(guards + (head,) + tuple(-a for a in args))
        elif op == "or":
            for a in args:
                emit(guards + (head, -a))
            emit(guards + (-head,) + tuple(args))
        else:
            raise AssertionError("unknown operator %r" % op)

    def assert_guarded(guards, e):
        """Clauses for (guards -> e), distributing over the structure
        of e instead of naming it with an auxiliary variable."""
        if e is True:
            return
        if e is False:
            emit(guards)
            return
        if isinstance(e, int):
            emit(guards + (e,))
            return
        op = e[0]
        if op == "and":
            for x in e[1:]:
                assert_guarded(guards, x)
        elif op == "or":
            emit(guards + tuple(lit_of(x) for x in e[1:]))
        elif op == "imp":
            assert_guarded(guards + (-lit_of(e[1]),), e[2])
        elif op == "iff":
            a, b = e[1], e[2]
            if is_lit(a) and is_lit(b):
                la, lb = lit_of(a), lit_of(b)
                emit(guards + (-la, lb))
                emit(guards + (la, -lb))
            elif is_lit(a):
                guarded_def(guards, lit_of(a), b)
            elif is_lit(b):
                guarded_def(guards, lit_of(b), a)
            else:
                la, lb = lit_of(a), lit_of(b)
                emit(guards + (-la, lb))
                emit(guards + (la, -lb))
        elif op == "not":
            emit(guards + (-lit_of(e[1]),))
        else:
            emit(guards + (lit_of(e),))

    def assert_true(e):
        if e is True:
            return
        if e is False:
            emit(())
            return
        if isinstance(e, int):
            emit((e,))
            return
        op = e[0]
        if op == "and":
            for x in e[1:]:
                assert_true(x)
        elif op == "or":
            emit(tuple(lit_of(x) for x in e[1:]))
        elif op == "imp":
            assert_guarded((-lit_of(e[1]),), e[2])
        elif op == "iff":
            a, b = e[1], e[2]
            a_lit = isinstance(a, int) or (isinstance(a, tuple) and a[0] == "not"
                                           and isinstance(a[1], int))
            b_lit = isinstance(b, int) or (isinstance(b, tuple) and b[0] == "not"
                                           and isinstance(b[1], int))
            if a_lit and not b_lit:
                define_or_link(lit_of(a), b)
            elif b_lit and not a_lit:
                define_or_link(lit_of(b), a)
            else:
                la = lit_of(a)
                lb = lit_of(b)
                emit((-la, lb))
                emit((la, -lb))
        elif op == "not":
            x = e[1]
            if isinstance(x, int):
                emit((-x,))
            else:
                emit((-lit_of(x),))
        else:
            emit((lit_of(e),))

    for cat, e in cs.items:
        state["cat"] = cat
        assert_true(e)
    return cnf


def write_dimacs(cnf, fh, comments=()):
    """Write in DIMACS CNF format; deterministic for a given Cnf."""
    for c in comments:
        fh.write("c %s\n" % c)
    fh.write("p cnf %d %d\n" % (cnf.nvars, len(cnf.clauses)))
    for cl in cnf.clauses:
        fh.write(" ".join(str(x) for x in cl))
        fh.write(" 0\n")


def read_model(text, nvars):
    """Parse solver output: s SAT/UNSAT lines and v literal lines.

    Returns a list of booleans indexed 1..nvars, or None for
    unsatisfiable.  Raises ValueError if no verdict line is present.
    """
    verdict = None
    lits = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if "UNSAT" in word:
                verdict = False
            elif "SAT" in word:
                verdict = True
        elif line.startswith("v "):
            for tok in line[2:].split():
                lit = int(tok)
                if lit != 0:
                    lits.append(lit)
    if verdict is None:
        raise ValueError("no verdict line in solver output")
    if not verdict:
        return None
    model = [False] * (nvars + 1)
    for lit in lits:
        v = abs(lit)
        if v <= nvars:
            model[v] = lit > 0
    return model
