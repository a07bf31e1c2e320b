"""S-expression reader for formulas and problem files.

Formulas are parenthesised prefix terms, e.g. (alwt (implies p (ev= q 3))).
Metric operators take the operand first and the bound last.  `and` and
`or` accept two or more operands.  Quantifier macros

    (exists x (1 2 3) body)     (forall x (1 2 3) body)

expand at parse time into a disjunction/conjunction of the body with x
substituted by each listed value; inside the body x can stand for a
metric bound or for a whole atom.  Comments run from `;` to end of line.

A problem file is a sequence of sections:

    (bound 20) (time bi) (encoder metric)
    (spec <formula>) ... (property <formula>)

`spec` may repeat; the checked formula is the conjunction of the specs
together with the negated property (absence of a counterexample means
the property holds).  `encoder` and `property` are optional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import formula as F


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = "" if line is None else " at line %d, column %d" % (line, col)
        super().__init__(message + where)


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r":
            col += 1
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            toks.append(_Tok(c, line, col))
            col += 1
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            toks.append(_Tok(text[i:j], line, col))
            col += j - i
            i = j
    return toks


def _read_sexprs(toks):
    """Parse tokens into nested lists; atoms stay as _Tok."""
    out = []
    stack = [out]
    for t in toks:
        if t.text == "(":
            new = []
            new_tok = t
            stack[-1].append((new_tok, new))
            stack.append(new)
        elif t.text == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", t.line, t.col)
            stack.pop()
        else:
            stack[-1].append(t)
    if len(stack) != 1:
        raise ParseError("unbalanced '(': missing closing parenthesis")
    return out


_UNARY = {
    "not": F.not_, "next": F.next_, "yesterday": F.yesterday,
    "wyesterday": F.wyesterday, "ev": F.ev, "alw": F.alw,
    "pev": F.pev, "palw": F.palw, "alwt": F.alwt, "somt": F.somt,
}

_BINARY = {
    "implies": F.implies, "iff": F.iff, "until": F.until,
    "release": F.release, "since": F.since, "trigger": F.trigger,
}

_METRIC = {
    "ev=": F.ev_eq, "ev<=": F.ev_le, "ev>=": F.ev_ge, "ev>": F.ev_gt,
    "ev<": F.ev_lt, "alw<=": F.alw_le, "alw=": F.alw_eq,
    "pev=": F.pev_eq, "pev<=": F.pev_le, "pev<": F.pev_lt,
    "palw<=": F.palw_le, "wpalw<=": F.wpalw_le, "wpev<=": F.wpev_le,
    "wpev=": F.wpev_eq,
}

_RESERVED = (set(_UNARY) | set(_BINARY) | set(_METRIC)
             | {"and", "or", "true", "false", "exists", "forall"})


def _int_of(tok, env):
    if tok.text in env:
        return env[tok.text]
    try:
        return int(tok.text)
    except ValueError:
        raise ParseError("expected an integer bound, got %r" % tok.text,
                         tok.line, tok.col)


def _lower(node, env):
    if isinstance(node, _Tok):
        t = node.text
        if t == "true":
            return F.TRUE
        if t == "false":
            return F.FALSE
        if t in _RESERVED:
            raise ParseError("operator %r used without arguments" % t,
                             node.line, node.col)
        if t in env:
            return F.atom(str(env[t]))
        return F.atom(t)
    opener, items = node
    if not items:
        raise ParseError("empty expression", opener.line, opener.col)
    head = items[0]
    if not isinstance(head, _Tok):
        raise ParseError("operator expected", opener.line, opener.col)
    op = head.text
    args = items[1:]
    if op in ("exists", "forall"):
        if len(args) != 3 or not isinstance(args[0], _Tok) \
                or isinstance(args[1], _Tok):
            raise ParseError(
                "%s takes a variable, a value list and a body" % op,
                head.line, head.col)
        var = args[0].text
        values = []
        for v in args[1][1]:
            if not isinstance(v, _Tok):
                raise ParseError("value list must contain integers",
                                 head.line, head.col)
            values.append(_int_of(v, env))
        parts = []
        for v in values:
            sub = dict(env)
            sub[var] = v
            parts.append(_lower(args[2], sub))
        if op == "exists":
            return F.or_(parts) if parts else F.FALSE
        return F.and_(parts) if parts else F.TRUE
    if op == "and" or op == "or":
        if len(args) < 2:
            raise ParseError("%r needs at least two operands" % op,
                             head.line, head.col)
        parts = [_lower(a, env) for a in args]
        return F.and_(parts) if op == "and" else F.or_(parts)
    if op in _UNARY:
        if len(args) != 1:
            raise ParseError("%r takes one operand" % op, head.line, head.col)
        return _UNARY[op](_lower(args[0], env))
    if op in _BINARY:
        if len(args) != 2:
            raise ParseError("%r takes two operands" % op, head.line, head.col)
        return _BINARY[op](_lower(args[0], env), _lower(args[1], env))
    if op in _METRIC:
        if len(args) != 2 or not isinstance(args[1], _Tok):
            raise ParseError("%r takes an operand and an integer bound" % op,
                             head.line, head.col)
        t = _int_of(args[1], env)
        if t < 0:
            raise ParseError("metric bound must be non-negative, got %d" % t,
                             args[1].line, args[1].col)
        return _METRIC[op](_lower(args[0], env), t)
    raise ParseError("unknown operator %r" % op, head.line, head.col)


def parse_formula(text):
    """Parse a single formula.  Raises ParseError on bad input."""
    nodes = _read_sexprs(_tokenize(text))
    if len(nodes) != 1:
        raise ParseError("expected exactly one formula, got %d" % len(nodes))
    return _lower(nodes[0], {})


_METRIC_NAMES = {v: k for k, v in
                 [("ev=", "ev_eq"), ("ev<=", "ev_le"), ("ev>=", "ev_ge"),
                  ("ev>", "ev_gt"), ("ev<", "ev_lt"), ("alw<=", "alw_le"),
                  ("alw=", "alw_eq"), ("pev=", "pev_eq"), ("pev<=", "pev_le"),
                  ("pev<", "pev_lt"), ("palw<=", "palw_le"),
                  ("wpalw<=", "wpalw_le"), ("wpev<=", "wpev_le"),
                  ("wpev=", "wpev_eq")]}


def format_formula(f):
    """Render a formula back to the surface syntax."""
    k = f.kind
    if k == "atom":
        return f.name
    if k == "true" or k == "false":
        return k
    if k in _METRIC_NAMES:
        return "(%s %s %d)" % (_METRIC_NAMES[k], format_formula(f.left), f.bound)
    if f.right is None:
        return "(%s %s)" % (k, format_formula(f.left))
    return "(%s %s %s)" % (k, format_formula(f.left), format_formula(f.right))


@dataclass
class Problem:
    """A parsed problem: bound, time model, encoder choice, formulas."""

    bound: int
    time_model: str
    spec: list
    prop: object = None
    encoder: str = "metric"
    atoms: list = field(default_factory=list)

    def checked_formula(self):
        """Conjunction of the specs with the negated property."""
        parts = list(self.spec)
        if self.prop is not None:
            parts.append(F.not_(self.prop))
        if not parts:
            raise ValueError("problem has no formulas")
        return F.and_(parts)


def parse_problem(text):
    """Parse a problem file.  Raises ParseError on bad input."""
    nodes = _read_sexprs(_tokenize(text))
    bound = None
    time_model = None
    encoder = "metric"
    spec = []
    prop = None
    for node in nodes:
        if isinstance(node, _Tok):
            raise ParseError("expected a (section ...) form, got %r" % node.text,
                             node.line, node.col)
        opener, items = node
        if not items or not isinstance(items[0], _Tok):
            raise ParseError("expected a section name", opener.line, opener.col)
        head = items[0]
        name = head.text
        args = items[1:]
        if name == "bound":
            if len(args) != 1 or not isinstance(args[0], _Tok):
                raise ParseError("(bound N) takes one integer", head.line, head.col)
            bound = _int_of(args[0], {})
            if bound < 1:
                raise ParseError("bound must be at least 1", head.line, head.col)
        elif name == "time":
            if len(args) != 1 or not isinstance(args[0], _Tok) \
                    or args[0].text not in ("mono", "bi"):
                raise ParseError("(time mono|bi)", head.line, head.col)
            time_model = args[0].text
        elif name == "encoder":
            if len(args) != 1 or not isinstance(args[0], _Tok) \
                    or args[0].text not in ("metric", "nonmetric"):
                raise ParseError("(encoder metric|nonmetric)", head.line, head.col)
            encoder = args[0].text
        elif name == "spec":
            if len(args) != 1:
                raise ParseError("(spec <formula>)", head.line, head.col)
            spec.append(_lower(args[0], {}))
        elif name == "property":
            if len(args) != 1:
                raise ParseError("(property <formula>)", head.line, head.col)
            if prop is not None:
                raise ParseError("duplicate property section", head.line, head.col)
            prop = _lower(args[0], {})
        else:
            raise ParseError("unknown section %r" % name, head.line, head.col)
    if bound is None:
        raise ParseError("missing (bound N) section")
    if time_model is None:
        raise ParseError("missing (time mono|bi) section")
    if not spec and prop is None:
        raise ParseError("problem needs at least one spec or a property")
    names = set()
    for f in spec + ([prop] if prop is not None else []):
        names.update(F.atoms_of(f))
    return Problem(bound=bound, time_model=time_model, spec=spec, prop=prop,
                   encoder=encoder, atoms=sorted(names))
