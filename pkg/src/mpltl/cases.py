"""Parameterized benchmark problems.

Each builder returns a parsed Problem.  The lamp and shift-register
models are generated textually from their defining axioms; the larger
systems (Fischer's protocol, the railway crossing, the allocator) ship
as commented problem files in the input language, with the numeric
constants substituted before parsing.  Builders are deterministic.

`build_case(name, **params)` is the registry entry point used by the
command line; unknown names or out-of-range parameters raise
ValueError.
"""

from __future__ import annotations

import importlib.resources

from .parser import parse_problem

KRC_CONSTANTS = {
    1: dict(dmin=5, dmax=9, hmin=3, hmax=6, gamma=3),
    2: dict(dmin=15, dmax=19, hmin=13, hmax=16, gamma=10),
}


def _resource(name):
    ref = importlib.resources.files("mpltl") / "cases" / name
    return ref.read_text()


def _range(lo, hi):
    if lo > hi:
        raise ValueError("empty range %d..%d" % (lo, hi))
    return " ".join(str(i) for i in range(lo, hi + 1))


def trl(delta=10, prop="P1"):
    """Timer-reset lamp: ON lights the lamp for delta instants, OFF or
    a timeout turns it off, a new ON extends the timer."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    axiom = ("(alwt (and (not (and on off))"
             " (iff lamp (exists x (%s)"
             " (and (pev= on x) (not (pev< off x)))))))"
             % _range(1, delta))
    lines = ["(bound 30)", "(time bi)", "(spec %s)" % axiom]
    if prop == "P1":
        # the lamp is never lighted for more than delta instants
        lines.append("(property (alwt (not (palw<= lamp %d))))" % delta)
    elif prop == "P2":
        # a stretch longer than delta needs two ON presses at most
        # delta apart, somewhere in the last 2*delta instants
        lines.append(
            "(property (alwt (implies (palw<= lamp %d)"
            " (pev<= (and on (yesterday (pev<= on %d))) %d))))"
            % (delta, delta - 1, 2 * delta))
    elif prop != "sat":
        raise ValueError("trl property must be sat, P1 or P2")
    return parse_problem("\n".join(lines))


def shift_sync(d=10):
    """Synchronous shift register: the output reproduces the input
    with a fixed delay of d instants."""
    if d < 1:
        raise ValueError("d must be at least 1")
    return parse_problem(
        "(bound 30) (time bi) (spec (alwt (iff in (ev= out %d))))" % d)


def shift_async(n=16, prop="sat"):
    """Asynchronous shift register: n bits advance one place on each
    shift command; the timed property says n consecutive shifts move
    the input bit all the way to the output."""
    if n < 2:
        raise ValueError("n must be at least 2")
    regs = ["r%d" % j for j in range(1, n + 1)]
    lines = ["(bound 30)", "(time bi)",
             "(spec (alwt (iff out %s)))" % regs[-1],
             "(spec (alwt (iff (next r1)"
             " (or (and shift in) (and (not shift) r1)))))"]
    for j in range(1, n):
        lines.append(
            "(spec (alwt (iff (next %s)"
            " (or (and shift %s) (and (not shift) %s)))))"
            % (regs[j], regs[j - 1], regs[j]))
    if prop == "timed":
        lines.append(
            "(property (alwt (implies (palw<= shift %d)"
            " (iff (next out) (pev= in %d)))))" % (n - 1, n - 1))
    elif prop != "sat":
        raise ValueError("shift_async property must be sat or timed")
    return parse_problem("\n".join(lines))


def fischer(processes=3, delay=5, prop="safety"):
    """Fischer's timed mutual exclusion protocol."""
    if processes != 3:
        raise ValueError("the shipped problem file covers 3 processes")
    if delay < 1:
        raise ValueError("delay must be at least 1")
    text = _resource("fischer3.spec").format(delay=delay)
    if prop == "safety":
        text += ("\n(property (alwt (not (or (and cs1 cs2)"
                 " (and cs1 cs3) (and cs2 cs3)))))\n")
    elif prop == "sat":
        text += "\n(spec (ev cs1))\n"
    else:
        raise ValueError("fischer property must be sat or safety")
    return parse_problem(text)


def krc(constant_set=1, prop="safety"):
    """Kernel railway crossing with one of the two shipped constant
    sets; safety says the bar is down while the crossing is occupied."""
    if constant_set not in KRC_CONSTANTS:
        raise ValueError("constant_set must be 1 or 2")
    c = KRC_CONSTANTS[constant_set]
    sep = c["dmax"] + c["hmax"]
    text = _resource("krc.spec").format(
        dmin=c["dmin"], dmax=c["dmax"], hmin=c["hmin"], hmax=c["hmax"],
        gamma=c["gamma"], sep=sep,
        drange=_range(c["dmin"], c["dmax"]),
        hrange=_range(c["hmin"], c["hmax"]),
        brange=_range(c["gamma"], sep))
    if constant_set == 2:
        # larger constants need a longer trace to fit one crossing
        text = text.replace("(bound 30)", "(bound 60)")
    if prop == "safety":
        text += "\n(property (alwt (implies incr bar)))\n"
    elif prop == "sat":
        text += "\n(spec (ev app))\n"
    else:
        raise ValueError("krc property must be sat or safety")
    return parse_problem(text)


def rta(setting=1, prop="sat"):
    """Real-time allocator, best-effort model (not acceptance-gated)."""
    if setting not in (1, 2):
        raise ValueError("setting must be 1 or 2")
    t = 3 if setting == 1 else 10
    text = _resource("rta3.spec").format(treq=t, trel=t)
    if prop == "sat":
        text += "\n(spec (ev grant1))\n"
    else:
        raise ValueError("rta property must be sat")
    return parse_problem(text)


CASES = {
    "trl": trl,
    "shift_sync": shift_sync,
    "shift_async": shift_async,
    "fischer": fischer,
    "krc": krc,
    "rta": rta,
}


def build_case(name, **params):
    """Look up a case builder by name and run it."""
    try:
        builder = CASES[name]
    except KeyError:
        raise ValueError("unknown case %r; known: %s"
                         % (name, ", ".join(sorted(CASES))))
    return builder(**params)
