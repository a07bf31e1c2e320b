"""Ultimately periodic witness traces.

A trace stores states S_0..S_k (sets of atoms true at each instant) plus
loop selectors.  `lf` in 1..k marks the forward loop: S_{lf-1} equals
S_k and the word continues ... S_lf .. S_k, S_lf .. S_k ...  Over
bi-infinite time `lp` in 0..k-1 marks the backward loop: S_{lp+1}
equals S_0 and the past repeats S_0 .. S_lp backwards forever.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass
class LassoTrace:
    k: int
    states: list  # k+1 frozensets of atom names
    lf: int | None = None
    lp: int | None = None

    def __post_init__(self):
        if len(self.states) != self.k + 1:
            raise ValueError("expected %d states, got %d"
                             % (self.k + 1, len(self.states)))
        self.states = [frozenset(s) for s in self.states]

    def validate(self):
        """Check the loop equalities; raises ValueError if broken."""
        if self.lf is not None:
            if not 1 <= self.lf <= self.k:
                raise ValueError("lf=%r out of range" % self.lf)
            if self.states[self.lf - 1] != self.states[self.k]:
                raise ValueError("forward loop mismatch: S_%d != S_%d"
                                 % (self.lf - 1, self.k))
        if self.lp is not None:
            if not 0 <= self.lp <= self.k - 1:
                raise ValueError("lp=%r out of range" % self.lp)
            if self.states[self.lp + 1] != self.states[0]:
                raise ValueError("backward loop mismatch: S_%d != S_0"
                                 % (self.lp + 1))

    def holds(self, name, p):
        """Truth of atom `name` at absolute position p (any integer).

        Positions beyond k wrap through the forward loop, negative ones
        through the backward loop; both loops must be present for the
        respective direction.
        """
        if p > self.k:
            if self.lf is None:
                raise ValueError("position %d needs a forward loop" % p)
            period = self.k - self.lf + 1
            p = self.lf + (p - self.lf) % period
        elif p < 0:
            if self.lp is None:
                raise ValueError("position %d needs a backward loop" % p)
            p = p % (self.lp + 1)
        return name in self.states[p]

    def to_json(self):
        return json.dumps({
            "k": self.k,
            "lf": self.lf,
            "lp": self.lp,
            "states": [sorted(s) for s in self.states],
        }, indent=2)

    def render(self, atoms=None):
        """Plain-text table, one row per atom, one column per instant."""
        if atoms is None:
            atoms = sorted(set().union(*self.states)) if self.states else []
        width = max(2, max((len(str(i)) for i in range(self.k + 1)), default=2))
        namew = max([len(a) for a in atoms] + [4])
        lines = []
        header = " " * namew + " |"
        for i in range(self.k + 1):
            header += " %*d" % (width, i)
        lines.append(header)
        marks = " " * namew + " |"
        for i in range(self.k + 1):
            tag = ""
            if self.lp is not None and i == self.lp:
                tag += "p"
            if self.lf is not None and i == self.lf:
                tag += "f"
            marks += " %*s" % (width, tag or ".")
        lines.append(marks)
        for a in atoms:
            row = "%-*s |" % (namew, a)
            for i in range(self.k + 1):
                row += " %*s" % (width, "1" if a in self.states[i] else ".")
            lines.append(row)
        return "\n".join(lines)


def complete_trace(trace, time_model):
    """Add missing loops by stuttering an end state.

    Returns (trace2, offset): `offset` is where original instant 0 sits
    in the new trace.  A missing forward loop duplicates the last state
    (the future stutters there); over bi-infinite time a missing
    backward loop duplicates the first state in front.
    """
    states = list(trace.states)
    lf, lp = trace.lf, trace.lp
    offset = 0
    if lf is None:
        states = states + [states[-1]]
        lf = len(states) - 1
    if time_model == "bi" and lp is None:
        states = [states[0]] + states
        lf += 1
        lp = 0
        offset = 1
    out = LassoTrace(k=len(states) - 1, states=states, lf=lf,
                     lp=lp if time_model == "bi" else None)
    out.validate()
    return out, offset
