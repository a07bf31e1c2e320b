"""Command-line front end.

Three subcommands:

  check     run one bounded satisfiability check, from a problem file
            or a named built-in case; exit 0 on SAT, 1 on UNSAT.
  bench     run a grid of cases and bounds with both encoders, writing
            a CSV of sizes and timings.
  difftest  cross-check the two encoders on random formulas.

Errors (bad arguments, parse failures, solver timeouts) exit with 2.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from .cases import CASES, build_case
from .cnf import write_dimacs
from .difftest import difftest as run_difftest
from .parser import parse_problem
from .pipeline import check_problem
from .solver import ExternalSolver, SolverTimeout


def _parse_params(pairs):
    out = {}
    for p in pairs or ():
        if "=" not in p:
            raise ValueError("--param expects key=value, got %r" % p)
        key, val = p.split("=", 1)
        try:
            out[key] = int(val)
        except ValueError:
            out[key] = val
    return out


def _cmd_check(args):
    if args.case is not None:
        problem = build_case(args.case, **_parse_params(args.param))
    elif args.file is not None:
        with open(args.file) as fh:
            problem = parse_problem(fh.read())
    else:
        raise ValueError("give a problem file or --case NAME")
    if args.time is not None:
        problem.time_model = args.time
    bound = args.bound if args.bound is not None else problem.bound

    backend = None
    if args.solver_cmd:
        backend = ExternalSolver(args.solver_cmd.split())

    res = check_problem(problem, bound=bound, backend=backend,
                        time_limit=args.timeout,
                        encoder=args.encoder, keep_cnf=bool(args.emit_dimacs))
    if args.emit_dimacs:
        with open(args.emit_dimacs, "w") as fh:
            write_dimacs(res.cnf, fh)

    st = res.stats
    print("verdict: %s" % ("SAT" if res.sat else "UNSAT"))
    print("bound: %d  time: %s  encoder: %s"
          % (bound, problem.time_model, args.encoder or problem.encoder))
    print("vars: %d  clauses: %d  gen: %.3fs  solve: %.3fs"
          % (st.vars, st.clauses, st.gen_s, st.sat_s))
    if res.sat and args.trace:
        if args.trace == "json":
            print(res.trace.to_json())
        else:
            print(res.trace.render())
    return 0 if res.sat else 1


def _cmd_bench(args):
    names = [c.strip() for c in args.cases.split(",") if c.strip()]
    bounds = [int(b) for b in args.bounds.split(",")]
    for name in names:
        if name not in CASES:
            raise ValueError("unknown case %r (have: %s)"
                             % (name, ", ".join(sorted(CASES))))
    params = _parse_params(args.param)
    rows = []
    for name in names:
        problem = build_case(name, **params)
        variant = ",".join("%s=%s" % kv for kv in sorted(params.items()))
        for k in bounds:
            for encoder in ("metric", "nonmetric"):
                try:
                    res = check_problem(problem, bound=k, encoder=encoder,
                                        time_limit=args.timeout)
                    verdict = "SAT" if res.sat else "UNSAT"
                    st = res.stats
                    row = [name, variant, k, encoder,
                           "%.4f" % st.gen_s, "%.4f" % st.sat_s,
                           st.vars, st.clauses, verdict]
                except SolverTimeout:
                    row = [name, variant, k, encoder, "", "", "", "",
                           "TIMEOUT"]
                rows.append(row)
                print(" ".join(str(x) for x in row), file=sys.stderr)
    with open(args.csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["case", "variant", "k", "encoder", "gen_s", "sat_s",
                    "vars", "clauses", "verdict"])
        w.writerows(rows)
    return 0


def _cmd_difftest(args):
    report = run_difftest(count=args.count, seed=args.seed)
    print(report)
    return 0 if not report.discrepancies else 2


def _cmd_dimacs(args):
    # minimal DIMACS front end for the embedded solver, usable as the
    # target of --solver-cmd; exits 10 on SAT, 20 on UNSAT
    from .cnf import Cnf
    from .solver import solve_embedded

    clauses = []
    nvars = 0
    with open(args.file) as fh:
        for line in fh:
            line = line.strip()
            if not line or line[0] in "cp":
                if line.startswith("p cnf"):
                    nvars = int(line.split()[2])
                continue
            lits = [int(t) for t in line.split()]
            if lits and lits[-1] == 0:
                lits.pop()
            if lits:
                clauses.append(lits)
    cnf = Cnf(nvars)
    cnf.clauses = clauses
    model = solve_embedded(cnf)
    if model is None:
        print("s UNSATISFIABLE")
        return 20
    print("s SATISFIABLE")
    lits = [v if model[v] else -v for v in range(1, nvars + 1)]
    print("v " + " ".join(str(x) for x in lits) + " 0")
    return 10


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="mpltl",
        description="bounded satisfiability checking for metric LTL "
                    "with past over mono- and bi-infinite time")
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("check", help="check one problem")
    pc.add_argument("file", nargs="?", help="problem file")
    pc.add_argument("--case", choices=sorted(CASES), help="built-in case")
    pc.add_argument("--param", action="append", metavar="KEY=VALUE",
                    help="case parameter (repeatable)")
    pc.add_argument("--bound", type=int, help="trace bound k")
    pc.add_argument("--time", choices=["mono", "bi"],
                    help="override the time model")
    pc.add_argument("--encoder", choices=["metric", "nonmetric"])
    pc.add_argument("--solver-cmd", metavar="TMPL",
                    help="external DIMACS solver command; '{cnf}' is "
                         "replaced by the CNF path")
    pc.add_argument("--emit-dimacs", metavar="PATH",
                    help="also write the generated CNF in DIMACS form")
    pc.add_argument("--trace", choices=["json", "text"],
                    help="print the witness trace on SAT")
    pc.add_argument("--timeout", type=float, metavar="S")
    pc.set_defaults(func=_cmd_check)

    pb = sub.add_parser("bench", help="run a case/bound grid to CSV")
    pb.add_argument("--cases", required=True,
                    help="comma-separated case names")
    pb.add_argument("--bounds", required=True,
                    help="comma-separated bounds")
    pb.add_argument("--csv", required=True, help="output CSV path")
    pb.add_argument("--param", action="append", metavar="KEY=VALUE")
    pb.add_argument("--timeout", type=float, metavar="S")
    pb.set_defaults(func=_cmd_bench)

    pd = sub.add_parser("difftest",
                        help="cross-check the encoders on random formulas")
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--count", type=int, default=100)
    pd.set_defaults(func=_cmd_difftest)

    ps = sub.add_parser("dimacs",
                        help="solve a DIMACS file with the embedded solver")
    ps.add_argument("file")
    ps.set_defaults(func=_cmd_dimacs)

    return ap


def main(argv=None):
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SolverTimeout:
        print("error: solver timeout", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
