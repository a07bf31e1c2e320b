"""Command-line interface: subcommands, exit codes, output formats."""

import csv
import json

from mpltl.cli import main

SAT_PROBLEM = """
(bound 8)
(time mono)
(spec (alw (iff in (ev= out 3))))
(spec (ev in))
"""

UNSAT_PROBLEM = """
(bound 5)
(time mono)
(spec (and (ev p) (alw (not p))))
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_check_exit_codes(tmp_path):
    sat = _write(tmp_path, "sat.spec", SAT_PROBLEM)
    uns = _write(tmp_path, "uns.spec", UNSAT_PROBLEM)
    assert main(["check", sat]) == 0
    assert main(["check", uns]) == 1
    assert main(["check", str(tmp_path / "missing.spec")]) == 2


def test_check_case_with_params(capsys):
    assert main(["check", "--case", "trl", "--param", "prop=P1",
                 "--bound", "20"]) == 0
    out = capsys.readouterr().out
    assert "verdict: SAT" in out


def test_check_bound_override():
    # the railway crossing needs about one crossing period of instants
    # before a train can complete an approach
    args = ["check", "--case", "krc", "--param", "prop=sat"]
    assert main(args + ["--bound", "10"]) == 1
    assert main(args + ["--bound", "20"]) == 0


def test_json_trace_output(tmp_path, capsys):
    sat = _write(tmp_path, "sat.spec", SAT_PROBLEM)
    assert main(["check", sat, "--trace", "json"]) == 0
    out = capsys.readouterr().out
    payload = out[out.index("{"):]
    data = json.loads(payload)
    assert data["k"] == 8
    assert isinstance(data["states"], list)


def test_emit_dimacs(tmp_path):
    uns = _write(tmp_path, "uns.spec", UNSAT_PROBLEM)
    out = tmp_path / "out.cnf"
    assert main(["check", uns, "--emit-dimacs", str(out)]) == 1
    header = out.read_text().splitlines()[0].split()
    assert header[:2] == ["p", "cnf"]


def test_encoder_override(tmp_path, capsys):
    sat = _write(tmp_path, "sat.spec", SAT_PROBLEM)
    assert main(["check", sat, "--encoder", "nonmetric"]) == 0
    assert "nonmetric" in capsys.readouterr().out


def test_bench_writes_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--cases", "shift_sync", "--bounds", "6,8",
                 "--csv", str(out)]) == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["case", "variant", "k", "encoder", "gen_s", "sat_s",
                       "vars", "clauses", "verdict"]
    # 2 bounds x 2 encoders
    assert len(rows) == 5
    assert all(r[8] in ("SAT", "UNSAT") for r in rows[1:])


def test_bench_rejects_unknown_case(tmp_path):
    assert main(["bench", "--cases", "nosuch", "--bounds", "4",
                 "--csv", str(tmp_path / "x.csv")]) == 2


def test_difftest_subcommand(capsys):
    assert main(["difftest", "--seed", "21", "--count", "10"]) == 0
    assert "0 discrepancies" in capsys.readouterr().out
