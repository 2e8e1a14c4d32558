"""End-to-end checks of the projdim command-line tool.

Usage: cli_test.py <path-to-projdim> <test-data-dir>
"""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

TOOL = sys.argv[1]
DATA = Path(sys.argv[2])
failures = []


def run(*args, env=None, cwd=None):
    merged = dict(os.environ)
    merged.pop("PROJDIM_OUT_DIR", None)
    if env:
        merged.update(env)
    return subprocess.run([TOOL, *args], capture_output=True, text=True, env=merged, cwd=cwd)


def report(proc):
    return json.loads(proc.stdout)


def check(name, condition, detail=""):
    print(("ok   " if condition else "FAIL ") + name + ("" if condition else f"  {detail}"))
    if not condition:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    p = run("--version")
    check("version", p.returncode == 0 and p.stdout.strip() != "", p.stderr)

    p = run("gen", "--family", "eq", "--n", "2")
    lines = [l for l in p.stdout.splitlines() if not l.startswith("#")]
    check("gen eq table", p.returncode == 0 and lines == ["2", "1000", "0100", "0010", "0001"], p.stdout)

    p = run("gen", "--pd-graph", "2", "--format", "edges")
    check("gen P_2 has 10 edges", p.returncode == 0 and "edges 5 5 10" in p.stdout, p.stdout)
    (tmp / "p2.g").write_text(p.stdout)

    p = run("gen", "--family", "parity", "--n", "2", "--bp", "--out", str(tmp / "p4.bp"))
    check("gen program to file", p.returncode == 0 and (tmp / "p4.bp").exists(), p.stderr)
    r = report(p)
    check("report key order", list(r) == ["tool", "version", "command", "inputs", "results", "exit_code", "timings"],
          list(r))

    p = run("transform", "pr", "--bp", str(tmp / "p4.bp"), "--out", str(tmp / "p4.asg"))
    check("transform pr", p.returncode == 0 and report(p)["results"]["ambient"] == 9, p.stdout + p.stderr)

    p = run("verify", "--assignment", str(tmp / "p4.asg"), "--function", "parity4")
    r = report(p)["results"]
    check("verify transformed assignment", p.returncode == 0 and r["realizes"] and r["max_intersection_dim"] == 1,
          p.stdout)

    p = run("verify", "--assignment", str(DATA / "parity4_table1.asg"), "--function", "parity4")
    check("verify tabulated assignment", p.returncode == 0 and report(p)["results"]["realizes"], p.stdout)

    p = run("verify", "--assignment", str(DATA / "parity4_table1.asg"), "--function", "eq2")
    check("verify wrong function exits 1", p.returncode == 1 and not report(p)["results"]["realizes"], p.stdout)

    p = run("transform", "bitpdim", "--bp", str(tmp / "p4.bp"), "--out", str(tmp / "p4.bw"))
    r = report(p)["results"]
    check("transform bitpdim within budget", p.returncode == 0 and r["within_budget"] and r["ambient"] <= 6 * 9,
          p.stdout)
    p = run("verify", "--assignment", str(tmp / "p4.bw"), "--function", "parity4")
    check("verify bitwise file", p.returncode in (0, 1) and report(p)["results"]["realizes"], p.stdout)

    p = run("solve", "pd", "--graph", str(tmp / "p2.g"), "--dmax", "3")
    r = report(p)["results"]
    check("solve pd P_2", p.returncode == 0 and r["status"] == "exact" and r["value"] == 2, p.stdout)

    p = run("solve", "upd", "--graph", str(tmp / "p2.g"), "--dmax", "2")
    r = report(p)["results"]
    check("solve upd lower bound only", p.returncode == 0 and r["status"] == "lower_bound_only" and r["value"] == 3,
          p.stdout)

    p = run("solve", "bp", "--graph", str(tmp / "p2.g"), "--budget-nodes", "1")
    check("solve budget exceeded exits 2", p.returncode == 2 and report(p)["results"]["status"] == "budget_exceeded",
          p.stdout)

    p = run("solve", "bc", "--graph", str(tmp / "p2.g"), "--out", str(tmp / "p2.bc"))
    check("solve bc writes witness", p.returncode == 0 and report(p)["results"]["value"] == 3, p.stdout)
    p = run("verify", "--bicliques", str(tmp / "p2.bc"), "--graph", str(tmp / "p2.g"))
    check("verify biclique witness", p.returncode == 0, p.stdout + p.stderr)

    p = run("bound", "updrank", "--function", "eq2")
    check("bound updrank", p.returncode == 0 and report(p)["results"]["value"] == 3, p.stdout)

    p = run("bound", "pdrank", "--d", "3")
    check("bound pdrank", p.returncode == 0, p.stdout + p.stderr)

    p = run("bound", "nechiporuk", "--function", "ed4", "--blocks", "1,2;3,4", "--csv", str(tmp / "ed.csv"))
    csv = (tmp / "ed.csv").read_text() if (tmp / "ed.csv").exists() else ""
    check("bound nechiporuk csv", p.returncode == 0 and csv.startswith("block,variables,count,term"), p.stdout + csv)

    p = run("bound", "sirestrict", "--d", "2", "--row", "1")
    check("bound sirestrict", p.returncode == 0 and report(p)["results"]["rows"][0]["count"] >= 5, p.stdout)

    p = run("bound", "inclusion", "--d", "3", "--i", "1")
    check("bound inclusion", p.returncode == 0, p.stdout + p.stderr)

    out_dir = tmp / "outdir"
    p = run("solve", "spd", "--function", "eq1", env={"PROJDIM_OUT_DIR": str(out_dir)})
    check("out dir receives the report", p.returncode == 0 and (out_dir / "solve-spd.json").exists(),
          str(list(out_dir.glob("*"))) if out_dir.exists() else "missing")

    p = run("solve", "pd", "--function", "bogus")
    check("bad function exits 3", p.returncode == 3, p.stdout + p.stderr)
    p = run("verify", "--assignment", str(tmp / "missing.asg"), "--function", "eq2")
    check("missing file exits 3", p.returncode == 3, p.stdout + p.stderr)
    p = run("solve", "pd")
    check("missing input exits 3", p.returncode == 3, p.stdout + p.stderr)
    p = run("frobnicate")
    check("unknown subcommand exits 3", p.returncode == 3, p.stdout + p.stderr)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
