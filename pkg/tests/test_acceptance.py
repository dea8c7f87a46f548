"""Exit criteria for the package.  Each test prints one pass/fail line.

The CLI-level criteria run ``python -m qonsager`` in a fresh process so the
timings include every cache warm-up.  All comparisons are exact.
"""

import json
import subprocess
import sys
import time

import pytest

from qonsager.deltaq import SeriesElements, verify_relations_delta
from qonsager.ideal_check import MutatedElements, verify_conjecture
from qonsager.ncalg import W0, W1, q_commutator
from qonsager.oq import OqElements


def cli(*argv, json_path=None):
    cmd = [sys.executable, "-m", "qonsager", *argv]
    if json_path is not None:
        cmd += ["--json", str(json_path)]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    return proc, time.perf_counter() - t0


def load_report(path):
    data = json.loads(path.read_text())
    return data, [c for c in data["cases"] if c["verdict"] != "pass"]


def test_criterion_1_appendix_a(acceptance_line):
    proc, secs = cli("tables", "appendix-a", "1..8", "--check", "--format", "json")
    tables = json.loads(proc.stdout)
    g8 = next(t for t in tables if t["target"] == "G~_8")
    row = g8["entries"][g8["rows"].index("[2]_q^4 G~_4")]
    ok = (proc.returncode == 0 and len(tables) == 8 and "golden check: ok" in proc.stderr
          and row == [10, 0, -4, 0, 1, 0, 0, 0, 0] and secs < 10)
    acceptance_line(1, ok, f"8 tables match fixtures, exit {proc.returncode}, {secs:.1f} s (< 10 s)")
    assert ok, proc.stderr


def test_criterion_2_appendix_b(acceptance_line):
    proc, secs = cli("tables", "appendix-b", "--check", "--format", "json")
    tables = json.loads(proc.stdout)
    w7 = next(t for t in tables if t["target"] == "W_-7")
    row = w7["entries"][w7["rows"].index("B_a0")]
    targets = [t["target"] for t in tables]
    expected = [f"W_{-n}" if n else "W_0" for n in range(8)] + [f"W_{n}" for n in range(1, 9)]
    ok = (proc.returncode == 0 and targets == expected and "golden check: ok" in proc.stderr
          and row == [0, 20, 0, 6, 0, 2, 0, 1] and secs < 30)
    acceptance_line(2, ok, f"16 tables match fixtures, exit {proc.returncode}, {secs:.1f} s (< 30 s)")
    assert ok, proc.stderr


def test_criterion_3_first_tilde_g(acceptance_line):
    t0 = time.perf_counter()
    diff = OqElements().tilde_g(1) - q_commutator(W0, W1)
    secs = time.perf_counter() - t0
    ok = len(diff) == 0 and secs < 1
    acceptance_line(3, ok, f"G~_1 - [W0,W1]_q has {len(diff)} terms, {secs * 1000:.0f} ms (< 1 s)")
    assert ok


def test_criterion_4_conjecture_default_tier(acceptance_line, tmp_path):
    path = tmp_path / "conjecture.json"
    proc, secs = cli("verify", "conjecture", "--max-index", "2", "--degree", "8", json_path=path)
    data, bad = load_report(path)
    zero = all(c["residual_terms"] == 0 for c in data["cases"])
    ok = proc.returncode == 0 and data["overall"] == "PASS" and not bad and zero and secs <= 30 * 60
    acceptance_line(4, ok, f"{len(data['cases'])} reductions, {len(bad)} not member, "
                           f"exit {proc.returncode}, {secs:.1f} s (<= 30 min)")
    assert ok, bad[:5]


def test_criterion_5_deltaq(acceptance_line, tmp_path):
    path = tmp_path / "deltaq.json"
    proc, secs = cli("verify", "deltaq", "--order", "8", "--max-index", "6", json_path=path)
    data, bad = load_report(path)
    ids = [c["id"] for c in data["cases"]]
    # every component suite contributed cases
    covered = {
        "presentation": any(i.startswith("dolan-grady") for i in ids),
        "B(t) identity": any(i.startswith("[Psi_") for i in ids),
        "N Z Z": any(i.startswith("NZZ:") for i in ids),
        "G~ closed form": any(i.startswith("G~_8") for i in ids),
        "W and G closed forms": any(i.startswith("W+_8:") for i in ids),
        "relations": any(i.startswith("R11[k=6,l=6]") for i in ids),
    }
    ok = proc.returncode == 0 and data["overall"] == "PASS" and not bad and all(covered.values()) and secs < 300
    acceptance_line(5, ok, f"{len(ids)} exact checks, {len(bad)} failing, "
                           f"exit {proc.returncode}, {secs:.1f} s (< 5 min)")
    assert ok, (bad[:5], covered)


def test_criterion_6_onsager(acceptance_line, tmp_path):
    path = tmp_path / "onsager.json"
    proc, secs = cli("verify", "onsager", "--max-index", "10", "--trials", "1000", json_path=path)
    data, bad = load_report(path)
    triples = sum(1 for c in data["cases"] if c["id"].startswith("triple-"))
    ok = proc.returncode == 0 and data["overall"] == "PASS" and not bad and triples == 1000 and secs < 30
    acceptance_line(6, ok, f"{len(data['cases'])} checks ({triples} Jacobi triples), "
                           f"exit {proc.returncode}, {secs:.1f} s (< 30 s)")
    assert ok, bad[:5]


def test_criterion_7_series_calculus(acceptance_line, tmp_path):
    path = tmp_path / "gseries.json"
    proc, secs = cli("verify", "gseries", "--trials", "100", "--order", "12", "--seed", "0", json_path=path)
    data, bad = load_report(path)
    ids = [c["id"] for c in data["cases"]]
    kinds = {"qexp-agree", "sqrt-roundtrip", "sym-roundtrip"}
    per_kind = {k: sum(1 for i in ids if i.startswith("series-") and i.endswith(k)) for k in kinds}
    leads = {int(i.split("-")[1].split(":")[0]) for i in ids if i.startswith("lead-")}
    ok = (proc.returncode == 0 and data["overall"] == "PASS" and not bad
          and all(v == 100 for v in per_kind.values()) and leads == set(range(1, 9)) and secs < 120)
    acceptance_line(7, ok, f"100 series x {len(kinds)} properties, leading terms n <= 8, "
                           f"exit {proc.returncode}, {secs:.1f} s (< 2 min)")
    assert ok, bad[:5]


@pytest.mark.parametrize("n", range(4))
def test_criterion_8_mutation_sensitivity(acceptance_line, n):
    free = verify_conjecture(2, 8, elements=MutatedElements(n))
    delta = verify_relations_delta(6, SeriesElements(8, flip=n))
    ok = free.overall == "FAIL" and delta.overall == "FAIL"
    acceptance_line(8, ok, f"flip G~_{n}: free-algebra suite {free.overall} "
                           f"({len(free.failures())} failing), Delta_q suite {delta.overall} "
                           f"({len(delta.failures())} failing)")
    assert ok
