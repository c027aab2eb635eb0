"""Acceptance criteria A1-A9; each test prints one PASS/FAIL line."""
import json
import subprocess
import sys
import time

import pytest

from kratzer_sga import checks

RESULTS: dict[str, str] = {}


def _gate(label, report, budget_s, started):
    elapsed = time.perf_counter() - started
    failed = [c.name for c in report.failures()]
    ok = not failed and elapsed < budget_s
    why = "" if ok else f" failed={failed}" + (f" over budget {budget_s}s" if elapsed >= budget_s else "")
    line = f"{label} {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s){why}"
    RESULTS[label] = line
    print(line)
    assert ok, line


def test_a1_su11_identities():
    t0 = time.perf_counter()
    _gate("A1", checks.check_a1(), 1.0, t0)


def test_a2_decomposition():
    t0 = time.perf_counter()
    _gate("A2", checks.check_a2(seed=0), 1.0, t0)


def test_a3_spectrum_vs_oracle():
    t0 = time.perf_counter()
    _gate("A3", checks.check_a3(), 60.0, t0)


def test_a4_ansatz_solver():
    t0 = time.perf_counter()
    _gate("A4", checks.check_a4(), 10.0, t0)


def test_a5_branch_consistency():
    t0 = time.perf_counter()
    _gate("A5", checks.check_a5(), 10.0, t0)


def test_a6_vector_fields():
    t0 = time.perf_counter()
    _gate("A6", checks.check_a6(), 10.0, t0)


def test_a7_extended_algebra():
    t0 = time.perf_counter()
    _gate("A7", checks.check_a7(), 10.0, t0)


def test_a8_isospectral_family():
    t0 = time.perf_counter()
    _gate("A8", checks.check_a8(), 60.0, t0)


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "kratzer_sga", *argv],
                          capture_output=True, text=True, timeout=600)
    return proc.returncode, proc.stdout, proc.stderr


def test_a9_cli_end_to_end():
    t0 = time.perf_counter()
    problems = []
    code, out, _ = _cli("verify-all", "--json")
    report = json.loads(out)
    titles = [r["title"].split()[0] for r in report["checks"]]
    if titles != [f"A{k}" for k in range(1, 10)]:
        problems.append(f"report lists {titles}")
    if code != 0:
        problems.append(f"verify-all exit {code}, failed={report['failed']}")
    code, out, _ = _cli("verify-all", "--skip-numeric", "--inject-fault")
    if code != 1 or "[Z_-m,Y_-n]" not in out:
        problems.append(f"injected fault gave exit {code}")
    for argv in (["spectrum", "--C", "1", "--D", "1", "--n-max", "0", "--branch", "plus"],
                 ["symmetry", "--N", "x"], ["family", "--p", "1/0"]):
        code, _, _ = _cli(*argv)
        if code != 2:
            problems.append(f"{argv} gave exit {code}")
    elapsed = time.perf_counter() - t0
    line = f"A9 {'PASS' if not problems else 'FAIL'} ({elapsed:.2f} s)" + \
        ("" if not problems else " " + "; ".join(problems))
    RESULTS["A9"] = line
    print(line)
    assert not problems, line
