import json

import pytest

from kratzer_sga.cli import _attach_negative_values, load_problem, InputError, main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_levels(capsys):
    code, out, _ = run(capsys, "spectrum", "--C", "0", "--D", "1", "--n-max", "2",
                       "--branch", "plus", "--json")
    assert code == 0
    levels = json.loads(out)["result"]["levels"]
    assert [lv["E_hat"] for lv in levels] == [
        {"num": "-1", "den": "4"}, {"num": "-1", "den": "16"}, {"num": "-1", "den": "36"}]


def test_spectrum_minus_branch_rejects_row(capsys):
    code, out, _ = run(capsys, "spectrum", "--C", "-3/4", "--D", "1", "--n-max", "1",
                       "--branch", "minus", "--json")
    assert code == 0
    rows = json.loads(out)["result"]["levels"]
    assert "rejected" in rows[0] and rows[1]["E_hat"] == {"num": "-1", "den": "1"}


@pytest.mark.parametrize("argv", [
    ["spectrum", "--C", "1", "--D", "1", "--n-max", "0", "--branch", "plus"],
    ["spectrum", "--C", "1/2.0", "--D", "1"],
    ["spectrum", "--C", "0", "--D", "-1"],
    ["spectrum", "--C", "0", "--D", "1", "--branch", "both"],
    ["symmetry", "--N", "0"],
    ["algebra", "--max-n", "-2"],
    ["oracle", "--C", "1/2", "--D", "1", "--k", "1", "--m", "100"],
    ["family", "--C", "0", "--D", "1", "--n", "0", "--p", "0"],
    ["verify-all", "--bogus"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_symmetry_n3(capsys):
    code, out, _ = run(capsys, "symmetry", "--N", "3", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["result"]["principal"]["C"] == "-15/4"
    assert data["result"]["principal"]["E_over_D2"] == "-1/9"


def test_symmetry_n2_flags_ratio(capsys):
    code, out, _ = run(capsys, "symmetry", "--N", "2", "--json")
    data = json.loads(out)
    assert code == 0 and any("g1 = D*g2" in d for d in data["paper_discrepancies"])


def test_algebra_all_pass_and_fault(capsys):
    assert run(capsys, "algebra", "--max-n", "10", "--D", "1/2")[0] == 0
    code, out, _ = run(capsys, "algebra", "--max-n", "3", "--inject-fault")
    assert code == 1 and "[Z_-m,Y_-n]" in out


def test_family_zero_mode(capsys):
    code, out, _ = run(capsys, "family", "--C", "0", "--D", "1", "--n", "0", "--branch", "plus",
                       "--p", "3", "--check-zero-mode", "--json")
    assert code == 0
    assert json.loads(out)["result"]["members"][0]["zero_mode_residual"] < 1e-2


def test_problem_file_and_out(tmp_path, capsys):
    prob = tmp_path / "p.json"
    prob.write_text(json.dumps({"C": "-3/4", "D": "1", "n_range": [1, 2], "branch": "minus"}))
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "spectrum", "--problem", str(prob), "--out", str(out))
    assert code == 0
    rows = json.loads(out.read_text())["result"]["levels"]
    assert [r["n"] for r in rows] == [1, 2]


@pytest.mark.parametrize("content", [
    "not json", "[]", '{"C": 0.5}', '{"n_range": [3, 1]}', '{"extra": 1}',
    '{"oracle": {"m": 1}}', '{"branch": "sideways"}',
])
def test_bad_problem_files(tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    with pytest.raises(InputError):
        load_problem(p)


def test_json_is_deterministic(capsys):
    a = json.loads(run(capsys, "symmetry", "--N", "4", "--json")[1])
    b = json.loads(run(capsys, "symmetry", "--N", "4", "--json")[1])
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b


def test_negative_rationals_attach():
    assert _attach_negative_values(["--C", "-3/4", "--json"]) == ["--C=-3/4", "--json"]
