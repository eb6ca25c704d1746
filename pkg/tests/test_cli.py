import json
import subprocess
import sys

import pytest

from cliffhecke.cli import FORM_SCHEMA, REPORT_SCHEMA, main, read_form
from cliffhecke.hecke import HeckeFormSpec, build_hecke_form, free_slots


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out)


def test_form_n1(capsys):
    code, out, _ = run(capsys, "form", "--n", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == FORM_SCHEMA
    assert doc["entries"] == [[1, 2, "q"], [2, 1, "1"]]


def test_form_n2_entries(capsys):
    _, out, _ = run(capsys, "form", "--n", "2")
    assert json.loads(out)["entries"] == [
        [1, 4, "q"], [2, 3, "q"], [3, 1, "q"], [3, 2, "1"], [4, 1, "1"], [4, 2, "1"],
    ]


def test_form_symbols(tmp_path, capsys):
    path = tmp_path / "f.json"
    code, _, err = run(capsys, "form", "--n", "2", "--free", "symbols", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert len(doc["free"]["symbols"]) == len(free_slots(2)) == 4
    assert "4 free symbols" in err
    text = " ".join(e[2] for e in doc["entries"])
    for sym in doc["free"]["symbols"]:
        assert sym in text


def test_form_file_reproduces_form(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "form", "--n", "3", "--free", "random", "--seed", "4", "--out", str(path))
    B, _ = read_form(str(path))
    assert B == build_hecke_form(HeckeFormSpec(3, "random", "q1", 4))


def test_verify_n3_all_families(capsys):
    code, rep = machine(capsys, "verify", "--n", "3", "--families", "square,commute,braid,tl")
    assert code == 0 and rep["passed"]
    assert rep["schema"] == REPORT_SCHEMA
    assert rep["timing"] is None
    assert {r["family"] for r in rep["residuals"]} == {"square", "commute", "braid", "tl_idempotent", "tl_braid"}
    assert all(r["zero"] == (r["residual"] == "0") for r in rep["residuals"])


def test_verify_tl_n2(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--families", "tl")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_verify_perturbed_form_fails(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "form", "--n", "1", "--out", str(path))
    doc = json.loads(path.read_text())
    doc["entries"] = [[1, 2, "q+1"] if e[:2] == [1, 2] else e for e in doc["entries"]]
    path.write_text(json.dumps(doc))
    code, rep = machine(capsys, "verify", "--form", str(path))
    assert code == 1 and not rep["passed"]
    bad = [r for r in rep["residuals"] if not r["zero"]]
    assert [(r["family"], r["indices"]) for r in bad] == [("square", [1])]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("branch", ["q1", "negq"])
def test_form_verify_round_trip(tmp_path, capsys, n, branch):
    for seed in range(1, 11):
        path = tmp_path / f"f{seed}.json"
        assert run(capsys, "form", "--n", str(n), "--branch", branch, "--free", "random",
                   "--seed", str(seed), "--out", str(path))[0] == 0
        code, out, _ = run(capsys, "verify", "--form", str(path))
        assert code == 0, out


def test_verify_timing_flag(capsys):
    _, rep = machine(capsys, "verify", "--n", "1", "--timing")
    assert isinstance(rep["timing"], float)


def test_reports_byte_identical(capsys):
    for argv in (["verify", "--n", "2"], ["constraints", "--n", "2"], ["oracle", "--n", "1", "--trials", "20"]):
        a = run(capsys, *argv, "--format", "machine")[1]
        b = run(capsys, *argv, "--format", "machine")[1]
        assert a == b


def test_constraints_n2(capsys):
    code, rep = machine(capsys, "constraints", "--n", "2")
    assert code == 0
    c = rep["counts"]
    assert (c["paper_constraints"], c["paper_dof"]) == ("15", "1")
    assert c["computed_constraints"] + c["computed_dof"] == 16
    assert any(n.startswith("discrepancy:") for n in rep["notes"])


def test_constraints_text_lists_published_values(capsys):
    _, out, _ = run(capsys, "constraints", "--n", "3")
    assert "paper_constraints = 29   paper_dof = 7" in out
    assert "B(j1,d1) = q" in out


def test_constraints_n1_roots(capsys):
    _, rep = machine(capsys, "constraints", "--n", "1")
    assert {r["tag"] for r in rep["constraints"]} == {"square(1)"}
    assert any("(q, 1) or (-1, -q)" in n for n in rep["notes"])


def test_constraints_n3_commute(capsys):
    _, rep = machine(capsys, "constraints", "--n", "3")
    assert {r["tag"] for r in rep["constraints"] if r["tag"].startswith("commute")} == {"commute(1,3)"}


def test_constraints_bound(capsys):
    assert run(capsys, "constraints", "--n", "5")[0] == 2
    assert run(capsys, "verify", "--n", "5")[0] == 2


@pytest.mark.parametrize(
    "expr, expected",
    [("j1*d1", "q + (j1^d1)"), ("(j1^d1)*(j1^d1)", "q + (1 - q)*(j1^d1)"), ("j1^j1", "0"),
     ("d1 _| (j1 ^ d1)", "d1"), ("q^-1 * j1", "q^-1*j1")],
)
def test_eval(capsys, expr, expected):
    code, out, _ = run(capsys, "eval", expr, "--n", "1")
    assert code == 0 and out.strip() == expected


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "j1 ^ d1 * j1", "--n", "1")
    assert code == 2 and "column" in err
    assert run(capsys, "eval", "j1")[0] == 2  # no form given


def test_oracle(capsys):
    code, rep = machine(capsys, "oracle", "--n", "2", "--trials", "200")
    assert code == 0 and rep["agreement"] == "200/200"


def test_oracle_excluded_q(capsys):
    code, rep = machine(capsys, "oracle", "--n", "1", "--trials", "10", "--q=-1,2")
    assert code == 0
    assert rep["oracle"]["rejected_q"] == ["-1"]
    assert "excluded q samples: -1" in rep["notes"]


def test_oracle_bound(capsys):
    assert run(capsys, "oracle", "--n", "4", "--trials", "1")[0] == 2


def test_usage_errors(tmp_path, capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "--families", "nope", "--n", "1")[0] == 2
    assert run(capsys, "verify", "--form", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--form", str(bad))[0] == 2
    bad.write_text(json.dumps({"n": 1, "entries": [[1, 9, "q"]]}))
    assert run(capsys, "verify", "--form", str(bad))[0] == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "cliffhecke", "eval", "j1*d1", "--n", "1"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "q + (j1^d1)"
