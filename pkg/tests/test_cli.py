import json
import subprocess
import sys

import pytest

from lexpref.choicedata import simulate_lexicographic, write_choices
from lexpref.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def points(witness):
    return [tuple(p["point"]) for p in witness["points"]]


def test_check_nraa_ex2(capsys):
    code, out, _ = run(capsys, "check", "--oracle", "ex2", "--axiom", "nraa", "--grid", "3:8:1")
    assert code == 1
    d = json.loads(out)
    assert d["status"] == "Violated"
    assert points(d["witness"]) == [(0, 6, 4), (0, 3, 8), (1, 3, 8), (1, 6, 4)]


def test_check_mildcont_lex(capsys):
    code, out, _ = run(capsys, "check", "--oracle", "lex:1,2", "--axiom", "mildcont",
                       "--grid", "2:4:0.5")
    assert code == 0 and json.loads(out)["status"] == "SatisfiedAtResolution"


def test_check_imia_perfsub(capsys):
    code, out, _ = run(capsys, "check", "--oracle", "perfsub:2", "--axiom", "imia",
                       "--grid", "2:4:1")
    assert code == 1
    pts = points(json.loads(out)["witness"])
    assert (1, 3) in pts and (3, 1) in pts


def test_check_pairwise_reports_subsets(capsys):
    code, out, _ = run(capsys, "check", "--oracle", "dominant:1", "--axiom", "monotone",
                       "--grid", "3:3:1")
    d = json.loads(out)
    assert code == 1 and d["scope"] == "pairwise" and d["witness"]["subset"] == [1, 2]


@pytest.mark.parametrize("argv,code", [
    (["classify", "--oracle", "lex:2,1,3", "--grid", "3:4:1"], 0),
    (["classify", "--oracle", "ex2", "--grid", "3:8:1"], 3),
    (["classify", "--oracle", "dominant:1", "--grid", "3:4:1"], 4),
    (["classify", "--oracle", "leximax:3", "--grid", "3:4:1"], 5),
])
def test_classify_exit_codes(capsys, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    d = json.loads(out)
    if code == 0:
        assert d["order"] == [2, 1, 3] and d["class"] == "Lexicographic"


@pytest.mark.parametrize("argv", [
    ["check", "--oracle", "nosuch", "--axiom", "monotone"],
    ["check", "--oracle", "lex:1,2", "--axiom", "bogus"],
    ["check", "--oracle", "lex:1,2", "--axiom", "monotone", "--grid", "3:4:1"],
    ["check", "--oracle", "lex:1,2", "--axiom", "monotone", "--grid", "2:4:0.3"],
    ["check", "--oracle", "lex:1,2", "--axiom", "mildcont", "--eps", "1:2:1"],
    ["check", "--oracle", "lex:1,2", "--axiom", "nraa", "--grid", "2:4:1"],
    ["demo", "nosuch"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("lexpref:")


def test_audit_simulated(capsys, tmp_path):
    recs = simulate_lexicographic((3, 1, 2), 5, 4, seed=2)
    write_choices(tmp_path / "d.csv", recs, ("a", "b", "c"))
    (tmp_path / "s.txt").write_text("a=higher\nb=higher\nc=higher\n")
    code, out, _ = run(capsys, "audit", str(tmp_path / "d.csv"), str(tmp_path / "s.txt"))
    d = json.loads(out)
    assert code == 0 and d["summary"]["lex_consistent"] == 5


def test_audit_errors_and_empty(capsys, tmp_path):
    (tmp_path / "s.txt").write_text("a=higher\n")
    (tmp_path / "neg.csv").write_text("respondent_id,choice_set_id,alternative_id,chosen,a\n"
                                      "r,1,1,1,-2\nr,1,2,0,1\n")
    code, _, err = run(capsys, "audit", str(tmp_path / "neg.csv"), str(tmp_path / "s.txt"))
    assert code == 2 and "line 2" in err
    (tmp_path / "empty.csv").write_text("respondent_id,choice_set_id,alternative_id,chosen,a\n")
    code, out, _ = run(capsys, "audit", str(tmp_path / "empty.csv"), str(tmp_path / "s.txt"))
    assert code == 0 and json.loads(out)["summary"]["respondents"] == 0
    code, _, _ = run(capsys, "audit", str(tmp_path / "missing.csv"), str(tmp_path / "s.txt"))
    assert code == 2


def test_demo_semiorder(capsys):
    code, out, _ = run(capsys, "demo", "semiorder-cycle")
    d = json.loads(out)
    assert code == 0 and d["cycle"] and d["witness_replays"]
    assert [l["outcome"] for l in d["links"]] == ["FirstStrict"] * 3


def test_zoo_list(capsys):
    code, out, _ = run(capsys, "zoo", "list")
    ids = [e["id"] for e in json.loads(out)]
    assert code == 0 and "ex2" in ids and len(ids) == len(set(ids))


def test_output_file_and_pretty(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "check", "--oracle", "ex2", "--axiom", "nraa", "--grid", "3:8:1",
                       "--output", str(target))
    assert code == 1 and out == ""
    assert json.loads(target.read_text())["axiom"] == "nraa"
    code, out, _ = run(capsys, "check", "--oracle", "ex2", "--axiom", "nraa", "--grid", "3:8:1",
                       "--pretty")
    assert "status: Violated" in out and "(0, 6, 4)" in out


def test_repeated_runs_are_byte_identical():
    argv = [sys.executable, "-m", "lexpref", "classify", "--oracle", "ex2", "--grid", "3:4:1",
            "--seed", "3"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == b.returncode == 3
    assert a.stdout == b.stdout and a.stdout
