import io
import json
import subprocess
import sys

import pytest

from kneser_lab.cli import main
from kneser_lab.codes import parse_code
from kneser_lab.constructions import parse_matrix
from kneser_lab.families import parse_family


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    texts = {
        "rep": "2 4\n1 1 0 0\n0 0 1 1\n",
        "ones3": "3 3\n1 1 1\n",
        "c3": "3 4\n1 0 1 0\n0 1 0 1\n",
        "fam": "6\n000000\n111000\n000111\n111111\n",
        "bad": "2 3\n1 x 0\n",
    }
    for name, text in texts.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_codes_commands(files):
    code, out = run(["product", files["rep"], files["rep"]])
    assert code == 0 and parse_code(out).dim == 2
    code, out = run(["power", files["c3"], "--k", "2"])
    assert code == 0 and parse_code(out).n == 4
    code, out = run(["stabilizer", files["rep"]])
    assert code == 0 and parse_code(out).dim == 2
    code, out = run(["kneser", files["rep"], files["rep"]])
    assert code == 0 and "PASS" in out
    code, out = run(["growth", files["rep"], "--t", "2"])
    assert code == 0
    code, out = run(["binary-points", files["rep"]])
    assert code == 0 and len(parse_family(out)) == 4


def test_decompose_json_keys(files):
    code, out = run(["decompose", files["rep"], "--json"])
    d = json.loads(out)
    assert code == 0 and set(d) == {"m", "parts", "component_dims", "stab_dim"}
    assert d["m"] == 2 and d["parts"] == [[0, 1], [2, 3]] and d["component_dims"] == [1, 1]


def test_families_commands(files):
    code, out = run(["atoms", files["fam"], "--json"])
    assert code == 0 and json.loads(out)["atoms"] == [[0, 1, 2], [3, 4, 5]]
    code, out = run(["check-divisible", files["fam"], "--k", "3", "--l", "3"])
    assert code == 0
    code, out = run(["check-divisible", files["fam"], "--k", "2", "--l", "2", "--json"])
    d = json.loads(out)
    assert code == 1 and d["pass"] is False and d["witness"]["cardinality"] == 3
    code, out = run(["restrict", files["fam"], "--set", "0,3"])
    assert code == 0 and parse_family(out).bitstrings() == ["00", "01", "10", "11"]
    code, out = run(["closure", files["fam"], "--k", "2"])
    assert code == 0 and len(parse_family(out)) == 4


def test_bridge_commands(files):
    code, out = run(["bridge-check", files["fam"], "--k", "2", "--p", "3", "--json"])
    d = json.loads(out)
    assert code == 0 and d["details"]["combinatorial"] and d["details"]["algebraic"]
    code, out = run(["split", files["fam"], "--k", "2", "--p", "3", "--json"])
    assert code == 0 and json.loads(out)["split"]["S1"] == [0, 1, 2]


def test_construct_and_lift(tmp_path):
    code, out = run(["construct", "atomic", "--sizes", "4,4"])
    assert code == 0
    fam = tmp_path / "a44"
    fam.write_text(out)
    code, out = run(["lift-check", str(fam), "--k", "1", "--p", "2", "--alpha", "2",
                     "--v", "11110000", "--json"])
    assert code == 0 and json.loads(out)["details"]["congruence_zero"]
    code, out = run(["tphi", str(fam), "--t", "1", "--p", "2", "--alpha", "2",
                     "--l", "4", "--k", "2"])
    assert code == 0
    code, out = run(["construct", "hadamard12"])
    assert code == 0 and parse_matrix(out).order == 12
    code, out = run(["construct", "frankl-odlyzko"])
    assert code == 0 and len(parse_family(out)) == 24


def test_verify_json_schema():
    code, out = run(["verify", "theorem1", "--p", "2", "--n", "6", "--json"])
    d = json.loads(out)
    assert code == 0
    for key in ("schema", "check", "pass", "hypothesis_met", "witness", "details", "theorem",
                "params", "universe", "max", "bound", "attained", "n_extremal", "extremal", "inconclusive"):
        assert key in d
    assert d["max"] == 8 and d["n_extremal"] == 15
    code, out = run(["verify", "suite", "--trials", "50", "--seed", "3", "--json"])
    assert code == 0 and json.loads(out)["details"]["trials"] == 50
    code, out = run(["verify", "improved-odlyzko", "--p", "3", "--n", "3"])
    assert code == 0 and "HYPOTHESIS-NOT-MET" in out


def test_stdin_input(monkeypatch):
    code, out = run(["stabilizer"], stdin="3 3\n1 1 1\n", monkeypatch=monkeypatch)
    assert code == 0 and parse_code(out).dim == 1


def test_exit_codes(files, monkeypatch):
    assert run(["bogus"])[0] == 64
    assert run(["power", files["rep"]])[0] == 64
    assert run(["verify", "theorem1", "--n", "4"])[0] == 64
    assert run(["verify", "theorem1", "--p", "2", "--n", "4", "--threads", "0"])[0] == 64
    assert run(["stabilizer", files["bad"]])[0] == 65
    assert run(["stabilizer", "/nonexistent/file"])[0] == 65
    assert run(["product", files["rep"], files["ones3"]])[0] == 65
    assert run(["split", files["fam"], "--k", "2", "--p", "2"])[0] == 65
    monkeypatch.setenv("KNESER_LAB_BUDGET", "10")
    assert run(["verify", "theorem1", "--p", "2", "--n", "6"])[0] == 2


def test_module_pipe():
    gen = subprocess.run([sys.executable, "-m", "kneser_lab", "construct", "atomic", "--sizes", "2,2,2"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "kneser_lab", "check-divisible",
                          "--k", "5", "--l", "2"], input=gen.stdout, capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout
