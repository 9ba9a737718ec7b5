import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from dlkh.cli import main
from dlkh.suites import UNKNOT_K2

GOLDEN = Path(__file__).parent / "golden"
TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
NONSPHERICAL = "X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]"


def run(*args):
    return CliRunner().invoke(main, list(args))


def write(tmp_path, text, name="m.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_states_on_curl_manifest():
    r = run("states", "--manifest", str(GOLDEN / "unknot_k1.manifest"), "--format", "json")
    assert r.exit_code == 0
    rows = json.loads(r.output)
    assert len(rows) == 12
    tuples = {(x["i"], x["j"], x["k"], x["b"]) for x in rows}
    for t in [(-1, 1, 1, 0), (0, -1, 1, 1), (1, -1, 1, 1), (-1, 3, 1, 0), (0, 3, 1, 0),
              (0, 3, 1, 1), (1, 1, 1, 1)]:
        assert t in tuples


def test_states_unknot_table():
    r = run("states", "--pd", "O[1]")
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert len(lines) == 3 and lines[0].split() == ["label", "markers", "signs", "i", "j", "k", "b"]


def test_genus_refusal():
    r = run("states", "--pd", NONSPHERICAL)
    assert r.exit_code == 2 and "genus 1" in r.output


def test_parse_error_refusal():
    r = run("kh", "--pd", "X[1,2,3]")
    assert r.exit_code == 2 and "position" in r.output


def test_kh_golden():
    r = run("kh", "--pd", TREFOIL, "--normalize", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output) == json.loads((GOLDEN / "kh_trefoil.json").read_text())


def test_kh_table_rows_sorted():
    r = run("kh", "--pd", TREFOIL, "--normalize")
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert lines[0].split() == ["i", "j", "k", "b", "rank", "torsion"]
    rows = [tuple(int(v) for v in line.split()[:4]) for line in lines[1:]]
    assert rows == sorted(rows)
    assert "2" in [line.split()[5] for line in lines[1:]]


def test_kh_unknot():
    r = run("kh", "--pd", "O[1]", "--format", "json")
    rows = json.loads(r.output)["homology"]
    assert [(x["gradings"]["i"], x["rank"]) for x in rows] == [(0, 1), (0, 1)]


def test_kh_curl_normalization():
    raw = json.loads(run("kh", "--pd", "X[1,2,2,1]", "--format", "json").output)
    norm = json.loads(run("kh", "--pd", "X[1,2,2,1]", "--normalize", "--format", "json").output)
    assert {x["gradings"]["i"] for x in raw["homology"]} == {1}
    assert {x["gradings"]["i"] for x in norm["homology"]} == {0}


def test_kh_dot():
    r = run("kh", "--pd", "X[1,2,2,1]", "--format", "dot")
    assert r.exit_code == 0 and r.output.startswith("digraph cube")
    assert r.output.count("[label=") == 6


def test_f5_restricted_to_check():
    assert run("kh", "--pd", "O[1]", "--frobenius", "f5").exit_code == 2
    assert run("check", "--pd", "O[1]", "--frobenius", "f5").exit_code == 0


def test_dkh_golden():
    r = run("dkh", "--manifest", str(GOLDEN / "unknot_k1.manifest"), "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.stdout) == json.loads((GOLDEN / "dkh_unknot_k1.json").read_text())


def test_dkh_k2_table(tmp_path):
    path = write(tmp_path, "".join(f"{k}: {v}\n" for k, v in UNKNOT_K2.items()))
    r = run("dkh", "--manifest", path)
    assert r.exit_code == 0
    assert "N = 6" in r.stdout
    bs = {int(line.split()[3]) for line in r.stdout.splitlines()[1:-1]}
    assert bs == {0, 1, 2}


def test_dkh_mixed_crossings(tmp_path):
    r = run("dkh", "--manifest", write(tmp_path, "a: O[1]\nb: X[1,2,2,1]\n"))
    assert r.exit_code == 2


def test_dkh_decomposition_failure(tmp_path):
    path = write(tmp_path, f"left: {TREFOIL}\nright: X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\n")
    r = run("dkh", "--manifest", path)
    assert r.exit_code == 1
    assert "error" in json.loads(r.stderr)


def test_input_is_required():
    assert run("kh").exit_code == 2


@pytest.mark.parametrize("args", [[], ["--pd", TREFOIL], ["--frobenius", "f1"]])
def test_check_passes(args):
    r = run("check", *args)
    assert r.exit_code == 0, r.output
    assert all(line.startswith("PASS") for line in r.output.strip().splitlines())
