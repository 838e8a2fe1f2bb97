import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lmrm.cli import main, parse_generator_file, parse_permutation
from lmrm.errors import LMRMError

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"

GOLDEN_CASES = [
    ("ball_6_1.json", ["ball", "6", "1"]),
    ("bounds_6_3_subgroup.json", ["bounds", "6", "3", "--subgroup"]),
    ("construct_congruence_6_3.json", ["construct", "--members", "congruence", "6", "3"]),
    ("construct_product_c3xc3.json", ["construct", "product", "6", "2", "gens:data/c3.gens", "gens:data/c3.gens"]),
    ("construct_semidirect_6.json", ["construct", "semidirect", "data/semidirect_6.gens"]),
    ("encode_6_3_5.json", ["encode", "6", "3", "5"]),
    ("search_code_4_3.json", ["search", "code", "4", "3", "--prove"]),
    ("asymptote_0.125.csv", ["asymptote", "--step", "0.125"]),
    ("simulate_6_3.json", ["simulate", "6", "3", "--gap", "1", "--spike", "0.9", "--trials", "200", "--seed", "7"]),
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(autouse=True)
def _in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)


@pytest.mark.parametrize("golden,argv", GOLDEN_CASES)
def test_golden(golden, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_ball_contains_13(capsys):
    _, out, _ = run(["ball", "6", "1"], capsys)
    assert json.loads(out)["exact"] == "13"


def test_bounds_contains_18(capsys):
    _, out, _ = run(["bounds", "6", "3", "--subgroup"], capsys)
    doc = json.loads(out)
    assert doc["subgroup_upper_after_sieve"] == "18"
    assert all(set(step) == {"candidate", "test", "verdict"} for step in doc["sieve_trace"])


def test_encode_decode_roundtrip(capsys):
    for m in range(8):
        _, out, _ = run(["encode", "6", "3", str(m)], capsys)
        word = json.loads(out)["codeword"]
        _, out, _ = run(["decode", "6", "3", word], capsys)
        assert json.loads(out)["message"] == str(m)


def test_big_message_is_string(capsys):
    m = str(10**30)
    _, out, _ = run(["encode", "60", "3", m], capsys)
    doc = json.loads(out)
    assert doc["message"] == m
    _, out, _ = run(["decode", "60", "3", doc["codeword"]], capsys)
    assert json.loads(out)["message"] == m


def test_dist(capsys):
    _, out, _ = run(["dist", "1 2 3 4 5 6", "6 5 4 3 2 1"], capsys)
    assert json.loads(out) == {"distance": "5"}
    _, out, _ = run(["dist", "[2,3,1]", "(1,2,3)"], capsys)
    assert json.loads(out) == {"distance": "0"}


def test_semidirect_json(capsys):
    _, out, _ = run(["construct", "semidirect", "data/semidirect_6.gens"], capsys)
    doc = json.loads(out)
    assert doc["M"] == "18" and doc["d_verified"] == 3 and doc["params"]["design_distance"] == 1


def test_search_anticode(capsys):
    _, out, _ = run(["search", "anticode", "4", "1"], capsys)
    assert json.loads(out)["best_size"] == "4"


def test_asymptote_out_file(tmp_path, capsys):
    target = tmp_path / "curves.csv"
    code, out, _ = run(["asymptote", "--step", "0.01", "--out", str(target)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == "400"
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert {r["curve"] for r in rows} == set("cdef")


@pytest.mark.parametrize(
    "argv,kind",
    [
        (["encode", "6", "3", "8"], "LMRMError"),
        (["ball", "-1", "1"], "LMRMError"),
        (["bounds", "3", "5"], "LMRMError"),
        (["decode", "6", "3", "1 1 2 3 4 5"], "LMRMError"),
        (["decode", "6", "3", "2 3 6 1 5 4"], "UncorrectableError"),
        (["construct", "congruence", "3", "4"], "ConstructionError"),
        (["construct", "semidirect", "data/bad_normal.gens"], "NotNormalizedError"),
        (["construct", "semidirect", "missing.gens"], "FileNotFoundError"),
        (["construct", "product", "6", "2", "cong:3:2", "nope:3"], "LMRMError"),
        (["simulate", "6", "3", "--gap", "0"], "LMRMError"),
        (["asymptote", "--step", "0"], "LMRMError"),
    ],
)
def test_precondition_failures(argv, kind, capsys):
    code, out, err = run(argv, capsys)
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == kind


@pytest.mark.parametrize("argv", [[], ["ball"], ["ball", "x", "1"], ["search", "graph", "4", "3"], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_subprocess_byte_identical():
    cmd = [sys.executable, "-m", "lmrm", "simulate", "6", "3", "--spike", "1.3", "--trials", "300", "--seed", "42"]
    a = subprocess.run(cmd, capture_output=True, check=True, cwd=HERE).stdout
    b = subprocess.run(cmd, capture_output=True, check=True, cwd=HERE).stdout
    assert a == b and json.loads(a)["trials"] == 300


def test_subprocess_exit_codes():
    env = dict(os.environ)
    ok = subprocess.run([sys.executable, "-m", "lmrm", "ball", "6", "1"], capture_output=True, env=env)
    bad = subprocess.run([sys.executable, "-m", "lmrm", "encode", "6", "3", "99"], capture_output=True, env=env)
    usage = subprocess.run([sys.executable, "-m", "lmrm", "ball"], capture_output=True, env=env)
    assert (ok.returncode, bad.returncode, usage.returncode) == (0, 1, 2)


def test_parse_permutation_forms():
    assert parse_permutation("2 3 1") == (2, 3, 1)
    assert parse_permutation("2,3,1") == (2, 3, 1)
    assert parse_permutation("[2, 3, 1]") == (2, 3, 1)
    assert parse_permutation("(1,2,6)", 6) == (2, 6, 3, 4, 5, 1)
    assert parse_permutation("(1,2)(3,4)") == (2, 1, 4, 3)
    assert parse_permutation("()", 3) == (1, 2, 3)
    for bad in ["(1,2)(2,3)", "(1,7)", "1 1 2", "(1,2", "(1 2) x"]:
        with pytest.raises(LMRMError):
            parse_permutation(bad, 6)


def test_generator_file_parsing(tmp_path):
    degree, sections = parse_generator_file(HERE / "data" / "semidirect_6.gens")
    assert degree == 6 and len(sections["H"]) == 2 and sections["K"] == [(6, 5, 4, 3, 2, 1)]
    f = tmp_path / "g.txt"
    f.write_text("(1,2)\n(1,2,3)\n")
    with pytest.raises(LMRMError):
        parse_generator_file(f)
    f.write_text("2 3 1\n")
    assert parse_generator_file(f) == (3, {"": [(2, 3, 1)]})
