import json
import subprocess
import sys

import pytest

from grassfrieze.cli import run
from grassfrieze.exactlin import Matrix
from grassfrieze.fixtures import default_dir
from grassfrieze.pluecker import pluecker_of_matrix

THREES = {"k": 2, "n": 3, "values": {"1,2": "3", "1,3": "3", "2,3": "3"}}
TWOS = {"k": 2, "n": 3, "values": {"1,2": "2", "1,3": "2", "2,3": "2"}}
BAD = {"k": 2, "n": 4, "values": {"1,2": "1", "1,3": "1", "1,4": "1", "2,3": "1", "2,4": "1", "3,4": "5"}}
ZERO = {"k": 2, "n": 3, "values": {"1,2": "1", "1,3": "0", "2,3": "1"}}


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(p)

    return write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def call_json(capsys, *argv):
    code, out = call(capsys, *argv)
    return code, json.loads(out)


def test_check_consistent_golden(capsys, files):
    code, out = call(capsys, "check", "--spec", files("s.json", THREES))
    assert code == 0 and out.strip() == '{"consistent":true}'


def test_check_inconsistent(capsys, files):
    code, data = call_json(capsys, "check", "--spec", files("s.json", BAD))
    assert code == 1 and data["consistent"] is False and data["violation"]


def test_realize(capsys, files, tmp_path):
    out = tmp_path / "m.json"
    code, data = call_json(capsys, "realize", "--spec", files("s.json", THREES), "--out", str(out))
    assert code == 0
    x = Matrix.from_json(data["matrix"])
    assert set(pluecker_of_matrix(x).values()) == {3}
    assert Matrix.from_json(json.loads(out.read_text())) == x


def test_realize_errors(capsys, files):
    code, data = call_json(capsys, "realize", "--spec", files("z.json", ZERO))
    assert code == 2 and data["error"] == "ZeroValue"
    assert call_json(capsys, "realize", "--allow-zero", "--spec", files("z.json", ZERO))[0] == 0
    code, data = call_json(capsys, "realize", "--spec", files("b.json", BAD))
    assert code == 2 and data["error"] == "InconsistentSpecialization" and "violation" in data


def test_malformed_inputs(capsys, files, tmp_path):
    assert call(capsys, "check", "--spec", files("x.json", "{not json"))[0] == 2
    assert call(capsys, "check", "--spec", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "check", "--spec", files("y.json", {"k": 2}))[0] == 2
    bad_int = dict(THREES, values={"1,2": "3.5", "1,3": "3", "2,3": "3"})
    assert call(capsys, "check", "--spec", files("w.json", bad_int))[0] == 2


def test_unknown_verbs_and_flags(capsys):
    assert run(["bogus"]) == 2
    assert run(["check", "--spec", "a", "--nope"]) == 2
    assert run([]) == 2
    capsys.readouterr()


def test_volume_one(capsys, files):
    code, data = call_json(capsys, "volume-one", "check", "--spec", files("t.json", THREES))
    assert code == 0 and data["exists"] is True and data["epsilon"] == "3"
    code, data = call_json(capsys, "volume-one", "check", "--spec", files("w.json", TWOS))
    assert code == 1
    assert data["failed_condition"] == {"condition": 2, "prime": "2", "subset": [1, 2, 3]}
    code, data = call_json(capsys, "volume-one", "construct", "--spec", files("t.json", THREES))
    x = Matrix.from_json(data["matrix"])
    assert code == 0 and set(pluecker_of_matrix(x).values()) == {3}
    assert call(capsys, "volume-one", "construct", "--spec", files("w.json", TWOS))[0] == 1


def test_frieze_cc_and_triangle(capsys):
    code, data = call_json(capsys, "frieze", "cc", "--n", "4", "--diagonals", "1-3")
    assert code == 0 and data["values"]["2,4"] == "2"
    assert call(capsys, "frieze", "cc", "--n", "4", "--diagonals", "1-3,2-4")[0] == 2
    assert call_json(capsys, "frieze", "triangle", "3", "3", "3") == (0, {"admissible": True})
    assert call_json(capsys, "frieze", "triangle", "2", "2", "2") == (1, {"admissible": False})
    assert call(capsys, "frieze", "triangle", "0", "1", "1")[0] == 2


def test_frieze_subpolygon(capsys, files):
    code, data = call_json(capsys, "frieze", "subpolygon", "--spec", files("w.json", TWOS))
    assert code == 1 and data["witness"][0] == "prime"
    assert call(capsys, "frieze", "subpolygon", "--spec", files("t.json", THREES))[0] == 0


def test_frieze_extend(capsys, files, tmp_path):
    m = files("m.json", [["1", "0", "-1"], ["0", "1", "3"]])
    trace = tmp_path / "trace.json"
    code, data = call_json(capsys, "frieze", "extend", "--matrix", m, "--trace", str(trace))
    assert code == 0 and data["problems"] == [] and len(data["steps"]) == 2
    assert json.loads(trace.read_text())["initial_d"] == "3"
    assert call(capsys, "frieze", "extend", "--matrix", m, "--limit", "1")[0] == 3
    assert call(capsys, "frieze", "extend", "--matrix", files("p.json", [["2", "0"], ["0", "1"]]))[0] == 2
    plateau = files("q.json", {"matrix": [["-1", "-2", "0", "0", "-1"], ["1", "3", "1", "0", "0"],
                                          ["-1", "-1", "-1", "-1", "-3"]]})
    code, data = call_json(capsys, "frieze", "extend", "--matrix", plateau)
    assert code == 1 and data["problems"]


def test_oracle_triangles(capsys):
    code, data = call_json(capsys, "frieze", "oracle-triangles", "--n-max", "9", "--label-max", "6")
    assert code == 0 and data["realized_but_rejected"] == [] and data["unrealized_small"] == []
    assert call(capsys, "frieze", "oracle-triangles", "--n-max", "9", "--limit", "8")[0] == 3


def test_arrangements(capsys):
    a3 = str(default_dir() / "a3.json")
    assert call_json(capsys, "arrangements", "verify", "--matrix", a3)[0] == 0
    code, data = call_json(capsys, "arrangements", "lines", "--matrix", a3)
    assert code == 0 and data["count"] == 6
    assert call_json(capsys, "arrangements", "roots", "--matrix", a3, "--system", "A3")[0] == 0
    assert call_json(capsys, "arrangements", "roots", "--matrix", a3, "--system", "B3")[0] == 1
    assert call_json(capsys, "arrangements", "roots", "--matrix", a3, "--system", "E8")[0] == 2
    b3 = str(default_dir() / "b3.json")
    assert call(capsys, "arrangements", "verify", "--matrix", a3, "--cluster", b3)[0] == 2


def test_fixtures_verify(capsys, tmp_path):
    code, data = call_json(capsys, "fixtures", "verify")
    assert code == 0 and data["all_passed"] and len(data["fixtures"]) == 6
    code, data = call_json(capsys, "fixtures", "verify", "--dir", str(tmp_path))
    assert code == 2 and data["error"] == "MissingFixture"


@pytest.mark.parametrize("check", ["roundtrip", "completeness", "n-bound"])
def test_oracles(capsys, check):
    code, data = call_json(capsys, "oracle", check, "--count", "20", "--seed", "5")
    assert code == 0 and data["failures"] == []


def test_oracle_extension(capsys):
    assert call_json(capsys, "oracle", "extension", "--count", "50", "--seed", "1") == (
        0, {"check": "extension", "seed": 1, "trials": 50, "failures": []})
    # seed 3 draws an input whose extension has a step that leaves D unchanged
    code, data = call_json(capsys, "oracle", "extension", "--count", "50", "--seed", "3")
    assert code == 1 and len(data["failures"]) == 1
    assert all("strictly decrease" in p for p in data["failures"][0]["problems"])


def test_pretty_and_determinism(capsys, files):
    spec = files("t.json", THREES)
    code, out = call(capsys, "--pretty", "realize", "--spec", spec)
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    assert call(capsys, "realize", "--spec", spec, "--pretty") == (code, out)
    first = call(capsys, "oracle", "roundtrip", "--count", "10", "--seed", "3")
    assert call(capsys, "oracle", "roundtrip", "--count", "10", "--seed", "3") == first


def test_module_entry_point(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(THREES))
    r = subprocess.run([sys.executable, "-m", "grassfrieze", "check", "--spec", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == '{"consistent":true}'
