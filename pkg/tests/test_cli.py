import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from conftest import EX1, WORKED
from ecad.cli import main

SCHEMA = json.loads((Path(__file__).parents[1] / "src/ecad/schema/cad.schema.json").read_text())
WORKED_ARGS = ["--order", "v,u,x,y,z",
               "--ec", "z:x-y+z^2,y:u^2-v^2+x-y+1,x:u^2-v^2+x+1,u:u^2-v^2"]
EX1_ARGS = ["--order", "x,y,z", "--ec", "z:x+y^2+z,y:y"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_text(capsys):
    code, out, _ = run(capsys, "build", EX1, *EX1_ARGS)
    assert code == 0
    assert "cells per level: 5, 15, 25" in out
    code, out, _ = run(capsys, "build", EX1, *EX1_ARGS, "--no-prune")
    assert "cells per level: 5, 15, 45" in out


def test_build_json_matches_schema_and_reloads(capsys, tmp_path):
    target = tmp_path / "cad.json"
    code, _, _ = run(capsys, "build", EX1, *EX1_ARGS, "--json", "-o", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    jsonschema.validate(data, SCHEMA)
    assert data["counts"] == [5, 15, 25]
    code, out, _ = run(capsys, "verify", EX1, "--order", "x,y,z", "--cad", str(target),
                       "--n", "100", "--seed", "3")
    assert code == 0 and out.strip().endswith("OK")


def test_heuristic_designation_when_none_given(capsys):
    code, out, _ = run(capsys, "build", EX1, "--order", "x,y,z")
    assert code == 0 and "designation (heuristic)" in out


def test_propagate_table(capsys):
    code, out, _ = run(capsys, "propagate", WORKED, "--order", "v,u,x,y,z")
    assert code == 0
    assert "candidates per variable: z: 4, y: 5, x: 3, u: 1" in out


def test_designations_listing(capsys):
    code, out, _ = run(capsys, "designations", WORKED, "--order", "v,u,x,y,z", "--json")
    assert code == 0 and json.loads(out)["count"] == 60


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "3", "--m", "3", "--d", "2")
    assert "dominant term: 286654464" in out
    code, out, _ = run(capsys, "bounds", "--n", "3", "--m", "3", "--d", "2", "--l", "2",
                       "--mode", "ec-full")
    assert "dominant term: 4096" in out
    code, _, err = run(capsys, "bounds", "--n", "3", "--m", "3", "--d", "2", "--mode", "x")
    assert code == 1 and "--mode" in err


def test_exit_codes(capsys):
    code, out, _ = run(capsys, "build", r"x*z+y=0 /\ y=0", "--order", "x,y,z",
                       "--ec", "z:x*z+y,y:y")
    assert code == 2 and "witness" in out
    code, _, err = run(capsys, "build", "x+=0", "--order", "x")
    assert code == 1 and "position" in err
    code, _, err = run(capsys, "build", "x=0", "--order", "x", "--ec", "q:x")
    assert code == 1
    with pytest.raises(SystemExit) as e:
        main(["build"])
    assert e.value.code == 1


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "ecad", "build", WORKED, *WORKED_ARGS, "--json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["counts"] == [3, 13, 23, 33, 53]
