import json
import os
import subprocess
import sys

import jsonschema
import pytest

from mpvrel.cli import RESULT_SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, RESULT_SCHEMA)
    return code, doc


def test_bounds(capsys):
    code, out = run(capsys, "bounds", "-w", "3", "-N", "4")
    assert code == 0 and "D=8" in out.splitlines()
    code, doc = run_json(capsys, "bounds", "-w", "2", "-N", "5", "--improved")
    assert doc["result"]["D"] == 9 and doc["result"]["improved"] == 8
    code, doc = run_json(capsys, "bounds", "-w", "1", "-N", "1")
    assert doc["result"]["D"] == 0


def test_bounds_invalid(capsys):
    code, _ = run(capsys, "bounds", "-w", "2", "-N", "0")
    assert code == 2


def test_rank_and_cache(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MPV_CACHE_DIR", str(tmp_path))
    code, first = run(capsys, "rank", "-w", "3", "-N", "4")
    assert code == 0
    assert {"rows=223", "cols=125", "rank=122", "kernel=3"} <= set(first.splitlines())
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    assert files[0].read_text().splitlines()[0] == "3 4 I,II,III,IV 125"
    code, second = run(capsys, "rank", "-w", "3", "-N", "4")
    assert second == first
    code, doc = run_json(capsys, "rank", "-w", "3", "-N", "4")
    assert list(doc["manifest"]["checksums"]) == [files[0].name]


def test_rank_octahedral(capsys):
    code, doc = run_json(capsys, "rank", "-w", "3", "-N", "4", "--octahedral")
    assert doc["result"]["rank"] == 123 and doc["result"]["kernel"] == 2


def test_rank_modular_documents_certificate(capsys):
    code, doc = run_json(capsys, "rank", "-w", "2", "-N", "5", "--bound", "--mode", "modular")
    assert doc["manifest"]["certified"] == "upper-bound"
    assert doc["result"]["bound"] == 8 and "upper bound" in doc["result"]["note"]


def test_claim_beta(capsys):
    code, doc = run_json(capsys, "claim", "--p", "7")
    assert code == 0 and doc["result"]["zero"] and doc["result"]["terms"] == 98
    code, doc = run_json(capsys, "beta", "--level", "25")
    assert doc["result"]["kernel"] == 5


def test_eval(capsys):
    code, doc = run_json(capsys, "eval", "--symbol", "Li[2; 0]@1", "--method", "both")
    assert abs(doc["result"]["path"]["re"] - 1.6449340668482264) < 1e-12
    assert doc["result"]["agreement"] < 1e-8
    code, doc = run_json(capsys, "eval", "--word", "0.z0", "-N", "1")
    assert abs(doc["result"]["value"]["re"] + 1.6449340668482264) < 1e-12


def test_reduce_basis_symbol_is_fixed(capsys):
    code, doc = run_json(capsys, "reduce", "--symbol", "Li[2,1; 3,0]@4")
    assert doc["result"]["images"] == [{"Li[2,1; 3,0]@4": "1"}]


def test_reduce_relation_file(capsys, tmp_path):
    rel = {"weight": 3, "level": 4, "row_family": "OCTA", "terms": {"z3.0.z1": "1"}}
    p = tmp_path / "r.json"
    p.write_text(json.dumps(rel))
    code, doc = run_json(capsys, "reduce", "--relation", str(p))
    assert code == 0 and len(doc["result"]["images"]) == 1


def test_derive_three(capsys):
    code, doc = run_json(capsys, "derive", "-w", "3", "--verify", "1e-6")
    assert code == 0
    assert doc["result"]["normalized"] == ["5", "46", "-7", "-13", "13", "-1", "25", "-8", "18"]
    assert doc["result"]["bound"] == 8


def test_module_entry_point(tmp_path):
    env = dict(os.environ, MPV_CACHE_DIR=str(tmp_path))
    out = subprocess.run(
        [sys.executable, "-m", "mpvrel", "bounds", "-w", "4", "-N", "4"], capture_output=True, text=True, env=env
    )
    assert out.returncode == 0 and "D=16" in out.stdout


def test_missing_arguments(capsys):
    with pytest.raises(SystemExit):
        main(["rank"])
    code, _ = run(capsys, "eval")
    assert code == 2
