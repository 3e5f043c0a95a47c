import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from rometric.cli import run

GOLDEN = Path(__file__).parent / "golden"

# (argv with {g} for the golden directory, expected exit code, expected stdout file)
TRANSCRIPTS = [
    ("classify --metric {g}/ex2.json", 0, "classify_ex2.out"),
    ("topology --metric {g}/zero2.json", 0, "topology_zero2.out"),
    ("metrize --topology {g}/sierpinski.json", 0, "metrize_sierpinski.out"),
    ("verify --topology {g}/sierpinski.json --metric {g}/metrize_sierpinski.out", 0, "verify_sierpinski.out"),
    ("gcheck --space {g}/xyz_id.json", 1, "gcheck_xyz.out"),
    ("quotient --topology {g}/merged.json", 0, "quotient_merged.out"),
    ("universal --topology {g}/merged.json", 0, "universal_merged.out"),
    ("line ball k_topology 0 3/2", 0, "line_k.out"),
]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def argv_for(template, g=GOLDEN):
    return template.format(g=g).split()


@pytest.mark.parametrize("template,code,expected", TRANSCRIPTS)
def test_golden(template, code, expected):
    got_code, out, _ = invoke(argv_for(template))
    assert got_code == code
    assert out == (GOLDEN / expected).read_text()


def test_metrize_then_verify(tmp_path):
    code, out, _ = invoke(argv_for("metrize --topology {g}/sierpinski.json"))
    assert code == 0
    path = tmp_path / "out.json"
    path.write_text(out)
    code, out, _ = invoke(["verify", "--topology", str(GOLDEN / "sierpinski.json"), "--metric", str(path)])
    assert code == 0 and json.loads(out)["ok"] is True


def test_outputs_are_deterministic():
    for template, _, _ in TRANSCRIPTS:
        assert invoke(argv_for(template)) == invoke(argv_for(template))


@pytest.mark.parametrize("template,_code,_expected", [t for t in TRANSCRIPTS if not t[0].startswith("line")])
def test_json_reparses_to_same_bytes(template, _code, _expected):
    _, out, _ = invoke(argv_for(template))
    assert json.dumps(json.loads(out), sort_keys=True, indent=2, ensure_ascii=False) + "\n" == out


def test_verify_reports_missing_opens(tmp_path):
    disc = tmp_path / "disc.json"
    disc.write_text(json.dumps({"points": ["a", "b"], "opens": [[], ["a"], ["b"], ["a", "b"]]}))
    code, out, _ = invoke(["verify", "--topology", str(disc), "--metric", str(GOLDEN / "zero2.json")])
    assert code == 1
    assert json.loads(out)["missing"] == [["a"], ["b"]]


def test_ground_mismatch_is_usage_error():
    code, out, err = invoke(argv_for("verify --topology {g}/sierpinski.json --metric {g}/zero2.json"))
    assert code == 2 and out == "" and "different ground" in err


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = invoke(["classify", "--metric", str(bad)])
    assert code == 2 and "invalid JSON" in err


def test_unknown_subcommand():
    code, _, _ = invoke(["frobnicate"])
    assert code == 2


def test_invalid_metric_witnesses(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"points": ["a", "b", "c"], "matrix": [["0", "1", "3"], ["0", "0", "1"], ["0", "0", "0"]]}))
    code, out, _ = invoke(["validate-metric", "--metric", str(p)])
    doc = json.loads(out)
    assert code == 1 and doc["valid"] is False
    assert doc["witnesses"][0]["points"] == ["a", "b", "c"]


def test_validate_topology_witness(tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"points": ["a", "b", "c"], "opens": [[], ["a"], ["b"], ["a", "b", "c"]]}))
    code, out, _ = invoke(["validate-topology", "--topology", str(p)])
    assert code == 1
    assert json.loads(out)["witnesses"] == ["{a} ∪ {b} = {a,b} missing"]


def test_example_and_census():
    code, out, _ = invoke(["example", "particular_set"])
    assert code == 0 and json.loads(out)["verified"] is True
    code, out, _ = invoke(["census", "3"])
    assert code == 0 and len(json.loads(out)) == 29
    code, _, _ = invoke(["census", "9"])
    assert code == 2


def test_embed_and_search():
    code, out, _ = invoke(argv_for("embed --topology {g}/sierpinski.json --order reverse"))
    doc = json.loads(out)
    assert code == 0 and doc["checks"]["subspace_topology"] is True
    code, out, _ = invoke(argv_for("search {g}/sierpinski.json --values 0,1"))
    assert code == 0 and json.loads(out)["candidates"] == 2


def test_embed_rejects_non_t0():
    code, out, _ = invoke(argv_for("embed --topology {g}/merged.json"))
    assert code == 1 and "T0" in json.loads(out)["error"]


def test_line_text_and_json():
    assert invoke(["line", "ball", "lower_limit", "0", "1/2"])[1] == "[0, 1/2)\n"
    code, out, _ = invoke(["line", "ball", "lower_limit", "0", "2", "--format", "json"])
    doc = json.loads(out)
    assert doc["set"] == "(-1, 2)" and doc["matches_nominal"] is False
    code, out, _ = invoke(["line", "check", "k_topology", "0,1/2,1/3,1,3/2"])
    assert code == 0


@pytest.mark.skipif(shutil.which("rometric") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(
        ["rometric", "classify", "--metric", str(GOLDEN / "ex2.json")], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "classify_ex2.out").read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rometric.cli", "topology", "--metric", str(GOLDEN / "zero2.json")],
        capture_output=True,
        text=True,
    )
    assert proc.stdout == (GOLDEN / "topology_zero2.out").read_text()
