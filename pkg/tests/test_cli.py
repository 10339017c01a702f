import json
import subprocess
import sys

import pytest

from multispinal import analyzer, cli
from multispinal.documents import instance_to_document, load_instance
from multispinal.errors import InternalDefect


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json_grigorchuk(capsys):
    code, out, _ = run(capsys, "analyze", "grigorchuk.json", "--format", "json")
    assert code == 0
    r = json.loads(out)
    assert r["verdict"] == "Simple"
    assert r["kirchberg"] is True
    assert r["scale"] == "7"
    assert r["scaled_determinant"] == "896"
    assert r["psi"] == {"e": "1/1", "b": "1/7", "c": "2/7", "d": "4/7"}
    assert r["witness"]["agent"] == "A:d"
    assert "timing" not in r


def test_analyze_json_nonsimple(capsys):
    code, out, _ = run(capsys, "analyze", "nonsimple-variant.json", "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert (r["scaled_determinant"], r["verdict"]) == ("0", "NotSimple")


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "grigorchuk.json", "--emit-matrix")
    assert code == 0
    assert "det N = 896" in out
    assert "verdict: Simple" in out
    assert "  7 1 2 4\n" in out


def test_analyze_options(capsys):
    code, out, _ = run(capsys, "analyze", "z3xz3.json", "--format", "json", "--no-truncation", "--witness-bound", "1,0")
    r = json.loads(out)
    assert code == 0
    assert r["truncation"] is None
    assert r["options"]["witness_period"] == 1
    assert r["scaled_determinant"] == "634894848"


def test_timing_flag(capsys):
    code, out, _ = run(capsys, "analyze", "grigorchuk.json", "--format", "json", "--timing")
    assert code == 0 and "timing" in json.loads(out)


def test_bad_witness_bound(capsys):
    with pytest.raises(SystemExit):
        cli.main(["analyze", "grigorchuk.json", "--witness-bound", "x"])
    capsys.readouterr()


def test_invalid_instance_exit_1(tmp_path, capsys):
    doc = instance_to_document(load_instance("grigorchuk.json"))
    doc["action"]["a"] = ["0", "1"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, err = run(capsys, "analyze", str(p), "--format", "json")
    assert code == 1
    assert json.loads(out)["error"] == "NotFree"
    assert "NotFree" in err
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1 and out == ""


def test_unparseable_exit_1(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("{")
    code, out, _ = run(capsys, "analyze", str(p), "--format", "json")
    assert code == 1 and json.loads(out)["error"] == "ParseError"


def test_internal_defect_exit_2(monkeypatch, capsys):
    def boom(*_a, **_k):
        raise InternalDefect("forced")

    monkeypatch.setattr(cli, "analyze", boom)
    code, _, err = run(capsys, "analyze", "grigorchuk.json")
    assert code == 2 and "forced" in err


def test_disagreement_exit_2(monkeypatch, capsys):
    monkeypatch.setattr(analyzer.linalg, "rank", lambda M: 0)
    code, out, _ = run(capsys, "analyze", "grigorchuk.json", "--format", "json")
    assert code == 2 and json.loads(out)["error"] == "CriteriaDisagreement"


def test_check(capsys):
    code, out, _ = run(capsys, "check", "z3xz3.json", "--format", "json")
    s = json.loads(out)
    assert code == 0
    assert (s["BA_size"], s["nucleus_size"], s["Y"]) == (8, 11, ["2"])


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--format", "json")
    checks = json.loads(out)["checks"]
    assert code == 0
    assert checks and all(c["pass"] for c in checks)


def test_random_check(capsys):
    code, out, _ = run(capsys, "random-check", "--count", "20", "--seed", "3", "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert r["criteria_agree"] and r["gram_property_failures"] == 0
    assert sum(r["verdicts"].values()) == 20


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and out.split() == ["grigorchuk.json", "nonsimple-variant.json", "z3xz3.json"]


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "multispinal", "analyze", "grigorchuk.json", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
