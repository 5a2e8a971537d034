import json
from pathlib import Path

import pytest

from cmapgeom.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_passes(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--config", str(CONFIGS / "quadratic_n0.json"))
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["ok"]
    assert all(c["status"] == "pass" for c in report["checks"])
    code2, out2, _ = run(capsys, "check", "--config", str(CONFIGS / "quadratic_n0.json"))
    assert out2 == out
    target = tmp_path / "r.json"
    assert main(["check", "--config", str(CONFIGS / "quadratic_n0.json"), "--out", str(target)]) == 0
    assert target.read_text() == out


def test_check_corrupted(capsys):
    code, out, err = run(capsys, "check", "--config", str(CONFIGS / "quadratic_n0_corrupted.json"))
    assert code == 1
    report = json.loads(out)
    assert report["summary"]["failing"] == ["homogeneity"]
    assert "homogeneity" in err


def test_config_errors(capsys, tmp_path):
    assert run(capsys, "check", "--config", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"model": {"kind": "quartic"}}))
    assert run(capsys, "check", "--config", str(bad))[0] == 2
    bad.write_text(json.dumps({"model": {"kind": "quadratic", "n": 0}, "checks": {"nope": True}}))
    assert run(capsys, "check", "--config", str(bad))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_eval_origin(capsys):
    point = json.dumps({"phi": 0, "sigma": 0, "A": [0], "B": [0]})
    code, out, _ = run(capsys, "eval", "--config", str(CONFIGS / "quadratic_n0.json"),
                       "--point", point, "--route", "both")
    assert code == 0
    data = json.loads(out)
    assert data["fs_metric"] == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 4, 0], [0, 0, 0, 0.25]]
    assert data["basis"][:2] == ["phi", "sigma"]
    assert data["comparison"]["constant"] == pytest.approx(-8.0)


def test_eval_outside_domain(capsys):
    point = json.dumps({"phi": 0, "sigma": 0, "A": [0, 0], "B": [0, 0], "Z": [[1.5, 0]]})
    code, out, _ = run(capsys, "eval", "--config", str(CONFIGS / "quadratic_n1.json"), "--point", point)
    assert code == 1
    assert json.loads(out)["verdict"] == "positivity"


def test_eval_bad_point(capsys):
    code, _, _ = run(capsys, "eval", "--config", str(CONFIGS / "quadratic_n1.json"),
                     "--point", json.dumps({"phi": 0}))
    assert code == 2
