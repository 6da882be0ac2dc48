import json
import subprocess
import sys
from pathlib import Path

import pytest

from krdecomp.cli import RunConfig, main, run

DATA = Path(__file__).resolve().parent.parent / "data"


def test_info_trivial(capsys):
    assert main(["info", str(DATA / "trivial.json")]) == 0
    out = capsys.readouterr().out
    assert "|M| = 1" in out and "|X| = 1" in out


def test_info_json_unfaithful():
    status, out = run(RunConfig("info", str(DATA / "flipflop_action.json"), output_format="json"))
    data = json.loads(out)
    assert status == 0 and data["faithful"] is False and data["elements"] == 3


def test_decompose_t3(tmp_path, capsys):
    cert = tmp_path / "t3.cert.json"
    assert main(["decompose", str(DATA / "t3.json"), "-o", str(cert), "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["report_version"] == 1
    assert {f["kind"] for f in report["factors"]} <= {"U2", "C2", "C3"}
    assert report["verification"]["ok"] and report["bound"]["holds"]
    assert report["group_stage"]["holds"]
    assert main(["verify", str(cert), "--monoid", str(DATA / "t3.json")]) == 0
    assert "certificate OK" in capsys.readouterr().out


def test_decompose_text(capsys):
    assert main(["decompose", str(DATA / "t2.json")]) == 0
    out = capsys.readouterr().out
    assert "U2" in out and "OK" in out


def test_tampered_certificate_exits_one(tmp_path, capsys):
    cert = tmp_path / "c.json"
    assert main(["decompose", str(DATA / "t2.json"), "-o", str(cert)]) == 0
    doc = json.loads(cert.read_text())
    entry = next(iter(doc["covers"].values()))
    entry["cascade"][0][0] = 1 - entry["cascade"][0][0] if entry["cascade"][0][0] in (0, 1) else 0
    cert.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", str(cert), "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is False
    assert data["witness"] is not None


def test_verify_against_wrong_monoid(tmp_path, capsys):
    cert = tmp_path / "c.json"
    main(["decompose", str(DATA / "t2.json"), "-o", str(cert)])
    capsys.readouterr()
    assert main(["verify", str(cert), "--monoid", str(DATA / "t3.json")]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": ["p", "q"],\n "generators": {"a": [0, 5]}}')
    assert main(["decompose", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.json:2" in err and "generators.a" in err
    assert main(["info", str(tmp_path / "missing.json")]) == 2
    assert main(["info", str(DATA / "t3.json"), "--state-cap", "0"]) == 2


def test_resource_limit_exits_three(capsys):
    assert main(["decompose", str(DATA / "t3.json"), "--state-cap", "1000"]) == 3
    assert "resource limit" in capsys.readouterr().err


def test_selftest_small():
    status, out = run(RunConfig("selftest", count=20, seed=4))
    assert status == 0 and "0 failures" in out


def test_bad_config():
    with pytest.raises(ValueError):
        RunConfig("explode")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "krdecomp.cli", "info", str(DATA / "t2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "|M| = 4" in proc.stdout
