import io
import json
import subprocess
import sys

import pytest

from otk import cli
from otk.verify import CheckResult, VerificationReport


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(cli.parse_args(list(argv)), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def triangle_json(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps({"rank": 2, "vectors": [[1, 0], [0, 1], [1, 1]], "theta": [0, 0, 1]}))
    return str(path)


def test_tp1_prints_presentations_and_passes():
    code, out, _ = run("tp1")
    assert code == 0
    assert "J0: <u1*u2>" in out
    assert "J1prime: <u1 + u2 - h>" in out
    assert out.rstrip().endswith("PASS")


def test_hilbert_from_file(triangle_json):
    code, out, _ = run("hilbert", "--input", triangle_json)
    assert code == 0
    assert "OT: (1 + t)/(1 - t)^2" in out
    assert "SRind: (1 + t + t^2)/(1 - t)^2" in out


def test_validate_rejects_non_primitive(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 1, "vectors": [[1], [2]]}')
    code, _, err = run("validate", "--input", str(bad))
    assert code == 3
    assert "not primitive" in err


def test_validate_reports_violations(tmp_path):
    path = tmp_path / "basis.json"
    path.write_text('{"rank": 2, "vectors": [[1, 0], [0, 1]], "theta": [0, 0]}')
    code, out, _ = run("validate", "--input", str(path), "--json", "-")
    assert code == 3
    assert "INVALID" in out
    payload = json.loads(out[out.index("{"):])
    assert payload["validation"]["no_coloops"] is False


def test_parse_errors_exit_2(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"rank": 2, "vectors": [[1, 0], ')
    code, _, err = run("circuits", "--input", str(broken))
    assert code == 2 and "parse error" in err
    code, _, err = run("circuits", "--input", str(tmp_path / "missing.json"))
    assert code == 2


def test_invalid_config_for_psi_report(tmp_path):
    path = tmp_path / "nonsimple.json"
    path.write_text('{"rank": 2, "vectors": [[1, 0], [0, 1], [1, 1]], "theta": [0, 0, 0]}')
    code, _, err = run("psi-report", "--input", str(path))
    assert code == 3
    assert '"simple": false' in err


def test_check_failure_exits_1(monkeypatch):
    def failing(config, *args, **kwargs):
        return VerificationReport(config.to_dict(), [CheckResult("toric_dimension", "fail", witness={"dimension": 0})])

    monkeypatch.setattr(cli, "verify_all", failing)
    code, out, _ = run("verify-all", "--example", "triangle")
    assert code == 1
    assert "FAIL  toric_dimension" in out and "witness" in out


def test_circuits_output():
    code, out, _ = run("circuits", "--example", "four", "--json", "-")
    assert code == 0
    assert "circuits: {1,2,3}, {1,4}, {2,3,4}" in out
    payload = json.loads(out[out.index("{\n"):])
    assert payload["circuits"] == [[1, 2, 3], [1, 4], [2, 3, 4]]
    assert payload["orientation"] == "theta"
    assert payload["broken_circuits"] == [[1], [1, 2], [2, 3]]


def test_presentations_output():
    code, out, _ = run("presentations", "--example", "tp1")
    assert code == 0
    for name in ("J0", "J ", "J1", "J1prime", "OT", "SRind", "SRbc", "AOT", "ToricI1"):
        assert name in out
    assert "structure map: x1 -> u1 - u2" in out


def test_psi_report_table():
    code, out, _ = run("psi-report", "--example", "tp1", "--max-degree", "3")
    assert code == 0
    lines = out.splitlines()
    assert "coh.deg" in lines[0]
    assert lines[-1] == "Ker psi = W verified through degree 3: PASS"
    assert lines[4].split() == ["3", "6", "7", "4", "4", "3", "3", "yes"]


def test_verify_all_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify-all", "--example", "four", "--json", str(a))[0] == 0
    assert run("verify-all", "--example", "four", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert set(report) == {"config", "checks", "series"}
    assert all("millis" not in c for c in report["checks"])


def test_timing_flag_adds_millis():
    code, out, _ = run("verify-all", "--example", "tp1", "--skip", "groebner", "--timing", "--json", "-")
    assert code == 0
    payload = json.loads(out[out.index("{\n"):])
    assert all("millis" in c for c in payload["checks"])


def test_argument_errors():
    with pytest.raises(SystemExit):
        cli.parse_args(["hilbert"])
    with pytest.raises(SystemExit):
        cli.parse_args(["hilbert", "--example", "tp1", "--input", "x.json"])
    with pytest.raises(SystemExit):
        cli.parse_args(["verify-all", "--example", "tp1", "--skip", "everything"])


def test_unknown_order_is_usage_error():
    code, _, err = run("verify-all", "--example", "tp1", "--orders", "banana")
    assert code == 2 and "unknown order" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "otk", "tp1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
