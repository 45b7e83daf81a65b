import json

import pytest

from freeqsg import cli
from freeqsg.suites import Check, SuiteReport

IDEMPOTENT = "generator p selfadjoint\nrelation p p - p\n"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_ok_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "character-monoid")
    assert code == 0
    assert "suite character-monoid: ok" in out


def test_verify_json_schema(capsys):
    code, out, _ = run_cli(capsys, "verify", "pi-morphism", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "pi-morphism"
    assert payload["status"] == "ok"
    for check in payload["checks"]:
        assert set(check) == {"id", "anchor", "status", "residual", "millis"}


def test_verify_json_stable(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "verify", "noqg-phi", "--json")
        assert code == 0
        payload = json.loads(out)
        for check in payload["checks"]:
            check.pop("millis")
        runs.append(payload)
    assert runs[0] == runs[1]


def test_verify_failure_exit_code(capsys, monkeypatch):
    report = SuiteReport("noqg-phi", [
        Check("doomed", "synthetic failing check", "fail", 1.0, 0.1),
    ])
    monkeypatch.setattr(cli, "run_suite", lambda name, options: report)
    code, out, _ = run_cli(capsys, "verify", "noqg-phi")
    assert code == 1
    assert "FAIL" in out


def test_verify_unknown_suite_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["verify", "nonsense"])
    assert err.value.code == 2


def test_solve_characters(tmp_path, capsys):
    pres = tmp_path / "idem.pres"
    pres.write_text(IDEMPOTENT)
    code, out, _ = run_cli(capsys, "solve-characters", str(pres), "--json")
    assert code == 0
    payload = json.loads(out)
    values = sorted(round(row[0], 6) for row in payload["solutions"])
    assert [abs(v) for v in values] == [0.0, 1.0]
    assert payload["components"]["component_count"] == 2
    assert payload["coordinates"] == ["p"]


def test_solve_characters_missing_file(capsys):
    code, _, err = run_cli(capsys, "solve-characters", "/nonexistent.pres")
    assert code == 2
    assert "error:" in err


def test_print_presentation_roundtrip(tmp_path, capsys):
    pres = tmp_path / "idem.pres"
    pres.write_text(IDEMPOTENT + "# trailing comment\n")
    code, out, _ = run_cli(capsys, "print-presentation", str(pres))
    assert code == 0
    pres2 = tmp_path / "again.pres"
    pres2.write_text(out)
    code2, out2, _ = run_cli(capsys, "print-presentation", str(pres2))
    assert code2 == 0 and out2 == out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.pres"
    bad.write_text("relation p +\n")
    code, _, err = run_cli(capsys, "print-presentation", str(bad))
    assert code == 2
    assert "error:" in err


def test_group_table_file(tmp_path, capsys):
    table = tmp_path / "z2.table"
    table.write_text("0 1\n1 0\n")
    code, out, _ = run_cli(
        capsys, "verify", "sadr-gamma", "--group", str(table), "--copies", "2"
    )
    assert code == 0
    assert "suite sadr-gamma: ok" in out
