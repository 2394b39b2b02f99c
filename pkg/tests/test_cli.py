import json

import pytest

from bockstein.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_formulas_series(capsys):
    code, out, _ = run_cli(capsys, "formulas", "--p", "3", "--series", "r1", "--n", "1..3")
    assert code == 0 and out.strip() == "9, 27, 90"
    code, out, _ = run_cli(capsys, "formulas", "--p", "3", "--series", "r2", "--n", "1..4")
    assert code == 0 and out.strip() == "3, 9, 27, 84"
    code, out, _ = run_cli(capsys, "formulas", "--p", "2", "--series", "dmu", "--n", "2")
    assert code == 0 and out.strip() == "16"
    code, out, _ = run_cli(capsys, "formulas", "--p", "3", "--series", "rconj",
                           "--n", "1..3", "--m", "1")
    assert code == 0 and out.strip() == "9, 27, 90"


def test_verify_v0_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--case", "v0", "--p", "2", "--n", "2",
                           "--max-degree", "58")
    assert code == 0
    assert "VERIFIED" in out


def test_verify_conj_tagged(capsys):
    code, out, _ = run_cli(capsys, "verify", "--case", "conj", "--p", "3", "--n", "3",
                           "--m", "1", "--max-degree", "80")
    assert code == 0
    assert "conjectural" in out


def test_run_localized_span(capsys):
    code, out, _ = run_cli(capsys, "run", "--case", "v2", "--p", "3",
                           "--max-degree", "60", "--localized")
    assert code == 0
    assert "Laurent span {1}" in out
    code, out, _ = run_cli(capsys, "run", "--case", "v1", "--p", "3",
                           "--max-degree", "60", "--localized")
    assert code == 0
    assert "Laurent span {1, λ1}" in out


def test_run_v1_p2_needs_variant(capsys):
    code, _, err = run_cli(capsys, "run", "--case", "v1", "--p", "2", "--max-degree", "30")
    assert code == 2
    assert "Remark" in err
    code, _, _ = run_cli(capsys, "run", "--case", "v1", "--p", "2", "--max-degree", "30",
                         "--variant", "B")
    assert code == 0


def test_run_writes_artifacts(tmp_path, capsys):
    jpath = tmp_path / "out.json"
    spath = tmp_path / "out.svg"
    code, out, _ = run_cli(capsys, "run", "--case", "v0", "--p", "2", "--n", "2",
                           "--max-degree", "58", "--json", str(jpath), "--svg", str(spath))
    assert code == 0
    doc = json.loads(jpath.read_text())
    towers = {t["t"]: t["lengths"] for t in doc["towers"]}
    assert towers[31] == [2] and towers[0] == ["inf"]
    assert spath.read_text().startswith("<svg")


def test_usage_error_exit_two(capsys):
    code, _, err = run_cli(capsys, "run", "--case", "v0", "--p", "2", "--max-degree", "20")
    assert code == 2  # missing --n
    code, _, err = run_cli(capsys, "run", "--case", "v0", "--p", "2", "--n", "2",
                           "--max-degree", "20", "--localized")
    assert code == 2  # |v0| = 0 cannot be localized


def test_verify_mismatch_exit_one(monkeypatch, capsys):
    # engineer a mismatch by lying about the oracle
    import bockstein.cli as cli
    from bockstein.towers import TowerProfile

    def fake_oracle(cfg):
        prof = TowerProfile(cfg.max_degree)
        prof.add(0, 5)
        return prof

    monkeypatch.setattr(cli, "_oracle", fake_oracle)
    code, out, _ = run_cli(capsys, "verify", "--case", "v0", "--p", "2", "--n", "2",
                           "--max-degree", "20")
    assert code == 1
    assert "MISMATCH" in out
