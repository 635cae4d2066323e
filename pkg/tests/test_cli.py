import json
import subprocess
import sys
from pathlib import Path

import pytest

from magnetick.cli import main, render, render_table

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def cases(data):
    z4, torus = data / "z4.json", data / "torus.json"
    soc = data / "z8_over_z4.json"
    nosoc = ["--overrides", data / "torus_nosoc_overrides.json",
             "--assertions", data / "torus_nosoc_assertions.json"]
    return {
        "irreps_z4": ["irreps", "--group", z4],
        "irreps_z4_soc": ["irreps", "--group", z4, "--twist", soc],
        "coefficients_z4": ["coefficients", "--group", z4, "--degrees", "0..-7"],
        "periodicity_z4": ["periodicity", "--group", z4],
        "ahss_torus_nosoc": ["ahss", "--group", z4, "--complex", torus, *nosoc],
        "ahss_torus_soc": ["ahss", "--group", z4, "--complex", torus, "--twist", soc],
    }


NAMES = ["irreps_z4", "irreps_z4_soc", "coefficients_z4", "periodicity_z4", "ahss_torus_nosoc", "ahss_torus_soc"]


@pytest.mark.parametrize("name", NAMES)
def test_golden_tables(capsys, data_dir, name):
    code, out = run_cli(capsys, *cases(data_dir)[name])
    assert code == 0
    assert out == (GOLDEN / f"{name}.txt").read_text()


@pytest.mark.parametrize("name", NAMES)
def test_json_round_trip_is_byte_identical(capsys, data_dir, name):
    argv = cases(data_dir)[name]
    _, first = run_cli(capsys, *argv, "--format", "json")
    _, second = run_cli(capsys, *argv, "--format", "json")
    assert first == second
    assert render(json.loads(first), "json") == first


@pytest.mark.parametrize("name", NAMES)
def test_table_is_rendered_from_the_json_report(capsys, data_dir, name):
    argv = cases(data_dir)[name]
    _, js = run_cli(capsys, *argv, "--format", "json")
    _, table = run_cli(capsys, *argv)
    assert render_table(json.loads(js)) == table


def test_irreps_z4_report(capsys, data_dir):
    _, out = run_cli(capsys, "irreps", "--group", data_dir / "z4.json", "--format", "json")
    report = json.loads(out)
    assert [(r["name"], r["type"], r["dimension"]) for r in report["irreps"]] == [
        ("R1", "REAL", 1), ("R2", "QUATERNIONIC", 2)]
    assert report["counts"] == {"R": 1, "C": 0, "H": 1}


def test_soc_irrep_matrix(capsys, data_dir):
    _, out = run_cli(capsys, "irreps", "--group", data_dir / "z4.json", "--twist", data_dir / "z8_over_z4.json",
                     "--format", "json")
    (r,) = json.loads(out)["irreps"]
    assert r["type"] == "COMPLEX" and r["dimension"] == 2
    assert r["a0_matrix"] == [["0", "1"], ["-i", "0"]] and r["phase"] == "-i"


def test_ahss_k_groups(capsys, data_dir):
    _, out = run_cli(capsys, *cases(data_dir)["ahss_torus_nosoc"], "--format", "json")
    report = json.loads(out)
    assert [k["total"] for k in report["k_groups"]] == ["Z^4", "Z/2", "Z^2 + Z/2", "0"]
    assert report["overrides"][0]["matrix"] == [[1, 1]]
    assert report["assertions"][0]["degree"] == -2


def test_periodicity_of_z2(capsys, data_dir):
    _, out = run_cli(capsys, "periodicity", "--group", data_dir / "z2.json", "--format", "json")
    report = json.loads(out)
    assert report["period"] == 8 and not report["splits"] and report["section"] is None


def test_not_a_group(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "table": [[0, 1], [1, 1]]}))
    code, out = run_cli(capsys, "coefficients", "--group", bad)
    assert code != 0
    assert json.loads(out)["error"] == "NotAGroup"


def test_parse_error_carries_path_and_line(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"name":\n')
    code, out = run_cli(capsys, "irreps", "--group", broken)
    err = json.loads(out)
    assert code == 1 and err["error"] == "ParseError"
    assert err["details"]["path"] == str(broken) and err["details"]["line"] == 2


def test_missing_override_is_a_structured_error(capsys, data_dir):
    code, out = run_cli(capsys, "ahss", "--group", data_dir / "z4.json", "--complex", data_dir / "torus.json")
    assert code == 1 and json.loads(out)["error"] == "PageNotStable"


def test_assume_remaining_zero_flag(capsys, data_dir):
    code, out = run_cli(capsys, "ahss", "--group", data_dir / "z4.json", "--complex", data_dir / "torus.json",
                        "--assume-remaining-zero", "--format", "json")
    assert code == 0
    assert json.loads(out)["assumed_zero"] == [{"page": 2, "from": [0, -1]}]


def test_max_order_bound(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("MAGNETICK_MAX_ORDER", "64")
    code, out = run_cli(capsys, "irreps", "--group", data_dir / "z8.json", "--max-order", "4")
    assert code == 1 and json.loads(out)["error"] == "GroupTooLarge"


def test_console_script(data_dir):
    proc = subprocess.run([sys.executable, "-m", "magnetick.cli", "irreps", "--group", str(data_dir / "z4.json")],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == (GOLDEN / "irreps_z4.txt").read_text()
