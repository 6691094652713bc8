import json
import subprocess
import sys

from hyperalg.algebra import AlgebraCtx, parse_element
from hyperalg.cli import main


def test_verify_text(capsys):
    assert main(["verify", "--p", "2", "--r", "1"]) == 0
    out = capsys.readouterr().out
    assert "=== summary: 7 passed, 0 failed, 0 skipped" in out


def test_verify_json_single_suite(capsys):
    assert main(["verify", "--p", "3", "--r", "1", "--suite", "radical", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["name"] for c in doc["checks"]] == ["radical"]
    assert doc["checks"][0]["details"]["invariants"]["dimensions"]["oracle"] == 13


def test_bad_arguments(capsys):
    assert main(["verify", "--p", "4", "--r", "1"]) == 2
    assert main(["verify", "--p", "3", "--r", "0"]) == 2


def test_fault_command(capsys):
    assert main(["fault", "--p", "2", "--r", "1"]) == 0
    assert "FAIL" in capsys.readouterr().out


def test_dump_and_output(tmp_path, capsys):
    dump, out = tmp_path / "dump.txt", tmp_path / "report.json"
    assert main(["verify", "--p", "2", "--r", "1", "--suite", "algebra", "--format", "json",
                 "--dump", str(dump), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["p"] == 2
    text = dump.read_text()
    assert "# idempotents" in text and "# radical basis" in text
    ctx = AlgebraCtx(2, 1)
    section = text.split("# radical basis")[1].strip().splitlines()
    assert len(section) == 3
    assert all(parse_element(ctx, line) for line in section)


def test_report_renders_figures(tmp_path, capsys):
    assert main(["report", "--p", "2", "--r", "2", "--suite", "socle", "--figures", str(tmp_path)]) == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert pngs == ["p2_r2_check_times.png", "p2_r2_radical_series.png", "p2_r2_radical_support.png",
                    "p2_r2_simples.png"]
    assert all((tmp_path / n).stat().st_size > 1000 for n in pngs)


def test_entry_point_module():
    res = subprocess.run([sys.executable, "-m", "hyperalg.cli", "verify", "--p", "2", "--r", "1", "--suite", "algebra"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "=== algebra: PASS" in res.stdout
