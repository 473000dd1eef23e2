from __future__ import annotations

import json
import subprocess
import sys

import pytest

from seqlrc import cli, recovery, report
from seqlrc.plotting import plot_catalog


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _pattern_file(tmp_path, name):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(recovery.reference_patterns()[name].to_json((5, 5))))
    return str(path)


def test_build_prints_parameters(capsys, tmp_path):
    out_file = tmp_path / "g.json"
    code, out, _ = run(capsys, "build", "P(3) x D(3,3)", "--out", str(out_file))
    assert code == 0 and out.strip() == "[12, 4, 6]"
    g = json.loads(out_file.read_text())
    assert g["rows"] == 4 and g["cols"] == 12


def test_build_reports_lower_bound(capsys, monkeypatch):
    # the flag exports SLRC_BUDGET_OPS; monkeypatch restores it afterwards
    monkeypatch.setenv("SLRC_BUDGET_OPS", "100000000")
    code, out, _ = run(capsys, "--distance-budget", "10", "build", "B(3,8,4)")
    assert code == 0 and "lower bound" in out


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "build", "P(3) x")
    assert code == cli.EXIT_PARSE and out == ""
    assert err.splitlines()[1].index("^") == 6


def test_build_error_exit_code(capsys):
    assert run(capsys, "build", "P(3) x D(5,3)")[0] == cli.EXIT_BUILD
    assert run(capsys, "build", "R(5,7,2)")[0] == cli.EXIT_BUILD


def test_verify_ok_fail_and_budget(capsys):
    code, out, _ = run(capsys, "verify", "P(3) x D(3,3)", "--t", "5")
    assert code == 0 and out.startswith("ok (1585 patterns")
    code, out, _ = run(capsys, "verify", "P(3) x D(3,3)", "--t", "9")
    assert code == 1 and out.strip() == "fail [0, 1, 3, 4, 6, 7]"
    code, _, err = run(capsys, "verify", "P(3) x D(3,3)", "--t", "5", "--budget", "10")
    assert code == cli.EXIT_BUDGET and "budget" in err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "P(3) x D(3,3)")
    rep = json.loads(out)
    assert code == 0 and rep["t"] == 5 and rep["a_exact"] == 4
    code, _, _ = run(capsys, "analyze", "P(3) x D(3,3)", "--exact-a", "--dual-budget", "1")
    assert code == cli.EXIT_BUDGET


def test_recover_full_and_partial(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    png = tmp_path / "grid.png"
    code, out, _ = run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--pattern",
                       _pattern_file(tmp_path, "staircase"), "--trace", str(trace), "--plot", str(png))
    assert code == 0 and out.strip() == "full"
    assert len(json.loads(trace.read_text())) == 21
    assert png.read_bytes()[:4] == b"\x89PNG"
    code, out, _ = run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--pattern",
                       _pattern_file(tmp_path, "cross"))
    assert out.strip() == "partial 16"
    code, out, _ = run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--engine", "generic",
                       "--pattern", _pattern_file(tmp_path, "corner"))
    assert out.strip() == "full"


def test_recover_single_code(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"shape": [8], "erased": [[0], [3], [5]]}))
    code, out, _ = run(capsys, "recover", "B(3,8,4)", "--pattern", str(path))
    assert code == 0 and out.strip() == "full"


def test_recover_shape_errors(capsys, tmp_path):
    bad_shape = tmp_path / "s.json"
    bad_shape.write_text(json.dumps({"shape": [4, 4], "erased": [[0, 0]]}))
    assert run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--pattern", str(bad_shape))[0] == cli.EXIT_SHAPE
    junk = tmp_path / "j.json"
    junk.write_text("{not json")
    assert run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--pattern", str(junk))[0] == cli.EXIT_SHAPE
    missing = str(tmp_path / "none.json")
    assert run(capsys, "recover", "R(5,5,2) x R(5,5,2)", "--pattern", missing)[0] == cli.EXIT_SHAPE


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--n", "5", "--k", "2", "--d", "4", "--ell", "2")
    assert code == 0
    assert out.splitlines() == [
        "a ParallelGuaranteed 0-6",
        "b SequentialGuaranteed 7-15",
        "c PatternDependent 16-21",
        "d Unrecoverable 22-25",
    ]
    code, out, _ = run(capsys, "classify", "--n", "5", "--k", "2", "--d", "4", "--ell", "2", "--mu", "21")
    assert out.strip() == "c PatternDependent"
    code, _, _ = run(capsys, "classify", "--n", "5", "--k", "2", "--d", "9", "--ell", "2")
    assert code == cli.EXIT_BUILD


def test_ratecmp_flags_mismatch(capsys, tmp_path):
    png = tmp_path / "rates.png"
    code, out, err = run(capsys, "ratecmp", "--r", "2", "--tmax", "10", "--plot", str(png))
    assert code == cli.EXIT_MISMATCH
    assert "t=6 r_over_r_plus_t" in err
    assert out.splitlines()[0].startswith("| rate \\ t | 1 | 2 |")
    assert png.exists() and png.stat().st_size > 0


def test_ratecmp_without_published_cells(capsys):
    code, out, _ = run(capsys, "ratecmp", "--r", "3", "--tmax", "4", "--format", "json")
    assert code == 0
    assert [row["t"] for row in json.loads(out)] == [1, 2, 3, 4]


def test_tables_rates_only(capsys):
    code, out, _ = run(capsys, "tables", "--which", "6", "--format", "csv")
    assert code == cli.EXIT_MISMATCH
    assert out.splitlines()[0] == "t,this_work,witness,witness_t,r_over_r_plus_t,power"


def test_tables_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["tables", "--which", "9"])
    assert info.value.code == 2
    capsys.readouterr()


def test_plot_catalog(tmp_path):
    rows = [r for r in report.CATALOG if r.construction in ("P(3) x D(3,3)", "P(3) x D(3,6)")]
    entries = [report.build_entry(r) for r in rows]
    path = tmp_path / "catalog.png"
    plot_catalog(entries, str(path))
    assert path.read_bytes()[:4] == b"\x89PNG"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "seqlrc", "build", "D(3,3)"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "[3, 2, 2]"
