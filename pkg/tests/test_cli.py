import json
import subprocess
import sys

import pytest

from potcycles.cli import main, parse_n_range
from potcycles.errors import PreconditionError
from potcycles.graphcore import cycle_lengths, degree_sequence, parse_edge_list
from potcycles.seqcore import parse_sequence


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_examples(capsys):
    code, out, _ = run(capsys, "check", "4^6,3,2,1", "--l", "8")
    assert code == 0 and "graphic=true" in out and "posa=true" in out
    code, out, _ = run(capsys, "check", "3,3,1,1", "--l", "5")
    assert code == 1 and "graphic=false" in out
    code, out, _ = run(capsys, "check", "2,2,2", "--l", "3")
    assert code == 0 and "graphic=true" in out


def test_check_parse_failure(capsys):
    code, _, err = run(capsys, "check", "3,x,1")
    assert code == 2 and "refused" in err


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "4^6,3,2,1", "--l", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["command"] == "check"
    assert data["verdicts"]["graphic"] is True and data["verdicts"]["posa"] is True


def test_build_fig1(capsys):
    code, out, _ = run(capsys, "build", "4^4,3^2,2^2", "--l", "8")
    assert code == 0 and "spectrum={3..8}" in out


def test_build_5_10(capsys):
    code, out, _ = run(capsys, "build", "5^10", "--l", "9")
    assert code == 0 and "spectrum={3..9}" in out


def test_build_refusal_names_the_index(capsys):
    code, _, err = run(capsys, "build", "6,4,4,3,3,1,1", "--l", "6")
    assert code == 2 and "d_6 = 1 < 2" in err


def test_build_out_files_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "5^7,4^2,3^2,1", "--l", "10", "--out", str(tmp_path))
    assert code == 0
    g = parse_edge_list((tmp_path / "witness_l10.edges").read_text())
    assert degree_sequence(g) == parse_sequence("5^7,4^2,3^2,1")
    assert cycle_lengths(g) >= set(range(3, 11))
    dot = (tmp_path / "witness_l10.dot").read_text()
    assert dot.startswith("graph witness {") and "x1 --" in dot and "style=bold" in dot
    trace = json.loads((tmp_path / "trace.json").read_text())
    assert trace[0]["action"] == "base" and {"tag", "before", "after", "n", "edges"} <= set(trace[0])
    assert (tmp_path / "trace.txt").read_text().count("\n") == len(trace)
    assert (tmp_path / "witness_l10.png").read_bytes()[:4] == b"\x89PNG"
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["trace_path"].endswith("trace.txt") and len(report["witness_paths"]) == 3


def test_build_out_no_plots(capsys, tmp_path):
    code, _, _ = run(capsys, "build", "3^6", "--l", "6", "--out", str(tmp_path), "--no-plots")
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "report.json", "trace.json", "trace.txt", "witness_l6.dot", "witness_l6.edges"]


def test_sigma_examples(capsys):
    code, out, _ = run(capsys, "sigma", "--l", "5", "--n", "5")
    assert code == 0 and out.splitlines()[1] == "5,5,16,clique-corner"
    code, out, _ = run(capsys, "sigma", "--l", "6", "--n", "6..10")
    assert code == 0 and len(out.splitlines()) == 6
    code, _, err = run(capsys, "sigma", "--l", "4", "--n", "6")
    assert code == 2 and "refused" in err
    code, _, _ = run(capsys, "sigma", "--l", "7", "--n", "6")
    assert code == 2


def test_sigma_out(capsys, tmp_path):
    code, _, _ = run(capsys, "sigma", "--l", "7", "--n", "7..20", "--out", str(tmp_path))
    assert code == 0
    rows = (tmp_path / "sigma.csv").read_text().splitlines()
    assert rows[0] == "l,n,sigma,branch" and len(rows) == 15
    assert (tmp_path / "sigma.png").stat().st_size > 0


def test_parse_n_range():
    assert parse_n_range("6..10") == range(6, 11)
    assert parse_n_range("7") == range(7, 8)
    for bad in ("10..6", "a", "6..", ""):
        with pytest.raises(PreconditionError):
            parse_n_range(bad)


def test_verify_fixtures(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "fixtures", "--out", str(tmp_path))
    assert code == 0 and "PASS 4/4" in out
    data = json.loads((tmp_path / "fixtures.json").read_text())
    assert data["status"] == "pass" and data["counts"]["l=7 bases checked"] == 53
    assert (tmp_path / "fixtures_counts.csv").read_text().startswith("key,count\n")
    assert (tmp_path / "fixtures_counts.png").exists()


def test_verify_posa_small_example(capsys):
    code, out, _ = run(capsys, "verify", "posa-small", "--lmax", "6", "--nmax", "8")
    assert code == 0 and "PASS" in out


def test_verify_sharpness_example(capsys):
    code, out, _ = run(capsys, "verify", "sharpness", "--lmax", "7", "--nmax", "8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdicts"]["status"] == "pass" and data["verdicts"]["cases"] == 12


def test_verify_cap_is_distinct_from_failure(capsys):
    code, out, _ = run(capsys, "verify", "sharpness", "--lmax", "7", "--nmax", "8", "--cap", "6")
    assert code == 1
    first = out.splitlines()[0]
    assert "over cap" in first and "FAIL" not in first


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_console_script_imports_no_matplotlib():
    code = ("import sys, potcycles.cli, potcycles.verify, potcycles.report;"
            "print('matplotlib' in sys.modules)")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "potcycles.cli", "check", "2,2,2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "graphic=true" in out.stdout
