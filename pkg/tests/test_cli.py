import io
import json
import subprocess
import sys

import pytest

from sparsebinom import cli
from sparsebinom.cli import EXIT_FAIL, EXIT_IOERR, EXIT_OK, EXIT_REFUTED, EXIT_USAGE, main, parse_range
from sparsebinom.reports import Check


def run(argv):
    buf = io.BytesIO()
    code = main(argv, stdout=buf)
    return code, buf.getvalue().decode()


def test_gen_prints_polynomial():
    code, out = run(["gen", "--m", "3", "--n", "4"])
    assert code == EXIT_OK
    assert out == "11 + 4*z^1 + 1*z^4\n"


def test_gen_with_rule():
    code, out = run(["gen", "--rule", "geom", "--n", "3"])
    assert code == EXIT_OK and out == "1*z^1 + 3*z^2 + 3*z^4 + 1*z^8\n"


def test_gen_respects_degree_cap():
    code, out = run(["gen", "--m", "3", "--n-range", "4..30", "--degree-cap", "100", "--format", "json"])
    data = json.loads(out)
    assert code == EXIT_OK
    assert data[-1]["verdict"] == "skipped"
    assert data[0]["poly"] == "11 + 4*z^1 + 1*z^4"


def test_verify_suite_passes():
    code, out = run(["verify", "--m-range", "1..3", "--n-range", "0..6", "--trunc", "8", "--format", "json"])
    assert code == EXIT_OK
    data = json.loads(out)
    ids = {d["id"] for d in data}
    assert {"gen-function", "halving", "finite-transform", "parity-reflection", "inverse-transform", "span",
            "support-collapse", "moment-vanishing", "difference", "derivative", "inverse-derivative", "pde"} <= ids
    assert all(d["pass"] for d in data)


def test_verify_with_short_table_marks_rows_not_applicable():
    code, out = run(["verify", "--rule", "table:0,1,2", "--n-range", "0..4", "--format", "json"])
    assert code == EXIT_OK
    verdicts = {d["verdict"] for d in json.loads(out)}
    assert "not-applicable" in verdicts and "fail" not in verdicts


def test_concavity_passes():
    code, out = run(["concavity", "--m-range", "2..3", "--n-range", "1..6", "--k-range", "1..2"])
    assert code == EXIT_OK
    assert out.rstrip().endswith("failed=0 refuted=0")


def test_roots_annulus_sweep():
    code, out = run(["roots", "--m", "2", "--n-range", "3..8", "--tol", "1e-10", "--format", "json"])
    assert code == EXIT_OK
    rows = [d for d in json.loads(out) if d["kind"] == "roots"]
    assert len(rows) == 6 and all(d["pass"] for d in rows)


def test_conjectures_csv():
    code, out = run(["conjectures", "--m-range", "2..3", "--n-range", "2..10", "--format", "csv"])
    assert code == EXIT_OK
    assert out.splitlines()[0] == "kind,id,params,pass,verdict,witness"


@pytest.mark.parametrize("argv", [
    ["gen"],
    ["gen", "--n", "3"],
    ["verify", "--m", "0", "--n", "3"],
    ["roots", "--m", "1", "--n", "3"],
    ["concavity", "--m", "2", "--n-range", "5..2"],
    ["gen", "--m", "2", "--m-range", "2..3", "--n", "3"],
    ["verify", "--rule", "cubic:3", "--n", "2"],
    ["verify", "--m", "2", "--n", "3", "--tol", "-1"],
    ["gen", "--m", "2", "--n", "3", "--format", "xml"],
])
def test_usage_errors_exit_64(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(argv, stdout=io.BytesIO())
        raise SystemExit(code)
    assert exc.value.code == EXIT_USAGE


def test_failure_and_refutation_exit_codes(monkeypatch):
    monkeypatch.setitem(cli.SUITES, "gen", lambda cfg: [Check("check", "x", {}, "fail")])
    assert run(["gen", "--m", "2", "--n", "3"])[0] == EXIT_FAIL
    monkeypatch.setitem(cli.SUITES, "gen", lambda cfg: [Check("check", "x", {}, "CONJECTURE-REFUTED")])
    assert run(["gen", "--m", "2", "--n", "3"])[0] == EXIT_REFUTED
    # a hard failure outranks a refutation
    monkeypatch.setitem(cli.SUITES, "gen", lambda cfg: [Check("check", "x", {}, "CONJECTURE-REFUTED"),
                                                        Check("check", "y", {}, "fail")])
    assert run(["gen", "--m", "2", "--n", "3"])[0] == EXIT_FAIL


def test_out_writes_file(tmp_path):
    target = tmp_path / "f.txt"
    code, out = run(["gen", "--m", "3", "--n", "4", "--out", str(target)])
    assert code == EXIT_OK and out == ""
    assert target.read_text() == "11 + 4*z^1 + 1*z^4\n"


def test_unwritable_out_exits_74(tmp_path, capsys):
    code, _ = run(["gen", "--m", "3", "--n", "4", "--out", str(tmp_path / "no" / "such" / "f.txt")])
    assert code == EXIT_IOERR
    assert "no/such" in capsys.readouterr().err


def test_byte_identical_reruns():
    argv = ["roots", "--m", "3", "--n-range", "7..9", "--families", "2", "--heuristics", "--seed", "5",
            "--format", "json"]
    assert run(argv) == run(argv)


def test_parse_range():
    assert parse_range("2..5") == range(2, 6)
    assert parse_range("7") == range(7, 8)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sparsebinom", "gen", "--m", "3", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "11 + 4*z^1 + 1*z^4\n"
    proc = subprocess.run([sys.executable, "-m", "sparsebinom", "roots", "--m", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 64
