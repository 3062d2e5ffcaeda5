import csv
import io
import json
from pathlib import Path

import pytest

from mixed_reports import mixed
from sparsebinom.family import f_poly
from sparsebinom.identities import check_gf, check_span
from sparsebinom.family import ExponentRule
from sparsebinom.reports import (
    SCAN_COLUMNS,
    SUITE_COLUMNS,
    Check,
    GeneratedPoly,
    render_report,
    write_report,
)
from sparsebinom.roots.analysis import ScanRow, all_roots

GOLDEN = Path(__file__).parent / "golden"


def test_empty_csv_is_header_only():
    assert render_report([], "csv") == (",".join(SUITE_COLUMNS) + "\n").encode()


def test_single_identity_json_is_one_element_array():
    data = json.loads(render_report([check_span(ExponentRule.binomial(2), 4)], "json"))
    assert isinstance(data, list) and len(data) == 1
    assert data[0]["kind"] == "identity" and data[0]["id"] == "span"
    assert data[0]["pass"] is True and data[0]["witness"] is None
    assert list(data[0])[:6] == ["kind", "id", "params", "pass", "verdict", "witness"]


def test_mixed_text_matches_golden():
    assert render_report(mixed(), "text") == (GOLDEN / "mixed.txt").read_bytes()


def test_single_polynomial_prints_bare():
    out = render_report([GeneratedPoly("f[3,4]", {"m": 3, "n": 4}, f_poly(3, 4))], "text")
    assert out == b"11 + 4*z^1 + 1*z^4\n"


@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_rendering_is_deterministic(fmt):
    assert render_report(mixed(), fmt) == render_report(mixed(), fmt)


def test_mixed_csv_uses_suite_header():
    rows = list(csv.reader(io.StringIO(render_report(mixed(), "csv").decode())))
    assert tuple(rows[0]) == SUITE_COLUMNS
    assert len(rows) == 1 + len(mixed())
    kinds = [r[0] for r in rows[1:]]
    assert kinds[:3] == ["identity", "poly", "concavity"]
    failing = [r for r in rows[1:] if r[3] == "false"]
    assert [r[1] for r in failing] == ["demo", "N[4,12]"]


def test_scan_csv_uses_scan_header():
    rows = [ScanRow(2, n, n // 2, None, None, None, None, None, "pass") for n in (2, 3)]
    rows.append(all_roots(2, 4).scan_row())
    text = render_report(rows, "csv").decode()
    lines = text.splitlines()
    assert lines[0] == ",".join(SCAN_COLUMNS)
    assert lines[1] == "2,2,1,,,,,"
    assert lines[3].startswith("2,4,2,,0.5,")


def test_json_serializes_every_kind():
    data = json.loads(render_report(mixed(), "json"))
    assert [d["kind"] for d in data] == ["identity", "poly", "concavity", "concavity", "identity",
                                         "scan", "scan", "parity", "check"]
    assert data[1]["poly"] == "11 + 4*z^1 + 1*z^4"


def test_series_report_json_carries_order():
    data = json.loads(render_report([check_gf(ExponentRule.binomial(2), 6)], "json"))
    assert data[0]["detail"] == {"order": 6}


def test_unknown_format():
    with pytest.raises(ValueError):
        render_report([], "xml")


def test_unknown_report_type():
    with pytest.raises(TypeError):
        render_report([object()], "text")


def test_check_verdicts():
    assert Check("check", "x", {}, "evidence").passed
    assert not Check("check", "x", {}, "CONJECTURE-REFUTED").passed


def test_write_report(tmp_path):
    target = tmp_path / "out.txt"
    write_report(b"abc\n", target)
    assert target.read_bytes() == b"abc\n"
    stream = io.BytesIO()
    write_report(b"xyz", None, stream)
    assert stream.getvalue() == b"xyz"


def test_write_report_error_has_path(tmp_path):
    bad = tmp_path / "missing" / "out.txt"
    with pytest.raises(OSError, match="missing"):
        write_report(b"x", bad)
