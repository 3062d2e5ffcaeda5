"""Rendering of result rows as text, JSON or CSV, byte-for-byte deterministic."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .concavity import ConcavityCertificate
from .identities import IdentityReport
from .polycore import SparsePoly, format_poly
from .roots.analysis import FAIL, REFUTED, HeuristicMatch, ParityReport, RootReport, ScanRow

FORMATS = ("text", "json", "csv")
SUITE_COLUMNS = ("kind", "id", "params", "pass", "verdict", "witness")
SCAN_COLUMNS = ScanRow.COLUMNS

SECTION_ORDER = ("poly", "identity", "concavity", "roots", "scan", "parity", "heuristic", "check")
SECTION_TITLES = {
    "poly": "Polynomials",
    "identity": "Identities",
    "concavity": "Concavity certificates",
    "check": "Checks",
    "roots": "Root certificates",
    "scan": "Scan table",
    "parity": "Binomial parity",
    "heuristic": "Heuristic root locations",
}


@dataclass
class Check:
    """A named pass/fail row for results without a richer type."""

    kind: str
    check_id: str
    params: dict[str, Any]
    verdict: str
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.verdict not in (FAIL, REFUTED)

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.check_id,
            "params": self.params,
            "pass": self.passed,
            "verdict": self.verdict,
            "witness": self.witness,
        }


@dataclass
class GeneratedPoly:
    label: str
    params: dict[str, Any]
    poly: SparsePoly = field(repr=False)

    def to_json(self) -> dict[str, Any]:
        return {"id": self.label, "params": self.params, "poly": format_poly(self.poly)}


def kind_of(report) -> str:
    if isinstance(report, GeneratedPoly):
        return "poly"
    if isinstance(report, IdentityReport):
        return "identity"
    if isinstance(report, ConcavityCertificate):
        return "concavity"
    if isinstance(report, Check):
        return "check"
    if isinstance(report, RootReport):
        return "roots"
    if isinstance(report, ScanRow):
        return "scan"
    if isinstance(report, ParityReport):
        return "parity"
    if isinstance(report, HeuristicMatch):
        return "heuristic"
    raise TypeError(f"cannot render {type(report).__name__}")


def verdict_of(report) -> str:
    kind = kind_of(report)
    if kind == "poly":
        return "pass"
    if kind == "heuristic":
        return "recorded"
    return report.verdict


def _plain(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, SparsePoly):
        return format_poly(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "__int__") and not isinstance(obj, float):
        return int(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def _dumps(obj, **kw) -> str:
    return json.dumps(obj, default=_plain, allow_nan=False, **kw)


def _compact(obj) -> str:
    if obj is None:
        return ""
    return _dumps(obj, separators=(",", ":"), sort_keys=True)


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _fmt(x, digits: int = 10) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    return str(x)


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def _suite_row(report) -> dict[str, Any]:
    kind = kind_of(report)
    data = report.to_json()
    if kind == "poly":
        return {"kind": kind, "id": report.label, "params": report.params, "pass": True,
                "verdict": "pass", "witness": data["poly"]}
    if kind == "concavity":
        witness = {k: data[k] for k in ("first_negative", "one_minus_z_mult", "expected_mult", "positive")}
        return {"kind": kind, "id": report.object_id, "params": report.params,
                "pass": report.matches_expectation, "verdict": report.verdict, "witness": witness}
    if kind == "roots":
        witness = {
            "min_modulus": report.min_modulus,
            "max_modulus": report.max_modulus,
            "lower_bound": report.lower_bound,
            "upper_bound": report.upper_bound,
            "real_count": report.real_count,
            "precision_used": report.precision_used,
        }
        return {"kind": kind, "id": report.label, "params": {"m": report.m, "n": report.n},
                "pass": report.ok, "verdict": report.verdict, "witness": witness}
    if kind == "scan":
        witness = {c: data[c] for c in SCAN_COLUMNS if c not in ("m", "n")}
        return {"kind": kind, "id": f"N[{report.m},{report.n}]", "params": {"m": report.m, "n": report.n},
                "pass": report.verdict not in (FAIL, REFUTED), "verdict": report.verdict, "witness": witness}
    if kind == "parity":
        return {"kind": kind, "id": f"parity[{report.m}]", "params": {"m": report.m, "n_range": [report.n_lo, report.n_hi]},
                "pass": report.verdict != FAIL, "verdict": report.verdict,
                "witness": {"word": data["word"], "period_detected": report.period_detected,
                            "expected_period": report.expected_period, "detail": report.detail}}
    if kind == "heuristic":
        return {"kind": kind, "id": report.label, "params": {}, "pass": True, "verdict": "recorded", "witness": data}
    return {"kind": kind, "id": data["id"], "params": data["params"], "pass": data["pass"],
            "verdict": data["verdict"], "witness": data["witness"]}


def _text_line(report) -> str:
    kind = kind_of(report)
    if kind == "poly":
        return f"{report.label} = {format_poly(report.poly)}"
    if kind == "roots":
        bounds = f"({_fmt(report.lower_bound, 6)}, {_fmt(report.upper_bound, 6)})"
        return (
            f"{report.verdict.upper():<6} {report.label:<18} deg={report.degree} real={report.real_count} "
            f"|z| in [{report.min_modulus:.6f}, {report.max_modulus:.6f}] bounds {bounds} "
            f"max_rel_radius={report.max_relative_radius:.2e} prec={report.precision_used} regime={report.regime}"
        )
    if kind == "parity":
        line = (
            f"{report.verdict.upper():<6} m={report.m} n={report.n_lo}..{report.n_hi} "
            f"word={''.join(map(str, report.word))} period={_fmt(report.period_detected)} "
            f"expected={report.expected_period}"
        )
        return line + (f"  [{report.detail}]" if report.detail else "")
    if kind == "heuristic":
        return (
            f"{report.label:<20} predicted={report.predicted:.6f} "
            f"nearest={_fmt(report.matched_root, 6)} gap={_fmt(report.gap, 6)}"
        )
    row = _suite_row(report)
    line = f"{row['verdict'].upper():<6} {row['id']:<22} {_params_text(row['params'])}"
    if not row["pass"] and row["witness"] is not None:
        line += f"  witness={_compact(row['witness'])}"
    return line


def _scan_table(rows: list[ScanRow]) -> list[str]:
    header = list(SCAN_COLUMNS) + ["verdict"]
    body = [[_fmt(getattr(r, c), 6) for c in SCAN_COLUMNS] + [r.verdict] for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(b, widths)) for b in body]
    return lines


def _render_text(reports: list) -> str:
    groups: dict[str, list] = {}
    for r in reports:
        groups.setdefault(kind_of(r), []).append(r)
    if list(groups) == ["poly"] and len(reports) == 1:
        # a single generated polynomial prints bare so it can be piped back into parse_poly
        return format_poly(reports[0].poly) + "\n"
    lines: list[str] = []
    for kind in SECTION_ORDER:
        items = groups.get(kind)
        if not items:
            continue
        if len(groups) > 1 or kind not in ("poly",):
            title = SECTION_TITLES[kind]
            lines.append(f"== {title} ({len(items)}) ==")
        if kind == "scan":
            lines.extend(_scan_table(items))
        else:
            lines.extend(_text_line(r) for r in items)
        lines.append("")
    total = sum(1 for r in reports if kind_of(r) not in ("poly", "heuristic"))
    failed = sum(1 for r in reports if verdict_of(r) == FAIL)
    refuted = sum(1 for r in reports if verdict_of(r) == REFUTED)
    if total:
        lines.append(f"rows={total} failed={failed} refuted={refuted}")
    return "\n".join(lines).rstrip("\n") + "\n" if lines else ""


def _render_json(reports: list) -> str:
    out = []
    for r in reports:
        obj = {"kind": kind_of(r)}
        obj.update(r.to_json())
        out.append(obj)
    return _dumps(out, indent=2) + "\n"


def _render_csv(reports: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if reports and all(isinstance(r, (ScanRow, RootReport)) for r in reports):
        writer.writerow(SCAN_COLUMNS)
        for r in reports:
            row = r.scan_row() if isinstance(r, RootReport) else r
            writer.writerow([_num(getattr(row, c)) for c in SCAN_COLUMNS])
        return buf.getvalue()
    writer.writerow(SUITE_COLUMNS)
    for r in reports:
        row = _suite_row(r)
        writer.writerow([
            row["kind"], row["id"], _compact(row["params"]),
            "true" if row["pass"] else "false", row["verdict"], _compact(row["witness"]),
        ])
    return buf.getvalue()


def render_report(reports: Iterable, fmt: str = "text") -> bytes:
    """Serialize report objects; the same input always gives the same bytes.

    Text output groups rows into labelled sections by type.  JSON is an array
    with one object per report, tagged with its ``kind``.  CSV uses the scan
    header when every row is a scan row and the suite header otherwise.
    """
    reports = list(reports)
    if fmt == "text":
        out = _render_text(reports)
    elif fmt == "json":
        out = _render_json(reports)
    elif fmt == "csv":
        out = _render_csv(reports)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return out.encode("utf-8")


def write_report(data: bytes, path: str | Path | None, stream=None) -> None:
    """Write rendered bytes to ``path`` or to a binary stream."""
    if path is None:
        stream.write(data)
        stream.flush()
        return
    target = Path(path)
    try:
        target.write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write report to {target}: {exc.strerror or exc}") from exc
