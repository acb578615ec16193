"""
Report writers: plain-text tables, comma-separated files and JSON lines.
"""

import csv
import io
import json
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Union

from fdots.metrics.comparison import ComparisonClaim
from fdots.metrics.measures import MetricsReport
from fdots.metrics.scaling import ScalingRow

CSV_COLUMNS = ("model", "measure", "measured", "ceiling", "pass")


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return "pass" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, list):
        return ",".join(str(v) for v in value)
    return str(value)


def render_table(rows: Sequence[Dict[str, object]], columns: Optional[Sequence[str]] = None) -> str:
    """Left-aligned text table with a header row."""
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    cells = [[_cell(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells)
    return "\n".join(lines) + "\n"


def format_table(reports: Union[MetricsReport, Iterable[MetricsReport]]) -> str:
    """
    Summary table of one or more reports: one row per model and measure,
    followed by inputs, notes and every failing check.
    """
    if isinstance(reports, MetricsReport):
        reports = [reports]
    reports = list(reports)
    rows = [row for report in reports for row in report.summary()]
    out = [render_table(rows, ["model", "measure", "count", "measured", "ceiling", "max_ratio", "pass"])]
    for report in reports:
        inputs = " ".join(f"{k}={_cell(v)}" for k, v in report.inputs.items())
        out.append(f"{report.model} inputs: {inputs}\n")
        out.extend(f"{report.model} note: {note}\n" for note in report.notes)
        out.extend(
            f"{report.model} violation: {c.measure} {c.subject} measured={c.measured} ceiling={c.ceiling}\n"
            for c in report.violations()
        )
    return "".join(out)


def format_claims(claims: Sequence[ComparisonClaim]) -> str:
    return render_table([c.row() for c in claims], ["claim", "holds", "detail"])


def format_scaling(rows: Sequence[ScalingRow]) -> str:
    return render_table([r.row() for r in rows])


def check_rows(reports: Iterable[MetricsReport]) -> List[Dict[str, object]]:
    return [check.row() for report in reports for check in report.checks]


def write_csv(
    reports: Union[MetricsReport, Iterable[MetricsReport]],
    target: Union[str, Path, TextIO],
) -> None:
    """
    Write every check as a row with columns model, measure, measured,
    ceiling, pass.
    """
    if isinstance(reports, MetricsReport):
        reports = [reports]
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8", newline="") as f:
            write_csv(reports, f)
        return
    writer = csv.DictWriter(target, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in check_rows(reports):
        writer.writerow({**row, "pass": "true" if row["pass"] else "false"})


def to_csv(reports: Union[MetricsReport, Iterable[MetricsReport]]) -> str:
    buffer = io.StringIO()
    write_csv(reports, buffer)
    return buffer.getvalue()


def to_json_lines(rows: Iterable[Dict[str, object]]) -> str:
    """One compact JSON object per row, keys sorted."""
    return "".join(json.dumps(row, sort_keys=True, default=str) + "\n" for row in rows)
