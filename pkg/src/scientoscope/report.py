"""Render-ready tables and deterministic display formatting.

All numeric cells are kept at full precision inside :class:`ReportTable`;
rounding happens only at render time, under an explicit
:class:`DisplayPolicy`. Rendering the same table twice with the same
policy is byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

CellValue = int | float | str | None

#: Column kinds. ``count`` cells are integers; ``percent``/``ratio``/``log``
#: cells are reals rendered at the column's decimal count.
COLUMN_KINDS = ("year", "label", "count", "percent", "ratio", "log")


def round_half_up(value: float, decimals: int) -> float:
    """Round at *decimals* places, half away from zero, as a float.

    Operates on the exact decimal expansion of the binary float, so
    0.005 -> 0.01 rather than the banker's 0.00.
    """
    if not math.isfinite(value):
        raise ValueError(f"cannot round non-finite value {value!r}")
    if decimals < 0:
        raise ValueError("decimals must be >= 0")
    quantum = Decimal(1).scaleb(-decimals)
    return float(Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP))


def round_display(value: float, decimals: int) -> str:
    """Half-up decimal rounding to a fixed-point display string.

    "-0.00" is normalized to "0.00"; non-finite input is an error.
    """
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite value {value!r}")
    if decimals < 0:
        raise ValueError("decimals must be >= 0")
    quantum = Decimal(1).scaleb(-decimals)
    rounded = Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP)
    if rounded == 0:
        rounded = abs(rounded)  # avoid "-0.00"
    return f"{rounded:f}"


@dataclass(frozen=True)
class ColumnSpec:
    header: str
    kind: str = "count"
    decimals: int = 2

    def __post_init__(self) -> None:
        if self.kind not in COLUMN_KINDS:
            raise ValueError(f"unknown column kind: {self.kind!r}")


@dataclass(frozen=True)
class DisplayPolicy:
    """Display conventions: rounding is always half-up; ``totals_source``
    selects whether footer totals of real-valued columns are
    re-derived from the rounded cells (the source study's habit) or
    taken at full precision."""

    absent_marker: str = "-"
    totals_source: str = "full_precision"  # or "rounded_cells"

    def __post_init__(self) -> None:
        if self.totals_source not in ("full_precision", "rounded_cells"):
            raise ValueError(f"invalid totals_source: {self.totals_source!r}")


@dataclass
class ReportTable:
    """Headers, rows, optional footer, and footnotes for one table."""

    title: str
    columns: list[ColumnSpec]
    rows: list[list[CellValue]] = field(default_factory=list)
    footer: list[CellValue] | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} cells, expected {width}")
        if self.footer is not None and len(self.footer) != width:
            raise ValueError(f"footer has {len(self.footer)} cells, expected {width}")

    def column(self, header: str) -> list[CellValue]:
        idx = [c.header for c in self.columns].index(header)
        return [row[idx] for row in self.rows]


def _cell_display(value: CellValue, spec: ColumnSpec, policy: DisplayPolicy) -> str:
    if value is None:
        return policy.absent_marker
    if spec.kind in ("year", "label"):
        return str(value)
    if spec.kind == "count":
        return str(int(value))
    return round_display(float(value), spec.decimals)


def _display_grid(table: ReportTable, policy: DisplayPolicy) -> tuple[list[str], list[list[str]]]:
    """Headers and all display rows (footer last if present)."""
    headers = [c.header for c in table.columns]
    grid = [[_cell_display(v, c, policy) for v, c in zip(row, table.columns)] for row in table.rows]
    if table.footer is not None:
        grid.append([_cell_display(v, c, policy) for v, c in zip(table.footer, table.columns)])
    return headers, grid


def render(table: ReportTable, format: str = "text", policy: DisplayPolicy | None = None) -> str:
    """Render *table* in one of: text, csv, json, markdown."""
    policy = policy or DisplayPolicy()
    if format == "text":
        return _render_text(table, policy)
    if format == "csv":
        return _render_csv(table, policy)
    if format == "json":
        return _render_json(table, policy)
    if format == "markdown":
        return _render_markdown(table, policy)
    raise ValueError(f"unknown output format: {format!r}")


def _render_text(table: ReportTable, policy: DisplayPolicy) -> str:
    headers, grid = _display_grid(table, policy)
    widths = [len(h) for h in headers]
    for row in grid:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))

    def fmt(cells: list[str]) -> str:
        parts = []
        for cell, width, spec in zip(cells, widths, table.columns):
            if spec.kind in ("label",):
                parts.append(cell.ljust(width))
            else:
                parts.append(cell.rjust(width))
        return "  ".join(parts).rstrip()

    lines = [table.title, "=" * len(table.title), fmt(headers), fmt(["-" * w for w in widths])]
    body = grid[:-1] if table.footer is not None else grid
    lines.extend(fmt(row) for row in body)
    if table.footer is not None:
        lines.append(fmt(["-" * w for w in widths]))
        lines.append(fmt(grid[-1]))
    for note in table.notes:
        lines.append(f"* {note}")
    return "\n".join(lines) + "\n"


def _render_csv(table: ReportTable, policy: DisplayPolicy) -> str:
    """CSV with full-precision numerics.

    Under ``totals_source = rounded_cells`` every real-valued column gets
    a parallel "<header> (display)" column carrying the rounded strings.
    """
    dual = policy.totals_source == "rounded_cells"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")

    header_row: list[str] = []
    for spec in table.columns:
        header_row.append(spec.header)
        if dual and spec.kind in ("percent", "ratio", "log"):
            header_row.append(f"{spec.header} (display)")
    writer.writerow(header_row)

    def raw(value: CellValue, spec: ColumnSpec) -> str:
        if value is None:
            return ""
        if spec.kind == "count":
            return str(int(value))
        if spec.kind in ("year", "label"):
            return str(value)
        return repr(float(value))

    all_rows = list(table.rows) + ([table.footer] if table.footer is not None else [])
    for row in all_rows:
        out: list[str] = []
        for value, spec in zip(row, table.columns):
            out.append(raw(value, spec))
            if dual and spec.kind in ("percent", "ratio", "log"):
                out.append(_cell_display(value, spec, policy))
        writer.writerow(out)
    return buf.getvalue()


def _json_cell(value: CellValue, spec: ColumnSpec, policy: DisplayPolicy) -> object:
    if spec.kind in ("year", "label"):
        return value
    return {"value": value, "display": _cell_display(value, spec, policy)}


def _render_json(table: ReportTable, policy: DisplayPolicy) -> str:
    return json.dumps(table_as_json_obj(table, policy), indent=2) + "\n"


def table_as_json_obj(table: ReportTable, policy: DisplayPolicy) -> dict:
    """JSON object form: numeric cells carry both full-precision value
    and display string; key order follows column declaration order."""
    obj: dict = {
        "title": table.title,
        "columns": [
            {"header": c.header, "kind": c.kind, "decimals": c.decimals} for c in table.columns
        ],
        "rows": [
            [_json_cell(v, c, policy) for v, c in zip(row, table.columns)] for row in table.rows
        ],
    }
    if table.footer is not None:
        obj["footer"] = [_json_cell(v, c, policy) for v, c in zip(table.footer, table.columns)]
    if table.notes:
        obj["notes"] = list(table.notes)
    return obj


def _render_markdown(table: ReportTable, policy: DisplayPolicy) -> str:
    headers, grid = _display_grid(table, policy)
    lines = [f"### {table.title}", ""]
    lines.append("| " + " | ".join(headers) + " |")
    aligns = ["---" if c.kind == "label" else "---:" for c in table.columns]
    lines.append("| " + " | ".join(aligns) + " |")
    for row in grid:
        lines.append("| " + " | ".join(row) + " |")
    for note in table.notes:
        lines.append(f"*{note}*")
    return "\n".join(lines) + "\n"
