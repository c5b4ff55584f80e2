"""CSV and JSON rendering of result tables with fixed, locale-independent number formatting."""

import csv
import io
import json
import math
from pathlib import Path
from typing import Literal, Optional, Union

from config.settings import settings
from schemas.sweeps import ResultTable

OutputFormat = Literal["csv", "json"]


def format_number(value: Union[float, str], digits: Optional[int] = None) -> str:
    """Format a number with the configured significant digits; strings pass through."""
    if isinstance(value, str):
        return value
    digits = digits or settings.output_significant_digits
    return format(float(value), f".{digits}g")


def _json_value(value: Union[float, str], digits: int):
    if isinstance(value, str):
        return value
    if not math.isfinite(value):
        return None
    return float(format_number(value, digits))


def table_to_csv(table: ResultTable, digits: Optional[int] = None) -> str:
    """One header row followed by one line per row, '\\n' line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_number(value, digits) for value in row])
    return buffer.getvalue()


def table_to_json(table: ResultTable, digits: Optional[int] = None) -> str:
    """Array of row objects keyed by column name."""
    digits = digits or settings.output_significant_digits
    rows = [
        {column: _json_value(value, digits) for column, value in zip(table.columns, row)}
        for row in table.rows
    ]
    return json.dumps(rows, indent=2) + "\n"


def render_table(table: ResultTable, fmt: OutputFormat = "csv", digits: Optional[int] = None) -> str:
    """Render a table in the requested format."""
    if fmt == "csv":
        return table_to_csv(table, digits)
    if fmt == "json":
        return table_to_json(table, digits)
    raise ValueError(f"unknown output format: {fmt}")


def write_table(table: ResultTable, path: Path, fmt: OutputFormat = "csv", digits: Optional[int] = None) -> Path:
    """
    Write a table as UTF-8 text.

    Args:
        table: Result table
        path: Output file; parent directories are created
        fmt: "csv" or "json"
        digits: Significant digits (default from settings)

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(render_table(table, fmt, digits))
    return path
