"""CSV and plain-text rendering of reports.

Numeric columns are written twice: exactly as ``p/q`` and as a rounded
decimal in a ``<name>_dec`` column.  Output depends only on the data and the
precision, never on locale or platform.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import BOTTOM, format_scalar

DEFAULT_PRECISION = 6


@dataclass(frozen=True)
class Table:
    columns: tuple
    rows: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row {row} does not match columns {self.columns}")


def format_decimal(x, precision: int = DEFAULT_PRECISION) -> str:
    """Round half to even at ``precision`` places, using exact arithmetic."""
    if x is BOTTOM:
        return "-inf"
    if isinstance(x, float):
        x = Fraction(x)
    scaled = round(Fraction(x) * 10**precision)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def _is_numeric(v) -> bool:
    return v is BOTTOM or (isinstance(v, (int, Fraction, float)) and not isinstance(v, bool))


def format_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is BOTTOM or isinstance(v, (int, Fraction)):
        return format_scalar(Fraction(v) if isinstance(v, int) else v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(format_cell(x) for x in v) + ")"
    return str(v)


def emit_csv(table: Table | None, precision: int = DEFAULT_PRECISION) -> str:
    """Exact and decimal columns for numeric data; an empty table gives its header only."""
    if table is None:
        return ""
    numeric = [bool(table.rows) and all(_is_numeric(row[i]) for row in table.rows)
               for i in range(len(table.columns))]
    header = []
    for name, num in zip(table.columns, numeric):
        header.append(name)
        if num:
            header.append(f"{name}_dec")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in table.rows:
        out = []
        for v, num in zip(row, numeric):
            out.append(format_cell(v))
            if num:
                out.append(format_decimal(v, precision))
        writer.writerow(out)
    return buf.getvalue()


def render_text(columns: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned fixed-width table."""
    cells = [list(columns)] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = []
    for k, r in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
