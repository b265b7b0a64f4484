"""
Text and CSV rendering of per-prime residues, rational tables and reports.
"""

import io
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence

import pandas as pd

from app.services.modular import Residue


def format_fraction(q: Any) -> str:
    """Rationals as ``num/den``; integers without a denominator."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cell(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, Residue):
        return str(value)
    if isinstance(value, tuple):
        return "(" + ",".join(str(v) for v in value) + ")"
    if value is None:
        return ""
    return str(value)


def format_as_ascii_table(data: List[Dict[str, Any]], max_width: int = 24, max_rows: int = 200) -> str:
    """
    Format rows as an ASCII table with borders.

    Args:
        data: List of dictionaries to format
        max_width: Maximum width for each column
        max_rows: Maximum number of rows to display

    Returns:
        ASCII formatted table string
    """
    if not data:
        return "No rows"

    headers = list(data[0].keys())
    display_data = data[:max_rows]
    truncated = len(data) > max_rows

    def clip(value: Any) -> str:
        text = format_cell(value)
        if len(text) > max_width:
            text = text[:max_width - 3] + '...'
        return text

    col_widths = {}
    for header in headers:
        col_widths[header] = min(len(str(header)), max_width)
        for row in display_data:
            col_widths[header] = max(col_widths[header], len(clip(row.get(header, ''))))

    separator = '+' + ''.join('-' * (col_widths[h] + 2) + '+' for h in headers)
    header_row = '|' + ''.join(f' {str(h)[:col_widths[h]]:<{col_widths[h]}} |' for h in headers)

    data_rows = []
    for row in display_data:
        data_rows.append('|' + ''.join(f' {clip(row.get(h, "")):<{col_widths[h]}} |' for h in headers))

    table_lines = [separator, header_row, separator]
    table_lines.extend(data_rows)
    table_lines.append(separator)

    if truncated:
        table_lines.append(f"... {len(data) - max_rows} more rows ...")

    table_lines.append(f"Total: {len(data)} rows")

    return '\n'.join(table_lines)


def to_csv(rows: Sequence[Mapping[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """
    CSV with RFC-style quoting and ``\\n`` line endings; rationals as ``num/den``.
    An empty selection yields the header line only.
    """
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    frame = pd.DataFrame([{c: format_cell(row.get(c)) for c in columns} for row in rows], columns=list(columns))
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def residue_rows(values: Mapping[str, Any], window: Sequence[int]) -> List[Dict[str, Any]]:
    """
    One row per prime with a column per labelled ``AnValue``; skipped primes
    show their reason.
    """
    rows = []
    for p in window:
        row: Dict[str, Any] = {"p": p}
        for label, value in values.items():
            if p in value.entries:
                row[label] = value.residue(p)
            else:
                row[label] = f"skip: {value.skipped.get(p, 'not computed')}"
        rows.append(row)
    return rows


def report_rows(cases: Sequence[Any]) -> List[Dict[str, Any]]:
    """Flatten case reports for CSV or text output."""
    return [{
        "case": case.case,
        "theorem_id": case.theorem_id,
        "side": case.side,
        "n": case.n,
        "primes_compared": case.primes_compared,
        "skipped": len(case.skipped),
        "status": case.status.value,
        "max_abs_error": case.max_abs_error,
        "detail": case.detail,
    } for case in cases]
