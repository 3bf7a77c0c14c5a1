"""Formatting and table helpers shared by reports and the CLI."""

from __future__ import annotations

import csv
import math
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, Tuple

SIGNIFICANT_DIGITS = 9


def format_number(value: float) -> str:
    """Format a number with 9 significant digits.

    Infinities are spelled ``inf`` / ``-inf``; NaN is ``nan``.

    Args:
        value: Number to format

    Returns:
        Formatted string
    """
    x = float(value)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = f"{x:.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def format_value(value: Any) -> str:
    """Format a report field for a ``key=value`` line."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, str):
        return value
    return format_number(value)


def to_key_value_lines(fields: Dict[str, Any]) -> List[str]:
    """Render a flat mapping as ``key=value`` lines in insertion order."""
    return [f"{key}={format_value(val)}" for key, val in fields.items()]


def parse_key_value_lines(lines: Iterable[str]) -> Dict[str, str]:
    """Parse ``key=value`` lines back into a mapping of strings."""
    parsed: Dict[str, str] = {}
    for line in lines:
        line = line.strip()
        if not line or "=" not in line:
            continue
        key, _, value = line.partition("=")
        parsed[key.strip()] = value.strip()
    return parsed


def write_table(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
    """Write a comma-separated table with a header row.

    Floats are written with :func:`format_number`, everything else via
    :func:`format_value`. Lines end with ``\\n`` on every platform so that
    identical inputs give byte-identical files.

    Returns:
        Number of data rows written
    """
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    return count


def read_table(path: str) -> Tuple[List[str], List[Dict[str, str]]]:
    """Read a comma-separated table with a header row.

    Returns:
        (header, rows) where each row maps column name to raw string
    """
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        header = list(reader.fieldnames or [])
        rows = [dict(r) for r in reader]
    return header, rows
