"""
Text and CSV renderers for ladder reports and example tables.

Used by main.py
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Dict, List, Sequence

from models.family import LadderReport
from utils.storage import encode_rational, encode_rationals

LADDER_HEADER = ["n", "d", "delta_exact", "richardson", "predicted", "abs_error"]
APPROX_COLUMN = "richardson_approx"
APPROX_DIGITS = 12


def approx(value: Fraction) -> str:
    """Decimal rendering for display only."""
    return f"{float(value):.{APPROX_DIGITS}g}"


def sequence_payload(values: Sequence[Fraction], with_approx: bool = False) -> dict:
    out = {"values": encode_rationals(values)}
    if with_approx:
        out["approx"] = [approx(v) for v in values]
    return out


# -----------------------------
# Ladders
# -----------------------------
def ladder_header(with_approx: bool = False) -> List[str]:
    return LADDER_HEADER + ([APPROX_COLUMN] if with_approx else [])


def ladder_rows(reports: Sequence[LadderReport], with_approx: bool = False) -> List[list]:
    rows = []
    for report in reports:
        for k, row in enumerate(report.rows()):
            if with_approx:
                row = row + ["" if k == 0 else approx(report.steps[k - 1])]
            rows.append(row)
    return rows


def csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def ladder_payload(label: str, reports: Sequence[LadderReport], with_approx: bool = False) -> dict:
    items = []
    for report in reports:
        item = report.to_dict()
        if with_approx:
            item["approx"] = {"richardson": approx(report.richardson)}
            if report.abs_error is not None:
                item["approx"]["abs_error"] = approx(report.abs_error)
        items.append(item)
    return {"family": label, "reports": items}


# -----------------------------
# Example tables
# -----------------------------
def _fmt_sequence(values: Sequence[Fraction]) -> str:
    return "(" + ", ".join(encode_rational(v) for v in values) + ")"


def render_examples_text(tables: Dict[str, Dict[str, Sequence[Fraction]]]) -> str:
    """
    tables = {
        "Hermite": {"h": (...), "m'": (...)},
        ...
    }
    """
    lines = ["Example tables", "==============", ""]
    for title, rows in tables.items():
        lines.append(f"--- {title} ---")
        width = max((len(name) for name in rows), default=0)
        for name, values in rows.items():
            lines.append(f"{name.ljust(width)} : {_fmt_sequence(values)}")
        lines.append("")
    return "\n".join(lines)


def examples_payload(tables: Dict[str, Dict[str, Sequence[Fraction]]], with_approx: bool = False) -> dict:
    return {
        title: {name: sequence_payload(values, with_approx) for name, values in rows.items()}
        for title, rows in tables.items()
    }
