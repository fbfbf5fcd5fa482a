"""
Export utilities for verification reports.
"""

import csv
import json
import os
from datetime import date
from enum import Enum
from fractions import Fraction

import numpy as np

from ontoscope.analysis.overlap_table import CSV_HEADER


class ReportEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, Fraction):
            return int(obj) if obj.denominator == 1 else str(obj)
        if isinstance(obj, Enum):
            return obj.value
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return super().default(obj)


def export_results_json(results, indent=2):
    """Export a report as a formatted JSON string."""
    return json.dumps(results, indent=indent, cls=ReportEncoder)


def write_json(results, path):
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(export_results_json(results))
        fh.write("\n")
    return path


def overlap_rows_to_csv_rows(rows):
    """Header plus one row per overlap record."""
    return [list(CSV_HEADER)] + [row.as_row() for row in rows]


def write_csv(rows, path):
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh).writerows(rows)
    return path


def build_summary_report(command, payload, run_config=None, model=None):
    """Wrap a command result with the run context it was produced under."""
    summary = {
        "report": command,
        "date_generated": date.today().isoformat(),
    }
    if run_config is not None:
        summary["config"] = run_config.to_dict()
    if model is not None:
        summary["model"] = {
            "kind": model.metadata.get("kind", ""),
            "space_kind": model.space.kind,
            "size": model.space.size,
            "preparations": len(model.preparations),
            "measurements": len(model.measurements),
            "born_invalid": bool(model.metadata.get("born_invalid", False)),
        }
    summary["result"] = payload
    return summary


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
