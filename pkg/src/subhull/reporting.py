"""Deterministic formatting helpers for CSV/JSON/DOT exports.

All floats are written with 12 significant digits so repeated runs produce
byte-identical files and re-ingested JSON re-serializes identically.
"""

from __future__ import annotations

import json


def format_float(x: float) -> str:
    return format(float(x), ".12g")


def round_floats(obj):
    """Recursively round floats to 12 significant digits for canonical JSON."""
    if isinstance(obj, float):
        return float(format_float(obj))
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def dumps_canonical(obj) -> str:
    return json.dumps(round_floats(obj), sort_keys=True, indent=2) + "\n"
