"""Machine-readable report documents.

Every value that feeds a pass/fail verdict is serialized with its
provenance: exact rationals as "p/q" strings, numeric estimates as floats
together with their tolerances.  Documents are deterministic: keys are
sorted and no timing is included unless explicitly requested.
"""

from __future__ import annotations

import dataclasses
import json
import math
from fractions import Fraction

SCHEMA_VERSION = "bsd2-report/1"


def jsonable(obj):
    """Recursively convert toolkit values into JSON-safe structures."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        d = {}
        for f in dataclasses.fields(obj):
            if f.name in ("space", "values", "symbol_values", "rep", "p1"):
                continue  # large internal state, not report material
            d[f.name] = jsonable(getattr(obj, f.name))
        d["_type"] = type(obj).__name__
        return d
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    try:  # numpy scalars, mpmath mpf
        return float(obj)
    except Exception:
        return repr(obj)


def document(command: str, config, items, summary=None, timing=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config.as_dict(),
        "items": [jsonable(x) for x in items],
    }
    if summary is not None:
        doc["summary"] = jsonable(summary)
    if timing is not None:
        doc["timing_seconds"] = round(timing, 3)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def dump_lines(doc: dict) -> str:
    """Campaign format: header, one line per item, summary line."""
    head = {k: v for k, v in doc.items() if k != "items"}
    lines = [json.dumps({"header": head}, sort_keys=True, separators=(",", ":"))]
    for item in doc["items"]:
        lines.append(json.dumps(item, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines)


def summarize_statuses(items) -> dict:
    out = {"verified": 0, "mismatch": 0, "undecided": 0}
    for item in items:
        status = getattr(item, "status", None) or (
            item.get("status") if isinstance(item, dict) else None
        )
        if status in out:
            out[status] += 1
    return out
