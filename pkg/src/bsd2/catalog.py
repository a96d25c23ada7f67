"""The built-in curve catalog and the text input formats.

Catalog file format: one curve per line, "label a1 a2 a3 a4 a6"; lines
starting with # are comments.  Curves can also be given directly as five
integers.
"""

from __future__ import annotations

import importlib.resources
import re

from .curves import CurveModel

_LABEL_RE = re.compile(r"^[0-9]+[A-Za-z]+[0-9]*$")


def load_catalog(path: str | None = None) -> dict[str, CurveModel]:
    if path is None:
        text = (
            importlib.resources.files("bsd2").joinpath("data/catalog.txt").read_text()
        )
    else:
        with open(path) as fh:
            text = fh.read()
    out: dict[str, CurveModel] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 6:
            raise ValueError(f"bad catalog line: {line!r}")
        label, *ai = parts
        out[label.upper()] = CurveModel(*(int(a) for a in ai))
    return out


def parse_curve(spec: str, catalog_path: str | None = None) -> tuple[str, CurveModel]:
    """Parse a label ("14A1") or a coefficient tuple ("[1,0,1,4,-6]" or
    "1 0 1 4 -6"); returns (display label, curve)."""
    spec = spec.strip()
    if _LABEL_RE.match(spec):
        cat = load_catalog(catalog_path)
        label = spec.upper()
        if label not in cat:
            raise KeyError(f"unknown curve label {spec!r}")
        return label, cat[label]
    cleaned = spec.strip("[]() ").replace(",", " ")
    parts = cleaned.split()
    if len(parts) != 5:
        raise ValueError(f"cannot parse curve spec {spec!r}")
    ai = tuple(int(p) for p in parts)
    return str(list(ai)), CurveModel(*ai)
