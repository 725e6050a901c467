"""Deterministic CSV / JSON / OBJ writers.

CSV uses LF line endings and 17 significant digits so every double
round-trips.  JSON is UTF-8 with NaN/inf mapped to null.  OBJ vertices are
either ambient base coordinates (with the height as a ``# t`` comment after
each vertex) or, for H2xR, Poincare disk x height.
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__


def fmt(x):
    return format(float(x), ".17g")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    return obj


def dumps_json(obj):
    return json.dumps(_clean(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps_json(obj), encoding="utf-8", newline="\n")


def _cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return fmt(v)


def csv_text(header, rows, trailer=None):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_cell(v) for v in row] for row in rows)
    if trailer:
        buf.write("# " + trailer + "\n")
    return buf.getvalue()


def write_csv(path, header, rows, trailer=None):
    Path(path).write_text(csv_text(header, rows, trailer), encoding="utf-8", newline="\n")


def obj_text(mesh, header, chart="ambient"):
    """OBJ for a ``sections.Mesh``; ``header`` is a dict of provenance fields."""
    lines = [f"# ksurf {__version__}"]
    for key, value in header.items():
        lines.append(f"# {key}: {value}")
    lines.append(f"# chart: {chart}")
    if chart == "disk":
        if mesh.tag.name != "H2R":
            raise ValueError("the disk chart exists only for H2xR")
        for x in mesh.points:
            z = x[1:3] / (1.0 + x[0])
            lines.append(f"v {fmt(z[0])} {fmt(z[1])} {fmt(x[3])}")
    elif chart == "ambient":
        for x in mesh.points:
            lines.append(f"v {fmt(x[0])} {fmt(x[1])} {fmt(x[2])}")
            lines.append(f"# t {fmt(x[3])}")
    else:
        raise ValueError(f"unknown chart {chart!r}")
    for a, b, c in mesh.faces:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def write_obj(path, mesh, header, chart="ambient"):
    Path(path).write_text(obj_text(mesh, header, chart), encoding="utf-8", newline="\n")


def section_csv_text(section):
    """A plane section as CSV ``s,x1,x2`` (polyline arc parameter, plane coordinates)."""
    return csv_text(("s", "x1", "x2"), section.rows())
