import json
import math

import numpy as np
import pytest

from ksurf.ambient import Space
from ksurf.io import csv_text, dumps_json, fmt, obj_text, write_csv, write_json
from ksurf.rotational import RotationalSphere
from ksurf.sections import triangulate
from ksurf.surface import horizontal_slice


def test_fmt_round_trips_doubles():
    for x in (0.1, 1 / 3, math.pi, 1e-300, -2.5e17, 62.677889751389000474):
        assert float(fmt(x)) == x
    assert fmt(1.0) == "1"


def test_json_cleans_numpy_and_nonfinite():
    text = dumps_json({"a": np.float64(0.5), "b": np.array([1, 2]), "c": float("nan"),
                       "d": np.bool_(True), "e": (np.int64(3), math.inf)})
    assert json.loads(text) == {"a": 0.5, "b": [1, 2], "c": None, "d": True, "e": [3, None]}
    assert text.endswith("\n")


def test_csv_text():
    text = csv_text(("K", "epsilon", "c_K"), [(1.0, -1, 0.1)], trailer="monotone_decreasing: true")
    assert text == "K,epsilon,c_K\n1,-1,0.10000000000000001\n# monotone_decreasing: true\n"


def test_writers_use_lf(tmp_path):
    write_csv(tmp_path / "a.csv", ("x",), [(1.5,)])
    write_json(tmp_path / "a.json", {"x": 1})
    for name in ("a.csv", "a.json"):
        assert b"\r" not in (tmp_path / name).read_bytes()


def test_obj_ambient_and_disk():
    mesh = triangulate(RotationalSphere(1.0, 0.0, Space.H2R).surface(), 8, 8)
    amb = obj_text(mesh, {"K": 1.0}, "ambient")
    disk = obj_text(mesh, {"K": 1.0}, "disk")
    for text in (amb, disk):
        lines = text.splitlines()
        assert lines[0].startswith("# ksurf ")
        assert "# K: 1.0" in lines
        assert sum(l.startswith("v ") for l in lines) == mesh.n_vertices
        assert sum(l.startswith("f ") for l in lines) == len(mesh.faces)
    assert sum(l.startswith("# t ") for l in amb.splitlines()) == mesh.n_vertices
    # disk vertices lie inside the unit disk
    for line in disk.splitlines():
        if line.startswith("v "):
            x, y, _ = map(float, line.split()[1:])
            assert x * x + y * y < 1.0
    # face indices are 1-based and in range
    idx = [int(i) for l in amb.splitlines() if l.startswith("f ") for i in l.split()[1:]]
    assert min(idx) == 1 and max(idx) == mesh.n_vertices


def test_obj_rejects_bad_chart():
    mesh = triangulate(horizontal_slice(Space.S2R), 8, 8)
    with pytest.raises(ValueError):
        obj_text(mesh, {}, "disk")
    with pytest.raises(ValueError):
        obj_text(mesh, {}, "klein")
