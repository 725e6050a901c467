"""Plane sections of sampled surfaces and their discrete convexity.

Planes are level sets of a function that is linear in ambient coordinates
(after dividing by x1), so hyperbolic and spherical geodesic planes become
straight lines in the Klein / gnomonic chart and convexity reduces to
Euclidean convexity there.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np
from scipy.optimize import brentq

from .ambient import Space, VerticalPlane
from .errors import InsufficientResolutionError, TransversalityWarning

TANGENCY_TOL = 1e-10
MIN_SPACING = 1e-9
MIN_TURN = 1e-7


# meshing -------------------------------------------------------------------

@dataclass
class Mesh:
    tag: Space
    params: np.ndarray
    points: np.ndarray
    faces: np.ndarray
    pole_vertices: frozenset
    surface: object = None
    v_period: float = 0.0

    @property
    def n_vertices(self):
        return len(self.points)


def _mesh_u(surface, n_u):
    sampler = surface.extras.get("mesh_u")
    if sampler is not None:
        return np.asarray(sampler(n_u), dtype=float)
    (u0, u1), _ = surface.domain
    if surface.poles:
        return u0 + (u1 - u0) * np.arange(1, n_u + 1) / (n_u + 1)
    return np.linspace(u0, u1, n_u)


def _mesh_v(surface, n_v):
    _, (v0, v1) = surface.domain
    if surface.periodic_v:
        return v0 + (v1 - v0) * np.arange(n_v) / n_v
    return np.linspace(v0, v1, n_v)


def triangulate(surface, n_u, n_v):
    """Triangle mesh of the chart; closes periodic seams and pole fans."""
    us = _mesh_u(surface, n_u)
    vs = _mesh_v(surface, n_v)
    sphere = surface.extras.get("sphere")
    # the rotational sphere shares one quadrature pass across each ring
    row_h = sphere.heights(us) if sphere is not None else [None] * len(us)
    params, points = [], []
    for u, h in zip(us, row_h):
        for v in vs:
            params.append((u, v))
            points.append(surface.position(u, v) if h is None else sphere.point(u, v, h))
    faces = []
    nv = len(vs)
    jmax = nv if surface.periodic_v else nv - 1
    for i in range(len(us) - 1):
        for j in range(jmax):
            a = i * nv + j
            b = (i + 1) * nv + j
            c = (i + 1) * nv + (j + 1) % nv
            d = i * nv + (j + 1) % nv
            faces.append((a, b, c))
            faces.append((a, c, d))
    poles = set()
    for pole_u in surface.poles:
        idx = len(points)
        params.append((pole_u, 0.0))
        points.append(surface.position(pole_u, 0.0))
        poles.add(idx)
        row = 0 if pole_u < us[0] else len(us) - 1
        for j in range(jmax):
            a = row * nv + j
            b = row * nv + (j + 1) % nv
            faces.append((idx, b, a) if row == 0 else (idx, a, b))
    return Mesh(surface.tag, np.array(params), np.array(points), np.array(faces, dtype=int),
                frozenset(poles), surface, (vs[-1] - vs[0]) * nv / (nv - 1) if surface.periodic_v else 0.0)


# planes --------------------------------------------------------------------

class HorizontalPlane:
    """The slice M2 x {t}; intrinsic coordinates are Klein (H2) / gnomonic (S2)."""

    kind = "horizontal"

    def __init__(self, t):
        self.t = float(t)

    def level(self, x):
        return np.asarray(x)[..., 3] - self.t

    def coords(self, x):
        return np.array([x[1] / x[0], x[2] / x[0]])

    def describe(self):
        return {"kind": self.kind, "t": self.t}


class VerticalSectionPlane:
    """gamma x R in H2xR; intrinsic coordinates (arc length on gamma, height)."""

    kind = "vertical"

    def __init__(self, plane):
        self.plane = plane if isinstance(plane, VerticalPlane) else VerticalPlane(plane)
        self.geodesic = self.plane.geodesic

    def level(self, x):
        return self.plane.level(x)

    def coords(self, x):
        return np.array([self.geodesic.arc_length_of(x), x[3]])

    def describe(self):
        return {"kind": self.kind, "theta_minus": self.geodesic.theta_minus,
                "theta_plus": self.geodesic.theta_plus}


class GreatCirclePlane:
    """Vertical plane of S2xR over the great circle through (1,0,0) at angle a."""

    kind = "vertical"

    def __init__(self, angle):
        self.angle = float(angle)
        self.d = np.array([0.0, math.cos(angle), math.sin(angle)])
        self.n = np.array([0.0, -math.sin(angle), math.cos(angle)])

    def level(self, x):
        x = np.asarray(x)
        return x[..., 1] * self.n[1] + x[..., 2] * self.n[2]

    def coords(self, x):
        return np.array([math.atan2(x[1] * self.d[1] + x[2] * self.d[2], x[0]), x[3]])

    def describe(self):
        return {"kind": self.kind, "great_circle_angle": self.angle}


def as_section_plane(plane):
    if isinstance(plane, (HorizontalPlane, VerticalSectionPlane, GreatCirclePlane)):
        return plane
    if isinstance(plane, VerticalPlane):
        return VerticalSectionPlane(plane)
    raise TypeError(f"not a section plane: {plane!r}")


# intersection --------------------------------------------------------------

@dataclass
class PlaneSection:
    plane: object
    polyline: np.ndarray
    ambient: np.ndarray
    params: np.ndarray
    closed: bool

    @property
    def plane_kind(self):
        return self.plane.kind

    def arc_parameter(self):
        seg = np.linalg.norm(np.diff(self.polyline, axis=0), axis=1)
        return np.concatenate([[0.0], np.cumsum(seg)])

    def rows(self):
        s = self.arc_parameter()
        return [(float(a), float(p[0]), float(p[1])) for a, p in zip(s, self.polyline)]


def _edge_point(mesh, plane, a, b, fa, fb):
    pa = mesh.params[a].copy()
    pb = mesh.params[b].copy()
    if a in mesh.pole_vertices:
        pa[1] = pb[1]
    if b in mesh.pole_vertices:
        pb[1] = pa[1]
    if mesh.v_period and abs(pb[1] - pa[1]) > 0.5 * mesh.v_period:
        # edge across the periodic seam: walk the short way round
        pb[1] += math.copysign(mesh.v_period, pa[1] - pb[1])
    surf = mesh.surface

    def phi(s):
        p = pa + s * (pb - pa)
        return float(plane.level(surf.position(p[0], p[1])))

    f0, f1 = phi(0.0), phi(1.0)
    if f0 == 0.0:
        s = 0.0
    elif f1 == 0.0:
        s = 1.0
    elif (f0 > 0) == (f1 > 0):
        # chart and stored vertex values disagree only through rounding
        s = fa / (fa - fb)
    else:
        s = brentq(phi, 0.0, 1.0, xtol=1e-15, rtol=1e-15, maxiter=200)
    p = pa + s * (pb - pa)
    return p, surf.position(p[0], p[1])


def intersect(mesh, plane, tol=TANGENCY_TOL):
    """Connected polylines of mesh ∩ plane, ordered along each curve."""
    plane = as_section_plane(plane)
    vals = np.asarray(plane.level(mesh.points), dtype=float)
    pos = vals >= 0.0
    crossings = {}
    adjacency = {}

    def key_for(a, b):
        if vals[a] == 0.0:
            return ("v", a)
        if vals[b] == 0.0:
            return ("v", b)
        return ("e", min(a, b), max(a, b))

    fv = vals[mesh.faces]
    fp = pos[mesh.faces]
    tangent_faces = np.flatnonzero(np.all(np.abs(fv) < tol, axis=1)).tolist()
    mixed = np.flatnonzero(fp.any(axis=1) & ~fp.all(axis=1))
    tangent = set(tangent_faces)
    for fi in mixed:
        if fi in tangent:
            continue
        face = mesh.faces[fi]
        keys = []
        for i in range(3):
            a, b = int(face[i]), int(face[(i + 1) % 3])
            if pos[a] == pos[b]:
                continue
            k = key_for(a, b)
            if k not in crossings:
                crossings[k] = _edge_point(mesh, plane, a, b, vals[a], vals[b])
            keys.append(k)
        if len(keys) == 2 and keys[0] != keys[1]:
            adjacency.setdefault(keys[0], []).append(keys[1])
            adjacency.setdefault(keys[1], []).append(keys[0])
    if tangent_faces:
        warnings.warn(TransversalityWarning(f"plane touches {len(tangent_faces)} faces tangentially: "
                                            f"{tangent_faces[:10]}"), stacklevel=2)
    sections = []
    for chain, closed in _chains(adjacency):
        params = np.array([crossings[k][0] for k in chain])
        amb = np.array([crossings[k][1] for k in chain])
        poly = np.array([plane.coords(x) for x in amb])
        poly, amb, params = _dedupe(poly, amb, params, closed)
        if len(poly) >= 2:
            sections.append(PlaneSection(plane, poly, amb, params, closed))
    return sections


def _chains(adjacency):
    seen = set()
    out = []
    # open chains start at endpoints, then what remains are cycles
    starts = sorted((k for k, nb in adjacency.items() if len(nb) == 1), key=repr)
    starts += sorted((k for k in adjacency if len(adjacency[k]) != 1), key=repr)
    for start in starts:
        if start in seen:
            continue
        chain = [start]
        seen.add(start)
        prev, cur = None, start
        closed = False
        while True:
            nxt = [n for n in adjacency[cur] if n != prev and n not in seen]
            if not nxt:
                closed = len(chain) > 2 and start in adjacency[cur] and cur != start
                break
            prev, cur = cur, nxt[0]
            chain.append(cur)
            seen.add(cur)
        out.append((chain, closed))
    return out


def _dedupe(poly, amb, params, closed):
    keep = [0]
    for i in range(1, len(poly)):
        if np.linalg.norm(poly[i] - poly[keep[-1]]) > MIN_SPACING:
            keep.append(i)
    if closed and len(keep) > 1 and np.linalg.norm(poly[keep[-1]] - poly[keep[0]]) <= MIN_SPACING:
        keep.pop()
    return poly[keep], amb[keep], params[keep]


# convexity -----------------------------------------------------------------

@dataclass
class ConvexityReport:
    sign: int
    min_abs_angle: float
    total_turning: float
    n_vertices: int
    passed: bool

    def to_dict(self):
        return {"sign": self.sign, "min_abs_angle": self.min_abs_angle,
                "total_turning": self.total_turning, "n_vertices": self.n_vertices,
                "pass": self.passed}


def turning_angles(poly, closed):
    p = np.asarray(poly)
    if closed:
        d_in = p - np.roll(p, 1, axis=0)
        d_out = np.roll(p, -1, axis=0) - p
    else:
        d_in = p[1:-1] - p[:-2]
        d_out = p[2:] - p[1:-1]
    cross = d_in[:, 0] * d_out[:, 1] - d_in[:, 1] * d_out[:, 0]
    dot = np.sum(d_in * d_out, axis=1)
    return np.arctan2(cross, dot)


def convexity_check(sec, min_turn=MIN_TURN):
    """Strict discrete convexity: every turning angle has one sign, |angle| > min_turn.

    Closed sections must also turn exactly once (total turning 2 pi).
    """
    if len(sec.polyline) < 8:
        raise InsufficientResolutionError(f"section has {len(sec.polyline)} vertices, need >= 8")
    ang = turning_angles(sec.polyline, sec.closed)
    sign = int(np.sign(ang[np.argmax(np.abs(ang))]))
    same = bool(np.all(np.sign(ang) == sign))
    min_abs = float(np.min(np.abs(ang)))
    total = float(np.sum(ang))
    passed = same and min_abs > min_turn
    if sec.closed:
        passed = passed and abs(abs(total) - 2 * math.pi) < 1e-6
    return ConvexityReport(sign, min_abs, total, len(ang), passed)


def has_vertical_ray(sec):
    """Whether the convex region bounded by an open vertical section contains a
    vertical half-line (both ends of the curve head the same vertical way)."""
    if sec.plane_kind != "vertical" or sec.closed or len(sec.polyline) < 3:
        return False
    p = sec.polyline
    start_dir = p[0, 1] - p[1, 1]
    end_dir = p[-1, 1] - p[-2, 1]
    return bool(start_dir * end_dir > 0)
