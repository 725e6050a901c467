"""The acceptance suite: one {name, value, bound, pass} entry per criterion.

Each criterion runs a fixed scope (the K values and surfaces it names) and
additionally the configured (K, space) sphere where that makes sense, so a
``verify`` run at any valid configuration still covers the fixed cases.
"""

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from .ambient import Space, disk_conformal_factor, parabolic_map
from .errors import GeometryError, InsufficientResolutionError, TransversalityWarning
from .estimates import c_K, chi_of_nu, g_of_nu, radial_laplacians, verify_sphere_height
from .formq import conformality_sweep, scaled_height
from .helicoidal import PROFILES, DEFAULT_TEST_PLANES, build_helicoidal, curvature_formula
from .rotational import RotationalSphere, closed_form_principal_curvatures
from .sections import (GreatCirclePlane, HorizontalPlane, VerticalSectionPlane, convexity_check,
                       intersect, triangulate)
from .surface import fundamental_forms, gauss_equation_check, horizontal_slice, vertical_plane_surface
from .ambient import Geodesic

DEFAULT_SEED = 20240611
FIXED_KS = (0.1, 1.0, 10.0)

BOUNDS = {
    "principal_curvature_product": 1e-8,
    "numeric_vs_target_curvature": 1e-4,
    "gauss_equation": 1e-3,
    "structural_identity": 1e-9,
    "height_estimates": 0.0,
    "special_values": 1e-12,
    "q_vanishing": 1e-6,
    "q_control_floor": 1e-4,
    "pair_curvature": 1e-8,
    "radial_laplacians": 1e-3,
    "isometry_group_law": 1e-10,
    "isometry_metric": 1e-8,
    "orbit_height": 1e-12,
    "section_convexity": 0.0,
    "reproducibility": 0.0,
}

# helicoid windows kept moderate so hyperboloid coordinates stay O(10)
HELICOID_Y = (-1.5, 1.5)
HELICOID_T = (-2.0, 2.0)


@dataclass
class VerifyConfig:
    K: float = 1.0
    space: Space = Space.H2R
    seed: int = DEFAULT_SEED
    grid: int = 32
    mesh: int = 64
    tolerances: dict = field(default_factory=dict)

    def bound(self, name):
        return float(self.tolerances.get(name, BOUNDS[name]))

    def describe(self):
        return {"K": self.K, "space": self.space.name.lower(), "seed": self.seed,
                "grid": self.grid, "mesh": self.mesh,
                "tolerances": {k: self.tolerances[k] for k in sorted(self.tolerances)}}


def _ks(cfg):
    return sorted(set(FIXED_KS) | {float(cfg.K)})


def _sphere_cases(cfg):
    """(K, space) pairs: K = 1 in both spaces plus the configured sphere."""
    cases = [(1.0, Space.H2R), (1.0, Space.S2R)]
    if (float(cfg.K), cfg.space) not in cases:
        cases.append((float(cfg.K), cfg.space))
    return cases


def _helicoids(n=32):
    out = []
    for name in sorted(PROFILES):
        p = PROFILES[name]()
        out.append((p, build_helicoidal(p, n, n, t_range=HELICOID_T, y_window=HELICOID_Y)))
    return out


def _builtin_surfaces(cfg):
    surfs = []
    for K, tag in _sphere_cases(cfg):
        surfs.append(RotationalSphere(K, 0.0, tag).surface())
    surfs += [s for _, s in _helicoids()]
    for tag in (Space.H2R, Space.S2R):
        surfs.append(horizontal_slice(tag, 0.25))
        surfs.append(vertical_plane_surface(tag))
    return surfs


def _grid_points(s, n):
    us, vs = s.interior_grid(n)
    return [(u, v) for u in us for v in vs]


# criteria --------------------------------------------------------------------

def principal_curvature_product(cfg):
    worst = 0.0
    for K in _ks(cfg):
        sphere = RotationalSphere(K, 0.0, Space.H2R)
        curve = sphere.curve(17)
        length = sphere.total_arc_length
        for i in range(1, 21):
            pc = closed_form_principal_curvatures(length * i / 21, curve)
            worst = max(worst, pc.product_residual)
    return worst, {"K": _ks(cfg), "samples": 20}


def numeric_vs_target_curvature(cfg):
    per = {}
    worst = 0.0
    for K, tag in _sphere_cases(cfg):
        s = RotationalSphere(K, 0.0, tag).surface().numeric_second()
        err = max(abs(fundamental_forms(s, u, v, with_intrinsic=False).K_ext - K)
                  for u, v in _grid_points(s, cfg.grid))
        per[f"sphere-{tag.name.lower()}-K{K:g}"] = err
        worst = max(worst, err)
    for p, s in _helicoids():
        s = s.numeric_second()
        err = max(abs(fundamental_forms(s, y, t, with_intrinsic=False).K_ext - curvature_formula(p, y))
                  for y, t in _grid_points(s, cfg.grid))
        per[f"helicoid-{p.name}"] = err
        worst = max(worst, err)
    return worst, per


def gauss_equation(cfg):
    per = {}
    for s in _builtin_surfaces(cfg):
        per[s.name] = max(gauss_equation_check(s, u, v, step=1e-3) for u, v in _grid_points(s, 8))
    return max(per.values()), per


def structural_identity(cfg):
    per = {}
    for s in _builtin_surfaces(cfg):
        worst = 0.0
        for u, v in _grid_points(s, 16):
            r = fundamental_forms(s, u, v, with_intrinsic=False)
            worst = max(worst, abs(r.T_norm_sq + r.nu**2 - 1.0))
        per[s.name] = worst
    return max(per.values()), per


def height_estimates(cfg):
    per = {}
    for K in _ks(cfg):
        rep = verify_sphere_height(K)
        per[f"K{K:g}"] = rep.to_dict()
    slack = min(min(d["half_slack"], d["full_slack"]) for d in per.values())
    return slack, per


def special_values(cfg):
    worst = 0.0
    for K in sorted({1.0, float(cfg.K)}):
        for eps in (-1, 1):
            for nu in (-1.0, 1.0):
                worst = max(worst, abs(g_of_nu(nu, K, eps) - eps / (2.0 * K)),
                            abs(chi_of_nu(nu, K, eps) - 1.0))
        worst = max(worst, abs(chi_of_nu(0.0, K, -1) - K * (-math.expm1(-1.0 / K))))
    return worst, {}


def q_vanishing(cfg):
    per = {}
    for K, tag in _sphere_cases(cfg):
        per[f"sphere-{tag.name.lower()}-K{K:g}"] = conformality_sweep(
            RotationalSphere(K, 0.0, tag).surface(), K, cfg.grid).max_defect
    controls = {}
    p = PROFILES["cosh"]()
    hel = build_helicoidal(p, 32, 32, t_range=HELICOID_T, y_window=HELICOID_Y)
    controls["helicoid-cosh"] = conformality_sweep(hel, None, 16, strict=False).max_defect
    for tag in (Space.H2R, Space.S2R):
        pert = scaled_height(RotationalSphere(1.0, 0.0, tag).surface(), 1.05)
        controls[f"sphere-{tag.name.lower()}-height-x1.05"] = conformality_sweep(pert, None, 16, strict=False).max_defect
    return max(per.values()), {"spheres": per, "controls": controls,
                               "control_floor": cfg.bound("q_control_floor"),
                               "controls_exceed_floor": min(controls.values()) > cfg.bound("q_control_floor")}


def pair_curvature(cfg):
    per = {}
    for K, tag in _sphere_cases(cfg):
        per[f"sphere-{tag.name.lower()}-K{K:g}"] = conformality_sweep(
            RotationalSphere(K, 0.0, tag).surface(), K, cfg.grid).max_pair_residual
    return max(per.values()), per


def radial_laplacian_check(cfg):
    per = {}
    for K in sorted({1.0, float(cfg.K)}):
        rep = radial_laplacians(K, 20, 1e-3)
        per[f"K{K:g}"] = {"h": rep.max_residual_h, "nu": rep.max_residual_nu,
                          "equator_nu": rep.equator_residual_nu, "excluded": len(rep.excluded)}
    worst = max(max(d["h"], d["nu"]) for d in per.values())
    return worst, per


def _disk_jacobian(t, x, y):
    # parabolic_map is rational, so the complex step gives exact derivatives
    h = 1e-30
    a = parabolic_map(t, complex(x, h), y)
    b = parabolic_map(t, x, complex(y, h))
    return np.array([[a[0].imag / h, b[0].imag / h], [a[1].imag / h, b[1].imag / h]])


def isometry_group(cfg):
    rng = np.random.default_rng(cfg.seed)
    law = metric = 0.0
    for _ in range(100):
        r = 0.9 * math.sqrt(rng.random())
        a = rng.uniform(0.0, 2.0 * math.pi)
        x, y = r * math.cos(a), r * math.sin(a)
        s, t = rng.uniform(-3.0, 3.0, size=2)
        composed = parabolic_map(s, *parabolic_map(t, x, y))
        direct = parabolic_map(s + t, x, y)
        law = max(law, math.hypot(composed[0] - direct[0], composed[1] - direct[1]))
        jac = _disk_jacobian(t, x, y)
        pulled = disk_conformal_factor(parabolic_map(t, x, y)) * jac.T @ jac
        metric = max(metric, float(np.max(np.abs(pulled / disk_conformal_factor((x, y)) - np.eye(2)))))
    orbit = 0.0
    for p, s in _helicoids(8):
        for y0 in rng.uniform(*HELICOID_Y, size=5):
            hs = [s.position(y0, t)[3] for t in rng.uniform(*HELICOID_T, size=10)]
            orbit = max(orbit, max(hs) - min(hs))
    details = {"group_law": law, "metric": metric, "orbit_height_spread": orbit,
               "bounds": {"group_law": cfg.bound("isometry_group_law"), "metric": cfg.bound("isometry_metric"),
                          "orbit_height": cfg.bound("orbit_height")}}
    ok = law < cfg.bound("isometry_group_law") and metric < cfg.bound("isometry_metric") \
        and orbit < cfg.bound("orbit_height")
    return law, details, ok


def _sphere_planes(sphere):
    top = sphere.h(-1.0)
    planes = [HorizontalPlane(f * top) for f in (0.1, 0.5, 0.9)]
    if sphere.tag == Space.H2R:
        rim = math.tanh(0.5 * sphere.k(0.0))
        # through the axis, and off-axis at half the equator radius
        planes.append(VerticalSectionPlane(Geodesic(0.3, 0.3 + math.pi)))
        off = 2.0 * (0.5 * rim) / (1.0 + (0.5 * rim) ** 2)  # Klein distance of the chord
        half = math.acos(off)
        planes.append(VerticalSectionPlane(Geodesic(1.1 - half, 1.1 + half)))
    else:
        planes += [GreatCirclePlane(0.3), GreatCirclePlane(1.7)]
    return planes


def _section_flags(surface, planes, n):
    mesh = triangulate(surface, n, n)
    flags = []
    for plane in planes:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", TransversalityWarning)
            secs = intersect(mesh, plane)
        if any(issubclass(w.category, TransversalityWarning) for w in caught):
            continue  # tangential contact: not a transverse section
        for sec in secs:
            try:
                flags.append(convexity_check(sec).passed)
            except InsufficientResolutionError:
                flags.append(False)
    return flags


def section_convexity(cfg):
    per = {}
    failures = 0
    cases = []
    for K, tag in _sphere_cases(cfg):
        sphere = RotationalSphere(K, 0.0, tag)
        cases.append((f"sphere-{tag.name.lower()}-K{K:g}", sphere.surface(), _sphere_planes(sphere)))
    for p, s in _helicoids():
        planes = [VerticalSectionPlane(g) for g in DEFAULT_TEST_PLANES] + [HorizontalPlane(0.5)]
        cases.append((f"helicoid-{p.name}", s, planes))
    for name, surface, planes in cases:
        coarse = _section_flags(surface, planes, cfg.mesh)
        fine = _section_flags(surface, planes, 2 * cfg.mesh)
        bad = sum(not f for f in coarse) + sum(not f for f in fine)
        stable = coarse == fine
        per[name] = {"sections": len(coarse), "failures": bad, "refinement_stable": stable}
        failures += bad + (0 if stable else 1)
    return failures, per


CRITERIA = (
    ("principal_curvature_product", principal_curvature_product),
    ("numeric_vs_target_curvature", numeric_vs_target_curvature),
    ("gauss_equation", gauss_equation),
    ("structural_identity", structural_identity),
    ("height_estimates", height_estimates),
    ("special_values", special_values),
    ("q_vanishing", q_vanishing),
    ("pair_curvature", pair_curvature),
    ("radial_laplacians", radial_laplacian_check),
    ("isometry_group", isometry_group),
    ("section_convexity", section_convexity),
)


def _entry(name, fn, cfg):
    bound_key = {"isometry_group": "isometry_group_law"}.get(name, name)
    bound = cfg.bound(bound_key)
    try:
        out = fn(cfg)
    except (GeometryError, ArithmeticError, ValueError) as exc:
        return {"name": name, "value": None, "bound": bound, "pass": False,
                "error": f"{type(exc).__name__}: {exc}"}
    value, details = out[0], out[1]
    if len(out) == 3:
        ok = out[2]
    elif name == "height_estimates":
        ok = value > bound  # slack must be strictly positive
    elif name in ("section_convexity",):
        ok = value <= bound
    elif name == "q_vanishing":
        ok = value < bound and details["controls_exceed_floor"]
    else:
        ok = value < bound
    entry = {"name": name, "value": value, "bound": bound, "pass": bool(ok)}
    if details:
        entry["details"] = details
    return entry


def run_criteria(cfg):
    return [_entry(name, fn, cfg) for name, fn in CRITERIA]


def run_verification(cfg, replay=True):
    """Full report; the last entry replays the suite and compares bytes."""
    from .io import dumps_json

    entries = run_criteria(cfg)
    if replay:
        first = dumps_json(entries)
        second = dumps_json(run_criteria(cfg))
        diff = sum(a != b for a, b in zip(first, second)) + abs(len(first) - len(second))
        entries.append({"name": "reproducibility", "value": diff, "bound": cfg.bound("reproducibility"),
                        "pass": diff == 0})
    return {
        "config": cfg.describe(),
        "seed": cfg.seed,
        "criteria": entries,
        "errors": [e["name"] for e in entries if "error" in e],
        "pass": all(e["pass"] for e in entries),
    }
