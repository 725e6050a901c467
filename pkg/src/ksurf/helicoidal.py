"""Helicoidal surfaces S_rho with a simple end in H2xR.

A convex profile rho(y) on the flat vertical plane {y = 0} of the disk model
(chart (x, y) -> (tanh(x/2), 0, y)) is swept by the parabolic isometry group
F_t fixing the ideal point (1, 0):  f(y, t) = F_t(tanh(rho(y)/2), 0, y).
Exact first and second chart derivatives are supplied; ``numeric()`` drops
them for the finite-difference cross-check.
"""

from dataclasses import dataclass
import math
from typing import Callable

import numpy as np

from .ambient import DiskPoint, Geodesic, Space, VerticalPlane, parabolic_matrix
from .errors import DomainError, PreconditionError
from .surface import ParamSurface

DEFAULT_T_RANGE = (-10.0, 10.0)


@dataclass(frozen=True)
class ProfileFn:
    rho: Callable
    rho1: Callable
    rho2: Callable
    domain: tuple
    name: str = "profile"

    def contains(self, y):
        y1, y2 = self.domain
        return y1 < y < y2

    def audit(self, window=None, n=64, fd_step=1e-5):
        """Return the list of (y, reason) failures of the profile hypotheses."""
        lo, hi = window if window is not None else self.domain
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("audit needs a finite window")
        failures = []
        for y in np.linspace(lo, hi, n + 2)[1:-1]:
            if not self.rho2(y) > 0:
                failures.append((float(y), "rho'' <= 0"))
            fd = (self.rho(y + fd_step) - self.rho(y - fd_step)) / (2 * fd_step)
            if abs(fd - self.rho1(y)) > 1e-6 * max(1.0, abs(fd)):
                failures.append((float(y), "rho' disagrees with finite differences"))
        return failures


def quadratic_profile():
    return ProfileFn(lambda y: 0.5 * y * y, lambda y: y, lambda y: 1.0,
                     (-math.inf, math.inf), name="quadratic")


def cosh_profile():
    return ProfileFn(math.cosh, math.sinh, math.cosh, (-math.inf, math.inf), name="cosh")


def polynomial_profile(coeffs):
    """rho(y) = sum c_i y^i from a coefficient list (constant term first)."""
    c = np.polynomial.Polynomial([float(a) for a in coeffs])
    d1, d2 = c.deriv(1), c.deriv(2)
    return ProfileFn(lambda y: float(c(y)), lambda y: float(d1(y)), lambda y: float(d2(y)),
                     (-math.inf, math.inf), name="poly(" + ",".join(f"{a:g}" for a in coeffs) + ")")


PROFILES = {"quadratic": quadratic_profile, "cosh": cosh_profile}


def plane_chart(x, y):
    """Isometric chart of the vertical plane {y = 0}; (e^x - 1)/(e^x + 1) = tanh(x/2)."""
    return DiskPoint((math.tanh(0.5 * x), 0.0), y)


def curvature_formula(p, y):
    """Extrinsic curvature rho''/(1 + rho'^2)^2 of S_rho along the orbit of alpha(y)."""
    if not p.contains(y):
        raise DomainError(f"y = {y} outside the profile domain {p.domain}")
    return p.rho2(y) / (1.0 + p.rho1(y) ** 2) ** 2


def _parabolic_derivative(t):
    return np.array([[t, -t, 1.0], [t, -t, 1.0], [1.0, -1.0, 0.0]])


_PARABOLIC_SECOND = np.array([[1.0, -1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 0.0]])


class Helicoid:
    """The surface S_rho.

    The profile point at distance rho(y) along the plane is (cosh rho,
    sinh rho, 0, y) on the hyperboloid, so the chart is a Lorentz matrix
    applied to it; this stays finite where the disk coordinate tanh(rho/2)
    has already rounded to 1.
    """

    def __init__(self, profile, y_window, t_range=DEFAULT_T_RANGE):
        self.profile = profile
        self.y_window = (float(y_window[0]), float(y_window[1]))
        self.t_range = (float(t_range[0]), float(t_range[1]))

    def _alpha(self, y):
        r = self.profile.rho(y)
        return np.array([math.cosh(r), math.sinh(r), 0.0])

    def chart(self, y, t):
        return np.concatenate([parabolic_matrix(t) @ self._alpha(y), [y]])

    def disk(self, y, t):
        x = self.chart(y, t)
        return x[1] / (1.0 + x[0]), x[2] / (1.0 + x[0]), y

    def d1(self, y, t):
        p = self.profile
        r, r1 = p.rho(y), p.rho1(y)
        a = self._alpha(y)
        a_y = r1 * np.array([math.sinh(r), math.cosh(r), 0.0])
        f_y = np.concatenate([parabolic_matrix(t) @ a_y, [1.0]])
        f_t = np.concatenate([_parabolic_derivative(t) @ a, [0.0]])
        return f_y, f_t

    def d2(self, y, t):
        p = self.profile
        r, r1, r2 = p.rho(y), p.rho1(y), p.rho2(y)
        ch, sh = math.cosh(r), math.sinh(r)
        a = np.array([ch, sh, 0.0])
        a_y = r1 * np.array([sh, ch, 0.0])
        a_yy = r2 * np.array([sh, ch, 0.0]) + r1 * r1 * a
        m, dm = parabolic_matrix(t), _parabolic_derivative(t)
        f_yy = np.concatenate([m @ a_yy, [0.0]])
        f_yt = np.concatenate([dm @ a_y, [0.0]])
        f_tt = np.concatenate([_PARABOLIC_SECOND @ a, [0.0]])
        return f_yy, f_yt, f_tt


def build_helicoidal(p, n_y=64, n_t=64, t_range=DEFAULT_T_RANGE, y_window=None):
    """Chart (y, t) -> F_t(alpha(y)) lifted to the hyperboloid.

    ``y_window`` truncates infinite profile domains; it defaults to the
    profile domain when that is finite.
    """
    if n_y < 8 or n_t < 8:
        raise DomainError("n_y and n_t must be at least 8")
    if y_window is None:
        y_window = p.domain
    y0, y1 = y_window
    if not (math.isfinite(y0) and math.isfinite(y1)):
        raise DomainError("an infinite profile domain needs a finite y_window")
    bad = p.audit((y0, y1))
    if bad:
        y_bad, reason = bad[0]
        raise PreconditionError(f"profile fails its hypotheses at y = {y_bad:.6g}: {reason}")
    hel = Helicoid(p, (y0, y1), t_range)
    return ParamSurface(
        Space.H2R, hel.chart, ((y0, y1), tuple(t_range)), d1=hel.d1, d2=hel.d2,
        name=f"helicoid-{p.name}",
        extras={"helicoid": hel, "mesh_shape": (n_y, n_t)},
    )


@dataclass
class SimpleEndReport:
    window: tuple
    t_range: tuple
    distance_bins: list
    max_angle_in_bin: list
    angle_histogram: list
    clusters_at_zero: bool
    plane_radii: dict
    plane_pieces: dict
    plane_closed: dict

    def to_dict(self):
        return {
            "window": list(self.window),
            "t_range": list(self.t_range),
            "distance_bins": self.distance_bins,
            "max_abs_angle_in_bin": self.max_angle_in_bin,
            "angle_histogram": self.angle_histogram,
            "clusters_at_zero": self.clusters_at_zero,
            "plane_bounding_radius": self.plane_radii,
            "plane_pieces": self.plane_pieces,
            "plane_sections_closed": self.plane_closed,
        }


DEFAULT_TEST_PLANES = (
    Geodesic(math.pi / 2, 3 * math.pi / 2),
    Geodesic(5 * math.pi / 3, math.pi / 3),
    Geodesic(-0.5, 0.5),
)
DISTANCE_EDGES = (0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, math.inf)


def simple_end_check(p, surface, n=96, planes=DEFAULT_TEST_PLANES):
    """Trend report for the simple end of S_rho on the sampled window.

    (a) Points on the boundary of the sampled window are binned by their
    hyperbolic distance from the disk center; for each band the largest
    |ideal angle| is reported.  The end clusters at angle 0 when that largest
    angle shrinks from band to band.  (b) For vertical planes avoiding the
    ideal point 0 the mesh section is computed, and its bounding radius
    (largest product distance from (0, 0, 0)) and piece count are reported.
    """
    from .sections import intersect, triangulate

    hel = surface.extras["helicoid"]
    (y0, y1), (t0, t1) = surface.domain
    ys = np.linspace(y0, y1, n)
    ts = np.linspace(t0, t1, n)
    border = [(y, t0) for y in ys] + [(y, t1) for y in ys] + [(y0, t) for t in ts] + [(y1, t) for t in ts]
    dist, angles = [], []
    for y, t in border:
        x = hel.chart(y, t)
        dist.append(math.acosh(max(x[0], 1.0)))
        angles.append(abs(math.atan2(x[2], x[1])))
    dist = np.array(dist)
    angles = np.array(angles)
    bins, max_angle = [], []
    for lo, hi in zip(DISTANCE_EDGES[:-1], DISTANCE_EDGES[1:]):
        sel = (dist >= lo) & (dist < hi)
        if np.any(sel):
            bins.append([lo, hi if math.isfinite(hi) else None])
            max_angle.append(float(angles[sel].max()))
    far = dist >= np.median(dist)
    hist, _ = np.histogram(angles[far], bins=18, range=(0.0, math.pi))
    clusters = len(max_angle) >= 2 and max_angle[-1] < max_angle[0] and max_angle[-1] < 0.5

    mesh = triangulate(surface, n, n)
    plane_radii, plane_pieces, plane_closed = {}, {}, {}
    for g in planes:
        if min(abs(math.remainder(g.theta_minus, 2 * math.pi)), abs(math.remainder(g.theta_plus, 2 * math.pi))) < 1e-12:
            continue  # planes through the end's ideal point are not constrained
        key = f"{g.theta_minus:.6f},{g.theta_plus:.6f}"
        secs = intersect(mesh, VerticalPlane(g))
        r = 0.0
        for sec in secs:
            for x in sec.ambient:
                r = max(r, math.hypot(math.acosh(max(x[0], 1.0)), x[3]))
        plane_radii[key] = r
        plane_pieces[key] = len(secs)
        plane_closed[key] = all(sec.closed for sec in secs)
    return SimpleEndReport((y0, y1), (t0, t1), bins, max_angle, hist.tolist(), bool(clusters),
                           plane_radii, plane_pieces, plane_closed)
