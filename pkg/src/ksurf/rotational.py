"""Rotational spheres of constant extrinsic curvature K in H2xR and S2xR.

The generating curve is parametrised by u in [-1, 1] (u = dk/dt, t the arc
length of the profile): k(u) is the distance to the axis and h(u) the height,
with h(1) = C the lowest point.  Writing s = 1 - u^2 and
r(s) = eps * expm1(eps * s / K), the profile satisfies

    cosh k = exp(s / 2K)           (H2xR)      cos k = exp(-s / 2K)   (S2xR)
    dk/du  = -u / (K sqrt(r))                  dh/du = -sqrt(s / r) / K

and the second line is what the compiled kernels integrate.
"""

from dataclasses import dataclass, asdict
import math
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .ambient import Space
from .errors import DomainError, GeometryError, PoleError
from .surface import ParamSurface

POLE_CLIP = 1e-3
QUAD_TOL = 1e-10
POLE_K_MIN = 1e-8


def _check(u, K):
    if not K > 0:
        raise DomainError(f"K must be positive, got {K}")
    if not -1.0 <= u <= 1.0:
        raise DomainError(f"u must lie in [-1, 1], got {u}")


def _s(u):
    return (1.0 - u) * (1.0 + u)


def k_of_u(u, K, tag=Space.H2R):
    """Distance from the axis of the profile point with parameter u."""
    _check(u, K)
    eps = int(Space.parse(tag))
    s = _s(u)
    if eps < 0:
        # cosh k = 1 + 2 sinh^2(k/2) = exp(s/2K)
        return 2.0 * math.asinh(math.sqrt(0.5 * math.expm1(s / (2.0 * K))))
    # cos k = 1 - 2 sin^2(k/2) = exp(-s/2K)
    return 2.0 * math.asin(math.sqrt(-0.5 * math.expm1(-s / (2.0 * K))))


def h_integrand(u, K, tag=Space.H2R):
    """-dh/du; the removable singularity at u = +-1 takes the value 1/sqrt(K)."""
    _check(u, K)
    return kernels.height_integrand(float(u), float(K), float(int(Space.parse(tag))))


def h_of_u(u, K, C=0.0, tag=Space.H2R, tol=QUAD_TOL, return_error=False):
    """Height C + int_u^1 h_integrand, by adaptive Gauss-Kronrod quadrature."""
    _check(u, K)
    eps = float(int(Space.parse(tag)))
    value, err = kernels.quad(kernels.KIND_HEIGHT, float(u), 1.0, float(K), eps, tol)
    h = C + value
    return (h, err) if return_error else h


class UDerivatives(NamedTuple):
    k: float
    k_u: float
    k_uu: float
    h_u: float
    h_uu: float
    C: float  # cosh k or cos k
    S: float  # sinh k or sin k


def u_derivatives(u, K, eps):
    """k, h and their first two u-derivatives, all in closed form."""
    s = _s(u)
    if s <= 0.0:
        raise PoleError(f"u = {u} is a pole of the rotational chart")
    x = s / K
    r = eps * math.expm1(eps * x)
    r_u = -2.0 * u * math.exp(eps * x) / K
    sqr = math.sqrt(r)
    k_u = -u / (K * sqr)
    k_uu = -1.0 / (K * sqr) + u * r_u / (2.0 * K * r * sqr)
    f = math.sqrt(s / r) / K
    f_u = 0.5 / (K * math.sqrt(s / r)) * (-2.0 * u * r - s * r_u) / (r * r)
    cc = math.exp(-eps * x / 2.0)
    ss = math.sqrt(-eps * math.expm1(-eps * x))
    k = 2.0 * math.asinh(math.sqrt(0.5 * math.expm1(x / 2.0))) if eps < 0 else \
        2.0 * math.asin(math.sqrt(-0.5 * math.expm1(-x / 2.0)))
    return UDerivatives(k, k_u, k_uu, -f, -f_u, cc, ss)


@dataclass(frozen=True)
class GeneratingCurve:
    K: float
    tag: Space
    C: float
    u: tuple
    k: tuple
    h: tuple

    @property
    def samples(self):
        return list(zip(self.u, self.k, self.h))

    def violations(self):
        """Invariant violations, empty when the curve is valid."""
        out = []
        k = np.array(self.k)
        h = np.array(self.h)
        if np.any(k < 0):
            out.append("k < 0")
        if abs(self.k[0]) > 1e-10 or abs(self.k[-1]) > 1e-10:
            out.append("k != 0 at u = +-1")
        if np.any(np.diff(h) >= 0):
            out.append("h not strictly decreasing in u")
        if self.tag == Space.S2R and np.any(k >= math.pi / 2):
            out.append("k >= pi/2 on an S2xR sphere")
        return out

    def rows(self):
        return [(float(a), float(b), float(c)) for a, b, c in zip(self.u, self.k, self.h)]


@dataclass(frozen=True)
class RotSphereReport:
    K: float
    tag: int
    C: float
    k_max: float
    h_min: float
    h_max: float
    h0: float
    height: float
    diameter: float
    h0_formula: float
    symmetry_residual: float

    def to_dict(self):
        return asdict(self)


class SphereBuild(NamedTuple):
    surface: ParamSurface
    report: RotSphereReport
    curve: GeneratingCurve


class RotationalSphere:
    """Profile and chart of the rotational K-sphere with lowest height C."""

    def __init__(self, K, C=0.0, tag=Space.H2R):
        if not K > 0:
            raise DomainError(f"K must be positive, got {K}")
        self.K = float(K)
        self.C = float(C)
        self.tag = Space.parse(tag)
        self.eps = int(self.tag)

    def k(self, u):
        return k_of_u(u, self.K, self.tag)

    def h(self, u):
        return h_of_u(u, self.K, self.C, self.tag)

    def heights(self, us):
        values, _ = kernels.quad_to_upper(kernels.KIND_HEIGHT, us, 1.0, self.K, self.eps, QUAD_TOL)
        return self.C + np.array(values)

    # chart ---------------------------------------------------------------
    def point(self, u, v, h):
        """Chart point with a precomputed height h = h(u)."""
        e = self.eps
        x = _s(u) / self.K
        cc = math.exp(-e * x / 2.0)
        ss = math.sqrt(max(-e * math.expm1(-e * x), 0.0))
        return np.array([cc, ss * math.cos(v), ss * math.sin(v), h])

    def chart(self, u, v):
        return self.point(u, v, self.h(u))

    def d1(self, u, v):
        d = u_derivatives(u, self.K, self.eps)
        cv, sv = math.cos(v), math.sin(v)
        pu = np.array([-self.eps * d.S * d.k_u, d.C * d.k_u * cv, d.C * d.k_u * sv, d.h_u])
        pv = np.array([0.0, -d.S * sv, d.S * cv, 0.0])
        return pu, pv

    def d2(self, u, v):
        d = u_derivatives(u, self.K, self.eps)
        e = self.eps
        cv, sv = math.cos(v), math.sin(v)
        radial = -e * d.S * d.k_u**2 + d.C * d.k_uu
        puu = np.array([-e * (d.C * d.k_u**2 + d.S * d.k_uu), radial * cv, radial * sv, d.h_uu])
        puv = np.array([0.0, -d.C * d.k_u * sv, d.C * d.k_u * cv, 0.0])
        pvv = np.array([0.0, -d.S * cv, -d.S * sv, 0.0])
        return puu, puv, pvv

    def surface(self, clip=POLE_CLIP):
        return ParamSurface(
            self.tag, self.chart, ((-1.0 + clip, 1.0 - clip), (0.0, 2.0 * math.pi)),
            d1=self.d1, d2=self.d2, periodic_v=True, poles=(-1.0, 1.0),
            name=f"rotational-sphere-{self.tag.name.lower()}-K{self.K:g}",
            extras={"mesh_u": _pole_refined_u, "sphere": self},
        )

    # profile ---------------------------------------------------------------
    def curve(self, n_u=65):
        u = _pole_refined_u(n_u, include_poles=True)
        k = [self.k(a) for a in u]
        h = self.heights(u)
        return GeneratingCurve(self.K, self.tag, self.C, tuple(u), tuple(k), tuple(float(x) for x in h))

    def nu(self, u):
        # the II-positive (inward) normal has angle function nu = u
        return u

    # arc length ------------------------------------------------------------
    def arc_length(self, u, tol=1e-12):
        """Arc length from the lowest point (u = 1) to the profile point u."""
        _check(u, self.K)
        phi = math.acos(u)
        value, _ = kernels.quad(kernels.KIND_ARCLENGTH, 0.0, phi, self.K, self.eps, tol)
        return value

    @property
    def total_arc_length(self):
        return self.arc_length(-1.0)

    def u_of_arc_length(self, t):
        total = self.total_arc_length
        if not 0.0 <= t <= total:
            raise DomainError(f"arc length {t} outside [0, {total}]")
        if t == 0.0:
            return 1.0
        if t == total:
            return -1.0
        phi = brentq(lambda p: self.arc_length(math.cos(p)) - t, 0.0, math.pi, xtol=1e-15, rtol=1e-15)
        return math.cos(phi)

    # report ----------------------------------------------------------------
    def ambient_distance(self, p, q):
        """Product-metric distance between two points of the sphere's ambient."""
        e = self.eps
        g = e * p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
        base = math.acosh(max(-g, 1.0)) if e < 0 else math.acos(min(max(g, -1.0), 1.0))
        return math.hypot(base, p[3] - q[3])

    def report(self, n_u=65):
        h_min = self.C
        h_max = self.h(-1.0)
        h0 = self.h(0.0)
        h0_formula = self.C + kernels.quad(kernels.KIND_HEIGHT, -1.0, 0.0, self.K, self.eps, QUAD_TOL)[0]
        diameter = 0.0
        for u in _pole_refined_u(n_u, include_poles=True):
            p = self.chart(u, 0.0)
            q = self.chart(-u, math.pi)
            diameter = max(diameter, self.ambient_distance(p, q))
        return RotSphereReport(
            K=self.K, tag=self.eps, C=self.C, k_max=self.k(0.0),
            h_min=h_min, h_max=h_max, h0=h0, height=h_max - h_min, diameter=diameter,
            h0_formula=h0_formula,
            symmetry_residual=abs((h0 - h_min) - (h_max - h0)),
        )


def _pole_refined_u(n, include_poles=False):
    """u = -cos(phi) on a uniform phi grid; dense near the poles."""
    if include_poles:
        phi = np.linspace(0.0, math.pi, n)
    else:
        phi = math.pi * np.arange(1, n + 1) / (n + 1)
    u = -np.cos(phi)
    if include_poles:
        u[0], u[-1] = -1.0, 1.0
    return u


def build_sphere(K, C=0.0, tag=Space.H2R, n_u=65, n_v=64):
    """Chart, report and sampled generating curve of the rotational K-sphere."""
    if n_u < 8 or n_v < 8:
        raise DomainError("n_u and n_v must be at least 8")
    sphere = RotationalSphere(K, C, tag)
    curve = sphere.curve(n_u)
    bad = curve.violations()
    if bad:
        raise GeometryError("generating curve invariants violated: " + ", ".join(bad))
    surf = sphere.surface()
    surf.extras["mesh_shape"] = (n_u, n_v)
    return SphereBuild(surf, sphere.report(n_u), curve)


class ProfileCurvatures(NamedTuple):
    lambda1: float
    lambda2: float
    product_residual: float
    krev2_residual: float
    krev1_residual: float
    u: float


def closed_form_principal_curvatures(t_arc, curve):
    """Principal curvatures at arc length ``t_arc`` of an H2xR profile.

    lambda1 = k'h'' - k''h' and lambda2 = h' coth k with ' = d/dt, evaluated
    from closed-form u-derivatives through the chain rule; the residuals of
    lambda1*lambda2 = K, (k')^2 = 1 - 2K ln cosh k and K = -k'' coth k are
    returned alongside.
    """
    if Space.parse(curve.tag) != Space.H2R:
        raise DomainError("the closed forms are stated for H2xR profiles")
    sphere = RotationalSphere(curve.K, curve.C, curve.tag)
    K = sphere.K
    u = sphere.u_of_arc_length(t_arc)
    if abs(u) >= 1.0 or sphere.k(u) <= POLE_K_MIN:
        raise PoleError(f"t = {t_arc} is at a pole (k = {sphere.k(u) if abs(u) <= 1 else 0.0:.3e})")
    d = u_derivatives(u, K, -1)
    if d.k <= POLE_K_MIN:
        raise PoleError(f"k = {d.k:.3e} too close to the axis")
    sigma = math.hypot(d.k_u, d.h_u)
    w = -1.0 / sigma  # du/dt: u decreases along the profile
    sigma_u = (d.k_u * d.k_uu + d.h_u * d.h_uu) / sigma
    w_u = sigma_u / sigma**2
    k_t, h_t = d.k_u * w, d.h_u * w
    k_tt = (d.k_uu * w + d.k_u * w_u) * w
    h_tt = (d.h_uu * w + d.h_u * w_u) * w
    coth = 1.0 / math.tanh(d.k)
    lam1 = k_t * h_tt - k_tt * h_t
    lam2 = h_t * coth
    return ProfileCurvatures(
        lambda1=lam1, lambda2=lam2,
        product_residual=abs(lam1 * lam2 - K),
        krev2_residual=abs(k_t**2 - (1.0 - 2.0 * K * math.log(math.cosh(d.k)))),
        krev1_residual=abs(K + k_tt * coth),
        u=u,
    )
