"""Fundamental forms and curvatures of surfaces in M2(eps) x R.

A surface is a chart (u, v) -> 4-vector on the ambient quadric.  Derivatives
come from exact providers when supplied and from central differences
otherwise.  Everything is computed in ambient coordinates with the ambient
metric diag(eps, 1, 1, 1), so both models share one code path.
"""

from dataclasses import dataclass, field, replace, asdict
from functools import cached_property
import math
from typing import Callable, Optional

import numpy as np

from .ambient import Space, lift_array
from .errors import DomainError, GeometryError, SingularImmersionError

DET_TOL = 1e-12
NU_TIE_TOL = 1e-9

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = (-2, -1, 0, 1, 2)


def _g(eps, x, y):
    return eps * x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]


def _det3(m):
    return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def _cross4(a, b, c):
    """Vector w with w . y = det[a; b; c; y] for every y (Euclidean)."""
    m = np.array([a, b, c], dtype=float)
    w = np.empty(4)
    for i in range(4):
        cols = [j for j in range(4) if j != i]
        w[i] = (-1) ** (i + 3) * _det3(m[:, cols])
    return w


@dataclass(frozen=True)
class ParamSurface:
    """A chart (u, v) -> ambient point, with optional exact derivatives.

    ``d1(u, v)`` returns ``(psi_u, psi_v)`` and ``d2(u, v)`` returns
    ``(psi_uu, psi_uv, psi_vv)``.  ``poles`` lists u-values where the chart
    collapses to a point (used by the mesher); ``periodic_v`` closes the mesh
    in v.
    """

    tag: Space
    chart: Callable
    domain: tuple
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    step1: float = 1e-4
    step2: float = 1e-3
    periodic_v: bool = False
    poles: tuple = ()
    name: str = "surface"
    extras: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tag", Space.parse(self.tag))
        (u0, u1), (v0, v1) = self.domain
        if not (u0 < u1 and v0 < v1):
            raise DomainError(f"empty domain {self.domain}")

    @property
    def eps(self):
        return int(self.tag)

    def in_domain(self, u, v):
        (u0, u1), (v0, v1) = self.domain
        return u0 <= u <= u1 and v0 <= v <= v1

    def center(self):
        (u0, u1), (v0, v1) = self.domain
        return 0.5 * (u0 + u1), 0.5 * (v0 + v1)

    def interior_grid(self, n_u, n_v=None):
        """n_u x n_v parameter samples strictly inside the domain."""
        n_v = n_u if n_v is None else n_v
        (u0, u1), (v0, v1) = self.domain
        us = u0 + (u1 - u0) * np.arange(1, n_u + 1) / (n_u + 1)
        vs = v0 + (v1 - v0) * np.arange(1, n_v + 1) / (n_v + 1)
        return us, vs

    def numeric(self):
        """Same surface with all derivatives taken by central differences."""
        return replace(self, d1=None, d2=None)

    def numeric_second(self):
        """Keep exact first derivatives, difference them for the second."""
        return replace(self, d2=None)

    def position(self, u, v):
        return np.asarray(self.chart(u, v), dtype=float)

    def _tangent_project(self, x, w):
        # strip the component along the quadric normal (x1, x2, x3, 0)
        q = np.array([x[0], x[1], x[2], 0.0])
        return w - _g(self.eps, w, q) / _g(self.eps, q, q) * q

    def first_derivatives(self, u, v, x=None):
        if x is None:
            x = self.position(u, v)
        if self.d1 is not None:
            pu, pv = self.d1(u, v)
            pu, pv = np.asarray(pu, dtype=float), np.asarray(pv, dtype=float)
        else:
            h = self.step1
            pu = (self.position(u + h, v) - self.position(u - h, v)) / (2 * h)
            pv = (self.position(u, v + h) - self.position(u, v - h)) / (2 * h)
        return self._tangent_project(x, pu), self._tangent_project(x, pv)

    def second_derivatives(self, u, v, x=None):
        if self.d2 is not None:
            return tuple(np.asarray(w, dtype=float) for w in self.d2(u, v))
        if self.d1 is not None:
            h = self.step1
            up = self.d1(u + h, v)
            um = self.d1(u - h, v)
            vp = self.d1(u, v + h)
            vm = self.d1(u, v - h)
            puu = (np.asarray(up[0]) - np.asarray(um[0])) / (2 * h)
            pvv = (np.asarray(vp[1]) - np.asarray(vm[1])) / (2 * h)
            puv = 0.5 * ((np.asarray(vp[0]) - np.asarray(vm[0])) + (np.asarray(up[1]) - np.asarray(um[1]))) / (2 * h)
            return puu, puv, pvv
        h = self.step2
        c = self.position(u, v) if x is None else x
        puu = (self.position(u + h, v) - 2 * c + self.position(u - h, v)) / (h * h)
        pvv = (self.position(u, v + h) - 2 * c + self.position(u, v - h)) / (h * h)
        puv = (self.position(u + h, v + h) - self.position(u + h, v - h)
               - self.position(u - h, v + h) + self.position(u - h, v - h)) / (4 * h * h)
        return puu, puv, pvv

    def raw_normal(self, x, pu, pv):
        """Unit normal from the generalized cross product, before orientation."""
        q = np.array([x[0], x[1], x[2], 0.0])
        w = _cross4(q, pu, pv)
        w[0] *= self.eps  # raise the index with diag(eps, 1, 1, 1)
        nn = _g(self.eps, w, w)
        if nn <= 0:
            raise SingularImmersionError("normal is not spacelike; immersion degenerate")
        return w / math.sqrt(nn)

    @cached_property
    def orientation(self):
        """Global sign applied to ``raw_normal``.

        nu <= 0 at the domain center; if nu vanishes there, II11 > 0 at the
        first nondegenerate sample (center first, then a 32 x 32 grid).
        """
        uc, vc = self.center()
        x = self.position(uc, vc)
        pu, pv = self.first_derivatives(uc, vc, x)
        n = self.raw_normal(x, pu, pv)
        if abs(n[3]) > NU_TIE_TOL:
            return -1 if n[3] > 0 else 1
        candidates = [(uc, vc)]
        us, vs = self.interior_grid(32)
        candidates += [(a, b) for a in us for b in vs]
        for u, v in candidates:
            x = self.position(u, v)
            pu, pv = self.first_derivatives(u, v, x)
            n = self.raw_normal(x, pu, pv)
            ii11 = _g(self.eps, self.second_derivatives(u, v, x)[0], n)
            if abs(ii11) > DET_TOL:
                return 1 if ii11 > 0 else -1
        return 1

    def metric(self, u, v):
        x = self.position(u, v)
        pu, pv = self.first_derivatives(u, v, x)
        e = self.eps
        return _g(e, pu, pu), _g(e, pu, pv), _g(e, pv, pv)


@dataclass(frozen=True)
class CurvatureReport:
    I11: float
    I12: float
    I22: float
    II11: float
    II12: float
    II22: float
    N: tuple
    nu: float
    T_norm_sq: float
    H: float
    K_ext: float
    K_int: float
    lambda1: float
    lambda2: float

    def to_dict(self):
        d = asdict(self)
        d["N"] = [float(c) for c in self.N]
        return d

    @property
    def det_I(self):
        return self.I11 * self.I22 - self.I12**2

    @property
    def det_II(self):
        return self.II11 * self.II22 - self.II12**2


def intrinsic_curvature(s, u, v, step=None):
    """Gauss curvature of the induced metric by the Brioschi formula.

    Metric coefficients are sampled on a 5 x 5 stencil and differentiated with
    fourth-order central differences; II is never used.
    """
    h = s.step2 if step is None else step
    E = np.empty((5, 5))
    F = np.empty((5, 5))
    G = np.empty((5, 5))
    for i, a in enumerate(_OFFSETS):
        for j, b in enumerate(_OFFSETS):
            E[i, j], F[i, j], G[i, j] = s.metric(u + a * h, v + b * h)
    e, f, g = E[2, 2], F[2, 2], G[2, 2]
    Eu, Ev = _D1 @ E[:, 2] / h, _D1 @ E[2, :] / h
    Fu, Fv = _D1 @ F[:, 2] / h, _D1 @ F[2, :] / h
    Gu, Gv = _D1 @ G[:, 2] / h, _D1 @ G[2, :] / h
    Evv = _D2 @ E[2, :] / (h * h)
    Guu = _D2 @ G[:, 2] / (h * h)
    Fuv = _D1 @ F @ _D1 / (h * h)
    m1 = np.array([
        [-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev],
        [Fv - 0.5 * Gu, e, f],
        [0.5 * Gv, f, g],
    ])
    m2 = np.array([
        [0.0, 0.5 * Ev, 0.5 * Gu],
        [0.5 * Ev, e, f],
        [0.5 * Gu, f, g],
    ])
    return (np.linalg.det(m1) - np.linalg.det(m2)) / (e * g - f * f) ** 2


def fundamental_forms(s, u, v, with_intrinsic=True):
    """Full curvature record of surface ``s`` at (u, v)."""
    if not s.in_domain(u, v):
        raise DomainError(f"({u}, {v}) outside {s.domain}")
    eps = s.eps
    x = s.position(u, v)
    pu, pv = s.first_derivatives(u, v, x)
    i11, i12, i22 = _g(eps, pu, pu), _g(eps, pu, pv), _g(eps, pv, pv)
    det_i = i11 * i22 - i12 * i12
    if det_i <= DET_TOL:
        raise SingularImmersionError(f"det I = {det_i:.3e} at ({u}, {v})")
    n = s.orientation * s.raw_normal(x, pu, pv)
    puu, puv, pvv = s.second_derivatives(u, v, x)
    ii11, ii12, ii22 = _g(eps, puu, n), _g(eps, puv, n), _g(eps, pvv, n)
    nu = float(n[3])
    # |T|^2 as the I-norm of the tangential part of d/dt
    b1, b2 = pu[3], pv[3]
    t_sq = (i22 * b1 * b1 - 2 * i12 * b1 * b2 + i11 * b2 * b2) / det_i
    k_ext = (ii11 * ii22 - ii12 * ii12) / det_i
    h_mean = (i22 * ii11 - 2 * i12 * ii12 + i11 * ii22) / (2 * det_i)
    disc = math.sqrt(max(h_mean * h_mean - k_ext, 0.0))
    k_int = intrinsic_curvature(s, u, v) if with_intrinsic else float("nan")
    return CurvatureReport(
        I11=i11, I12=i12, I22=i22,
        II11=ii11, II12=ii12, II22=ii22,
        N=tuple(float(c) for c in n), nu=nu, T_norm_sq=float(t_sq),
        H=h_mean, K_ext=k_ext, K_int=float(k_int),
        lambda1=h_mean + disc, lambda2=h_mean - disc,
    )


def gauss_equation_check(s, u, v, step=None):
    """|K_int - K_ext - eps nu^2| at (u, v)."""
    rep = fundamental_forms(s, u, v, with_intrinsic=False)
    k_int = intrinsic_curvature(s, u, v, step)
    return abs(k_int - rep.K_ext - s.eps * rep.nu**2)


def angle_decomposition(s, u, v):
    """(nu, |T|^2) with d/dt = T + nu N; the two routes to |T|^2 must agree."""
    rep = fundamental_forms(s, u, v, with_intrinsic=False)
    t_sq = 1.0 - rep.nu**2
    if abs(t_sq - rep.T_norm_sq) > 1e-9:
        raise GeometryError(f"|T|^2 + nu^2 = {rep.T_norm_sq + rep.nu**2!r} != 1 at ({u}, {v})")
    return rep.nu, t_sq


# built-in flat and totally geodesic families -------------------------------

def horizontal_slice(tag, t=0.0, half_width=0.5):
    """The slice M2 x {t}; totally geodesic, nu = +-1."""
    tag = Space.parse(tag)
    dom = ((-half_width, half_width), (-half_width, half_width))
    if tag == Space.H2R:
        def chart(u, v):
            return lift_array((u, v), t)
    else:
        def chart(u, v):
            return np.array([math.cos(u) * math.cos(v), math.sin(u) * math.cos(v), math.sin(v), t])

        def d1(u, v):
            return (np.array([-math.sin(u) * math.cos(v), math.cos(u) * math.cos(v), 0.0, 0.0]),
                    np.array([-math.cos(u) * math.sin(v), -math.sin(u) * math.sin(v), math.cos(v), 0.0]))
        return ParamSurface(tag, chart, dom, d1=d1, name="horizontal-slice-s2r")
    return ParamSurface(tag, chart, dom, name="horizontal-slice-h2r")


def vertical_plane_surface(tag, half_width=1.0):
    """gamma x R over the geodesic through (1, 0, 0) in the x2 direction."""
    tag = Space.parse(tag)
    dom = ((-half_width, half_width), (-half_width, half_width))
    if tag == Space.H2R:
        def chart(u, v):
            return np.array([math.cosh(u), math.sinh(u), 0.0, v])

        def d1(u, v):
            return np.array([math.sinh(u), math.cosh(u), 0.0, 0.0]), np.array([0.0, 0.0, 0.0, 1.0])

        def d2(u, v):
            z = np.zeros(4)
            return np.array([math.cosh(u), math.sinh(u), 0.0, 0.0]), z, z
    else:
        def chart(u, v):
            return np.array([math.cos(u), math.sin(u), 0.0, v])

        def d1(u, v):
            return np.array([-math.sin(u), math.cos(u), 0.0, 0.0]), np.array([0.0, 0.0, 0.0, 1.0])

        def d2(u, v):
            z = np.zeros(4)
            return np.array([-math.cos(u), -math.sin(u), 0.0, 0.0]), z, z
    return ParamSurface(tag, chart, dom, d1=d1, d2=d2, name=f"vertical-plane-{tag.name.lower()}")
