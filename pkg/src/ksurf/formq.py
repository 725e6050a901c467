"""The quadratic form A = I + g(nu) dh^2 and its conformality to II.

On a surface of constant extrinsic curvature K the (2,0)-part of A with
respect to the conformal structure of II vanishes exactly on the rotational
spheres.  That statement is chart-free once phrased as "A is a multiple of
II", which is what the defect below measures.  The extrinsic curvature of
the pair (II, A) is det A / det II = chi(nu) / K.
"""

from dataclasses import dataclass, asdict, replace
import math

import numpy as np

from .errors import GeometryError, NotAKSurfaceError, SingularImmersionError
from .estimates import chi_of_nu, g_of_nu
from .surface import fundamental_forms

K_MATCH_TOL = 1e-3
DEFECT_PASS = 1e-6


@dataclass(frozen=True)
class FormQReport:
    A11: float
    A12: float
    A22: float
    defect: float
    K_pair: float
    K_pair_coefficients: float
    K: float
    nu: float
    chi: float
    det_A: float
    det_II: float

    def to_dict(self):
        return asdict(self)

    @property
    def pair_residual(self):
        return abs(self.K_pair - self.K_pair_coefficients)


def conformality_defect(A, II):
    """Scale-free distance of the symmetric 2x2 forms A and II from proportional."""
    a11, a12, a22 = A
    b11, b12, b22 = II
    num = abs(a11 * b12 - a12 * b11) + abs(a11 * b22 - a22 * b11)
    return num / (max(abs(a11), abs(a12), abs(a22)) * max(abs(b11), abs(b12), abs(b22)))


def form_A(s, K, u, v, strict=True):
    """A, its conformality defect against II and the pair curvature at (u, v).

    ``K=None`` uses the local extrinsic curvature (for non-K control
    surfaces).  With ``strict`` a K_ext more than 1e-3 away from K raises.
    """
    rep = fundamental_forms(s, u, v, with_intrinsic=False)
    if rep.det_II <= 0:
        raise SingularImmersionError(f"II is not definite at ({u}, {v}): det II = {rep.det_II:.3e}")
    if K is None:
        K = rep.K_ext
    elif strict and abs(rep.K_ext - K) > K_MATCH_TOL:
        raise NotAKSurfaceError(f"K_ext = {rep.K_ext:.6g} at ({u}, {v}) is not within {K_MATCH_TOL} of K = {K}")
    eps = s.eps
    nu = max(-1.0, min(1.0, rep.nu))
    pu, pv = s.first_derivatives(u, v)
    hu, hv = pu[3], pv[3]
    g = g_of_nu(nu, K, eps)
    a11 = rep.I11 + g * hu * hu
    a12 = rep.I12 + g * hu * hv
    a22 = rep.I22 + g * hv * hv
    det_a = a11 * a22 - a12 * a12
    defect = conformality_defect((a11, a12, a22), (rep.II11, rep.II12, rep.II22))
    chi = chi_of_nu(nu, K, eps)
    return FormQReport(
        A11=a11, A12=a12, A22=a22, defect=defect,
        K_pair=chi / K, K_pair_coefficients=det_a / rep.det_II,
        K=float(K), nu=nu, chi=chi, det_A=det_a, det_II=rep.det_II,
    )


@dataclass
class SweepSummary:
    max_defect: float
    mean_defect: float
    grid: int
    passed: bool
    max_pair_residual: float
    definite_agreement: bool

    def to_dict(self):
        return {"max_defect": self.max_defect, "mean_defect": self.mean_defect,
                "grid": self.grid, "pass": self.passed}


def conformality_sweep(s, K, grid=32, strict=True):
    """Defect of A against II on an interior grid x grid parameter sample."""
    us, vs = s.interior_grid(grid)
    defects, pair_res = [], []
    agree = True
    for u in us:
        for v in vs:
            r = form_A(s, K, u, v, strict=strict)
            defects.append(r.defect)
            pair_res.append(r.pair_residual)
            agree = agree and (r.det_A > 0) == (r.det_II > 0)
    d = np.array(defects)
    mx = float(d.max())
    return SweepSummary(mx, float(d.mean()), int(grid), bool(mx < DEFECT_PASS),
                        float(max(pair_res)), bool(agree))


def scaled_height(surface, factor=1.05):
    """The surface with its height function multiplied by ``factor``."""
    f = float(factor)
    if f <= 0:
        raise GeometryError("the height factor must be positive")
    scale = np.array([1.0, 1.0, 1.0, f])
    chart, d1, d2 = surface.chart, surface.d1, surface.d2
    return replace(
        surface,
        chart=lambda u, v: np.asarray(chart(u, v)) * scale,
        d1=None if d1 is None else (lambda u, v: tuple(np.asarray(w) * scale for w in d1(u, v))),
        d2=None if d2 is None else (lambda u, v: tuple(np.asarray(w) * scale for w in d2(u, v))),
        name=f"{surface.name}-height-x{f:g}",
        extras={},
    )
