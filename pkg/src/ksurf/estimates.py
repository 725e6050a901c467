"""Height-estimate functions for K-surfaces and checks on rotational spheres.

All three auxiliary functions depend on nu only through s = 1 - nu^2:

    g(nu)   = (-s + eps K (exp(eps s / K) - 1)) / s^2
    chi(nu) = eps K (exp(eps s / K) - 1) / s         = 1 + g(nu) s
    f'(nu)  = sqrt(eps (1 - exp(-eps s / K)) / s)

Each has a removable singularity at s = 0; below ``SERIES_S`` the Taylor
series in s is summed instead of the cancelling closed form.
"""

from dataclasses import dataclass, asdict
import math
from typing import NamedTuple

import numpy as np

from . import kernels
from .ambient import Space
from .errors import DomainError, PoleError
from .rotational import RotationalSphere, u_derivatives

SERIES_S = 1e-4
SERIES_TERMS = 8
CK_TOL = 1e-10


def _check(nu, K, eps):
    if not K > 0:
        raise DomainError(f"K must be positive, got {K}")
    if eps not in (-1, 1):
        raise DomainError(f"epsilon must be -1 or +1, got {eps}")
    if not abs(nu) <= 1.0:
        raise DomainError(f"|nu| must be <= 1, got {nu}")
    return (1.0 - nu) * (1.0 + nu)


def _method(s, method):
    if method == "auto":
        return "series" if s < SERIES_S else "direct"
    if method not in ("series", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if method == "direct" and s == 0.0:
        raise DomainError("the direct formula is singular at |nu| = 1")
    return method


def g_of_nu(nu, K, epsilon, method="auto"):
    eps = int(epsilon)
    s = _check(nu, K, eps)
    if _method(s, method) == "series":
        # sum_{m>=0} eps^(m+3) s^m / (K^(m+1) (m+2)!)
        total, term = 0.0, eps / (2.0 * K)
        for m in range(SERIES_TERMS):
            total += term
            term *= eps * s / (K * (m + 3))
        return total
    return (-s + eps * K * math.expm1(eps * s / K)) / (s * s)


def chi_of_nu(nu, K, epsilon, method="auto"):
    eps = int(epsilon)
    s = _check(nu, K, eps)
    if _method(s, method) == "series":
        # sum_{m>=0} (eps s / K)^m / (m+1)!
        x = eps * s / K
        total, term = 0.0, 1.0
        for m in range(SERIES_TERMS):
            total += term
            term *= x / (m + 2)
        return total
    return eps * K * math.expm1(eps * s / K) / s


def f_prime(nu, K, epsilon, method="auto"):
    eps = int(epsilon)
    s = _check(nu, K, eps)
    w = -eps * s / K
    if _method(s, method) == "series":
        total, term = 0.0, 1.0
        for m in range(SERIES_TERMS):
            total += term
            term *= w / (m + 2)
        ratio = total
    else:
        ratio = math.expm1(w) / w
    return math.sqrt(ratio / K)


def c_K(K, epsilon=-1, tol=CK_TOL):
    """Integral of f' over nu in [-1, 0]: the height bound for K-graphs.

    ``tol`` is absolute for integrands of order one and relative to the peak
    f'(0) once that exceeds one (small K makes c_K grow like exp(1/2K)).
    """
    eps = int(epsilon)
    _check(0.0, K, eps)
    scaled_tol = tol * max(1.0, f_prime(0.0, K, eps))
    value, _ = kernels.quad(kernels.KIND_FPRIME, -1.0, 0.0, float(K), float(eps), scaled_tol)
    return value


def flat_bound(K):
    """Height bound 1/sqrt(K) over the flat base (base curvature zero)."""
    if not K > 0:
        raise DomainError(f"K must be positive, got {K}")
    return 1.0 / math.sqrt(K)


@dataclass(frozen=True)
class EstimateParams:
    K: float
    epsilon: int
    branch: str

    def __post_init__(self):
        if not self.K > 0:
            raise DomainError(f"K must be positive, got {self.K}")
        if self.branch not in ("flat", "curved"):
            raise DomainError(f"unknown branch {self.branch!r}")


def normalize(K, base_curvature):
    """Reduce (K, base curvature k) to a normalized problem.

    Scaling the base metric by |k| and heights by sqrt(|k|) turns a K-surface
    over base curvature k into a (K/|k|)-surface over base curvature sign(k).
    Returns the normalized parameters and the factor converting normalized
    heights back to physical heights (1/sqrt(|k|)).
    """
    k = float(base_curvature)
    if k == 0.0:
        return EstimateParams(float(K), 0, "flat"), 1.0
    return EstimateParams(float(K) / abs(k), 1 if k > 0 else -1, "curved"), 1.0 / math.sqrt(abs(k))


def height_bound(K, base_curvature=-1.0):
    """Physical height bound for a K-graph over a base of curvature k."""
    params, scale = normalize(K, base_curvature)
    if params.branch == "flat":
        return flat_bound(params.K)
    return scale * c_K(params.K, params.epsilon)


# checks on the hyperbolic rotational sphere --------------------------------

@dataclass
class HeightReport:
    K: float
    c_K: float
    half_height: float
    height: float
    half_slack: float
    full_slack: float
    passed: bool

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def verify_sphere_height(K, tol=CK_TOL):
    """Half height and height of the H2xR K-sphere against c_K and 2 c_K."""
    sphere = RotationalSphere(K, 0.0, Space.H2R)
    top, equator = sphere.heights([-1.0, 0.0])
    bottom = sphere.C
    ck = c_K(K, -1, tol)
    half = float(top - equator)
    full = float(top - bottom)
    half_slack = ck - half
    full_slack = 2.0 * ck - full
    return HeightReport(float(K), ck, half, full, half_slack, full_slack,
                        bool(half_slack > 0 and full_slack > 0))


class ProfileState(NamedTuple):
    u: float
    k: float
    h: float
    lambda1: float
    lambda2: float


def profile_state(sphere, t):
    """Profile quantities at arc length t from the lowest point (H2xR sphere)."""
    u = sphere.u_of_arc_length(t)
    d = u_derivatives(u, sphere.K, sphere.eps)
    s = (1.0 - u) * (1.0 + u)
    if s <= 0.0 or d.S == 0.0:
        raise PoleError(f"arc length {t} is at a pole")
    lam1 = sphere.K * d.S / (d.C * math.sqrt(s))
    lam2 = math.sqrt(s) * d.C / d.S
    return ProfileState(u, d.k, sphere.h(u), lam1, lam2)


@dataclass
class LaplacianReport:
    K: float
    step: float
    samples: list
    excluded: list
    max_residual_h: float
    max_residual_nu: float
    equator_residual_nu: float
    passed: bool

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _ii_laplacian(sphere, t, step, pick):
    """Laplacian for the metric II = lambda1 dt^2 + lambda2 sinh^2 k dv^2 of a
    function of t: (1/sinh k) d/dt (sinh k phi_t / lambda1), by central
    differences of the flux at t +- step/2."""
    left, mid, right = (profile_state(sphere, t + o) for o in (-step, 0.0, step))
    half_l = profile_state(sphere, t - 0.5 * step)
    half_r = profile_state(sphere, t + 0.5 * step)
    flux_r = math.sinh(half_r.k) / half_r.lambda1 * (pick(right) - pick(mid)) / step
    flux_l = math.sinh(half_l.k) / half_l.lambda1 * (pick(mid) - pick(left)) / step
    return (flux_r - flux_l) / (step * math.sinh(mid.k)), mid


def radial_laplacians(K, samples=20, step=1e-3, pole_margin=0.05):
    """Laplacians in the II metric of h and nu on the H2xR K-sphere.

    Compares against (2K - kappa (1 - nu^2)) nu / K with kappa = -1 and
    -2 H nu.  Sample points closer than ``pole_margin`` (fraction of the
    profile length) to a pole are excluded and listed.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    sphere = RotationalSphere(K, 0.0, Space.H2R)
    length = sphere.total_arc_length
    kept, excluded = [], []
    res_h = res_nu = 0.0
    for i in range(1, samples + 1):
        t = length * i / (samples + 1)
        if min(t, length - t) < pole_margin * length:
            excluded.append(t)
            continue
        lap_h, st = _ii_laplacian(sphere, t, step, lambda p: p.h)
        lap_nu, _ = _ii_laplacian(sphere, t, step, lambda p: p.u)
        nu = st.u
        rhs_h = (2.0 * K + (1.0 - nu * nu)) * nu / K
        rhs_nu = -(st.lambda1 + st.lambda2) * nu
        rh, rn = abs(lap_h - rhs_h), abs(lap_nu - rhs_nu)
        res_h, res_nu = max(res_h, rh), max(res_nu, rn)
        kept.append({"t": t, "nu": nu, "residual_h": rh, "residual_nu": rn})
    lap_eq, _ = _ii_laplacian(sphere, 0.5 * length, step, lambda p: p.u)
    ok = res_h < 1e-3 and res_nu < 1e-3 and abs(lap_eq) < 1e-6
    return LaplacianReport(float(K), step, kept, excluded, res_h, res_nu, abs(lap_eq), bool(ok))


def ck_table(Ks, epsilon=-1):
    """Rows (K, epsilon, c_K) and whether c_K decreases along the grid."""
    if len(Ks) == 0:
        raise DomainError("the K grid is empty")
    rows = [(float(K), int(epsilon), c_K(K, epsilon)) for K in Ks]
    values = np.array([r[2] for r in rows])
    monotone = bool(np.all(np.diff(values) < 0)) if len(values) > 1 else True
    return rows, monotone
