"""Ambient models of H2xR and S2xR.

H2xR is stored as the upper sheet of the hyperboloid -x1^2+x2^2+x3^2 = -1 in
Lorentz 4-space (signature -+++), S2xR as the unit sphere x1^2+x2^2+x3^2 = 1
in Euclidean R^4.  The fourth coordinate is the height.  The Poincare disk
and the Klein disk are charts of H2 used for constructions and for I/O.
"""

from dataclasses import dataclass
from enum import IntEnum
import math

import numpy as np

from .errors import DomainError, ModelMismatchError

TWO_PI = 2.0 * math.pi
QUADRIC_TOL = 1e-12


class Space(IntEnum):
    """Sign of the base curvature: H2R (epsilon=-1) or S2R (epsilon=+1)."""

    H2R = -1
    S2R = 1

    @classmethod
    def parse(cls, value):
        if isinstance(value, Space):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("h2r", "h", "hyperbolic", "-1"):
                return cls.H2R
            if key in ("s2r", "s", "spherical", "1", "+1"):
                return cls.S2R
            raise DomainError(f"unknown space {value!r}")
        if value in (-1, 1):
            return cls(int(value))
        raise DomainError(f"epsilon must be -1 or +1, got {value!r}")


def metric_diag(eps):
    return np.array([float(eps), 1.0, 1.0, 1.0])


def inner(x, y, eps):
    """Ambient inner product: Lorentz for eps=-1, Euclidean for eps=+1."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return eps * x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2] + x[..., 3] * y[..., 3]


def quadric_residual(x, eps):
    """Signed residual of the base quadric; zero on the model."""
    x = np.asarray(x, dtype=float)
    return eps * x[..., 0] ** 2 + x[..., 1] ** 2 + x[..., 2] ** 2 - eps


def _quadric_scale(x):
    # residual of a rounded point grows like |x|^2 * machine eps
    return max(1.0, float(np.dot(x[:3], x[:3])))


@dataclass(frozen=True)
class AmbientPoint:
    x: tuple
    tag: Space

    def __post_init__(self):
        arr = tuple(float(c) for c in self.x)
        if len(arr) != 4:
            raise DomainError("an ambient point has 4 coordinates")
        object.__setattr__(self, "x", arr)
        object.__setattr__(self, "tag", Space.parse(self.tag))
        a = np.array(arr)
        res = quadric_residual(a, int(self.tag))
        if abs(res) > QUADRIC_TOL * _quadric_scale(a):
            raise DomainError(f"point {arr} is off the {self.tag.name} quadric (residual {res:.3e})")
        if self.tag == Space.H2R and arr[0] <= 0:
            raise DomainError("hyperboloid points need x1 > 0")

    @property
    def array(self):
        return np.array(self.x)

    @property
    def height(self):
        return self.x[3]


@dataclass(frozen=True)
class DiskPoint:
    """A point (z, t) of the Poincare disk model of H2xR."""

    z: tuple
    t: float = 0.0

    def __post_init__(self):
        z = (float(self.z[0]), float(self.z[1]))
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))
        if z[0] * z[0] + z[1] * z[1] >= 1.0:
            raise DomainError(f"disk point {z} is not inside the unit disk")

    @property
    def array(self):
        return np.array(self.z)


def _angle(theta):
    return float(theta) % TWO_PI


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic of H2 from ideal angle theta_minus to theta_plus."""

    theta_minus: float
    theta_plus: float

    def __post_init__(self):
        tm, tp = _angle(self.theta_minus), _angle(self.theta_plus)
        object.__setattr__(self, "theta_minus", tm)
        object.__setattr__(self, "theta_plus", tp)
        if abs(math.remainder(tm - tp, TWO_PI)) < 1e-14:
            raise DomainError("a geodesic needs two distinct ideal endpoints")

    def ideal_vectors(self):
        """Null vectors (1, cos, sin) of the two endpoints, backward first."""
        a = np.array([1.0, math.cos(self.theta_minus), math.sin(self.theta_minus)])
        b = np.array([1.0, math.cos(self.theta_plus), math.sin(self.theta_plus)])
        return a, b

    def hyperboloid_point(self, s):
        """Point at signed arc length s; s=0 is the point closest to the origin."""
        a, b = self.ideal_vectors()
        c = 1.0 - math.cos(self.theta_plus - self.theta_minus)
        return (math.exp(-s) * a + math.exp(s) * b) / math.sqrt(2.0 * c)

    def hyperboloid_velocity(self, s):
        a, b = self.ideal_vectors()
        c = 1.0 - math.cos(self.theta_plus - self.theta_minus)
        return (-math.exp(-s) * a + math.exp(s) * b) / math.sqrt(2.0 * c)

    def arc_length_of(self, x):
        """Arc-length coordinate of a hyperboloid point on (or over) the geodesic."""
        a, b = self.ideal_vectors()
        xa = -x[0] * a[0] + x[1] * a[1] + x[2] * a[2]
        xb = -x[0] * b[0] + x[1] * b[1] + x[2] * b[2]
        return 0.5 * math.log(xa / xb)

    def klein_line(self):
        """Unit normal n and offset c with the Klein chord given by n.k = c."""
        a, b = self.ideal_vectors()
        pa, pb = a[1:], b[1:]
        d = pb - pa
        n = np.array([-d[1], d[0]])
        n /= np.linalg.norm(n)
        return n, float(n @ pa)


@dataclass(frozen=True)
class VerticalPlane:
    """The totally geodesic flat plane geodesic x R."""

    geodesic: Geodesic

    def level(self, x):
        """Signed Klein-chart distance of ambient points to the plane (zero on it)."""
        n, c = self.geodesic.klein_line()
        x = np.asarray(x, dtype=float)
        return (n[0] * x[..., 1] + n[1] * x[..., 2]) / x[..., 0] - c


# charts -------------------------------------------------------------------

def lift_array(z, t=0.0):
    """Poincare disk (z, t) to hyperboloid coordinates, as an ndarray."""
    z1, z2 = float(z[0]), float(z[1])
    r2 = z1 * z1 + z2 * z2
    if r2 >= 1.0:
        raise DomainError(f"|z| = {math.sqrt(r2)} is not < 1")
    d = 1.0 - r2
    return np.array([(1.0 + r2) / d, 2.0 * z1 / d, 2.0 * z2 / d, float(t)])


def lift_disk(p):
    return AmbientPoint(lift_array(p.z, p.t), Space.H2R)


def project_array(x):
    x = np.asarray(x, dtype=float)
    return x[1:3] / (1.0 + x[0])


def project_disk(p):
    if p.tag != Space.H2R:
        raise ModelMismatchError("project_disk needs a point of H2xR")
    x = p.array
    z = project_array(x)
    return DiskPoint((z[0], z[1]), x[3])


def disk_to_klein(z):
    z = np.asarray(z, dtype=float)
    return 2.0 * z / (1.0 + np.sum(z * z, axis=-1, keepdims=True))


def klein_to_disk(k):
    k = np.asarray(k, dtype=float)
    r2 = np.sum(k * k, axis=-1, keepdims=True)
    return k / (1.0 + np.sqrt(1.0 - r2))


def disk_conformal_factor(z):
    """Factor lambda with g = lambda |dz|^2 in the Poincare disk."""
    r2 = float(z[0]) ** 2 + float(z[1]) ** 2
    return 4.0 / (1.0 - r2) ** 2


def disk_distance(z, w):
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    num = 2.0 * np.sum((z - w) ** 2)
    den = (1.0 - np.sum(z * z)) * (1.0 - np.sum(w * w))
    return math.acosh(1.0 + num / den)


def disk_vector_to_hyperboloid(z, dz):
    """Push a disk tangent vector dz at z forward to the hyperboloid."""
    z = np.asarray(z, dtype=float)
    dz = np.asarray(dz, dtype=float)
    d = 1.0 - z @ z
    zd = z @ dz
    return np.concatenate([[4.0 * zd / d**2], 2.0 * dz / d + 4.0 * z * zd / d**2])


# geodesics and isometries -------------------------------------------------

def geodesic_point(g, s):
    x = g.hyperboloid_point(s)
    z = x[1:3] / (1.0 + x[0])
    return DiskPoint((z[0], z[1]), 0.0)


def parabolic_map(t, x, y):
    """F_t on disk coordinates; fixes the ideal point (1, 0)."""
    q = (x - 1.0) ** 2 + y**2
    den = 4.0 + 4.0 * t * y + t * t * q
    return 1.0 + 4.0 * (x - 1.0) / den, (4.0 * y + 2.0 * t * q) / den


def parabolic_matrix(t):
    """F_t as a Lorentz matrix on hyperboloid coordinates (x1, x2, x3).

    F_t = exp(t A) with A x = <e3, x> l - <l, x> e3, l = (1, 1, 0) the fixed
    null direction; A is nilpotent so the series stops at t^2.
    """
    t = float(t)
    h = 0.5 * t * t
    return np.array([
        [1.0 + h, -h, t],
        [h, 1.0 - h, t],
        [t, -t, 1.0],
    ])


def parabolic_array(t, x):
    """Apply F_t to an ambient point of H2xR (height unchanged)."""
    x = np.asarray(x, dtype=float)
    return np.concatenate([parabolic_matrix(t) @ x[:3], x[3:]])


def parabolic_isometry(t, p):
    x, y = parabolic_map(float(t), p.z[0], p.z[1])
    return DiskPoint((x, y), p.t)


def rotation_array(v, x):
    c, s = math.cos(v), math.sin(v)
    x = np.asarray(x, dtype=float)
    return np.array([x[0], c * x[1] - s * x[2], s * x[1] + c * x[2], x[3]])


def rotation_isometry(v, p):
    """Rotate about the axis {(1,0,0)} x R by angle v (either model)."""
    return AmbientPoint(rotation_array(float(v), p.array), p.tag)


def _ideal_angle(x):
    return math.atan2(x[2] / x[0], x[1] / x[0]) % TWO_PI


def _foliation_frame(base):
    # p0: closest point of the base to the origin; w: unit velocity of the
    # base there; n = J w, the unit normal pointing to the exterior side
    g = base.geodesic
    p0 = g.hyperboloid_point(0.0)
    w = g.hyperboloid_velocity(0.0)
    z0 = p0[1:3] / (1.0 + p0[0])
    dz = w[1:3] / (1.0 + p0[0]) - p0[1:3] * w[0] / (1.0 + p0[0]) ** 2
    n = disk_vector_to_hyperboloid(z0, np.array([-dz[1], dz[0]]))
    n /= math.sqrt(-n[0] ** 2 + n[1] ** 2 + n[2] ** 2)
    return p0, n, w


def foliation_plane(base, t):
    """The leaf P_gamma(t) of the foliation by vertical planes along gamma.

    gamma starts at the point of the base geodesic closest to the origin,
    leaves it orthogonally towards the exterior side, and P_gamma(t) is the
    vertical plane orthogonal to gamma at gamma(t).
    """
    p0, n, w = _foliation_frame(base)
    center = math.cosh(t) * p0 + math.sinh(t) * n
    # w is orthogonal to span(p0, n) and therefore parallel along gamma
    return VerticalPlane(Geodesic(_ideal_angle(center - w), _ideal_angle(center + w)))


def foliation_geodesic(base):
    """The oriented geodesic gamma along which ``foliation_plane`` sweeps."""
    p0, n, _ = _foliation_frame(base)
    return Geodesic(_ideal_angle(p0 - n), _ideal_angle(p0 + n))
