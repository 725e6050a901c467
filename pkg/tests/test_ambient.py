import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ksurf.ambient import (AmbientPoint, DiskPoint, Geodesic, Space, VerticalPlane, disk_conformal_factor,
                           disk_distance, disk_to_klein, foliation_geodesic, foliation_plane,
                           geodesic_point, klein_to_disk, lift_array, lift_disk, parabolic_array,
                           parabolic_isometry, parabolic_map, project_disk, quadric_residual,
                           rotation_isometry)
from ksurf.errors import DomainError, ModelMismatchError

radius = st.floats(0.0, 0.95)
angle = st.floats(0.0, 2 * math.pi)
height = st.floats(-50.0, 50.0)
param = st.floats(-3.0, 3.0)


def disk_point(r, a, t=0.0):
    return DiskPoint((r * math.cos(a), r * math.sin(a)), t)


# space tag and points --------------------------------------------------------

def test_space_parse():
    assert Space.parse("h2r") is Space.H2R
    assert Space.parse(1) is Space.S2R
    with pytest.raises(DomainError):
        Space.parse(0)
    with pytest.raises(DomainError):
        Space.parse("r3")


def test_ambient_point_validation():
    AmbientPoint((1.0, 0.0, 0.0, 2.0), Space.H2R)
    AmbientPoint((0.0, 0.6, 0.8, 2.0), Space.S2R)
    with pytest.raises(DomainError):
        AmbientPoint((1.1, 0.0, 0.0, 0.0), Space.H2R)
    with pytest.raises(DomainError):
        AmbientPoint((-1.0, 0.0, 0.0, 0.0), Space.H2R)  # lower sheet
    with pytest.raises(DomainError):
        AmbientPoint((1.0, 0.1, 0.0, 0.0), Space.S2R)


def test_disk_point_validation():
    with pytest.raises(DomainError):
        DiskPoint((1.0, 0.0))
    with pytest.raises(DomainError):
        DiskPoint((0.8, 0.8))


# charts ------------------------------------------------------------------------

def test_lift_examples():
    assert lift_disk(DiskPoint((0.0, 0.0), 0.0)).x == (1.0, 0.0, 0.0, 0.0)
    assert lift_disk(DiskPoint((0.0, 0.0), 3.5)).x == (1.0, 0.0, 0.0, 3.5)
    x = lift_disk(DiskPoint((0.5, 0.0))).array
    assert abs(-x[0] ** 2 + x[1] ** 2 + 1.0) < 1e-12


def test_lift_rejects_boundary():
    with pytest.raises(DomainError):
        lift_array((1.0, 0.0))


def test_project_examples():
    p = project_disk(AmbientPoint((1.0, 0.0, 0.0, 0.0), Space.H2R))
    assert p.z == (0.0, 0.0) and p.t == 0.0
    q = project_disk(AmbientPoint((math.cosh(1.0), math.sinh(1.0), 0.0, 2.0), Space.H2R))
    # oracle: tanh(1/2) = 0.46211715726000975850...
    assert abs(q.z[0] - 0.46211715726000975850) < 1e-15 and q.z[1] == 0.0 and q.t == 2.0
    with pytest.raises(ModelMismatchError):
        project_disk(AmbientPoint((1.0, 0.0, 0.0, 0.0), Space.S2R))


@given(radius, angle, height)
def test_lift_project_round_trip(r, a, t):
    p = disk_point(r, a, t)
    q = project_disk(lift_disk(p))
    assert abs(q.z[0] - p.z[0]) < 1e-12 and abs(q.z[1] - p.z[1]) < 1e-12 and q.t == p.t


@given(radius, angle)
def test_klein_round_trip(r, a):
    z = np.array([r * math.cos(a), r * math.sin(a)])
    assert np.allclose(klein_to_disk(disk_to_klein(z)), z, atol=1e-12)
    x = lift_array(z)
    assert np.allclose(disk_to_klein(z), x[1:3] / x[0], atol=1e-12)


# geodesics -------------------------------------------------------------------------

def test_geodesic_examples():
    g = Geodesic(math.pi, 0.0)
    assert geodesic_point(g, 0.0).z == pytest.approx((0.0, 0.0), abs=1e-15)
    assert geodesic_point(g, 1.0).z == pytest.approx((math.tanh(0.5), 0.0), abs=1e-15)
    with pytest.raises(DomainError):
        Geodesic(1.0, 1.0 + 2 * math.pi)


@given(angle, st.floats(0.2, 2 * math.pi - 0.2), st.floats(0.0, 4.0))
def test_geodesic_symmetric_arc_length(a, gap, s):
    g = Geodesic(a, a + gap)
    mid = geodesic_point(g, 0.0).z
    d_plus = disk_distance(mid, geodesic_point(g, s).z)
    d_minus = disk_distance(mid, geodesic_point(g, -s).z)
    assert abs(d_plus - s) < 1e-8 and abs(d_minus - s) < 1e-8


@given(angle, st.floats(0.2, 2 * math.pi - 0.2))
def test_geodesic_samples_collinear_in_klein(a, gap):
    g = Geodesic(a, a + gap)
    pts = np.array([disk_to_klein(np.array(geodesic_point(g, s).z)) for s in np.linspace(-3, 3, 13)])
    d = pts[-1] - pts[0]
    normal = np.array([-d[1], d[0]]) / np.linalg.norm(d)
    assert np.max(np.abs((pts - pts[0]) @ normal)) < 1e-9


@given(angle, st.floats(0.2, 2 * math.pi - 0.2), st.floats(-3.0, 3.0))
def test_arc_length_coordinate_inverts(a, gap, s):
    g = Geodesic(a, a + gap)
    assert abs(g.arc_length_of(g.hyperboloid_point(s)) - s) < 1e-9


def test_closest_point_to_origin():
    g = Geodesic(0.3, 2.1)
    d0 = disk_distance((0.0, 0.0), geodesic_point(g, 0.0).z)
    for s in (-0.1, 0.1):
        assert disk_distance((0.0, 0.0), geodesic_point(g, s).z) > d0


def test_vertical_plane_level_vanishes_on_plane():
    g = Geodesic(0.4, 3.0)
    plane = VerticalPlane(g)
    for s in np.linspace(-2, 2, 9):
        x = np.concatenate([g.hyperboloid_point(s), [1.3]])
        assert abs(plane.level(x)) < 1e-12


# isometries ------------------------------------------------------------------------

@given(radius, angle)
def test_parabolic_identity_at_zero(r, a):
    p = disk_point(r, a, 0.7)
    q = parabolic_isometry(0.0, p)
    assert q.z == pytest.approx(p.z, abs=1e-15) and q.t == p.t


@given(radius, angle, param, param)
def test_parabolic_group_law(r, a, s, t):
    x, y = r * math.cos(a), r * math.sin(a)
    lhs = parabolic_map(s, *parabolic_map(t, x, y))
    rhs = parabolic_map(s + t, x, y)
    assert abs(lhs[0] - rhs[0]) < 1e-10 and abs(lhs[1] - rhs[1]) < 1e-10


@given(radius, angle, param)
def test_parabolic_preserves_metric(r, a, t):
    # finite-difference Jacobian oracle
    x, y = r * math.cos(a), r * math.sin(a)
    h = 1e-6
    jx = (np.array(parabolic_map(t, x + h, y)) - np.array(parabolic_map(t, x - h, y))) / (2 * h)
    jy = (np.array(parabolic_map(t, x, y + h)) - np.array(parabolic_map(t, x, y - h))) / (2 * h)
    jac = np.column_stack([jx, jy])
    pulled = disk_conformal_factor(parabolic_map(t, x, y)) * jac.T @ jac / disk_conformal_factor((x, y))
    assert np.max(np.abs(pulled - np.eye(2))) < 1e-6


@given(param)
def test_parabolic_fixes_ideal_point(t):
    # boundary points near (1, 0) stay near (1, 0)
    for eps in (1e-3, 1e-5):
        x, y = parabolic_map(t, math.cos(eps), math.sin(eps))
        assert math.hypot(x - 1.0, y) < 10 * eps * (1 + t * t)


@given(radius, angle, param)
def test_parabolic_matrix_matches_disk_formula(r, a, t):
    z = (r * math.cos(a), r * math.sin(a))
    x = lift_array(z, 0.3)
    y = lift_array(parabolic_map(t, *z), 0.3)
    assert np.max(np.abs(parabolic_array(t, x) - y)) < 1e-9 * max(1.0, np.max(np.abs(y)))


@given(angle, radius, angle, height)
def test_rotation_preserves_quadric(v, r, a, t):
    p = lift_disk(disk_point(r, a, t))
    q = rotation_isometry(v, p)
    assert abs(quadric_residual(q.array, -1)) < 1e-12 * max(1.0, q.x[0] ** 2)
    assert q.x[0] == p.x[0] and q.x[3] == p.x[3]
    s = AmbientPoint((math.cos(a), math.sin(a) * math.cos(v), math.sin(a) * math.sin(v), t), Space.S2R)
    assert abs(quadric_residual(rotation_isometry(v, s).array, 1)) < 1e-12


def test_rotation_full_turn():
    p = lift_disk(DiskPoint((0.3, -0.2), 1.0))
    assert rotation_isometry(0.0, p).x == p.x
    assert np.allclose(rotation_isometry(2 * math.pi, p).array, p.array, atol=1e-12)
    axis = AmbientPoint((1.0, 0.0, 0.0, 5.0), Space.H2R)
    assert rotation_isometry(1.234, axis).x == axis.x


# foliation ------------------------------------------------------------------------

def test_foliation_at_zero_is_base():
    base = VerticalPlane(Geodesic(0.7, 2.9))
    leaf = foliation_plane(base, 0.0).geodesic
    assert {round(leaf.theta_minus, 12), round(leaf.theta_plus, 12)} == {0.7, 2.9}


def test_foliation_endpoints_converge():
    base = VerticalPlane(Geodesic(math.pi / 2, 3 * math.pi / 2))
    gamma = foliation_geodesic(base)
    assert {round(gamma.theta_minus, 12) % round(2 * math.pi, 12), round(gamma.theta_plus, 12)} <= {0.0, round(math.pi, 12)}
    gaps = []
    for t in (1, 2, 4, 8):
        g = foliation_plane(base, t).geodesic
        gaps.append(max(abs(math.remainder(g.theta_minus, 2 * math.pi)), abs(math.remainder(g.theta_plus, 2 * math.pi))))
    assert all(b < a for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 1e-2


@given(angle, st.floats(0.3, 2 * math.pi - 0.3), st.floats(-3.0, 3.0))
def test_foliation_leaves_orthogonal(a, gap, t):
    base = VerticalPlane(Geodesic(a, a + gap))
    gamma = foliation_geodesic(base)
    leaf = foliation_plane(base, t).geodesic
    # gamma(t) lies on the leaf and the two geodesics meet at right angles
    p = gamma.hyperboloid_point(gamma.arc_length_of(_gamma_point(base, t)))
    assert abs(VerticalPlane(leaf).level(np.concatenate([p, [0.0]]))) < 1e-9
    s = leaf.arc_length_of(p)
    v_leaf = leaf.hyperboloid_velocity(s)
    v_gamma = gamma.hyperboloid_velocity(gamma.arc_length_of(p))
    lorentz = -v_leaf[0] * v_gamma[0] + v_leaf[1] * v_gamma[1] + v_leaf[2] * v_gamma[2]
    assert abs(lorentz) < 1e-8


def _gamma_point(base, t):
    from ksurf.ambient import _foliation_frame

    p0, n, _ = _foliation_frame(base)
    return math.cosh(t) * p0 + math.sinh(t) * n
