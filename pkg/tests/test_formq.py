import math

import pytest
from hypothesis import given, strategies as st

from ksurf.ambient import Space
from ksurf.errors import GeometryError, NotAKSurfaceError
from ksurf.estimates import chi_of_nu
from ksurf.formq import conformality_defect, conformality_sweep, form_A, scaled_height
from ksurf.helicoidal import build_helicoidal, cosh_profile
from ksurf.rotational import RotationalSphere
from ksurf.surface import ParamSurface, fundamental_forms, vertical_plane_surface


@given(st.floats(0.1, 10.0), st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.1, 5), st.floats(-1, 1))
def test_defect_is_zero_for_proportional_forms(c, b12, b11, b22_extra, sign):
    b22 = b12 * b12 / b11 + b22_extra
    s = 1.0 if sign >= 0 else -1.0
    assert conformality_defect((s * c * b11, s * c * b12, s * c * b22), (b11, b12, b22)) < 1e-12


def test_defect_detects_non_proportional_forms():
    assert conformality_defect((1.0, 0.0, 2.0), (1.0, 0.0, 1.0)) == pytest.approx(1.0 / 2.0)
    assert conformality_defect((1.0, 0.5, 1.0), (1.0, 0.0, 1.0)) == pytest.approx(0.5)


@pytest.mark.parametrize("tag", [Space.H2R, Space.S2R])
@pytest.mark.parametrize("K", [0.5, 1.0, 4.0])
def test_sweep_vanishes_on_spheres(tag, K):
    s = RotationalSphere(K, 0.0, tag).surface()
    summary = conformality_sweep(s, K, grid=12)
    assert summary.passed and summary.max_defect < 1e-6
    assert summary.max_pair_residual < 1e-8
    assert summary.definite_agreement
    assert set(summary.to_dict()) == {"max_defect", "mean_defect", "grid", "pass"}


@given(st.floats(-0.95, 0.95), st.floats(0.0, 6.28))
def test_pair_curvature(u, v):
    s = RotationalSphere(1.0, 0.0, Space.S2R).surface()
    r = form_A(s, 1.0, u, v)
    assert abs(r.K_pair - chi_of_nu(r.nu, 1.0, 1)) < 1e-15
    assert r.pair_residual < 1e-8
    assert r.det_A > 0


def test_controls_exceed_threshold():
    sphere = RotationalSphere(1.0, 0.0, Space.H2R).surface()
    perturbed = scaled_height(sphere, 1.05)
    assert conformality_sweep(perturbed, None, grid=12).max_defect > 1e-4
    hel = build_helicoidal(cosh_profile(), 8, 8, t_range=(-2.0, 2.0), y_window=(-1.5, 1.5))
    assert conformality_sweep(hel, None, grid=12).max_defect > 1e-4


def test_strict_mode_rejects_wrong_K():
    s = RotationalSphere(1.0, 0.0, Space.H2R).surface()
    with pytest.raises(NotAKSurfaceError):
        form_A(s, 2.0, 0.1, 0.1)
    # non-strict mode evaluates with the supplied constant
    r = form_A(s, 2.0, 0.1, 0.1, strict=False)
    assert r.K == 2.0


def test_scaled_height():
    s = RotationalSphere(1.0, 0.0, Space.S2R).surface()
    t = scaled_height(s, 2.0)
    assert t.position(0.3, 0.2)[3] == pytest.approx(2.0 * s.position(0.3, 0.2)[3], abs=1e-15)
    assert fundamental_forms(t, 0.3, 0.2, with_intrinsic=False).K_ext != pytest.approx(1.0, abs=1e-3)
    with pytest.raises(GeometryError):
        scaled_height(s, 0.0)


def test_flat_surface_has_indefinite_II():
    with pytest.raises(GeometryError):
        form_A(vertical_plane_surface(Space.H2R), None, 0.1, 0.1)


def test_defect_is_chart_independent():
    # a sheared chart (a, b) -> (a, b + a/2) is not orthogonal, yet A stays a multiple of II
    sphere = RotationalSphere(2.0, 0.0, Space.H2R)
    base = sphere.surface()

    def d1(a, b):
        pu, pv = sphere.d1(a, b + 0.5 * a)
        return pu + 0.5 * pv, pv

    def d2(a, b):
        puu, puv, pvv = sphere.d2(a, b + 0.5 * a)
        return puu + puv + 0.25 * pvv, puv + 0.5 * pvv, pvv

    sheared = ParamSurface(Space.H2R, lambda a, b: sphere.chart(a, b + 0.5 * a), base.domain, d1=d1, d2=d2)
    for a, b in [(0.4, 0.0), (-0.6, 1.0), (0.1, 2.5)]:
        r = form_A(sheared, 2.0, a, b)
        assert abs(fundamental_forms(sheared, a, b, with_intrinsic=False).I12) > 1e-3
        assert r.defect < 1e-9
