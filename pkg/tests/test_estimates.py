import math

import pytest
from hypothesis import given, strategies as st

from ksurf.errors import DomainError
from ksurf.estimates import (EstimateParams, c_K, chi_of_nu, ck_table, f_prime, flat_bound, g_of_nu,
                             height_bound, normalize, profile_state, radial_laplacians,
                             verify_sphere_height)

# mpmath oracles (50 digits), frozen
C_K = {0.1: 62.677889751389000474, 1.0: 1.1983933613115831541, 10.0: 0.3215872103159501536}
G_HALF = {-1: 0.22147299125679003927 * -1, 1: 0.2844139186424936393}     # nu = 0.5, K = 2
CHI_HALF = {-1: 0.83389525655740747055, 1: 1.2133104389818702295}
FPRIME_HALF = {-1: 0.77888074792675105299, 1: 0.64571481962140510816}
FPRIME_ZERO = {-1: 1.3108324944320861759, 1: 0.7950600976206501073}   # nu = 0, K = 1

Ks = st.floats(0.05, 50.0)
eps = st.sampled_from([-1, 1])
nus = st.floats(-1.0, 1.0)


def test_values_at_equator_K1():
    assert abs(g_of_nu(0.0, 1.0, -1) + 0.3678794411714423216) < 1e-15
    assert abs(chi_of_nu(0.0, 1.0, -1) - 0.6321205588285576784) < 1e-15
    assert abs(chi_of_nu(0.0, 10.0, -1) - 0.95162581964040426836) < 1e-15
    for e in (-1, 1):
        assert abs(f_prime(0.0, 1.0, e) - FPRIME_ZERO[e]) < 1e-15


@pytest.mark.parametrize("e", [-1, 1])
def test_values_at_half(e):
    assert abs(g_of_nu(0.5, 2.0, e) - G_HALF[e]) < 1e-15
    assert abs(chi_of_nu(0.5, 2.0, e) - CHI_HALF[e]) < 1e-15
    assert abs(f_prime(0.5, 2.0, e) - FPRIME_HALF[e]) < 1e-15


@given(Ks, eps)
def test_special_values_at_poles(K, e):
    for nu in (-1.0, 1.0):
        assert abs(g_of_nu(nu, K, e) - e / (2 * K)) < 1e-12
        assert chi_of_nu(nu, K, e) == 1.0
        assert abs(f_prime(nu, K, e) - 1 / math.sqrt(K)) < 1e-12


@given(Ks)
def test_chi_at_zero_closed_form(K):
    assert abs(chi_of_nu(0.0, K, -1) - K * (1 - math.exp(-1 / K))) < 1e-12 * max(1.0, K)


@given(st.floats(1e-6, 1e-2), Ks, eps)
def test_series_and_direct_agree_on_overlap(s, K, e):
    nu = math.sqrt(1.0 - s)
    for fn in (g_of_nu, chi_of_nu, f_prime):
        a = fn(nu, K, e, method="series")
        b = fn(nu, K, e, method="direct")
        assert abs(a - b) < 1e-9 * max(1.0, abs(b))


@given(nus, Ks, eps)
def test_even_in_nu(nu, K, e):
    for fn in (g_of_nu, chi_of_nu, f_prime):
        assert fn(nu, K, e) == fn(-nu, K, e)


@given(nus, Ks, eps)
def test_chi_equals_one_plus_g_s(nu, K, e):
    s = 1.0 - nu * nu
    assert abs(chi_of_nu(nu, K, e) - (1.0 + g_of_nu(nu, K, e) * s)) < 1e-12 * max(1.0, abs(g_of_nu(nu, K, e)))


def test_direct_is_singular_at_pole():
    with pytest.raises(DomainError):
        g_of_nu(1.0, 1.0, -1, method="direct")
    with pytest.raises(ValueError):
        g_of_nu(0.2, 1.0, -1, method="taylor")
    with pytest.raises(DomainError):
        chi_of_nu(1.5, 1.0, -1)
    with pytest.raises(DomainError):
        f_prime(0.0, 1.0, 0)
    with pytest.raises(DomainError):
        g_of_nu(0.0, -1.0, 1)


@pytest.mark.parametrize("K", sorted(C_K))
def test_c_K_oracle(K):
    assert abs(c_K(K) - C_K[K]) < 1e-9 * C_K[K]


@given(st.floats(0.05, 50.0), st.floats(1.01, 3.0))
def test_c_K_decreasing(K, factor):
    assert c_K(K * factor) < c_K(K)


@given(Ks)
def test_c_K_scaled_bounds(K):
    # sqrt(K) f' = sqrt(expm1(x) / x) with x = (1 - nu^2) / K, between 1 and its nu = 0 value
    scaled = math.sqrt(K) * c_K(K)
    assert 1.0 <= scaled <= math.sqrt(K * math.expm1(1.0 / K))


def test_flat_bound_and_normalize():
    assert flat_bound(4.0) == 0.5
    with pytest.raises(DomainError):
        flat_bound(0.0)
    params, scale = normalize(2.0, -4.0)
    assert params == EstimateParams(0.5, -1, "curved") and scale == 0.5
    params, scale = normalize(2.0, 9.0)
    assert params.epsilon == 1 and abs(scale - 1 / 3) < 1e-16
    assert normalize(2.0, 0.0) == (EstimateParams(2.0, 0, "flat"), 1.0)
    with pytest.raises(DomainError):
        EstimateParams(1.0, -1, "bent")


@given(st.floats(0.1, 10.0), st.floats(0.1, 10.0))
def test_height_bound_scaling(K, k):
    assert abs(height_bound(K, -k) - c_K(K / k) / math.sqrt(k)) < 1e-12 * c_K(K / k)
    assert height_bound(K, 0.0) == flat_bound(K)


@pytest.mark.parametrize("K", [0.1, 1.0, 10.0])
def test_sphere_height_below_c_K(K):
    rep = verify_sphere_height(K)
    assert rep.passed and rep.half_slack > 0 and rep.full_slack > 0
    assert set(rep.to_dict()) == {"K", "c_K", "half_height", "height", "half_slack", "full_slack", "pass"}


def test_profile_state(h_sphere):
    st_ = profile_state(h_sphere, 0.5 * h_sphere.total_arc_length)
    assert abs(st_.u) < 1e-9
    assert abs(st_.lambda1 * st_.lambda2 - 1.0) < 1e-9


@pytest.mark.parametrize("K", [0.1, 1.0, 10.0])
def test_radial_laplacians(K):
    rep = radial_laplacians(K)
    assert rep.passed, rep.to_dict()
    assert rep.excluded and rep.samples
    with pytest.raises(DomainError):
        radial_laplacians(K, samples=0)


def test_ck_table():
    rows, monotone = ck_table([0.1, 1.0, 10.0])
    assert monotone and [r[0] for r in rows] == [0.1, 1.0, 10.0]
    assert abs(rows[1][2] - C_K[1.0]) < 1e-9
    _, monotone = ck_table([10.0, 1.0])
    assert not monotone
    with pytest.raises(DomainError):
        ck_table([])
