import math

import pytest
from hypothesis import HealthCheck, settings

from ksurf.ambient import Space
from ksurf.helicoidal import PROFILES, build_helicoidal
from ksurf.rotational import RotationalSphere

settings.register_profile("ksurf", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ksurf")

HELICOID_Y = (-1.5, 1.5)
HELICOID_T = (-2.0, 2.0)


@pytest.fixture(scope="session")
def h_sphere():
    return RotationalSphere(1.0, 0.0, Space.H2R)


@pytest.fixture(scope="session")
def s_sphere():
    return RotationalSphere(1.0, 0.0, Space.S2R)


@pytest.fixture(scope="session", params=[Space.H2R, Space.S2R], ids=["h2r", "s2r"])
def sphere_surface(request):
    return RotationalSphere(1.0, 0.0, request.param).surface()


@pytest.fixture(scope="session", params=sorted(PROFILES))
def helicoid(request):
    p = PROFILES[request.param]()
    return p, build_helicoidal(p, 32, 32, t_range=HELICOID_T, y_window=HELICOID_Y)


def close(a, b, tol):
    return abs(a - b) <= tol


def wrap(a):
    return math.remainder(a, 2 * math.pi)
