"""Scalar quadrature kernels with backend selection.

The compiled extension ``ksurf._kernels`` is used when it has been built;
otherwise the pure-Python twin ``ksurf._kernels_py`` is used.  Setting the
environment variable ``KSURF_PURE_PYTHON=1`` forces the fallback.
"""

import os

from .errors import QuadratureError

if os.environ.get("KSURF_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _backend
    BACKEND = "python"
else:
    try:
        from . import _kernels as _backend
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _backend
        BACKEND = "python"

KIND_HEIGHT = _backend.KIND_HEIGHT
KIND_ARCLENGTH = _backend.KIND_ARCLENGTH
KIND_FPRIME = _backend.KIND_FPRIME

height_integrand = _backend.height_integrand
height_integrand_s = _backend.height_integrand_s
fprime = _backend.fprime
fprime_s = _backend.fprime_s


def quad(kind, a, b, K, eps, tol=1e-10):
    """Integrate a kernel integrand over [a, b] to absolute tolerance ``tol``.

    Returns ``(value, error_estimate)``; raises QuadratureError when the
    interval budget is exhausted first.
    """
    value, error, ok = _backend.integrate(kind, float(a), float(b), float(K), float(eps), float(tol))
    if not ok:
        raise QuadratureError(f"adaptive GK15 did not reach tol={tol:g} on [{a}, {b}]", error)
    return value, error


def quad_to_upper(kind, starts, b, K, eps, tol=1e-10):
    """Batched ``quad`` from each entry of ``starts`` to a common upper limit."""
    values, errors, ok = _backend.integrate_to_upper(
        kind, [float(a) for a in starts], float(b), float(K), float(eps), float(tol))
    if not ok:
        raise QuadratureError(f"adaptive GK15 did not reach tol={tol:g}", max(errors))
    return values, errors
