"""Pure-Python scalar kernels.

Mirror of ``_kernels.pyx``; the two must stay operation-for-operation
identical so that both backends return the same doubles.
"""

import math

KIND_HEIGHT = 0
KIND_ARCLENGTH = 1
KIND_FPRIME = 2

LIMIT = 256
SERIES_S_HEIGHT = 1e-6
SERIES_S_FPRIME = 1e-4
ROUNDOFF = 50.0 * 2.220446049250313e-16

# 15-point Kronrod nodes/weights and embedded 7-point Gauss weights (QUADPACK qk15)
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def height_integrand_s(s, K, eps):
    """Profile height integrand written in s = 1 - u**2 >= 0."""
    x = s / K
    y = -eps * x
    if s < SERIES_S_HEIGHT:
        y2 = y * y
        b = 1.0 + 0.5 * y + y2 / 12.0 - y2 * y2 / 720.0
    else:
        b = y / (-math.expm1(-y))
    return math.sqrt(b / K)


def height_integrand(u, K, eps):
    return height_integrand_s((1.0 - u) * (1.0 + u), K, eps)


def fprime_s(s, K, eps):
    w = -eps * s / K
    if s < SERIES_S_FPRIME:
        term = 1.0
        e = 1.0
        for m in range(1, 8):
            term = term * w / (m + 1)
            e += term
    else:
        e = math.expm1(w) / w
    return math.sqrt(e / K)


def fprime(nu, K, eps):
    return fprime_s((1.0 - nu) * (1.0 + nu), K, eps)


def _eval(kind, x, K, eps):
    if kind == KIND_HEIGHT:
        return height_integrand_s((1.0 - x) * (1.0 + x), K, eps)
    if kind == KIND_ARCLENGTH:
        sx = math.sin(x)
        return height_integrand_s(sx * sx, K, eps)
    return fprime_s((1.0 - x) * (1.0 + x), K, eps)


def _gk15(kind, a, b, K, eps):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = _eval(kind, center, K, eps)
    resk = fc * WGK[7]
    resg = fc * WG[3]
    for j in range(7):
        dx = half * XGK[j]
        f1 = _eval(kind, center - dx, K, eps)
        f2 = _eval(kind, center + dx, K, eps)
        resk += WGK[j] * (f1 + f2)
        if j % 2 == 1:
            resg += WG[j // 2] * (f1 + f2)
    # |K15 - G7| can vanish by accident; keep a round-off floor as QUADPACK does
    err = max(abs((resk - resg) * half), ROUNDOFF * abs(resk * half))
    return resk * half, err


def integrate(kind, a, b, K, eps, tol):
    """Globally adaptive GK15 over [a, b]; returns (value, error, converged)."""
    if a == b:
        return 0.0, 0.0, True
    lo = [0.0] * LIMIT
    hi = [0.0] * LIMIT
    val = [0.0] * LIMIT
    err = [0.0] * LIMIT
    lo[0] = a
    hi[0] = b
    val[0], err[0] = _gk15(kind, a, b, K, eps)
    n = 1
    while True:
        total_err = 0.0
        worst = 0
        for i in range(n):
            total_err += err[i]
            if err[i] > err[worst]:
                worst = i
        if total_err <= tol:
            converged = True
            break
        if n >= LIMIT:
            converged = False
            break
        mid = 0.5 * (lo[worst] + hi[worst])
        lo[n] = mid
        hi[n] = hi[worst]
        hi[worst] = mid
        val[worst], err[worst] = _gk15(kind, lo[worst], mid, K, eps)
        val[n], err[n] = _gk15(kind, mid, hi[n], K, eps)
        n += 1
    total = 0.0
    for i in range(n):
        total += val[i]
    return total, total_err, converged


def integrate_to_upper(kind, starts, b, K, eps, tol):
    """Vectorised helper: integrals from each start to b.

    Returns (values, errors, all_converged) as Python lists.
    """
    values = []
    errors = []
    ok = True
    for a in starts:
        v, e, c = integrate(kind, float(a), b, K, eps, tol)
        values.append(v)
        errors.append(e)
        ok = ok and c
    return values, errors, ok
