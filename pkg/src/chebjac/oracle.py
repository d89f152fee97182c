"""Slow independent references: extended-precision Jacobi evaluation, the
dense quadratic-cost forward transform, terminating-hypergeometric connection
coefficients, and a high-precision gamma.

Two extended-precision mechanisms are used, both beyond 30 significant
digits: mpmath (scalar paths) and compensated double-double arithmetic
(vectorized grid paths).  Nothing here is a performance claim.
"""

import math

import mpmath as mp
import numpy as np

from .parameters import JacobiParameters
from .trig import TrigPlanWorkspace

ORACLE_DPS = 40

_SPLITTER = 134217729.0  # 2^27 + 1, Dekker splitting constant


# -- double-double arithmetic on (hi, lo) ndarray pairs ----------------------

def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _two_prod(a, b):
    p = a * b
    aa = _SPLITTER * a
    ahi = aa - (aa - a)
    alo = a - ahi
    bb = _SPLITTER * b
    bhi = bb - (bb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def dd(hi, lo=0.0):
    return np.asarray(hi, dtype=float), np.asarray(lo, dtype=float)


def dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e = e + (x[1] + y[1])
    hi = s + e
    return hi, e - (hi - s)


def dd_neg(x):
    return -x[0], -x[1]

def dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    hi = p + e
    return hi, e - (hi - p)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_add(x, dd_neg(dd_mul(dd(q1), y)))
    q2 = (r[0] + r[1]) / y[0]
    hi = q1 + q2
    return hi, q2 - (hi - q1)


def dd_from_mp(value):
    hi = float(value)
    lo = float(value - mp.mpf(hi))
    return hi, lo


# -- references ---------------------------------------------------------------

def oracle_gamma(z: float):
    """Gamma(z) to >= 30 significant digits (mpmath), z > 0."""
    if z <= 0:
        raise ValueError("oracle_gamma requires z > 0")
    with mp.workdps(ORACLE_DPS):
        return mp.gamma(z)


def _mp_recurrence_coefficients(p: JacobiParameters, n: int):
    a, b = mp.mpf(p.alpha), mp.mpf(p.beta)
    if n == 0:
        return (a + b) / 2 + 1, (a - b) / 2, mp.mpf(0)
    s = a + b
    t = 2 * n + s
    den = 2 * (n + 1) * (n + s + 1)
    A = (t + 1) * (t + 2) / den
    B = (a - b) * (a + b) * (t + 1) / (den * t)
    C = 2 * (n + a) * (n + b) * (t + 2) / (den * t)
    return A, B, C


def oracle_jacobi_eval(p: JacobiParameters, n: int, theta: float):
    """P_n(cos theta) with every arithmetic step in extended precision."""
    if not 0.0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    with mp.workdps(ORACLE_DPS):
        x = mp.cos(mp.mpf(theta))
        p_prev, p_cur = mp.mpf(0), mp.mpf(1)
        for k in range(n):
            A, B, C = _mp_recurrence_coefficients(p, k)
            p_prev, p_cur = p_cur, (A * x + B) * p_cur - C * p_prev
        return p_cur


def _dd_recurrence_tables(p: JacobiParameters, nmax: int):
    """Recurrence coefficients as double-double arrays, n = 0..nmax."""
    a = dd(p.alpha)
    b = dd(p.beta)
    n = dd(np.arange(nmax + 1, dtype=float))
    s = dd_add(a, b)
    t = dd_add(dd_mul(dd(2.0), n), s)
    one = dd(np.ones(nmax + 1))
    den = dd_mul(dd(2.0), dd_mul(dd_add(n, one), dd_add(dd_add(n, s), one)))
    t1 = dd_add(t, one)
    t2 = dd_add(t1, one)
    A = dd_div(dd_mul(t1, t2), den)
    with np.errstate(divide="ignore", invalid="ignore"):
        B = dd_div(dd_mul(dd_mul(dd_add(a, dd_neg(b)), s), t1), dd_mul(den, t))
        C = dd_div(
            dd_mul(dd(2.0), dd_mul(dd_mul(dd_add(n, a), dd_add(n, b)), t2)),
            dd_mul(den, t),
        )
    # n = 0 convention: A_0 = (a+b)/2 + 1, B_0 = (a-b)/2, C_0 = 0
    a0 = dd_add(dd_mul(dd(0.5), s), dd(1.0))
    b0 = dd_mul(dd(0.5), dd_add(a, dd_neg(b)))
    for arr, val in ((A, a0), (B, b0), (C, dd(0.0))):
        arr[0][0] = float(val[0])
        arr[1][0] = float(val[1])
    return A, B, C


def _dd_angle_values(thetas):
    """cos(theta) for each angle, correctly rounded to double-double."""
    his = np.empty(len(thetas))
    los = np.empty(len(thetas))
    with mp.workdps(ORACLE_DPS):
        for i, t in enumerate(thetas):
            his[i], los[i] = dd_from_mp(mp.cos(mp.mpf(float(t))))
    return his, los


def _dd_lobatto_values(grid_n, rows):
    """cos(pi i / grid_n) at the exact rational angles, rounded to
    double-double."""
    his = np.empty(len(rows))
    los = np.empty(len(rows))
    with mp.workdps(ORACLE_DPS):
        for j, i in enumerate(rows):
            his[j], los[j] = dd_from_mp(mp.cospi(mp.mpf(int(i)) / grid_n))
    return his, los


def _dd_recurrence_run(p: JacobiParameters, n: int, x):
    A, B, C = _dd_recurrence_tables(p, max(n, 1))
    count = len(x[0])
    p_prev = dd(np.zeros(count))
    p_cur = dd(np.ones(count))
    for k in range(n):
        Ak = (A[0][k], A[1][k])
        Bk = (B[0][k], B[1][k])
        Ck = (C[0][k], C[1][k])
        p_next = dd_add(
            dd_mul(dd_add(dd_mul(Ak, x), Bk), p_cur),
            dd_neg(dd_mul(Ck, p_prev)),
        )
        p_prev, p_cur = p_cur, p_next
    return p_cur


def oracle_jacobi_grid(p: JacobiParameters, n: int, thetas) -> tuple:
    """P_n(cos theta) over an angle vector in double-double precision.

    Returns (hi, lo) arrays; hi + lo carries ~32 significant digits.
    """
    thetas = np.asarray(thetas, dtype=float)
    return _dd_recurrence_run(p, n, _dd_angle_values(thetas))


def oracle_jacobi_lobatto(p: JacobiParameters, n: int, grid_n: int, rows) -> tuple:
    """P_n at the exact Lobatto points cos(pi i / grid_n) for the given row
    indices, in double-double precision."""
    return _dd_recurrence_run(p, n, _dd_lobatto_values(grid_n, rows))


def oracle_forward(p: JacobiParameters, coeffs, max_n: int = 8192) -> np.ndarray:
    """Dense quadratic-cost forward transform: accumulate P c over the grid
    in double-double while running the recurrence, then analyze.

    The quadratic cost limits this to moderate N (default cap 8192).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    n = len(coeffs) - 1
    if n > max_n:
        raise ValueError(f"oracle_forward is quadratic; N = {n} exceeds {max_n}")
    thetas = np.pi * np.arange(n + 1) / max(n, 1)
    A, B, C = _dd_recurrence_tables(p, max(n, 1))
    x = _dd_angle_values(thetas)
    p_prev = dd(np.zeros(n + 1))
    p_cur = dd(np.ones(n + 1))
    acc = dd_mul(dd(coeffs[0]), p_cur)
    for k in range(n):
        Ak = (A[0][k], A[1][k])
        Bk = (B[0][k], B[1][k])
        Ck = (C[0][k], C[1][k])
        p_next = dd_add(
            dd_mul(dd_add(dd_mul(Ak, x), Bk), p_cur),
            dd_neg(dd_mul(Ck, p_prev)),
        )
        p_prev, p_cur = p_cur, p_next
        acc = dd_add(acc, dd_mul(dd(coeffs[k + 1]), p_cur))
    values = acc[0] + acc[1]
    return TrigPlanWorkspace(max(n, 1)).chebyshev_analysis(values) if n >= 1 else coeffs.copy()


def connection_coefficients(source: JacobiParameters, target: JacobiParameters,
                            n: int, max_n: int = 256) -> np.ndarray:
    """Coefficients c_{n,k} with P_n^(source) = sum_k c_{n,k} P_k^(target),
    via the terminating 3F2 sum in extended precision."""
    if n > max_n:
        raise ValueError(f"connection coefficients limited to n <= {max_n}")
    g, d = mp.mpf(source.alpha), mp.mpf(source.beta)
    a, b = mp.mpf(target.alpha), mp.mpf(target.beta)
    out = np.empty(n + 1)
    # the alternating terminating sum cancels catastrophically; scale the
    # working precision with the degree
    with mp.workdps(ORACLE_DPS + 2 * n):
        for k in range(n + 1):
            # (2k+a+b+1) Gamma(k+a+b+1) -> Gamma(k+a+b+2) (2k+a+b+1)/(k+a+b+1);
            # the ratio's limit at k = 0, a+b = -1 is 1
            if k == 0 and a + b + 1 == 0:
                pole_free = mp.gamma(k + a + b + 2)
            else:
                pole_free = (
                    mp.gamma(k + a + b + 2) * (2 * k + a + b + 1) / (k + a + b + 1)
                )
            front = (
                mp.rf(n + g + d + 1, k)
                * mp.rf(k + g + 1, n - k)
                * pole_free
                / (mp.factorial(n - k) * mp.gamma(2 * k + a + b + 2))
            )
            # terminating 3F2 at unit argument: numerator parameter k - n
            term = mp.mpf(1)
            total = mp.mpf(1)
            for i in range(n - k):
                term *= (
                    (k - n + i)
                    * (n + k + g + d + 1 + i)
                    * (k + a + 1 + i)
                    / ((k + g + 1 + i) * (2 * k + a + b + 2 + i) * (i + 1))
                )
                total += term
            out[k] = float(front * total)
    return out
