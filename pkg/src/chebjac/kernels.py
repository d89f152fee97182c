"""Stable scalar kernels: Stirling-series gamma factors, stabilized powers,
three-term recurrence coefficients, endpoint values and ratios, and the
asymptotic-series / orthonormality constants built from them.

Everything here avoids evaluating the gamma function at large arguments:
ratios of gamma functions are formed from the truncated Stirling series
S(z) = Gamma(z) e^z z^(1/2-z) / sqrt(2 pi), which stays O(1) for all z >= 9.
"""

import math
from dataclasses import dataclass

import numpy as np

from .parameters import JacobiParameters, ParameterRangeError

# Stirling series Gamma(z) ~ sqrt(2 pi) z^(z-1/2) e^(-z) sum a_n / z^n.
# Exact rational coefficients (ratio of two classical integer sequences),
# converted to floating point once at import.
_STIRLING_RATIONALS = (
    (1, 1),
    (1, 12),
    (1, 288),
    (-139, 51840),
    (-571, 2488320),
    (163879, 209018880),
    (5246819, 75246796800),
    (-534703531, 902961561600),
    (-4483131259, 86684309913600),
    (432261921612371, 514904800886784000),
    (6232523202521089, 86504006548979712000),
    (-25834629665134204969, 13494625021640835072000),
    (-1579029138854919086429, 9716130015581401251840000),
    (746590869962651602203151, 116593560186976815022080000),
    (1511513601028097903631961, 2798245444487443560529920000),
    (-8849272268392873147705987190261, 299692087104605205332754432000000),
    (-142801712490607530608130701097701, 57540880724084199423888850944000000),
)

STIRLING_COEFFICIENTS = tuple(n / d for n, d in _STIRLING_RATIONALS)

# (z_min, number of terms) rows: the smallest truncation length keeping the
# relative truncation error below eps/20 ~ 1.1102e-17 for z >= z_min.
STIRLING_THRESHOLDS = (
    (3275.0, 4),
    (591.0, 5),
    (196.0, 6),
    (92.0, 7),
    (53.0, 8),
    (35.0, 9),
    (26.0, 10),
    (20.0, 11),
    (17.0, 12),
    (14.0, 13),
    (12.0, 14),
    (11.0, 15),
    (10.0, 16),
    (9.0, 17),
)

STIRLING_Z_FLOOR = 9.0

# ascending copies for vectorized threshold lookup
_ZMIN_ASC = np.array([row[0] for row in reversed(STIRLING_THRESHOLDS)])
_NTERMS_ASC = np.array([row[1] for row in reversed(STIRLING_THRESHOLDS)], dtype=np.int64)


def stirling_terms(z: float) -> int:
    """Number of Stirling-series terms prescribed for argument z >= 9."""
    if z < STIRLING_Z_FLOOR:
        raise ValueError(f"Stirling series requires z >= 9, got {z}")
    for z_min, n in STIRLING_THRESHOLDS:
        if z >= z_min:
            return n
    raise AssertionError("unreachable")


def stirling_factor(z: float) -> float:
    """Truncated Stirling series sum a_n / z^n at the tabulated length.

    Gamma(z) = sqrt(2 pi) z^(z-1/2) e^(-z) stirling_factor(z) to relative
    accuracy below machine epsilon for z >= 9.
    """
    n = stirling_terms(z)
    acc = 0.0
    for j in range(n - 1, 0, -1):
        acc = (acc + STIRLING_COEFFICIENTS[j]) / z
    return acc + 1.0


def stirling_factor_vec(z: np.ndarray) -> np.ndarray:
    """Vectorized stirling_factor with the per-element term count."""
    z = np.asarray(z, dtype=float)
    if np.any(z < STIRLING_Z_FLOOR):
        raise ValueError("Stirling series requires z >= 9")
    idx = np.searchsorted(_ZMIN_ASC, z, side="right") - 1
    nterms = _NTERMS_ASC[idx]
    out = np.empty_like(z)
    for n in np.unique(nterms):
        sel = nterms == n
        zz = z[sel]
        acc = np.zeros_like(zz)
        for j in range(n - 1, 0, -1):
            acc = (acc + STIRLING_COEFFICIENTS[j]) / zz
        out[sel] = acc + 1.0
    return out


def one_plus_pow(x: float, y: float) -> float:
    """(1+x)^y as exp(y log1p x); accurate for tiny |x| with large y."""
    if 1.0 + x <= 0.0:
        raise ValueError(f"one_plus_pow requires 1 + x > 0, got x = {x}")
    return math.exp(y * math.log1p(x))


def _one_plus_pow_vec(x, y):
    return np.exp(y * np.log1p(x))


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """(A_n, B_n, C_n) of P_{n+1} = (A_n x + B_n) P_n - C_n P_{n-1}."""

    A: float
    B: float
    C: float


def recurrence_coefficients(p: JacobiParameters, n: int) -> RecurrenceCoefficients:
    """Three-term recurrence coefficients at degree n.

    At n = 0 the (2n+alpha+beta) factor can vanish; the convention
    B_0 = (alpha-beta)/2, C_0 = 0 resolves the 0/0 (C_0 multiplies P_{-1} = 0).
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b = p.alpha, p.beta
    if n == 0:
        return RecurrenceCoefficients((a + b) / 2 + 1.0, (a - b) / 2, 0.0)
    s = a + b
    two_n_s = 2 * n + s
    den = 2 * (n + 1) * (n + s + 1)
    A = (two_n_s + 1) * (two_n_s + 2) / den
    B = (a - b) * (a + b) * (two_n_s + 1) / (den * two_n_s)
    C = 2 * (n + a) * (n + b) * (two_n_s + 2) / (den * two_n_s)
    return RecurrenceCoefficients(A, B, C)


def endpoint_value(p: JacobiParameters, n: int, end: int) -> float:
    """P_n at x = +1 or x = -1 via the stable running Pochhammer product.

    P_n(1) = binom(n+alpha, n) and P_n(-1) = (-1)^n binom(n+beta, n).
    """
    if end not in (1, -1):
        raise ValueError("end must be +1 or -1")
    g = p.alpha if end == 1 else p.beta
    value = 1.0
    for k in range(1, n + 1):
        value *= (g + k) / k
    return value if end == 1 or n % 2 == 0 else -value


def forward_ratio(p: JacobiParameters, n: int, end: int) -> float:
    """Endpoint ratio P_{n+1}(x0)/P_n(x0) for x0 = +1 or -1."""
    if end == 1:
        return (n + p.alpha + 1) / (n + 1)
    if end == -1:
        return -(n + p.beta + 1) / (n + 1)
    raise ValueError("end must be +1 or -1")


def backward_ratio(p: JacobiParameters, n: int, end: int) -> float:
    """Endpoint ratio v_{n+1}(x0)/v_n(x0) of the adjoint recurrence, n >= 1."""
    if n < 1:
        raise ValueError("backward ratio is undefined at n = 0 (v_0 = 0)")
    a, b = p.alpha, p.beta
    s = a + b
    core = (n + 1) * (s + n + 1) * (s + 2 * n) / (n * (s + 2 * n + 2))
    if end == 1:
        return core / (n + b)
    if end == -1:
        return -core / (n + a)
    raise ValueError("end must be +1 or -1")


def _asy_switch_degree(p: JacobiParameters) -> int:
    m = min(p.alpha, p.beta)
    return 8 + math.ceil(abs(m)) if m != 0.0 else 8


def _asymptotic_coefficient_closed(a, b, n, m):
    # Stirling-based closed form; n may be an ndarray (with scalar a, b, m).
    d = 2.0 * n + (a + b) + m + 2.0
    lead = math.exp(m) / (4.0**m * math.sqrt(math.pi))
    t1 = _one_plus_pow_vec((a - b - m) / d, n + a + 0.5)
    t2 = _one_plus_pow_vec((b - a - m) / d, n + b + 0.5)
    body = np.power(np.asarray(n, dtype=float), m + 0.5) * _one_plus_pow_vec(
        ((a + b) + m + 2.0) / (2.0 * n), m + 0.5
    )
    s = (
        stirling_factor_vec(n + a + 1.0)
        * stirling_factor_vec(n + b + 1.0)
        / stirling_factor_vec(2.0 * n + m + (a + b) + 2.0)
    )
    return lead * t1 * t2 / body * s


def asymptotic_coefficient(p: JacobiParameters, n: int, m: int) -> float:
    """Coefficient C_{n,m} of the interior asymptotic series.

    Uses the Stirling closed form once n + min(alpha, beta) >= 8; smaller n
    are filled by the downward degree recurrence
    C_{n-1,m} = C_{n,m} (n + (s+m+1)/2)(n + (s+m)/2) / ((n+alpha)(n+beta))
    from the first representable anchor degree.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    a, b = p.alpha, p.beta
    if n + min(a, b) >= 8.0:
        return float(_asymptotic_coefficient_closed(a, b, n, m))
    n0 = _asy_switch_degree(p)
    value = float(_asymptotic_coefficient_closed(a, b, n0, m))
    s = a + b
    for k in range(n0, n, -1):
        value *= (k + (s + m + 1) / 2) * (k + (s + m) / 2) / ((k + a) * (k + b))
    return value


def asymptotic_coefficient_table(p: JacobiParameters, nmax: int, m_count: int) -> np.ndarray:
    """C_{n,m} for n = 0..nmax, m = 0..m_count-1, shape (nmax+1, m_count).

    Column m = 0 comes from the closed form (downward recurrence below the
    switch degree); higher m follow the exact order recurrence
    C_{n,m} = C_{n,m-1} / (2 (2n + alpha + beta + m + 1)).
    """
    a, b = p.alpha, p.beta
    n0 = min(_asy_switch_degree(p), nmax)
    col = np.empty(nmax + 1)
    if n0 < nmax or n0 + min(a, b) >= 8.0:
        hi = np.arange(n0, nmax + 1, dtype=float)
        col[n0:] = _asymptotic_coefficient_closed(a, b, hi, 0)
    else:
        col[n0] = asymptotic_coefficient(p, n0, 0)
    s = a + b
    for k in range(n0, 0, -1):
        col[k - 1] = col[k] * (k + (s + 1) / 2) * (k + s / 2) / ((k + a) * (k + b))
    table = np.empty((nmax + 1, m_count))
    table[:, 0] = col
    ns = np.arange(nmax + 1, dtype=float)
    for m in range(1, m_count):
        table[:, m] = table[:, m - 1] / (2.0 * (2.0 * ns + s + m + 1.0))
    return table


def _orthonormality_switch_degree(p: JacobiParameters) -> int:
    m = min(p.alpha, p.beta, p.alpha + p.beta, 0.0)
    return 8 + math.ceil(-m) if m < 0.0 else 8


def _orthonormality_closed(a, b, n):
    n = np.asarray(n, dtype=float)
    front = 2.0 ** ((a + b) + 1.0) / (2.0 * n + (a + b) + 1.0)
    q1 = _one_plus_pow_vec(-b / (n + (a + b) + 1.0), n / 2 + a + 0.25) * _one_plus_pow_vec(
        -a / (n + (a + b) + 1.0), n / 2 + b + 0.25
    )
    q2 = _one_plus_pow_vec(a / (n + 1.0), n / 2 + 0.25) * _one_plus_pow_vec(
        b / (n + 1.0), n / 2 + 0.25
    )
    s = (
        stirling_factor_vec(n + a + 1.0)
        * stirling_factor_vec(n + b + 1.0)
        / (stirling_factor_vec(n + (a + b) + 1.0) * stirling_factor_vec(n + 1.0))
    )
    return front * q1 * q2 * s


def _orthonormality_direct(a, b, n):
    # the gamma pair is multiplied first so the result commutes bitwise
    # under alpha <-> beta
    pair = math.gamma(n + a + 1.0) * math.gamma(n + b + 1.0)
    return (
        2.0 ** ((a + b) + 1.0)
        * pair
        / ((2.0 * n + (a + b) + 1.0) * math.gamma(n + (a + b) + 1.0) * math.gamma(n + 1.0))
    )


def orthonormality_constant(p: JacobiParameters, n: int) -> float:
    """Squared weighted L2 norm of P_n, the inverse-transform diagonal."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b = p.alpha, p.beta
    if n + min(a, b, a + b, 0.0) >= 8.0:
        return float(_orthonormality_closed(a, b, n))
    return _orthonormality_direct(a, b, n)


def orthonormality_table(p: JacobiParameters, nmax: int) -> np.ndarray:
    """Orthonormality constants for n = 0..nmax."""
    a, b = p.alpha, p.beta
    n0 = min(_orthonormality_switch_degree(p), nmax + 1)
    out = np.empty(nmax + 1)
    for n in range(n0):
        out[n] = _orthonormality_direct(a, b, n)
    if n0 <= nmax:
        out[n0:] = _orthonormality_closed(a, b, np.arange(n0, nmax + 1))
    return out


@dataclass(frozen=True)
class CoefficientTables:
    """Recurrence coefficients and Reinsch endpoint ratios for n <= nmax.

    rb_plus / rb_minus are indexed from n = 1 (index 0 holds NaN).  The
    *_inv arrays hold precomputed reciprocals for the division-free hot
    loops.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    rf_plus: np.ndarray
    rf_minus: np.ndarray
    rb_plus: np.ndarray
    rb_minus: np.ndarray
    rf_plus_inv: np.ndarray
    rf_minus_inv: np.ndarray
    rb_plus_inv: np.ndarray
    rb_minus_inv: np.ndarray

    @property
    def nmax(self) -> int:
        return len(self.A) - 1


def recurrence_tables(p: JacobiParameters, nmax: int) -> CoefficientTables:
    """Vectorized recurrence coefficients and endpoint ratios up to nmax."""
    a, b = p.alpha, p.beta
    s = a + b
    n = np.arange(nmax + 1, dtype=float)
    two_n_s = 2.0 * n + s
    den = 2.0 * (n + 1.0) * (n + s + 1.0)
    A = (two_n_s + 1.0) * (two_n_s + 2.0) / den
    with np.errstate(divide="ignore", invalid="ignore"):
        B = (a - b) * (a + b) * (two_n_s + 1.0) / (den * two_n_s)
        C = 2.0 * (n + a) * (n + b) * (two_n_s + 2.0) / (den * two_n_s)
    A[0] = s / 2 + 1.0
    B[0] = (a - b) / 2
    C[0] = 0.0

    rf_plus = (n + a + 1.0) / (n + 1.0)
    rf_minus = -(n + b + 1.0) / (n + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        core = (n + 1.0) * (s + n + 1.0) * (s + 2.0 * n) / (n * (s + 2.0 * n + 2.0))
        rb_plus = core / (n + b)
        rb_minus = -core / (n + a)
    rb_plus[0] = rb_minus[0] = np.nan

    arrays = (rf_plus, rf_minus, rb_plus, rb_minus)
    inverses = tuple(1.0 / arr for arr in arrays)
    tables = CoefficientTables(A, B, C, *arrays, *inverses)
    for arr in (A, B, C) + arrays + inverses:
        arr.flags.writeable = False
    return tables
