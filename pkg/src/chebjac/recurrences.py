"""Jacobi polynomial and Jacobi expansion evaluation at angles theta:
forward three-term recurrence, the Clenshaw-Smith algorithm, and Reinsch's
modifications of both, with the breakpoint dispatcher used near the
interval endpoints.

Angles near theta = 0 (x = +1) and theta = pi (x = -1) lose accuracy under
the unmodified recurrences; Reinsch's forms replace the recurrence constant
B_n by endpoint ratios and damp the correction with x -+ 1, which is always
evaluated through the half-angle identities x - 1 = -2 sin^2(theta/2) and
x + 1 = 2 cos^2(theta/2).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .kernels import CoefficientTables, recurrence_tables
from .parameters import JacobiParameters

# unmodified algorithms are used on [pi/4, 3pi/4] (closed on the interior
# side), the Reinsch modifications outside
BREAK_LO = 0.25 * math.pi
BREAK_HI = 0.75 * math.pi

INTERIOR = 0
NEAR_PLUS_ONE = 1
NEAR_MINUS_ONE = -1


def classify_region(theta: float) -> int:
    """Region code for the recurrence dispatcher at one angle."""
    if theta < BREAK_LO:
        return NEAR_PLUS_ONE
    if theta > BREAK_HI:
        return NEAR_MINUS_ONE
    return INTERIOR


def classify_regions(thetas: np.ndarray) -> np.ndarray:
    regions = np.zeros(len(thetas), dtype=np.int8)
    regions[thetas < BREAK_LO] = NEAR_PLUS_ONE
    regions[thetas > BREAK_HI] = NEAR_MINUS_ONE
    return regions


@dataclass(frozen=True)
class AngleGrid:
    """The N+1 equally spaced angles theta_j = pi j / N.

    cos(theta_j) are the Chebyshev-Lobatto points in decreasing order.
    """

    n: int
    angles: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid parameter N must be >= 1")
        angles = np.pi * np.arange(self.n + 1) / self.n
        angles.flags.writeable = False
        object.__setattr__(self, "angles", angles)

    def __len__(self):
        return self.n + 1


def _check_theta(theta):
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")


def jacobi_forward(p: JacobiParameters, n_max: int, theta: float,
                   tables: CoefficientTables | None = None) -> np.ndarray:
    """P_0 .. P_{n_max} at cos(theta) by the unmodified forward recurrence."""
    _check_theta(theta)
    t = tables if tables is not None else recurrence_tables(p, max(n_max, 1))
    x = math.cos(theta)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    p_prev, p_cur = 0.0, 1.0
    for n in range(n_max):
        p_next = (t.A[n] * x + t.B[n]) * p_cur - t.C[n] * p_prev
        p_prev, p_cur = p_cur, p_next
        out[n + 1] = p_cur
    return out


def jacobi_forward_reinsch(p: JacobiParameters, n_max: int, theta: float, end: int,
                           tables: CoefficientTables | None = None) -> np.ndarray:
    """P_0 .. P_{n_max} at cos(theta) by Reinsch's modified forward recurrence
    anchored at x0 = end (+1 or -1)."""
    _check_theta(theta)
    t = tables if tables is not None else recurrence_tables(p, max(n_max, 1))
    if end == 1:
        half = math.sin(0.5 * theta)
        xm = -2.0 * half * half
        rf = t.rf_plus
    elif end == -1:
        half = math.cos(0.5 * theta)
        xm = 2.0 * half * half
        rf = t.rf_minus
    else:
        raise ValueError("end must be +1 or -1")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    pi_cur, d = 1.0, 0.0
    for n in range(n_max):
        d = (t.A[n] * xm * pi_cur + t.C[n] * d) / rf[n]
        pi_cur = (pi_cur + d) * rf[n]
        out[n + 1] = pi_cur
    return out


def clenshaw_smith(p: JacobiParameters, coeffs, theta: float,
                   tables: CoefficientTables | None = None) -> float:
    """sum_n coeffs[n] P_n(cos theta) by the backward inhomogeneous recurrence."""
    _check_theta(theta)
    coeffs = np.asarray(coeffs, dtype=float)
    n_max = len(coeffs) - 1
    t = tables if tables is not None else recurrence_tables(p, n_max + 1)
    x = math.cos(theta)
    u1 = u2 = 0.0
    for n in range(n_max, -1, -1):
        u0 = (t.A[n] * x + t.B[n]) * u1 - t.C[n + 1] * u2 + coeffs[n]
        u2, u1 = u1, u0
    return u1


def clenshaw_smith_reinsch(p: JacobiParameters, coeffs, theta: float, end: int,
                           tables: CoefficientTables | None = None) -> float:
    """Same sum as clenshaw_smith via the Reinsch-modified algorithm with the
    backward endpoint ratios; exact at theta = 0 (end=+1) and theta = pi."""
    _check_theta(theta)
    coeffs = np.asarray(coeffs, dtype=float)
    n_max = len(coeffs) - 1
    t = tables if tables is not None else recurrence_tables(p, n_max + 1)
    if end == 1:
        half = math.sin(0.5 * theta)
        xm = -2.0 * half * half
        rb = t.rb_plus
    elif end == -1:
        half = math.cos(0.5 * theta)
        xm = 2.0 * half * half
        rb = t.rb_minus
    else:
        raise ValueError("end must be +1 or -1")
    u = d = 0.0
    for n in range(n_max, 0, -1):
        d = (t.A[n] * xm * u + t.C[n + 1] * d + coeffs[n]) * rb[n]
        u = (u + d) / rb[n]
    return t.A[0] * xm * u + t.C[1] * d + coeffs[0]


def evaluate_expansion(p: JacobiParameters, coeffs, grid: AngleGrid,
                       tables: CoefficientTables | None = None) -> np.ndarray:
    """Evaluate sum_n coeffs[n] P_n at every grid angle, dispatching per angle
    to the unmodified or Reinsch-modified Clenshaw-Smith algorithm."""
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    n_max = len(coeffs) - 1
    t = tables if tables is not None else recurrence_tables(p, n_max + 1)
    thetas = grid.angles
    cuts = np.full(len(thetas), n_max + 1, dtype=np.int64)
    regions = classify_regions(thetas)
    out = np.empty(len(thetas))
    backend.kernels().clenshaw_points(
        t.A, t.B, t.C, t.rb_plus, t.rb_minus, t.rb_plus_inv, t.rb_minus_inv,
        coeffs, np.ascontiguousarray(thetas), cuts, regions, out,
    )
    return out
