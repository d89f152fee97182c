"""The plan/execute transform core.

A TransformPlan freezes everything reusable for one (direction, N, alpha,
beta, M, eps): the certified partition, recurrence tables and endpoint
ratios, trig workspaces, and (inverse only) quadrature weights and
orthonormality scalings.  Executing a plan applies the certified asymptotic
blocks as diagonally scaled DCT-I / DST-I products and fills the complement
with per-point stabilized recurrences; the same plan and input always
produce bit-identical output.
"""

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .asymptotics import PartitionLayout, compute_partition, modulation_table
from .kernels import (
    CoefficientTables,
    asymptotic_coefficient_table,
    orthonormality_table,
    recurrence_tables,
)
from .parameters import JacobiParameters, ParameterRangeError
from .quadrature import QuadratureWeights, cc_weights, modified_moments
from .recurrences import AngleGrid, classify_regions
from .trig import TrigPlanWorkspace

DEFAULT_M = 7
DEFAULT_EPS = float(np.finfo(np.float64).eps)

CHEBYSHEV = "cheb"
JACOBI = "jac"


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion coefficients tagged with their basis."""

    basis: str
    data: np.ndarray
    params: JacobiParameters | None = None

    def __post_init__(self):
        data = np.ascontiguousarray(self.data, dtype=float)
        if data.ndim != 1 or data.size == 0:
            raise ValueError("coefficient data must be a nonempty 1-d vector")
        if not np.all(np.isfinite(data)):
            raise ValueError("coefficient data must be finite")
        object.__setattr__(self, "data", data)
        if self.basis == CHEBYSHEV:
            if self.params is not None:
                raise ValueError("Chebyshev coefficients carry no parameters")
        elif self.basis == JACOBI:
            if self.params is None:
                raise ValueError("Jacobi coefficients require parameters")
        else:
            raise ValueError(f"unknown basis {self.basis!r}")

    @property
    def n(self) -> int:
        return len(self.data) - 1


def chebyshev(data) -> CoefficientVector:
    return CoefficientVector(CHEBYSHEV, np.asarray(data, dtype=float))


def jacobi(p: JacobiParameters, data) -> CoefficientVector:
    return CoefficientVector(JACOBI, np.asarray(data, dtype=float), p)


@dataclass(frozen=True)
class TransformPlan:
    """Immutable precomputation for one transform direction and size."""

    direction: str  # "forward" | "inverse"
    p: JacobiParameters
    n: int
    m_terms: int
    eps: float
    grid: AngleGrid = field(repr=False)
    layout: PartitionLayout = field(repr=False)
    tables: CoefficientTables = field(repr=False)
    cuts: np.ndarray = field(repr=False)
    regions: np.ndarray = field(repr=False)
    workspace: TrigPlanWorkspace = field(repr=False)
    weights: QuadratureWeights | None = field(repr=False, default=None)
    scalings: np.ndarray | None = field(repr=False, default=None)

    @property
    def grid_n(self) -> int:
        return self.grid.n


def plan(direction: str, p: JacobiParameters, n: int,
         m_terms: int = DEFAULT_M, eps: float = DEFAULT_EPS) -> TransformPlan:
    """Build a reusable plan for the forward (Jacobi -> Chebyshev) or inverse
    (Chebyshev -> Jacobi) transform of degree-N coefficient vectors.

    The inverse works on the doubled grid so that the product of the degree-N
    synthesis with each P_n is integrated exactly by the Clenshaw-Curtis rule.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    p.require_core(f"the {direction} transform plan")
    if n < 1:
        raise ValueError("N must be >= 1")
    if m_terms < 2:
        raise ValueError("M >= 2 required")

    grid_n = n if direction == "forward" else 2 * n
    grid = AngleGrid(grid_n)
    layout = compute_partition(p, grid_n, m_terms, eps, grid)
    tables = recurrence_tables(p, grid_n + 1)
    cuts = layout.row_cuts()
    regions = classify_regions(grid.angles)
    cuts.flags.writeable = False
    regions.flags.writeable = False
    workspace = TrigPlanWorkspace(grid_n)

    weights = None
    scalings = None
    if direction == "inverse":
        weights = cc_weights(p, grid_n, workspace, modified_moments(p, grid_n))
        scalings = 1.0 / orthonormality_table(p, n)
        scalings.flags.writeable = False

    return TransformPlan(direction, p, n, m_terms, eps, grid, layout, tables,
                         cuts, regions, workspace, weights, scalings)


def _block_diagonals(tp: TransformPlan):
    """Per-execution diagonals: u_m, v_m over the grid (endpoint entries
    zeroed; those rows always belong to the recurrence region) and the
    C_{n,m} coefficient columns."""
    u, v = modulation_table(tp.p, tp.m_terms, tp.grid.angles)
    u[:, 0] = u[:, -1] = 0.0
    v[:, 0] = v[:, -1] = 0.0
    c_cols = asymptotic_coefficient_table(tp.p, tp.grid_n, tp.m_terms)
    return u, v, c_cols


def _check_input(tp: TransformPlan, c: CoefficientVector, basis: str):
    if c.basis != basis:
        raise ValueError(f"plan expects {basis!r} input, got {c.basis!r}")
    if basis == JACOBI and c.params != tp.p:
        raise ValueError("coefficient parameters do not match the plan")
    if c.n != tp.n:
        raise ValueError(f"plan expects degree {tp.n}, got {c.n}")


def forward(tp: TransformPlan, c: CoefficientVector) -> CoefficientVector:
    """Jacobi -> Chebyshev coefficients of the same polynomial."""
    if tp.direction != "forward":
        raise ValueError("not a forward plan")
    _check_input(tp, c, JACOBI)
    data = c.data
    n = tp.n
    w = tp.workspace.clone()
    kern = backend.kernels()

    values = np.zeros(n + 1)
    if tp.layout.blocks:
        u, v, c_cols = _block_diagonals(tp)
        staged = np.zeros(n + 1)
        for (lo, hi), blk in zip(tp.layout.column_strips(), tp.layout.blocks):
            rows = slice(blk.i1, blk.i2 + 1)
            for m in range(tp.m_terms):
                staged[lo:hi + 1] = c_cols[lo:hi + 1, m] * data[lo:hi + 1]
                yc = w.dct1(staged)
                values[rows] += u[m, rows] * yc[rows]
                ys = w.dst1_bordered(staged)
                values[rows] += v[m, rows] * ys[rows]
            staged[lo:hi + 1] = 0.0

    rec = np.empty(n + 1)
    kern.clenshaw_points(
        tp.tables.A, tp.tables.B, tp.tables.C,
        tp.tables.rb_plus, tp.tables.rb_minus,
        tp.tables.rb_plus_inv, tp.tables.rb_minus_inv,
        data, tp.grid.angles, tp.cuts, tp.regions, rec,
    )
    values += rec

    return chebyshev(w.chebyshev_analysis(values))


def inverse(tp: TransformPlan, c: CoefficientVector) -> CoefficientVector:
    """Chebyshev -> Jacobi coefficients via the transposed formulation:
    synthesize on the doubled grid, weight by the Jacobi Clenshaw-Curtis
    rule, apply the transposed evaluation matrix, scale by 1/A_n."""
    if tp.direction != "inverse":
        raise ValueError("not an inverse plan")
    _check_input(tp, c, CHEBYSHEV)
    n = tp.n
    grid_n = tp.grid_n
    w = tp.workspace.clone()
    kern = backend.kernels()

    padded = np.zeros(grid_n + 1)
    padded[: n + 1] = c.data
    wv = tp.weights.w * w.chebyshev_synthesis(padded)

    out = np.zeros(grid_n + 1)
    if tp.layout.blocks:
        u, v, c_cols = _block_diagonals(tp)
        staged = np.zeros(grid_n + 1)
        for (lo, hi), blk in zip(tp.layout.column_strips(), tp.layout.blocks):
            rows = slice(blk.i1, blk.i2 + 1)
            for m in range(tp.m_terms):
                staged[rows] = u[m, rows] * wv[rows]
                yc = w.dct1(staged)
                out[lo:hi + 1] += c_cols[lo:hi + 1, m] * yc[lo:hi + 1]
                staged[rows] = v[m, rows] * wv[rows]
                ys = w.dst1_bordered(staged)
                out[lo:hi + 1] += c_cols[lo:hi + 1, m] * ys[lo:hi + 1]
            staged[rows] = 0.0

    kern.transpose_accumulate(
        tp.tables.A, tp.tables.B, tp.tables.C,
        tp.tables.rf_plus, tp.tables.rf_minus,
        tp.tables.rf_plus_inv, tp.tables.rf_minus_inv,
        wv, tp.grid.angles, tp.cuts, tp.regions, out,
    )

    return jacobi(tp.p, out[: n + 1] * tp.scalings)


# -- integer parameter shifts -------------------------------------------------

def _shifted(p: JacobiParameters, dalpha: int = 0, dbeta: int = 0) -> JacobiParameters:
    try:
        return JacobiParameters(p.alpha + dalpha, p.beta + dbeta)
    except ParameterRangeError as exc:
        raise ParameterRangeError(f"inadmissible shift target: {exc}") from exc


def increment_beta(c: CoefficientVector) -> CoefficientVector:
    """Rewrite (alpha, beta) coefficients in the (alpha, beta+1) basis, O(N)."""
    _require_jacobi(c)
    a, b = c.params.alpha, c.params.beta
    d = c.data
    n = c.n
    k = np.arange(n + 1, dtype=float)
    diag = (a + b + k + 1.0) / (a + b + 2.0 * k + 1.0)
    diag[0] = 1.0  # P_0 is 1 in every basis; resolves 0/0 at alpha+beta = -1
    out = diag * d
    out[:-1] += d[1:] * (a + k[:-1] + 1.0) / (a + b + 2.0 * k[:-1] + 3.0)
    return jacobi(_shifted(c.params, dbeta=1), out)


def decrement_beta(c: CoefficientVector) -> CoefficientVector:
    """Inverse of increment_beta: back-substitution on the bidiagonal system."""
    _require_jacobi(c)
    target = _shifted(c.params, dbeta=-1)
    a, b = target.alpha, target.beta
    d = c.data
    n = c.n
    k = np.arange(n + 1, dtype=float)
    diag = (a + b + k + 1.0) / (a + b + 2.0 * k + 1.0)
    diag[0] = 1.0
    upper = (a + k + 1.0) / (a + b + 2.0 * k + 3.0)
    out = np.empty(n + 1)
    out[n] = d[n] / diag[n]
    for i in range(n - 1, -1, -1):
        out[i] = (d[i] - upper[i] * out[i + 1]) / diag[i]
    return jacobi(target, out)


def _parity_flip(c: CoefficientVector, p: JacobiParameters) -> CoefficientVector:
    flipped = c.data.copy()
    flipped[1::2] *= -1.0
    return jacobi(p, flipped)


def increment_alpha(c: CoefficientVector) -> CoefficientVector:
    """Alpha shift by conjugating the beta shift with the parity symmetry
    P_n^(alpha,beta)(x) = (-1)^n P_n^(beta,alpha)(-x)."""
    _require_jacobi(c)
    swapped = increment_beta(_parity_flip(c, c.params.swapped()))
    return _parity_flip(swapped, swapped.params.swapped())


def decrement_alpha(c: CoefficientVector) -> CoefficientVector:
    _require_jacobi(c)
    swapped = decrement_beta(_parity_flip(c, c.params.swapped()))
    return _parity_flip(swapped, swapped.params.swapped())


def _require_jacobi(c: CoefficientVector):
    if c.basis != JACOBI:
        raise ValueError("parameter shifts require Jacobi coefficients")


def _core_offsets(p: JacobiParameters) -> tuple:
    """Integer (da, db) with (alpha - da, beta - db) in the core square."""
    import math

    da = math.ceil(p.alpha - 0.5)
    db = math.ceil(p.beta - 0.5)
    return da, db


def to_core(c: CoefficientVector) -> CoefficientVector:
    """Shift Jacobi coefficients into the core square by integer steps."""
    _require_jacobi(c)
    da, db = _core_offsets(c.params)
    out = c
    for _ in range(max(da, 0)):
        out = decrement_alpha(out)
    for _ in range(max(-da, 0)):
        out = increment_alpha(out)
    for _ in range(max(db, 0)):
        out = decrement_beta(out)
    for _ in range(max(-db, 0)):
        out = increment_beta(out)
    return out


def from_core(c: CoefficientVector, target: JacobiParameters) -> CoefficientVector:
    """Shift core-square Jacobi coefficients out to the target parameters."""
    _require_jacobi(c)
    da, db = _core_offsets(target)
    out = c
    for _ in range(max(da, 0)):
        out = increment_alpha(out)
    for _ in range(max(-da, 0)):
        out = decrement_alpha(out)
    for _ in range(max(db, 0)):
        out = increment_beta(out)
    for _ in range(max(-db, 0)):
        out = decrement_beta(out)
    if out.params != target:
        raise ParameterRangeError(
            f"shift chain reached {out.params}, expected {target}"
        )
    return out


def jacobi_to_jacobi(c: CoefficientVector, target: JacobiParameters,
                     m_terms: int = DEFAULT_M, eps: float = DEFAULT_EPS) -> CoefficientVector:
    """Convert between Jacobi expansions of differing parameters by composing
    shifts into the core square, the forward transform, the inverse transform
    at the target's core representative, and shifts out."""
    _require_jacobi(c)
    core_src = to_core(c)
    fwd = plan("forward", core_src.params, core_src.n, m_terms, eps)
    cheb = forward(fwd, core_src)
    da, db = _core_offsets(target)
    core_target = JacobiParameters(target.alpha - da, target.beta - db)
    inv = plan("inverse", core_target, c.n, m_terms, eps)
    core_out = inverse(inv, cheb)
    return from_core(core_out, target)
