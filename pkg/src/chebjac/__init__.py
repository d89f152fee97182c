"""chebjac: fast, stable transforms between Chebyshev and Jacobi expansion
coefficients.

The forward transform evaluates the Jacobi expansion at the Chebyshev-Lobatto
points through certified interior-asymptotic blocks (diagonally scaled fast
cosine/sine transforms) plus stabilized recurrences near the endpoints, then
reads off Chebyshev coefficients; the inverse runs the transposed formulation
against a Jacobi-weighted Clenshaw-Curtis rule.  Precomputation lives in a
reusable TransformPlan.
"""

from .backend import available_backends, kernel_backend, set_kernel_backend
from .engine import (
    CHEBYSHEV,
    JACOBI,
    CoefficientVector,
    TransformPlan,
    chebyshev,
    decrement_alpha,
    decrement_beta,
    forward,
    from_core,
    increment_alpha,
    increment_beta,
    inverse,
    jacobi,
    jacobi_to_jacobi,
    plan,
    to_core,
)
from .parameters import JacobiParameters, ParameterRangeError
from .recurrences import (
    AngleGrid,
    clenshaw_smith,
    clenshaw_smith_reinsch,
    evaluate_expansion,
    jacobi_forward,
    jacobi_forward_reinsch,
)

__version__ = "0.1.0"

__all__ = [
    "AngleGrid",
    "CHEBYSHEV",
    "CoefficientVector",
    "JACOBI",
    "JacobiParameters",
    "ParameterRangeError",
    "TransformPlan",
    "available_backends",
    "chebyshev",
    "clenshaw_smith",
    "clenshaw_smith_reinsch",
    "decrement_alpha",
    "decrement_beta",
    "evaluate_expansion",
    "forward",
    "from_core",
    "increment_alpha",
    "increment_beta",
    "inverse",
    "jacobi",
    "jacobi_forward",
    "jacobi_forward_reinsch",
    "jacobi_to_jacobi",
    "kernel_backend",
    "plan",
    "set_kernel_backend",
    "to_core",
]
