"""Modified Chebyshev moments of the Jacobi weight and the Jacobi-weighted
Clenshaw-Curtis quadrature weights computed from them.

The moment recurrence is run forward only; it is stable on the half-open
square (-1/2, 1/2]^2, and parameters outside it are excluded (they are
reached by integer parameter shifts instead).
"""

import math
from dataclasses import dataclass

import numpy as np

from .parameters import JacobiParameters
from .trig import TrigPlanWorkspace


@dataclass(frozen=True)
class ModifiedMoments:
    """mu_n = integral of T_n(x) (1-x)^alpha (1+x)^beta dx, n = 0..N."""

    p: JacobiParameters
    n: int
    mu: np.ndarray


@dataclass(frozen=True)
class QuadratureWeights:
    """Clenshaw-Curtis weights for the Jacobi weight on N+1 Lobatto points."""

    n: int
    w: np.ndarray


def modified_moments(p: JacobiParameters, n: int) -> ModifiedMoments:
    """Moments mu_0..mu_N by the forward three-term recurrence

    (s+k+2) mu_{k+1} + 2(alpha-beta) mu_k + (s-k+2) mu_{k-1} = 0,  s = alpha+beta,

    from mu_0 = 2^(s+1) B(alpha+1, beta+1) and mu_1 = (beta-alpha)/(s+2) mu_0
    (the sign follows from orthogonality of P_1 to the weight, and matches
    the terminating-3F2 closed form of the moments).
    """
    p.require_core("the moment recurrence")
    a, b = p.alpha, p.beta
    s = a + b
    mu = np.empty(n + 1)
    mu[0] = 2.0 ** (s + 1.0) * math.gamma(a + 1.0) * math.gamma(b + 1.0) / math.gamma(s + 2.0)
    if n >= 1:
        mu[1] = (b - a) / (s + 2.0) * mu[0]
    two_d = 2.0 * (a - b)
    for k in range(1, n):
        mu[k + 1] = -(two_d * mu[k] + (s - k + 2.0) * mu[k - 1]) / (s + k + 2.0)
    mu.flags.writeable = False
    return ModifiedMoments(p, n, mu)


def cc_weights(p: JacobiParameters, n: int,
               workspace: TrigPlanWorkspace | None = None,
               moments: ModifiedMoments | None = None) -> QuadratureWeights:
    """Weight vector w with sum_j w_j f(x_j) = integral f w^(alpha,beta) for
    every polynomial f of degree <= N, via one DCT-I of the moments."""
    if workspace is None:
        workspace = TrigPlanWorkspace(n)
    if moments is None:
        moments = modified_moments(p, n)
    if moments.n < n:
        raise ValueError("moments must extend to degree N")
    staged = np.empty(n + 1)
    staged[0] = moments.mu[0]
    staged[-1] = moments.mu[n]
    staged[1:-1] = 2.0 * moments.mu[1:n]
    w = workspace.dct1(staged)
    w /= n
    w[0] *= 0.5
    w[-1] *= 0.5
    w.flags.writeable = False
    return QuadratureWeights(n, w)
