"""Interior asymptotics of Jacobi polynomials: the cos/sin modulation
functions u_m, v_m, the positive envelope g_m bounding |f_m|, remainder
certificates, and the partition of the (degree, angle) plane into rectangles
where the truncated asymptotic series is trusted below a tolerance.

The remainder of the M-term series is bounded by 2 C_{n,M} |f_M(theta)| for
core parameters and n >= 2; |f_M| is replaced throughout by its envelope
g_M, which is monotone toward the endpoints and yields an oscillation-free
certificate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .kernels import asymptotic_coefficient, one_plus_pow, stirling_factor
from .parameters import JacobiParameters, ParameterRangeError
from .recurrences import AngleGrid


def _pochhammer_pair_weights(gamma: float, count: int) -> np.ndarray:
    """w_l = (1/2+gamma)_l (1/2-gamma)_l / l! for l = 0..count-1."""
    w = np.empty(count)
    w[0] = 1.0
    for l in range(1, count):
        w[l] = w[l - 1] * (0.5 + gamma + l - 1) * (0.5 - gamma + l - 1) / l
    return w


def _check_open_interval(theta):
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta must lie in (0, pi), got {theta}")


def modulation_table(p: JacobiParameters, m_count: int, thetas: np.ndarray):
    """u_m(theta), v_m(theta) for m = 0..m_count-1 over an angle vector.

    Returns arrays of shape (m_count, len(thetas)).  The phase
    psi_{m,l} = (alpha+beta+m+1) theta/2 - (alpha+l+1/2) pi/2 advances by
    theta/2 per order and by -pi/2 per inner term, so a single complex
    rotation supplies every cos/sin pair; denominators advance by factors of
    sin(theta/2) and cos(theta/2).
    """
    a, b = p.alpha, p.beta
    thetas = np.asarray(thetas, dtype=float)
    s = np.sin(0.5 * thetas)
    c = np.cos(0.5 * thetas)
    wa = _pochhammer_pair_weights(a, m_count)
    wb = _pochhammer_pair_weights(b, m_count)

    base = (a + b + 1.0) * 0.5 * thetas - (a + 0.5) * 0.5 * math.pi
    zr = np.cos(base)
    zi = np.sin(base)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        inv_den0 = 1.0 / (s ** (a + 0.5) * c ** (b + 0.5))
        u = np.empty((m_count, len(thetas)))
        v = np.empty((m_count, len(thetas)))
        for m in range(m_count):
            tr, ti = zr.copy(), zi.copy()
            inv_den = inv_den0 * c ** (-float(m))
            um = np.zeros(len(thetas))
            vm = np.zeros(len(thetas))
            for l in range(m + 1):
                rho = wa[l] * wb[m - l]
                if rho != 0.0:
                    um += rho * tr * inv_den
                    vm -= rho * ti * inv_den
                if l < m:
                    tr, ti = ti, -tr  # multiply exp(i psi) by -i
                    inv_den = inv_den * c / s
            u[m] = um
            v[m] = vm
            zr, zi = zr * c - zi * s, zr * s + zi * c  # advance phase by theta/2
    return u, v


def modulation(p: JacobiParameters, m: int, theta: float):
    """(u_m(theta), v_m(theta)) such that u_m cos(n theta) + v_m sin(n theta)
    is the order-m term of the interior asymptotic series."""
    _check_open_interval(theta)
    u, v = modulation_table(p, m + 1, np.array([theta]))
    return float(u[m, 0]), float(v[m, 0])


def envelope_table(p: JacobiParameters, m: int, thetas: np.ndarray) -> np.ndarray:
    """g_m over an angle vector (+inf at the endpoints)."""
    a, b = p.alpha, p.beta
    thetas = np.asarray(thetas, dtype=float)
    s = np.sin(0.5 * thetas)
    c = np.cos(0.5 * thetas)
    wa = _pochhammer_pair_weights(a, m + 1)
    wb = _pochhammer_pair_weights(b, m + 1)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        inv_den = 1.0 / (s ** (a + 0.5) * c ** (float(m) + b + 0.5))
        g = np.zeros(len(thetas))
        for l in range(m + 1):
            w = wa[l] * wb[m - l]
            if w != 0.0:  # skip exact zeros: 0 * inf at the endpoints
                g += w * inv_den
            if l < m:
                inv_den = inv_den * c / s
    return g


def envelope(p: JacobiParameters, m: int, theta: float) -> float:
    """Pointwise upper bound g_m(theta) >= |f_m(theta)|."""
    _check_open_interval(theta)
    return float(envelope_table(p, m, np.array([theta]))[0])


def remainder_bound(p: JacobiParameters, n: int, m_terms: int, theta: float) -> float:
    """Certified remainder bound 2 C_{n,M} g_M(theta) of the M-term series."""
    p.require_core("the remainder bound")
    if n < 2:
        raise ValueError("the remainder bound requires n >= 2")
    if m_terms < 2:
        raise ValueError("the remainder bound requires M >= 2")
    return 2.0 * asymptotic_coefficient(p, n, m_terms) * envelope(p, m_terms, theta)


def _n_from_bound(g: float, m_terms: int, eps: float) -> int:
    if g == 0.0:  # the series terminates (both parameters exactly 1/2)
        return 0
    val = (eps * 2.0 ** (2 * m_terms - 1) * math.sqrt(math.pi) / g) ** (
        -1.0 / (m_terms + 0.5)
    )
    return int(math.floor(val))


def compute_n_M(p: JacobiParameters, m_terms: int, eps: float) -> int:
    """Degree above which the leading-order remainder at theta = pi/2 is
    below eps (envelope certificate in place of |f_M|)."""
    if m_terms < 2:
        raise ValueError("M >= 2 required")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return _n_from_bound(envelope(p, m_terms, 0.5 * math.pi), m_terms, eps)


def partition_curve(p: JacobiParameters, m_terms: int, eps: float, theta: float) -> int:
    """The degree n(theta) above which the M-term series is trusted at theta."""
    _check_open_interval(theta)
    return _n_from_bound(envelope(p, m_terms, theta), m_terms, eps)


@dataclass(frozen=True)
class Block:
    """One certified rectangle: degrees j..(previous j - 1 / N), rows i1..i2."""

    j: int
    i1: int
    i2: int


@dataclass(frozen=True)
class PartitionLayout:
    """Where the asymptotic series is certified on an (N+1)-angle grid.

    blocks[k-1] holds (j_k, i_k1, i_k2); the certified rectangle of block k
    spans degrees [j_k, j_{k-1}] (j_0 = N) and grid rows [i_k1, i_k2].  Rows
    0 and N never appear in any block.
    """

    n: int
    m_terms: int
    eps: float
    n_m: int
    alpha_n: float
    k: int
    blocks: tuple
    theta_bar_index: int

    def column_strips(self):
        """Disjoint per-block column ranges [lo, hi] partitioning the
        asymptotic degrees; block 1 owns the top strip up to N."""
        strips = []
        prev = self.n
        for blk in self.blocks:
            strips.append((blk.j, prev))
            prev = blk.j - 1
        return strips

    def row_cuts(self) -> np.ndarray:
        """cuts[i] = first degree handled asymptotically at grid row i; the
        recurrence region at row i is exactly degrees 0..cuts[i]-1."""
        cuts = np.full(self.n + 1, self.n + 1, dtype=np.int64)
        for blk in self.blocks:
            cuts[blk.i1 : blk.i2 + 1] = blk.j
        return cuts

    def csv_dump(self) -> str:
        lines = [
            "N,M,eps,n_M,alpha_N,K",
            f"{self.n},{self.m_terms},{self.eps!r},{self.n_m},{self.alpha_n!r},{self.k}",
            "k,j_k,i_k1,i_k2",
        ]
        for k, blk in enumerate(self.blocks, start=1):
            lines.append(f"{k},{blk.j},{blk.i1},{blk.i2}")
        return "\n".join(lines) + "\n"


def compute_partition(p: JacobiParameters, n: int, m_terms: int, eps: float,
                      grid: AngleGrid | None = None) -> PartitionLayout:
    """Compute the certified partition for grid parameter N = n.

    Scans outward from the grid argmin of g_M, one step at a time, collecting
    the largest contiguous row range on which 2 C_{j_k,M} g_M < eps for each
    degree threshold j_k = floor(alpha_N^k N) > n_M; monotonicity of C_{n,M}
    in n then certifies the whole rectangle up to j_{k-1}.
    """
    p.require_core("partition construction")
    if m_terms < 2:
        raise ValueError("M >= 2 required")
    if grid is None:
        grid = AngleGrid(n)
    elif grid.n != n:
        raise ValueError("grid size must match the partition size")

    n_m = compute_n_M(p, m_terms, eps)
    g = envelope_table(p, m_terms, grid.angles)
    tbar = int(np.argmin(g))

    if n <= n_m:
        return PartitionLayout(n, m_terms, eps, n_m, 0.5, 0, (), tbar)

    ratio = math.log(n / max(n_m, 1))
    alpha_n = min(1.0 / ratio, 0.5) if ratio > 0 else 0.5

    blocks = []
    lo_prev, hi_prev = 1, n - 1
    k = 1
    while True:
        j_k = int(math.floor(alpha_n**k * n))
        if j_k <= n_m or j_k < 2:
            break
        bound = 2.0 * asymptotic_coefficient(p, j_k, m_terms) * g
        fail = ~(bound < eps)
        if fail[tbar]:
            break
        left = fail[1:tbar][::-1]
        i1 = tbar - (int(np.argmax(left)) if left.any() else left.size)
        right = fail[tbar + 1 : n]
        i2 = tbar + (int(np.argmax(right)) if right.any() else right.size)
        # clip inside the previous block's rows: rectangles must nest so that
        # every row's recurrence range stays a contiguous degree prefix
        i1 = max(i1, lo_prev)
        i2 = min(i2, hi_prev)
        if not i1 < tbar < i2:
            break
        blocks.append(Block(j_k, i1, i2))
        lo_prev, hi_prev = i1, i2
        k += 1

    return PartitionLayout(n, m_terms, eps, n_m, alpha_n, len(blocks), tuple(blocks), tbar)


def ultraspherical_coefficients(lam: float, n: int, m: int) -> float:
    """C_{n,m} of the ultraspherical interior asymptotics, lambda in (0, 1).

    C_{n,0} = 2^lambda Gamma(n+lambda+1/2) / (sqrt(pi) Gamma(n+lambda+1)),
    followed by the order recurrence in m.
    """
    if not 0.0 < lam < 1.0:
        raise ParameterRangeError("lambda must lie in (0, 1)")
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    a = n + lam + 0.5
    if a >= 9.0:
        # Gamma(a)/Gamma(a+1/2) = sqrt(e/a) (1+1/(2a))^(-a) S(a)/S(a+1/2)
        ratio = (
            math.sqrt(math.e / a)
            * one_plus_pow(0.5 / a, -a)
            * stirling_factor(a)
            / stirling_factor(a + 0.5)
        )
    else:
        ratio = math.gamma(a) / math.gamma(a + 0.5)
    value = 2.0**lam / math.sqrt(math.pi) * ratio
    for j in range(1, m + 1):
        value *= (lam + j - 1) * (j - lam) / (2.0 * j * (n + lam + j))
    return value


def ultraspherical_n_M(lam: float, m_terms: int, eps: float) -> int:
    """Degree threshold of the ultraspherical trust curve at theta = pi/2."""
    if not 0.0 < lam < 1.0:
        raise ParameterRangeError("lambda must lie in (0, 1)")
    if m_terms < 1:
        raise ValueError("M >= 1 required")
    num = eps * math.sqrt(math.pi) * 2.0**m_terms * math.factorial(m_terms)
    den = 2.0 ** (lam + 1.0)
    for j in range(m_terms):
        den *= (lam + j) * (1.0 - lam + j)
    return int(math.floor((num / den) ** (-1.0 / (m_terms + 0.5))))


def ultraspherical_curve(lam: float, m_terms: int, eps: float, theta: float) -> float:
    """Trust curve n(theta) = n_M / sin^((M+lambda)/(M+1/2)) theta."""
    _check_open_interval(theta)
    n_m = ultraspherical_n_M(lam, m_terms, eps)
    return n_m / math.sin(theta) ** ((m_terms + lam) / (m_terms + 0.5))
