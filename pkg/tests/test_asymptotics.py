import math

import mpmath as mp
import numpy as np
import pytest

from chebjac import asymptotics as asy
from chebjac import kernels as K
from chebjac import oracle
from chebjac.parameters import JacobiParameters, ParameterRangeError
from chebjac.recurrences import AngleGrid

EPS = float(np.finfo(float).eps)
P00 = JacobiParameters(0.0, 0.0)
P18 = JacobiParameters(0.125, 0.375)


def mp_f_m_term(a, b, n, m, theta):
    """The order-m term of the interior asymptotic series, in mpmath."""
    with mp.workdps(40):
        a, b, t = mp.mpf(a), mp.mpf(b), mp.mpf(theta)
        half = mp.mpf(1) / 2
        total = mp.mpf(0)
        for l in range(m + 1):
            w = (mp.rf(half + a, l) * mp.rf(half - a, l) * mp.rf(half + b, m - l)
                 * mp.rf(half - b, m - l) / (mp.factorial(l) * mp.factorial(m - l)))
            phase = half * (2 * n + a + b + m + 1) * t - (a + l + half) * mp.pi / 2
            den = mp.sin(t / 2) ** (l + a + half) * mp.cos(t / 2) ** (m - l + b + half)
            total += w * mp.cos(phase) / den
        return float(total)


class TestModulation:
    def test_base_case(self):
        u0, v0 = asy.modulation(P00, 0, math.pi / 2)
        assert abs(u0 - math.sqrt(2.0)) < 1e-15
        assert abs(v0) < 1e-16

    def test_rejects_endpoints(self):
        with pytest.raises(ValueError):
            asy.modulation(P00, 0, 0.0)
        with pytest.raises(ValueError):
            asy.modulation(P00, 0, math.pi)

    def test_series_term_identity(self):
        # u_m cos(n theta) + v_m sin(n theta) equals the order-m series term
        rng = np.random.default_rng(23)
        checked = 0
        while checked < 60:
            a, b = rng.uniform(-0.49, 0.5, 2)
            p = JacobiParameters(a, b)
            m = int(rng.integers(0, 8))
            n = int(rng.integers(0, 50))
            theta = rng.uniform(0.2, math.pi - 0.2)
            ref = mp_f_m_term(a, b, n, m, theta)
            g = asy.envelope(p, m, theta)
            if abs(ref) < 0.05 * g:  # skip near-zero crossings of the oscillation
                continue
            u, v = asy.modulation(p, m, theta)
            val = u * math.cos(n * theta) + v * math.sin(n * theta)
            assert abs(val / ref - 1.0) < 1e-13
            checked += 1

    def test_collapse_alpha_half(self):
        # (1/2 - alpha)_l kills every l >= 1 term; the survivor is l = 0
        b = 0.21
        p = JacobiParameters(0.5, b)
        theta = 1.3
        for m in (1, 3, 5):
            u, v = asy.modulation(p, m, theta)
            w = 1.0
            for j in range(m):
                w *= (0.5 + b + j) * (0.5 - b + j)
            w /= math.factorial(m)
            psi = (0.5 + b + m + 1) * theta / 2 - (0.5 + 0.5) * math.pi / 2
            den = math.sin(theta / 2) * math.cos(theta / 2) ** (m + b + 0.5)
            assert abs(u - w * math.cos(psi) / den) < 1e-13 * abs(u)
            assert abs(v + w * math.sin(psi) / den) < 1e-13 * max(abs(v), 1e-3)

    def test_collapse_beta_half(self):
        # only l = m survives
        a = -0.17
        p = JacobiParameters(a, 0.5)
        theta = 1.9
        m = 4
        u, v = asy.modulation(p, m, theta)
        w = 1.0
        for j in range(m):
            w *= (0.5 + a + j) * (0.5 - a + j)
        w /= math.factorial(m)
        psi = (a + 0.5 + m + 1) * theta / 2 - (a + m + 0.5) * math.pi / 2
        den = math.sin(theta / 2) ** (m + a + 0.5) * math.cos(theta / 2)
        assert abs(u - w * math.cos(psi) / den) < 1e-13 * abs(u)


class TestEnvelope:
    def test_base_value(self):
        assert abs(asy.envelope(P00, 0, math.pi / 2) - math.sqrt(2.0)) < 1e-15

    def test_dominates_terms(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            a, b = rng.uniform(-0.49, 0.5, 2)
            m = int(rng.integers(0, 7))
            n = int(rng.integers(0, 40))
            theta = rng.uniform(0.1, math.pi - 0.1)
            f = mp_f_m_term(a, b, n, m, theta)
            g = asy.envelope(JacobiParameters(a, b), m, theta)
            assert g >= abs(f) * (1.0 - 1e-12)

    def test_blows_up_at_endpoints(self):
        for m in range(4):
            assert asy.envelope(P00, m, 1e-8) > 1e3 * asy.envelope(P00, m, math.pi / 2)

    def test_rejects_endpoints(self):
        with pytest.raises(ValueError):
            asy.envelope(P00, 0, math.pi)


class TestRemainderBound:
    def test_nonincreasing_in_n(self):
        vals = [asy.remainder_bound(P18, n, 7, 1.0) for n in range(2, 400)]
        assert all(v1 <= v0 for v0, v1 in zip(vals, vals[1:]))

    def test_small_at_midpoint(self):
        assert asy.remainder_bound(P00, 2048, 7, math.pi / 2) < 2.3e-16

    def test_more_terms_reduce_bound(self):
        b7 = asy.remainder_bound(P00, 10**4, 7, math.pi / 2)
        b13 = asy.remainder_bound(P00, 10**4, 13, math.pi / 2)
        assert b13 < b7

    def test_preconditions(self):
        with pytest.raises(ParameterRangeError):
            asy.remainder_bound(JacobiParameters(0.7, 0.0), 10, 7, 1.0)
        with pytest.raises(ValueError):
            asy.remainder_bound(P00, 1, 7, 1.0)
        with pytest.raises(ValueError):
            asy.remainder_bound(P00, 10, 1, 1.0)


class TestTrustCurve:
    def test_huge_eps_gives_zero(self):
        assert asy.compute_n_M(P00, 7, 1e6) == 0

    def test_frozen_legendre_value(self):
        assert asy.compute_n_M(P00, 7, EPS) == 111

    def test_self_consistency(self):
        for p in (P00, P18):
            n_m = asy.compute_n_M(p, 7, EPS)
            assert asy.remainder_bound(p, n_m + 1, 7, math.pi / 2) < EPS

    def test_curve_at_midpoint(self):
        assert asy.partition_curve(P18, 7, EPS, math.pi / 2) == asy.compute_n_M(P18, 7, EPS)

    def test_curve_symmetric_for_equal_parameters(self):
        p = JacobiParameters(0.2, 0.2)
        for theta in (0.3, 1.0, 1.4):
            assert (asy.partition_curve(p, 7, EPS, theta)
                    == asy.partition_curve(p, 7, EPS, math.pi - theta))

    def test_curve_grows_toward_endpoint(self):
        assert (asy.partition_curve(P00, 7, EPS, math.pi / 16)
                > asy.partition_curve(P00, 7, EPS, math.pi / 2))


class TestPartition:
    def test_degenerate_small_n(self):
        layout = asy.compute_partition(P00, 32, 7, EPS)
        assert layout.k == 0
        assert layout.blocks == ()
        np.testing.assert_array_equal(layout.row_cuts(), np.full(33, 33))

    def test_alpha_cap_and_count(self):
        # N just below n_M e^2 gives alpha_N = 1/2 and at most 2 surviving
        # degree thresholds (floor(N/8) <= n_M kills the third)
        n_m = asy.compute_n_M(P00, 7, EPS)
        n = int(n_m * math.e**2)
        layout = asy.compute_partition(P00, n, 7, EPS)
        assert layout.alpha_n == 0.5
        assert layout.k <= 2
        for blk in layout.blocks:
            assert blk.j > n_m

    def test_frozen_blocks_2_14(self):
        layout = asy.compute_partition(P18, 2**14, 7, EPS)
        assert layout.n_m == 107
        assert layout.k == 3
        assert [b.j for b in layout.blocks] == [3256, 647, 128]
        assert [(b.i1, b.i2) for b in layout.blocks] == [
            (237, 16145), (1157, 15272), (6069, 10921)]

    def test_blocks_bracket_minimizer_and_nest(self):
        layout = asy.compute_partition(P18, 4096, 7, EPS)
        assert layout.k >= 2
        prev = (1, 4095)
        for blk in layout.blocks:
            assert blk.i1 < layout.theta_bar_index < blk.i2
            assert prev[0] <= blk.i1 and blk.i2 <= prev[1]
            prev = (blk.i1, blk.i2)

    def test_certified_corners(self):
        layout = asy.compute_partition(P18, 4096, 7, EPS)
        grid = AngleGrid(4096)
        strips = layout.column_strips()
        for (lo, hi), blk in zip(strips, layout.blocks):
            for n in (blk.j, hi):
                for i in (blk.i1, blk.i2):
                    assert asy.remainder_bound(P18, n, 7, grid.angles[i]) < EPS

    def test_row_cuts_prefix_structure(self):
        layout = asy.compute_partition(P18, 4096, 7, EPS)
        cuts = layout.row_cuts()
        assert cuts[0] == 4097 and cuts[-1] == 4097  # endpoint rows pure recurrence
        # cut values decrease toward the interior minimizer
        assert cuts[layout.theta_bar_index] == layout.blocks[-1].j

    def test_swap_mirror(self):
        n = 4096
        lhs = asy.compute_partition(P18, n, 7, EPS)
        rhs = asy.compute_partition(P18.swapped(), n, 7, EPS)
        assert lhs.k == rhs.k
        for b1, b2 in zip(lhs.blocks, rhs.blocks):
            assert b1.j == b2.j
            assert abs(b1.i1 - (n - b2.i2)) <= 1
            assert abs(b1.i2 - (n - b2.i1)) <= 1

    def test_csv_dump_format(self):
        layout = asy.compute_partition(P18, 2**14, 7, EPS)
        lines = layout.csv_dump().strip().splitlines()
        assert lines[0] == "N,M,eps,n_M,alpha_N,K"
        assert lines[2] == "k,j_k,i_k1,i_k2"
        assert len(lines) == 3 + layout.k
        assert lines[3].startswith("1,3256,")


class TestSeriesAccuracyInsideBlocks:
    def test_block_entries_match_oracle(self):
        # every certified (degree, angle) entry of the truncated series is
        # within 10 eps of the extended-precision polynomial value
        n = 4096
        m_terms = 7
        grid = AngleGrid(n)
        layout = asy.compute_partition(P18, n, m_terms, EPS, grid)
        assert layout.k >= 2
        u, v = asy.modulation_table(P18, m_terms, grid.angles)
        ccols = K.asymptotic_coefficient_table(P18, n, m_terms)

        A, B, C = oracle._dd_recurrence_tables(P18, n)
        x = oracle._dd_lobatto_values(n, np.arange(n + 1))
        p_prev = oracle.dd(np.zeros(n + 1))
        p_cur = oracle.dd(np.ones(n + 1))
        strips = layout.column_strips()
        worst = 0.0
        for deg in range(1, n + 1):
            ak = (A[0][deg - 1], A[1][deg - 1])
            bk = (B[0][deg - 1], B[1][deg - 1])
            ck = (C[0][deg - 1], C[1][deg - 1])
            p_next = oracle.dd_add(
                oracle.dd_mul(oracle.dd_add(oracle.dd_mul(ak, x), bk), p_cur),
                oracle.dd_neg(oracle.dd_mul(ck, p_prev)),
            )
            p_prev, p_cur = p_cur, p_next
            for (lo, hi), blk in zip(strips, layout.blocks):
                if lo <= deg <= hi:
                    rows = np.arange(blk.i1, blk.i2 + 1)
                    phase = np.pi * ((deg * rows) % (2 * n)) / n
                    cn, sn = np.cos(phase), np.sin(phase)
                    series = np.zeros(len(rows))
                    for m in range(m_terms):
                        series += ccols[deg, m] * (u[m, rows] * cn + v[m, rows] * sn)
                    ref = p_cur[0][rows] + p_cur[1][rows]
                    worst = max(worst, float(np.max(np.abs(series - ref))))
        assert worst < 10 * EPS


class TestUltraspherical:
    def test_base_value(self):
        ref = 2.0 * math.sqrt(2.0) / math.pi
        assert abs(asy.ultraspherical_coefficients(0.5, 0, 0) - ref) < 1e-15

    def test_order_step_ratio(self):
        for n in (0, 5, 50):
            c0 = asy.ultraspherical_coefficients(0.5, n, 0)
            c1 = asy.ultraspherical_coefficients(0.5, n, 1)
            assert abs(c1 / c0 - 1.0 / (8.0 * (n + 1.5))) < 1e-14

    def test_large_n_against_gamma(self):
        lam = 0.3
        n = 10**5
        with mp.workdps(40):
            ref = float(2**mp.mpf(lam) * mp.gamma(n + lam + 0.5)
                        / (mp.sqrt(mp.pi) * mp.gamma(n + lam + 1)))
        assert abs(asy.ultraspherical_coefficients(lam, n, 0) / ref - 1.0) < 1e-13

    def test_rejects_bad_lambda(self):
        with pytest.raises(ParameterRangeError):
            asy.ultraspherical_coefficients(0.0, 1, 0)
        with pytest.raises(ParameterRangeError):
            asy.ultraspherical_n_M(1.0, 7, EPS)

    def test_n_m_values(self):
        assert asy.ultraspherical_n_M(0.5, 7, 1e6) == 0
        assert asy.ultraspherical_n_M(0.5, 7, EPS) == 139

    def test_curve_at_midpoint(self):
        n_m = asy.ultraspherical_n_M(0.5, 7, EPS)
        assert asy.ultraspherical_curve(0.5, 7, EPS, math.pi / 2) == n_m

    def test_series_cross_check_with_jacobi(self):
        # lambda = 1/2 ultraspherical series and the (0,0) Jacobi series both
        # approximate Legendre; truncations at M = 4 agree to their bounds
        lam, n, theta, m_terms = 0.5, 100, 1.1, 4
        u, v = asy.modulation_table(P00, m_terms, np.array([theta]))
        jac = sum(
            K.asymptotic_coefficient(P00, n, m)
            * (u[m, 0] * math.cos(n * theta) + v[m, 0] * math.sin(n * theta))
            for m in range(m_terms)
        )
        ultra = sum(
            asy.ultraspherical_coefficients(lam, n, m)
            * math.cos((n + m + lam) * theta - (m + lam) * math.pi / 2)
            / math.sin(theta) ** (m + lam)
            for m in range(m_terms)
        )
        ref = float(oracle.oracle_jacobi_eval(P00, n, theta))
        bound_jac = asy.remainder_bound(P00, n, m_terms, theta)
        bound_ultra = (2.0 * asy.ultraspherical_coefficients(lam, n, m_terms)
                       / math.sin(theta) ** (m_terms + lam))
        assert abs(jac - ref) < bound_jac
        assert abs(ultra - ref) < bound_ultra
        assert abs(jac - ultra) < bound_jac + bound_ultra
