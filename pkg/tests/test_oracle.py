import math

import mpmath as mp
import numpy as np
import pytest

from chebjac import oracle
from chebjac.kernels import endpoint_value
from chebjac.parameters import JacobiParameters

P00 = JacobiParameters(0.0, 0.0)


class TestOracleGamma:
    def test_integers(self):
        assert oracle.oracle_gamma(1.0) == 1
        assert oracle.oracle_gamma(10.0) == 362880

    def test_half(self):
        with mp.workdps(40):
            ref = mp.sqrt(mp.pi)
            assert abs(oracle.oracle_gamma(0.5) - ref) < mp.mpf(10) ** -30

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            oracle.oracle_gamma(0.0)


class TestOracleJacobiEval:
    def test_p2_at_zero(self):
        assert abs(float(oracle.oracle_jacobi_eval(P00, 2, math.pi / 2)) + 0.5) < 1e-30

    def test_endpoint(self):
        p = JacobiParameters(0.37, -0.11)
        for n in (0, 1, 5, 9):
            ref = endpoint_value(p, n, 1)
            assert abs(float(oracle.oracle_jacobi_eval(p, n, 0.0)) / ref - 1) < 1e-14

    def test_rejects_bad_theta(self):
        with pytest.raises(ValueError):
            oracle.oracle_jacobi_eval(P00, 2, -0.1)


class TestDoubleDouble:
    def test_grid_matches_scalar(self):
        p = JacobiParameters(0.125, 0.375)
        thetas = np.array([0.3, 1.1, 2.7])
        hi, lo = oracle.oracle_jacobi_grid(p, 50, thetas)
        with mp.workdps(40):
            for i, t in enumerate(thetas):
                ref = oracle.oracle_jacobi_eval(p, 50, float(t))
                diff = abs(mp.mpf(float(hi[i])) + mp.mpf(float(lo[i])) - ref)
                assert diff < mp.mpf(10) ** -25

    def test_lobatto_variant(self):
        p = JacobiParameters(-0.2, 0.45)
        n_grid = 64
        hi, lo = oracle.oracle_jacobi_lobatto(p, 30, n_grid, np.arange(n_grid + 1))
        with mp.workdps(40):
            x = mp.cospi(mp.mpf(17) / n_grid)
            p_prev, p_cur = mp.mpf(0), mp.mpf(1)
            for k in range(30):
                A, B, C = oracle._mp_recurrence_coefficients(p, k)
                p_prev, p_cur = p_cur, (A * x + B) * p_cur - C * p_prev
            assert abs(mp.mpf(float(hi[17])) + mp.mpf(float(lo[17])) - p_cur) < mp.mpf(10) ** -25

    def test_dd_arithmetic_identities(self):
        a = oracle.dd(np.array([1.0]), np.array([1e-20]))
        b = oracle.dd(np.array([3.0]))
        prod = oracle.dd_mul(a, b)
        assert prod[0][0] == 3.0 and abs(prod[1][0] - 3e-20) < 1e-33
        quot = oracle.dd_div(prod, b)
        assert quot[0][0] == 1.0 and abs(quot[1][0] - 1e-20) < 1e-33


class TestOracleForward:
    def test_identity_on_constant(self):
        out = oracle.oracle_forward(P00, [1.0, 0.0, 0.0])
        np.testing.assert_allclose(out, [1.0, 0.0, 0.0], atol=1e-15)

    def test_p2(self):
        out = oracle.oracle_forward(P00, [0.0, 0.0, 1.0])
        np.testing.assert_allclose(out, [0.25, 0.0, 0.75], atol=1e-15)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            oracle.oracle_forward(P00, np.zeros(9000))


class TestConnectionCoefficients:
    def test_identity_connection(self):
        p = JacobiParameters(0.125, 0.375)
        for n in (0, 1, 4):
            col = oracle.connection_coefficients(p, p, n)
            ref = np.zeros(n + 1)
            ref[n] = 1.0
            np.testing.assert_allclose(col, ref, atol=1e-14)

    def test_beta_increment_example(self):
        col = oracle.connection_coefficients(P00, JacobiParameters(0.0, 1.0), 1)
        np.testing.assert_allclose(col, [1.0 / 3.0, 2.0 / 3.0], atol=1e-15)

    def test_chebyshev_target_constant_weight(self):
        # expansion of P_2^(0,0) in the (-1/2,-1/2) family keeps the same
        # constant term as the Chebyshev expansion [1/4, 0, 3/4]
        cheb_like = JacobiParameters(-0.5, -0.5)
        col = oracle.connection_coefficients(P00, cheb_like, 2)
        assert abs(col[0] - 0.25) < 1e-13

    def test_expansion_consistency(self):
        # sum_k c_{n,k} P_k^(target) reproduces P_n^(source) pointwise
        src = JacobiParameters(0.4, -0.3)
        tgt = JacobiParameters(-0.1, 0.2)
        rng = np.random.default_rng(8)
        for n in (3, 16, 64):
            col = oracle.connection_coefficients(src, tgt, n)
            for theta in rng.uniform(0.1, math.pi - 0.1, 4):
                lhs = float(oracle.oracle_jacobi_eval(src, n, theta))
                rhs = sum(col[k] * float(oracle.oracle_jacobi_eval(tgt, k, theta))
                          for k in range(n + 1))
                assert abs(lhs - rhs) < 1e-13 * max(1.0, abs(lhs))

    def test_size_cap(self):
        with pytest.raises(ValueError):
            oracle.connection_coefficients(P00, P00, 400)
