import math

import numpy as np
import pytest
from scipy.integrate import quad

from chebjac.parameters import JacobiParameters, ParameterRangeError
from chebjac.quadrature import cc_weights, modified_moments
from chebjac.recurrences import AngleGrid, evaluate_expansion
from chebjac.trig import TrigPlanWorkspace

P00 = JacobiParameters(0.0, 0.0)


def adaptive_moment(a, b, n):
    val, _ = quad(
        lambda x: np.cos(n * np.arccos(x)) * (1 - x) ** a * (1 + x) ** b,
        -1.0, 1.0, limit=400,
    )
    return val


class TestModifiedMoments:
    def test_legendre_values(self):
        mu = modified_moments(P00, 4).mu
        assert mu[0] == 2.0
        assert mu[1] == 0.0
        assert abs(mu[2] + 2.0 / 3.0) < 1e-15
        assert mu[3] == 0.0

    def test_odd_moments_vanish_for_symmetric_weight(self):
        mu = modified_moments(JacobiParameters(0.5, 0.5), 21).mu
        assert np.all(mu[1::2] == 0.0)
        assert mu[0] > 0

    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (0.125, 0.375), (-0.25, 0.4)])
    def test_against_adaptive_quadrature(self, a, b):
        mu = modified_moments(JacobiParameters(a, b), 20).mu
        for n in range(21):
            ref = adaptive_moment(a, b, n)
            assert abs(mu[n] - ref) < 1e-12 * max(1.0, abs(ref))

    def test_rejects_outside_core(self):
        with pytest.raises(ParameterRangeError):
            modified_moments(JacobiParameters(0.7, 0.0), 4)


class TestCcWeights:
    def test_chebyshev_exactness(self):
        n = 32
        qw = cc_weights(P00, n)
        x = np.cos(np.pi * np.arange(n + 1) / n)
        mu = modified_moments(P00, n).mu
        for k in range(n + 1):
            val = qw.w @ np.cos(k * np.arccos(np.clip(x, -1, 1)))
            assert abs(val - mu[k]) < 1e-13 * max(1.0, abs(mu[k]))

    def test_weight_sum(self):
        qw = cc_weights(P00, 64)
        assert abs(qw.w.sum() - 2.0) < 1e-13

    def test_weight_sum_matches_beta(self):
        a, b = 0.125, -0.375
        qw = cc_weights(JacobiParameters(a, b), 128)
        ref = 2.0 ** (a + b + 1) * math.gamma(a + 1) * math.gamma(b + 1) / math.gamma(a + b + 2)
        assert abs(qw.w.sum() / ref - 1.0) < 1e-13

    def test_max_weight_decays_like_inverse_n(self):
        p = JacobiParameters(0.125, 0.375)
        w512 = np.max(np.abs(cc_weights(p, 512).w))
        w4096 = np.max(np.abs(cc_weights(p, 4096).w))
        assert w4096 < 10.0 * w512 * (512.0 / 4096.0)

    def test_symmetric_weights_for_equal_parameters(self):
        p = JacobiParameters(0.3, 0.3)
        w = cc_weights(p, 48).w
        assert np.max(np.abs(w - w[::-1])) < 1e-14 * np.max(np.abs(w))

    def test_polynomial_exactness_against_expansion(self):
        # integral of (sum c_n P_n) w dx = c_0 mu_0 by orthogonality
        rng = np.random.default_rng(6)
        p = JacobiParameters(-0.2, 0.35)
        n = 256
        c = rng.uniform(-1, 1, n + 1)
        qw = cc_weights(p, n)
        vals = evaluate_expansion(p, c, AngleGrid(n))
        mu0 = modified_moments(p, 0).mu[0]
        assert abs(qw.w @ vals - c[0] * mu0) < 1e-12 * max(1.0, abs(c[0] * mu0))

    def test_reuses_workspace_and_moments(self):
        n = 16
        ws = TrigPlanWorkspace(n)
        mom = modified_moments(P00, n)
        qw = cc_weights(P00, n, ws, mom)
        qw2 = cc_weights(P00, n)
        np.testing.assert_array_equal(qw.w, qw2.w)
