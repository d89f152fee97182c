"""Fast DCT-I / bordered DST-I application and the Chebyshev synthesis and
analysis maps built from them.

The kernel convention is unnormalized and unhalved throughout:

    dct1:  y_j = sum_{k=0}^{N} cos(pi j k / N) x_k
    dst1:  y_j = sum_{k=0}^{N} sin(pi j k / N) x_k   (rows 0, N exactly zero)

All diagonal scalings (endpoint halving, 2/N) belong to the callers.
"""

import numpy as np
import scipy.fft


class TrigPlanWorkspace:
    """Reusable staging buffers for size-(N+1) trigonometric transforms.

    A workspace must not be shared by concurrent executions; clone() is cheap.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("grid parameter N must be >= 1")
        self.n = n
        self._stage = np.empty(n + 1)

    def clone(self) -> "TrigPlanWorkspace":
        return TrigPlanWorkspace(self.n)

    def _check(self, x):
        if len(x) != self.n + 1:
            raise ValueError(f"expected length {self.n + 1}, got {len(x)}")

    def dct1(self, x: np.ndarray) -> np.ndarray:
        self._check(x)
        stage = self._stage
        stage[:] = x
        stage[1:-1] *= 0.5
        return scipy.fft.dct(stage, type=1)

    def dst1_bordered(self, x: np.ndarray) -> np.ndarray:
        self._check(x)
        out = np.zeros(self.n + 1)
        if self.n >= 2:
            out[1:-1] = 0.5 * scipy.fft.dst(x[1:-1], type=1)
        return out

    def chebyshev_synthesis(self, c: np.ndarray) -> np.ndarray:
        """Values sum_n c_n T_n at the Chebyshev-Lobatto points cos(pi j / N)."""
        return self.dct1(c)

    def chebyshev_analysis(self, v: np.ndarray) -> np.ndarray:
        """Chebyshev coefficients from Lobatto-point values (exact inverse)."""
        self._check(v)
        stage = self._stage
        # endpoint halving of v combined with the kernel's interior halving
        np.multiply(v, 0.5, out=stage)
        y = scipy.fft.dct(stage, type=1)
        y *= 2.0 / self.n
        y[0] *= 0.5
        y[-1] *= 0.5
        return y


def dct1(w: TrigPlanWorkspace, x: np.ndarray) -> np.ndarray:
    return w.dct1(x)


def dst1_bordered(w: TrigPlanWorkspace, x: np.ndarray) -> np.ndarray:
    return w.dst1_bordered(x)


def chebyshev_synthesis(w: TrigPlanWorkspace, c: np.ndarray) -> np.ndarray:
    return w.chebyshev_synthesis(c)


def chebyshev_analysis(w: TrigPlanWorkspace, v: np.ndarray) -> np.ndarray:
    return w.chebyshev_analysis(v)
