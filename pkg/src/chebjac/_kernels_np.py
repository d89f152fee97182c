"""Pure-numpy fallback for the hot recurrence kernels.

Points sharing the same (degree cutoff, endpoint region) are processed as one
vectorized batch; the degree loop runs at Python level.  The compiled
extension in _kernels_cy implements the same contracts point by point.
"""

import numpy as np


def _groups(cuts, regions):
    for nc in np.unique(cuts):
        if nc <= 0:
            continue
        sel = cuts == nc
        for reg in (0, 1, -1):
            idx = np.nonzero(sel & (regions == reg))[0]
            if idx.size:
                yield int(nc), reg, idx


def clenshaw_points(A, B, C, rb_plus, rb_minus, rb_plus_inv, rb_minus_inv,
                    coeffs, thetas, cuts, regions, out):
    """out[i] = sum_{n < cuts[i]} coeffs[n] P_n(cos thetas[i]).

    Plain Clenshaw-Smith in the interior region (0), the Reinsch-modified
    form anchored at x0 = +1 (region 1) or x0 = -1 (region -1) otherwise.
    """
    out[:] = 0.0
    for nc, reg, idx in _groups(cuts, regions):
        th = thetas[idx]
        nloc = nc - 1
        if reg == 0:
            x = np.cos(th)
            u1 = np.zeros_like(th)
            u2 = np.zeros_like(th)
            for n in range(nloc, -1, -1):
                u0 = (A[n] * x + B[n]) * u1 - C[n + 1] * u2 + coeffs[n]
                u2 = u1
                u1 = u0
            out[idx] = u1
        else:
            if reg == 1:
                half = np.sin(0.5 * th)
                xm = -2.0 * half * half
                rb, rbi = rb_plus, rb_plus_inv
            else:
                half = np.cos(0.5 * th)
                xm = 2.0 * half * half
                rb, rbi = rb_minus, rb_minus_inv
            u = np.zeros_like(th)
            d = np.zeros_like(th)
            for n in range(nloc, 0, -1):
                d = (A[n] * xm * u + C[n + 1] * d + coeffs[n]) * rb[n]
                u = (u + d) * rbi[n]
            out[idx] = A[0] * xm * u + C[1] * d + coeffs[0]
    return out


def transpose_accumulate(A, B, C, rf_plus, rf_minus, rf_plus_inv, rf_minus_inv,
                         wv, thetas, cuts, regions, out):
    """out[n] += sum_i wv[i] P_n(cos thetas[i]) over i with n < cuts[i].

    Plain forward recurrence in the interior, Reinsch's modified forward
    recurrence near the endpoints.
    """
    for nc, reg, idx in _groups(cuts, regions):
        th = thetas[idx]
        w = wv[idx]
        out[0] += w.sum()
        if nc == 1:
            continue
        if reg == 0:
            x = np.cos(th)
            p_prev = np.zeros_like(th)
            p_cur = np.ones_like(th)
            for n in range(1, nc):
                p_next = (A[n - 1] * x + B[n - 1]) * p_cur - C[n - 1] * p_prev
                p_prev = p_cur
                p_cur = p_next
                out[n] += w @ p_cur
        else:
            if reg == 1:
                half = np.sin(0.5 * th)
                xm = -2.0 * half * half
                rf, rfi = rf_plus, rf_plus_inv
            else:
                half = np.cos(0.5 * th)
                xm = 2.0 * half * half
                rf, rfi = rf_minus, rf_minus_inv
            pi_cur = np.ones_like(th)
            d = np.zeros_like(th)
            for n in range(nc - 1):
                d = (A[n] * xm * pi_cur + C[n] * d) * rfi[n]
                pi_cur = (pi_cur + d) * rf[n]
                out[n + 1] += w @ pi_cur
    return out
