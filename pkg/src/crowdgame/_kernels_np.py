"""Vectorized numpy fallbacks for the loop kernels in ``_kernels``.

Selected at import time (see ``_accel``) when numba is unavailable or
disabled via CROWDGAME_NO_NUMBA=1.  Same signatures and semantics as the
jitted versions; summation is numpy pairwise instead of Kahan, which is
comfortably inside the 1e-12 budget for the <= 2*3**12 terms involved.
"""
import numpy as np


def enumerate_state(n, b, w0, w1, w2):
    codes = np.arange(3 ** n, dtype=np.int64)
    digits = (codes[:, None] // (3 ** np.arange(n, dtype=np.int64))) % 3
    weights = np.prod(np.array([w0, w1, w2])[digits], axis=1)
    buyers = np.sum(digits < 2, axis=1)
    supplied = buyers >= b
    first_buys = digits[:, 0] < 2
    return np.array([
        np.sum(weights),
        np.sum(weights[supplied]),
        np.sum(weights[supplied] * buyers[supplied] / n),
        np.sum(weights[first_buys]),
        np.sum(weights[supplied & first_buys]),
    ])


def simulate_block(state_u, sig_u, act_u, p, lam, b):
    n = sig_u.shape[1]
    high_state = state_u < 0.5
    high_signal = (sig_u < p) == high_state[:, None]
    buys = high_signal | (act_u < lam)
    buyers = np.sum(buys, axis=1)
    supplied = buyers >= b
    v = np.where(supplied, buyers / n, 0.0)
    first_buys = buys[:, 0]
    all_low = ~np.any(high_signal, axis=1)
    out = np.zeros(14)
    for idx, mask in ((0, high_state), (1, ~high_state)):
        out[idx] = np.count_nonzero(mask)
        out[2 + idx] = np.count_nonzero(mask & supplied)
        out[4 + 2 * idx] = np.sum(v[mask])
        out[5 + 2 * idx] = np.sum(v[mask] ** 2)
        out[8 + idx] = np.count_nonzero(mask & first_buys)
        out[10 + idx] = np.count_nonzero(mask & first_buys & supplied)
    out[12] = np.count_nonzero(all_low)
    out[13] = np.count_nonzero(all_low & supplied)
    return out
