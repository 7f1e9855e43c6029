"""Scalar and loop kernels, numba-jitted when the accelerated path is active.

Everything here is a pure function of its arguments and safe to call from
multiple threads.  Argument validation lives in the public wrappers; these
kernels assume domains have already been checked.
"""
import math

import numpy as np

from ._accel import njit

# pmf summation is used up to this trial count; above it the regularized
# incomplete beta continued fraction takes over.  The summation path is
# self-normalizing (no lgamma anchor), so it stays accurate to a few
# hundred ulps; the continued fraction's lgamma prefactor limits it to
# roughly 1e-10 relative at large trial counts, so the cutoff is set
# high enough that the precision-critical range uses summation.
SUM_CUTOFF = 200_000

_TERM_EPS = 1e-18
_CF_EPS = 1e-15
_CF_TINY = 1e-300
_CF_MAX_ITER = 3000


@njit
def _log_pmf(m, j, g):
    # log C(m,j) + j log g + (m-j) log(1-g), valid for 0 < g < 1
    return (math.lgamma(m + 1.0) - math.lgamma(j + 1.0) - math.lgamma(m - j + 1.0)
            + j * math.log(g) + (m - j) * math.log1p(-g))


@njit
def _tail_sum(m, g, k):
    # Pr(Bin(m,g) >= k) for 1 <= k <= m, 0 < g < 1.  All pmf terms are
    # accumulated relative to the modal term with Kahan compensation and
    # the result is the ratio (tail-side sum) / (total sum), so no
    # absolute pmf anchor (and hence no lgamma roundoff) enters the
    # value.  Terms decay geometrically away from the mode, so each walk
    # stops after O(sqrt(m)) steps past the region of interest.
    mode = int((m + 1) * g)
    if mode > m:
        mode = m
    r = g / (1.0 - g)

    # upward walk from the mode: total mass above it, and the portion
    # with j >= k (only relevant when k > mode)
    up_total = 0.0
    up_comp = 0.0
    up_tail = 0.0
    up_tail_comp = 0.0
    t = 1.0
    j = mode
    while j < m:
        t *= (m - j) / (j + 1.0) * r
        j += 1
        y = t - up_comp
        s = up_total + y
        up_comp = (s - up_total) - y
        up_total = s
        if j >= k:
            y = t - up_tail_comp
            s = up_tail + y
            up_tail_comp = (s - up_tail) - y
            up_tail = s
        if t == 0.0:
            break
        if t < _TERM_EPS * (1.0 + up_total) and (
                k <= mode or (j >= k and t < _TERM_EPS * up_tail)):
            break

    # downward walk from the mode: total mass below it, and the portion
    # with j <= k-1 (only relevant when k <= mode)
    down_total = 0.0
    down_comp = 0.0
    down_low = 0.0
    down_low_comp = 0.0
    t = 1.0
    j = mode
    while j > 0:
        t *= j / ((m - j + 1.0) * r)
        j -= 1
        y = t - down_comp
        s = down_total + y
        down_comp = (s - down_total) - y
        down_total = s
        if j <= k - 1:
            y = t - down_low_comp
            s = down_low + y
            down_low_comp = (s - down_low) - y
            down_low = s
        if t == 0.0:
            break
        if t < _TERM_EPS * (1.0 + down_total) and (
                k > mode or (j <= k - 1 and t < _TERM_EPS * down_low)):
            break

    total = 1.0 + up_total + down_total
    if k > mode:
        value = up_tail / total
    else:
        value = 1.0 - down_low / total
    if value < 0.0:
        return 0.0
    if value > 1.0:
        return 1.0
    return value


@njit
def _betacf(a, b, x):
    # modified Lentz evaluation of the incomplete beta continued fraction
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for it in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * it
        aa = it * (b - it) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + it) * (qab + it) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            break
    return h


@njit
def _betainc_reg(a, b, x):
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbt = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
           + a * math.log(x) + b * math.log1p(-x))
    bt = math.exp(lbt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


@njit
def binom_tail(m, g, k):
    """Pr(X >= k) for X ~ Bin(m, g)."""
    if k <= 0:
        return 1.0
    if k > m:
        return 0.0
    if g <= 0.0:
        return 0.0
    if g >= 1.0:
        return 1.0
    if m <= SUM_CUTOFF:
        return _tail_sum(m, g, k)
    value = _betainc_reg(float(k), float(m - k + 1), g)
    if value < 0.0:
        return 0.0
    if value > 1.0:
        return 1.0
    return value


@njit
def binom_log_tail(m, g, k):
    """log Pr(X >= k) for X ~ Bin(m, g).

    Stays finite deep in the upper tail where the linear probability
    underflows double precision.
    """
    if k <= 0:
        return 0.0
    if k > m:
        return -np.inf
    if g <= 0.0:
        return -np.inf
    if g >= 1.0:
        return 0.0
    mode = int((m + 1) * g)
    if k <= mode:
        # tail is at least pmf(mode) ~ 1/sqrt(m); no underflow risk
        return math.log(binom_tail(m, g, k))
    # above the mode the terms decay monotonically: sum relative to pmf(k)
    r = g / (1.0 - g)
    acc = 1.0
    t = 1.0
    j = k
    while j < m:
        t *= (m - j) / (j + 1.0) * r
        acc += t
        if t < _TERM_EPS * acc:
            break
        j += 1
    return _log_pmf(m, k, g) + math.log(acc)


@njit
def binom_trunc_mean(m, g, b):
    """E[X * 1{X >= b}] for X ~ Bin(m, g), by weighted pmf summation."""
    if b > m:
        return 0.0
    if b <= 1:
        # the j=0 term contributes nothing, so the sum is the full mean
        return m * g
    if g <= 0.0:
        return 0.0
    if g >= 1.0:
        return float(m)
    # self-normalizing mode-anchored summation, mirroring _tail_sum:
    # E[X 1{X >= b}] = (sum over j >= b of j * t_j) / (sum of t_j) where
    # t_j is the pmf relative to the modal term
    mode = int((m + 1) * g)
    if mode > m:
        mode = m
    r = g / (1.0 - g)

    up_total = 0.0
    up_comp = 0.0
    up_w = 0.0
    up_w_comp = 0.0
    t = 1.0
    j = mode
    while j < m:
        t *= (m - j) / (j + 1.0) * r
        j += 1
        y = t - up_comp
        s = up_total + y
        up_comp = (s - up_total) - y
        up_total = s
        if j >= b:
            term = t * j
            y = term - up_w_comp
            s = up_w + y
            up_w_comp = (s - up_w) - y
            up_w = s
        if t == 0.0:
            break
        if (t * m < _TERM_EPS * (1.0 + up_total)
                and (b <= mode or (j >= b and t * j < _TERM_EPS * up_w))):
            break

    down_total = 0.0
    down_comp = 0.0
    down_w = 0.0
    down_w_comp = 0.0
    t = 1.0
    j = mode
    while j > 0:
        t *= j / ((m - j + 1.0) * r)
        j -= 1
        y = t - down_comp
        s = down_total + y
        down_comp = (s - down_total) - y
        down_total = s
        if j >= b:
            term = t * j
            y = term - down_w_comp
            s = down_w + y
            down_w_comp = (s - down_w) - y
            down_w = s
        if t == 0.0:
            break
        if t < _TERM_EPS * (1.0 + down_total) and (j < b or b > mode):
            break

    total = 1.0 + up_total + down_total
    weighted = up_w + down_w
    if mode >= b:
        weighted += float(mode)
    return weighted / total


@njit
def _kahan_add(sums, comps, idx, val):
    y = val - comps[idx]
    t = sums[idx] + y
    comps[idx] = (t - sums[idx]) - y
    sums[idx] = t


@njit
def enumerate_state(n, b, w0, w1, w2):
    """Exhaustive sweep over the 3**n per-player outcome profiles of one state.

    Outcome codes per player: 0 = high signal (buys), 1 = low signal and
    buys, 2 = low signal and opts out, with weights w0, w1, w2.

    Returns Kahan-compensated weight sums:
    [total, supply, buyer_fraction_on_supply, first_buys, first_buys_and_supply].
    """
    weights = np.empty(3)
    weights[0] = w0
    weights[1] = w1
    weights[2] = w2
    sums = np.zeros(5)
    comps = np.zeros(5)
    nprof = 3 ** n
    for code in range(nprof):
        c = code
        w = 1.0
        buyers = 0
        first = c % 3
        for _ in range(n):
            d = c % 3
            c //= 3
            w *= weights[d]
            if d < 2:
                buyers += 1
        _kahan_add(sums, comps, 0, w)
        if buyers >= b:
            _kahan_add(sums, comps, 1, w)
            _kahan_add(sums, comps, 2, w * buyers / n)
            if first < 2:
                _kahan_add(sums, comps, 4, w)
        if first < 2:
            _kahan_add(sums, comps, 3, w)
    return sums


@njit
def simulate_block(state_u, sig_u, act_u, p, lam, b):
    """Tally one block of simulated plays of the game.

    state_u: (trials,) uniforms deciding the state (H iff < 0.5).
    sig_u:   (trials, n) uniforms deciding signal correctness (< p).
    act_u:   (trials, n) uniforms deciding a low type's buy (< lam).

    Returns the tally vector
    [nH, nL, supplyH, supplyL, sum_vH, sum_v2H, sum_vL, sum_v2L,
     a1H, a1L, supply_a1H, supply_a1L, all_low, all_low_supply]
    where v = (buyers/n) * 1{buyers >= B}.
    """
    trials, n = sig_u.shape
    out = np.zeros(14)
    for t in range(trials):
        high_state = state_u[t] < 0.5
        buyers = 0
        any_high_signal = False
        first_buys = False
        for i in range(n):
            correct = sig_u[t, i] < p
            high_signal = correct == high_state
            buys = high_signal or (act_u[t, i] < lam)
            if high_signal:
                any_high_signal = True
            if buys:
                buyers += 1
                if i == 0:
                    first_buys = True
        supplied = buyers >= b
        v = buyers / n if supplied else 0.0
        if high_state:
            out[0] += 1.0
            if supplied:
                out[2] += 1.0
            out[4] += v
            out[5] += v * v
            if first_buys:
                out[8] += 1.0
                if supplied:
                    out[10] += 1.0
        else:
            out[1] += 1.0
            if supplied:
                out[3] += 1.0
            out[6] += v
            out[7] += v * v
            if first_buys:
                out[9] += 1.0
                if supplied:
                    out[11] += 1.0
        if not any_high_signal:
            out[12] += 1.0
            if supplied:
                out[13] += 1.0
    return out
