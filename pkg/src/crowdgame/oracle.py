"""Independent validators for the analytic modules.

Two routes: a seeded Monte Carlo simulator that plays the game literally
(draw a state, draw signals, play the strategy, test the threshold), and
an exhaustive enumerator over all per-player outcome profiles.  Neither
touches the binomial tail code, so agreement with the analytic indices is
evidence rather than tautology.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ._accel import USING_NUMBA
from .equilibrium import EquilibriumProfile, GameParams
from .errors import CapacityError, ParameterError
from .indices import GameIndices, SupplyProbabilities

if USING_NUMBA:
    from ._kernels import enumerate_state, simulate_block
else:
    from ._kernels_np import enumerate_state, simulate_block

ENUMERATION_MAX_PLAYERS = 12
GENERATOR_ID = "numpy.random.PCG64"
_BLOCK_TRIALS = 1 << 14


@dataclass(frozen=True)
class SimulationReport:
    """Empirical estimates with standard errors from one simulation run.

    A pure function of (params, lam, trials, seed): the same inputs give
    a bitwise-identical report within one installation.
    """
    trials: int
    seed: int
    generator: str
    estimates: dict[str, float] = field(default_factory=dict)
    std_errors: dict[str, float] = field(default_factory=dict)


def _check_lam(lam):
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")


def simulate(params: GameParams, lam: float, trials: int, seed: int) -> SimulationReport:
    """Play ``trials`` independent rounds of the game and tally outcomes.

    Trials are drawn in fixed-size blocks, each from its own child seed,
    so blocks may be farmed out in parallel without changing the merged
    report.
    """
    _check_lam(lam)
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    n, b, p = params.n, params.b, params.p
    totals = np.zeros(14)
    done = 0
    block = 0
    while done < trials:
        size = min(_BLOCK_TRIALS, trials - done)
        rng = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence([seed, block])))
        state_u = rng.random(size)
        sig_u = rng.random((size, n))
        act_u = rng.random((size, n))
        totals += simulate_block(state_u, sig_u, act_u, p, lam, b)
        done += size
        block += 1
    return _build_report(totals, trials, seed, n)


def _ratio_se(successes, count):
    if count <= 0:
        return math.nan, math.nan
    phat = successes / count
    return phat, math.sqrt(max(phat * (1.0 - phat), 0.0) / count)


def _mean_se(total, total_sq, count):
    if count <= 1:
        return math.nan, math.nan
    mean = total / count
    var = max(total_sq - count * mean * mean, 0.0) / (count - 1)
    return mean, math.sqrt(var / count)


def _build_report(t, trials, seed, n):
    (n_h, n_l, sup_h, sup_l, v_h, v2_h, v_l, v2_l,
     a1_h, a1_l, sup_a1_h, sup_a1_l, all_low, all_low_sup) = t
    supply_h, se_sh = _ratio_se(sup_h, n_h)
    supply_l, se_sl = _ratio_se(sup_l, n_l)
    x, se_x = _ratio_se(sup_a1_h, a1_h)
    y, se_y = _ratio_se(sup_a1_l, a1_l)
    pen_h, se_ph = _mean_se(v_h, v2_h, n_h)
    pen_l, se_pl = _mean_se(v_l, v2_l, n_l)
    low_sup, se_low = _ratio_se(all_low_sup, all_low)
    estimates = {
        "theta": 0.5 * supply_h + 0.5 * (1.0 - supply_l),
        "penetration": 0.5 * pen_h + 0.5 * pen_l,
        "supply_h": supply_h,
        "supply_l": supply_l,
        "x": x,
        "y": y,
        "supply_given_all_low": low_sup,
    }
    std_errors = {
        "theta": 0.5 * math.hypot(se_sh, se_sl),
        "penetration": 0.5 * math.hypot(se_ph, se_pl),
        "supply_h": se_sh,
        "supply_l": se_sl,
        "x": se_x,
        "y": se_y,
        "supply_given_all_low": se_low,
    }
    return SimulationReport(trials=trials, seed=seed, generator=GENERATOR_ID,
                            estimates=estimates, std_errors=std_errors)


def enumerate_exact(params: GameParams, lam: float) -> GameIndices:
    """Exact indices by summing over every per-player outcome profile.

    Each player's outcome in a given state is one of {high signal (buys),
    low signal and buys, low signal and opts out}; the 2 * 3**n weighted
    terms are summed directly.
    """
    _check_lam(lam)
    n, b, p = params.n, params.b, params.p
    if n > ENUMERATION_MAX_PLAYERS:
        raise CapacityError(
            f"n exceeds enumeration capacity "
            f"({n} > {ENUMERATION_MAX_PLAYERS})")
    # state H: a high signal arrives w.p. p; state L: w.p. 1-p
    sums_h = enumerate_state(n, b, p, (1.0 - p) * lam, (1.0 - p) * (1.0 - lam))
    sums_l = enumerate_state(n, b, 1.0 - p, p * lam, p * (1.0 - lam))
    supply_h = sums_h[1]
    supply_l = sums_l[1]
    supply = SupplyProbabilities(
        x=sums_h[4] / sums_h[3],
        y=sums_l[4] / sums_l[3],
        supply_h=supply_h,
        supply_l=supply_l,
    )
    profile = EquilibriumProfile(
        lam=lam,
        psi=1.0,
        lambda_h=params.buy_prob_high_state(lam),
        lambda_l=params.buy_prob_low_state(lam),
        residual=math.nan,
    )
    return GameIndices(
        theta=0.5 * supply_h + 0.5 * (1.0 - supply_l),
        penetration=0.5 * sums_h[2] + 0.5 * sums_l[2],
        mean_xy=0.5 * (supply_h + supply_l),
        supply=supply,
        profile=profile,
    )


def enumeration_weight_totals(params: GameParams, lam: float) -> tuple[float, float]:
    """Total enumeration weight per state; each should be 1 up to roundoff."""
    _check_lam(lam)
    n, b, p = params.n, params.b, params.p
    if n > ENUMERATION_MAX_PLAYERS:
        raise CapacityError(
            f"n exceeds enumeration capacity "
            f"({n} > {ENUMERATION_MAX_PLAYERS})")
    sums_h = enumerate_state(n, b, p, (1.0 - p) * lam, (1.0 - p) * (1.0 - lam))
    sums_l = enumerate_state(n, b, 1.0 - p, p * lam, p * (1.0 - lam))
    return sums_h[0], sums_l[0]
