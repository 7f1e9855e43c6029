"""Exact evaluation of the correctness and market-penetration indices.

All quantities derive from binomial tails at the state-conditional buy
probabilities.  The per-player conditional supply probabilities (x, y)
use Bin(n-1, .) at threshold B-1; the unconditional ones use Bin(n, .)
at threshold B.
"""
from dataclasses import dataclass

from . import _kernels
from .equilibrium import EquilibriumProfile, GameParams, solve


@dataclass(frozen=True)
class SupplyProbabilities:
    """Supply probabilities per state: x, y condition on one committed
    buyer; supply_h, supply_l are unconditional."""
    x: float
    y: float
    supply_h: float
    supply_l: float


@dataclass(frozen=True)
class GameIndices:
    """Correctness index, market penetration index and supply
    probabilities of one solved game.

    ``mean_xy`` is the state-averaged supply probability
    (supply_h + supply_l) / 2, the quantity tabulated alongside theta
    and the penetration index.
    """
    theta: float
    penetration: float
    mean_xy: float
    supply: SupplyProbabilities
    profile: EquilibriumProfile


def supply_probs(params: GameParams, profile: EquilibriumProfile) -> SupplyProbabilities:
    return SupplyProbabilities(
        x=_kernels.binom_tail(params.n - 1, profile.lambda_h, params.b - 1),
        y=_kernels.binom_tail(params.n - 1, profile.lambda_l, params.b - 1),
        supply_h=_kernels.binom_tail(params.n, profile.lambda_h, params.b),
        supply_l=_kernels.binom_tail(params.n, profile.lambda_l, params.b),
    )


def correctness(params: GameParams, profile: EquilibriumProfile) -> float:
    """Probability the campaign outcome matches the state: supplied in H,
    rejected in L."""
    supply = supply_probs(params, profile)
    return 0.5 * supply.supply_h + 0.5 * (1.0 - supply.supply_l)


def penetration(params: GameParams, profile: EquilibriumProfile) -> float:
    """Expected per-capita number of buyers on the supply event."""
    n, b = params.n, params.b
    mean_h = _kernels.binom_trunc_mean(n, profile.lambda_h, b)
    mean_l = _kernels.binom_trunc_mean(n, profile.lambda_l, b)
    return 0.5 * mean_h / n + 0.5 * mean_l / n


def evaluate(params: GameParams, profile: EquilibriumProfile | None = None) -> GameIndices:
    """Solve (unless a profile is supplied) and evaluate all indices."""
    if profile is None:
        profile = solve(params)
    supply = supply_probs(params, profile)
    return GameIndices(
        theta=0.5 * supply.supply_h + 0.5 * (1.0 - supply.supply_l),
        penetration=penetration(params, profile),
        mean_xy=0.5 * (supply.supply_h + supply.supply_l),
        supply=supply,
        profile=profile,
    )
