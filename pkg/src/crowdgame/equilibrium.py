"""Solver for the symmetric non-trivial equilibrium of the crowdfunding game.

A game is defined by (n, B, p): n players, supply threshold B, signal
accuracy p.  High types always buy; the low type's buy probability lambda
is pinned by the root of the low type's expected payoff from buying,
which changes sign at most once on [0, 1].
"""
import math
from dataclasses import dataclass

from . import _kernels
from .errors import InternalConsistencyError, ParameterError

DEFAULT_TOL = 1e-12
_MAX_BISECT = 200


@dataclass(frozen=True)
class GameParams:
    """Parameters (n, B, p) of a crowdfunding game."""
    n: int
    b: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.b <= self.n:
            raise ParameterError(
                f"B must satisfy 1 <= B <= n, got B={self.b}, n={self.n}")
        if not 0.5 < self.p < 1.0:
            raise ParameterError(
                f"p must satisfy 0.5 < p < 1, got p={self.p}")

    def buy_prob_high_state(self, lam: float) -> float:
        return self.p + (1.0 - self.p) * lam

    def buy_prob_low_state(self, lam: float) -> float:
        return (1.0 - self.p) + self.p * lam


@dataclass(frozen=True)
class EquilibriumProfile:
    """The solved symmetric strategy: psi = 1 for high types, lam for low
    types, plus the induced per-player buy probability in each state."""
    lam: float
    psi: float
    lambda_h: float
    lambda_l: float
    residual: float


def low_type_payoff(params: GameParams, lam: float) -> float:
    """Expected payoff of a low type from buying when everyone else plays
    (high -> buy, low -> buy with probability lam)."""
    if not 0.0 <= lam <= 1.0:
        raise ParameterError(f"lambda must lie in [0, 1], got {lam}")
    m = params.n - 1
    k = params.b - 1
    x = _kernels.binom_tail(m, params.buy_prob_high_state(lam), k)
    y = _kernels.binom_tail(m, params.buy_prob_low_state(lam), k)
    return (1.0 - params.p) * x - params.p * y


def _payoff_sign(params: GameParams, lam: float) -> float:
    # sign of the low-type payoff, decided in log space: for B close to n
    # both tails underflow double precision long before the root region,
    # which would misreport the sign as zero
    m = params.n - 1
    k = params.b - 1
    log_x = _kernels.binom_log_tail(m, params.buy_prob_high_state(lam), k)
    log_y = _kernels.binom_log_tail(m, params.buy_prob_low_state(lam), k)
    if log_x == -math.inf and log_y == -math.inf:
        return 0.0
    return (math.log1p(-params.p) + log_x) - (math.log(params.p) + log_y)


def solve(params: GameParams, tol: float = DEFAULT_TOL) -> EquilibriumProfile:
    """Locate the unique symmetric non-trivial equilibrium.

    Returns lam = 0 when the low type's payoff from buying is already
    non-positive at lam = 0; otherwise bisects for the single sign change
    on (0, 1) to absolute tolerance ``tol`` in lam.
    """
    if _payoff_sign(params, 0.0) <= 0.0:
        return _profile(params, 0.0)
    # payoff is positive at 0 and equals 1 - 2p < 0 at 1: bisection on the
    # verified bracket cannot fail
    lo, hi = 0.0, 1.0
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        if iterations > _MAX_BISECT:
            raise InternalConsistencyError(
                f"bisection failed to reach tol={tol} within "
                f"{_MAX_BISECT} iterations for {params}")
        mid = 0.5 * (lo + hi)
        if _payoff_sign(params, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return _profile(params, 0.5 * (lo + hi))


def _profile(params: GameParams, lam: float) -> EquilibriumProfile:
    return EquilibriumProfile(
        lam=lam,
        psi=1.0,
        lambda_h=params.buy_prob_high_state(lam),
        lambda_l=params.buy_prob_low_state(lam),
        residual=low_type_payoff(params, lam),
    )
