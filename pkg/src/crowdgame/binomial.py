"""Binomial tail and truncated-mean kernels used throughout the package.

Evaluation strategy: pmf terms summed in log space from the mode outward
for trial counts up to 10**4, the regularized incomplete beta continued
fraction above that.  Threshold values outside the support short-circuit
before any floating-point work.
"""
from dataclasses import dataclass

from . import _kernels
from .errors import ParameterError


@dataclass(frozen=True)
class BinomialQuery:
    """A tail query Pr(X >= threshold) for X ~ Bin(trials, success_prob).

    The threshold may lie outside [0, trials]; such queries short-circuit
    to 0 or 1.
    """
    trials: int
    success_prob: float
    threshold: int

    def __post_init__(self):
        _check_domain(self.trials, self.success_prob)


def _check_domain(trials, success_prob):
    if trials < 0:
        raise ParameterError(f"trials must be >= 0, got {trials}")
    if not 0.0 <= success_prob <= 1.0:
        raise ParameterError(
            f"success_prob must lie in [0, 1], got {success_prob}")


def tail_prob(query: BinomialQuery) -> float:
    """Pr(X >= k) for X ~ Bin(m, gamma), with relative error <= 1e-12
    for m up to 10**6."""
    return _kernels.binom_tail(query.trials, query.success_prob, query.threshold)


def log_tail_prob(query: BinomialQuery) -> float:
    """log Pr(X >= k); finite deep in the upper tail where the linear
    probability underflows."""
    return _kernels.binom_log_tail(query.trials, query.success_prob,
                                   query.threshold)


def truncated_mean(trials: int, success_prob: float, threshold: int) -> float:
    """E[X * 1{X >= threshold}] for X ~ Bin(trials, success_prob)."""
    _check_domain(trials, success_prob)
    return _kernels.binom_trunc_mean(trials, success_prob, threshold)
