"""Closed-form limits of the game quantities as the population grows,
for threshold sequences with B_n / n -> q."""
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class AsymptoticLimits:
    """Limit quantities for a threshold fraction q and signal accuracy p."""
    q: float
    lambda_inf: float
    x_star: float
    y_star: float
    theta_inf: float
    r_bound: float


def _check(q: float, p: float, allow_one: bool = True) -> None:
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"q must lie in [0, 1], got {q}")
    if not allow_one and q == 1.0:
        raise ParameterError("q = 1 is only meaningful as a limit; use q < 1")
    if not 0.5 < p < 1.0:
        raise ParameterError(f"p must satisfy 0.5 < p < 1, got {p}")


def lambda_limit(q: float, p: float) -> float:
    """Limit low-type buy probability: 0 for q <= 1-p, else (q-(1-p))/p.
    Continuous at q = 1-p."""
    _check(q, p)
    if q <= 1.0 - p:
        return 0.0
    return (q - (1.0 - p)) / p


def theta_max(p: float) -> float:
    """Best achievable limit correctness, (3p-1)/(2p)."""
    _check(0.0, p)
    return (3.0 * p - 1.0) / (2.0 * p)


def penetration_max(p: float) -> float:
    """Best achievable limit market penetration, 1/(2p)."""
    _check(0.0, p)
    return 1.0 / (2.0 * p)


def limit_indices(q: float, p: float) -> AsymptoticLimits:
    """Limit of lambda, x, y and the correctness index along B_n/n -> q.

    For q <= 1-p both conditional supply probabilities tend to 1 and
    correctness to 1/2; above it x* = 1, y* = (1-p)/p and correctness
    reaches (3p-1)/(2p).
    """
    _check(q, p, allow_one=False)
    if q <= 1.0 - p:
        x_star = y_star = 1.0
        theta_inf = 0.5
    else:
        x_star = 1.0
        y_star = (1.0 - p) / p
        theta_inf = theta_max(p)
    return AsymptoticLimits(
        q=q,
        lambda_inf=lambda_limit(q, p),
        x_star=x_star,
        y_star=y_star,
        theta_inf=theta_inf,
        r_bound=penetration_max(p),
    )
