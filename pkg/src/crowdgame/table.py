"""Grid evaluation of lambda, theta, mean supply and penetration over
(p, n, threshold-rule) combinations, including the limit rows."""
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import limit_indices
from .equilibrium import GameParams, solve
from .errors import ParameterError
from .indices import evaluate

DEFAULT_P_VALUES = (0.55, 0.75, 0.95)
DEFAULT_N_VALUES = (5, 10, 100, 1000, None)  # None is the n -> infinity row
DEFAULT_B_RULES = (Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))


@dataclass(frozen=True)
class TableSpec:
    """Grid definition; thresholds are ceil(fraction * n)."""
    p_values: tuple = DEFAULT_P_VALUES
    n_values: tuple = DEFAULT_N_VALUES
    b_rules: tuple = DEFAULT_B_RULES
    decimals: int = 3


@dataclass(frozen=True)
class TableCell:
    """One (p, n, rule) cell; n and b are None on the limit row."""
    p: float
    n: int | None
    rule: Fraction
    b: int | None
    lam: float
    theta: float
    mean_xy: float
    penetration: float


def threshold_for(n: int, rule: Fraction) -> int:
    """ceil(rule * n) in exact integer arithmetic."""
    num = rule.numerator * n
    den = rule.denominator
    return -(-num // den)


def rule_label(rule: Fraction) -> str:
    if rule.numerator == 1:
        return f"ceil(n/{rule.denominator})"
    return f"ceil({rule.numerator}n/{rule.denominator})"


def limit_cell(p: float, rule: Fraction) -> TableCell:
    """Limit-row cell: lambda and theta from the closed-form limits, the
    supply column from (x* + y*)/2, and the penetration column from
    (x* + y*)/2 above the q = 1-p cutoff and 1/2 below it."""
    q = float(rule)
    limits = limit_indices(q, p)
    mean_xy = 0.5 * (limits.x_star + limits.y_star)
    pen = mean_xy if q > 1.0 - p else 0.5
    return TableCell(p=p, n=None, rule=rule, b=None, lam=limits.lambda_inf,
                     theta=limits.theta_inf, mean_xy=mean_xy, penetration=pen)


def finite_cell(p: float, n: int, rule: Fraction) -> TableCell:
    b = threshold_for(n, rule)
    indices = evaluate(GameParams(n=n, b=b, p=p))
    return TableCell(p=p, n=n, rule=rule, b=b, lam=indices.profile.lam,
                     theta=indices.theta, mean_xy=indices.mean_xy,
                     penetration=indices.penetration)


def build_table(spec: TableSpec = TableSpec()) -> list[TableCell]:
    """All cells in row-major order: p, then n, then threshold rule."""
    cells = []
    for p in spec.p_values:
        for n in spec.n_values:
            for rule in spec.b_rules:
                if n is None:
                    cells.append(limit_cell(p, rule))
                else:
                    cells.append(finite_cell(p, n, rule))
    return cells


def sweep(n: int, p: float, metric: str) -> tuple[int, float, list[float]]:
    """Evaluate the chosen index for every B in 1..n.

    Returns (best B, value at best B, full curve); ties break toward the
    smallest B.
    """
    if metric not in ("theta", "penetration"):
        raise ParameterError(
            f"metric must be 'theta' or 'penetration', got {metric!r}")
    curve = []
    for b in range(1, n + 1):
        indices = evaluate(GameParams(n=n, b=b, p=p))
        curve.append(indices.theta if metric == "theta" else indices.penetration)
    best_value = max(curve)
    best_b = curve.index(best_value) + 1
    return best_b, best_value, curve
