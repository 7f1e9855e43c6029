"""Equilibrium, correctness and market-penetration calculations for
threshold crowdfunding games, with simulation and enumeration oracles."""
from ._accel import USING_NUMBA
from .asymptotics import (AsymptoticLimits, lambda_limit, limit_indices,
                          penetration_max, theta_max)
from .binomial import BinomialQuery, log_tail_prob, tail_prob, truncated_mean
from .equilibrium import EquilibriumProfile, GameParams, low_type_payoff, solve
from .errors import (CapacityError, CrowdGameError, InternalConsistencyError,
                     ParameterError)
from .indices import (GameIndices, SupplyProbabilities, correctness, evaluate,
                      penetration, supply_probs)
from .oracle import (SimulationReport, enumerate_exact,
                     enumeration_weight_totals, simulate)
from .table import TableCell, TableSpec, build_table, sweep, threshold_for

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "AsymptoticLimits", "lambda_limit", "limit_indices",
    "penetration_max", "theta_max",
    "BinomialQuery", "log_tail_prob", "tail_prob", "truncated_mean",
    "EquilibriumProfile", "GameParams", "low_type_payoff", "solve",
    "CapacityError", "CrowdGameError", "InternalConsistencyError",
    "ParameterError",
    "GameIndices", "SupplyProbabilities", "correctness", "evaluate",
    "penetration", "supply_probs",
    "SimulationReport", "enumerate_exact", "enumeration_weight_totals",
    "simulate",
    "TableCell", "TableSpec", "build_table", "sweep", "threshold_for",
    "__version__",
]
