"""Acceptance suite: nine end-to-end checks, one pass/fail line each.

Reference values in _REFERENCE_TABLE are published three-decimal figures
for the default (p, n, threshold-rule) grid; each finite cell lists
(lambda, theta, (x+y)/2, R) for thresholds ceil(n/3), ceil(n/2),
ceil(9n/10).  The "inf" rows are the closed-form limits.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from crowdgame import (BinomialQuery, GameParams, enumerate_exact, evaluate,
                       limit_indices, low_type_payoff, simulate, solve,
                       tail_prob, truncated_mean)
from crowdgame.table import limit_cell, threshold_for

# (p, n) -> [(lambda, theta, mean_xy, penetration)] for the three rules
_REFERENCE_TABLE = {
    (0.55, 5): [(0.000, 0.562, 0.806, 0.468), (0.029, 0.590, 0.526, 0.366),
                (0.599, 0.541, 0.329, 0.329)],
    (0.55, 10): [(0.000, 0.582, 0.816, 0.453), (0.064, 0.605, 0.690, 0.427),
                 (0.672, 0.558, 0.495, 0.462)],
    (0.55, 100): [(0.000, 0.505, 0.995, 0.498), (0.154, 0.603, 0.891, 0.526),
                  (0.837, 0.584, 0.801, 0.745)],
    (0.55, 1000): [(0.000, 0.500, 1.000, 0.500), (0.115, 0.595, 0.904, 0.511),
                   (0.832, 0.592, 0.905, 0.832)],
    (0.75, 5): [(0.000, 0.809, 0.676, 0.459), (0.044, 0.883, 0.525, 0.408),
                (0.571, 0.712, 0.355, 0.355)],
    (0.75, 10): [(0.000, 0.886, 0.610, 0.424), (0.101, 0.895, 0.593, 0.439),
                 (0.651, 0.783, 0.501, 0.474)],
    (0.75, 100): [(0.078, 0.859, 0.641, 0.436), (0.291, 0.852, 0.648, 0.489),
                  (0.838, 0.839, 0.659, 0.625)],
    (0.75, 1000): [(0.102, 0.841, 0.659, 0.442), (0.323, 0.839, 0.661, 0.497),
                   (0.860, 0.835, 0.665, 0.632)],
    (0.95, 5): [(0.000, 0.989, 0.511, 0.480), (0.053, 0.995, 0.504, 0.479),
                (0.437, 0.923, 0.444, 0.444)],
    (0.95, 10): [(0.052, 0.994, 0.506, 0.479), (0.128, 0.991, 0.509, 0.483),
                 (0.551, 0.974, 0.506, 0.496)],
    (0.95, 100): [(0.217, 0.981, 0.519, 0.487), (0.378, 0.979, 0.521, 0.495),
                  (0.827, 0.976, 0.524, 0.518)],
    (0.95, 1000): [(0.273, 0.976, 0.524, 0.490), (0.446, 0.975, 0.525, 0.499),
                   (0.877, 0.974, 0.526, 0.520)],
}

# (p,) -> limit rows: (lambda, theta, mean_xy, penetration) per rule
_REFERENCE_LIMITS = {
    0.55: [(0.000, 0.500, 1.000, 0.500), (0.091, 0.591, 0.909, 0.909),
           (0.818, 0.591, 0.909, 0.909)],
    0.75: [(0.111, 0.833, 0.667, 0.667), (0.333, 0.833, 0.667, 0.667),
           (0.867, 0.833, 0.667, 0.667)],
    0.95: [(0.298, 0.974, 0.526, 0.526), (0.474, 0.974, 0.526, 0.526),
           (0.895, 0.974, 0.526, 0.526)],
}

_RULES = (Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))
_QUANTITY_NAMES = ("lambda", "theta", "mean_xy", "penetration")


def _report(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    print(line)
    assert ok, line


def test_criterion_1_reference_grid_reproduced():
    t0 = time.perf_counter()
    worst = 0.0
    worst_where = ""
    for (p, n), rows in _REFERENCE_TABLE.items():
        for rule, expected in zip(_RULES, rows):
            b = threshold_for(n, rule)
            result = evaluate(GameParams(n, b, p))
            got = (result.profile.lam, result.theta, result.mean_xy,
                   result.penetration)
            for qname, g, e in zip(_QUANTITY_NAMES, got, expected):
                err = abs(round(g, 3) - e)
                if err > worst:
                    worst = err
                    worst_where = f"p={p} n={n} B={b} {qname}"
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.002 + 1e-9 and elapsed < 5.0
    _report("criterion 1 (36-cell reference grid)", ok,
            f"max |rounded - published| = {worst:.4f} at {worst_where}, "
            f"elapsed {elapsed:.2f}s")


def test_criterion_2_unanimity_game_equilibrium():
    profile = solve(GameParams(3, 3, 0.75))
    lam_err = abs(profile.lam - 0.302)
    cube = profile.lam ** 3
    cube_err = abs(cube - 0.0276)
    ok = lam_err <= 0.001 and cube_err <= 0.0005
    _report("criterion 2 (three-player unanimity game)", ok,
            f"lambda = {profile.lam:.6f} (|err| = {lam_err:.2e}), "
            f"lambda^3 = {cube:.6f} (|err vs 0.0276| = {cube_err:.2e})")


def test_criterion_3_limit_rows():
    worst = 0.0
    worst_where = ""
    for p, rows in _REFERENCE_LIMITS.items():
        for rule, expected in zip(_RULES, rows):
            cell = limit_cell(p, rule)
            got = (cell.lam, cell.theta, cell.mean_xy, cell.penetration)
            for qname, g, e in zip(_QUANTITY_NAMES, got, expected):
                err = abs(round(g, 3) - e)
                if err > worst:
                    worst = err
                    worst_where = f"p={p} q={rule} {qname}"
    ok = worst <= 0.001 + 1e-9
    _report("criterion 3 (limit rows)", ok,
            f"max |rounded - published| = {worst:.4f} at {worst_where or 'n/a'}")


def test_criterion_4_enumeration_cross_check():
    t0 = time.perf_counter()
    worst = 0.0
    cases = 0
    for n in range(1, 11):
        for b in range(1, n + 1):
            for p in (0.55, 0.65, 0.75, 0.85, 0.95):
                params = GameParams(n, b, p)
                for lam in (0.0, 0.25, 0.5, solve(params).lam):
                    exact = enumerate_exact(params, lam)
                    analytic = evaluate(params, profile=exact.profile)
                    dev = max(
                        abs(exact.theta - analytic.theta),
                        abs(exact.penetration - analytic.penetration),
                        abs(exact.mean_xy - analytic.mean_xy),
                        abs(exact.supply.x - analytic.supply.x),
                        abs(exact.supply.y - analytic.supply.y),
                        abs(exact.supply.supply_h - analytic.supply.supply_h),
                        abs(exact.supply.supply_l - analytic.supply.supply_l),
                    )
                    worst = max(worst, dev)
                    cases += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 120.0
    _report("criterion 4 (exhaustive enumeration cross-check)", ok,
            f"{cases} cases, max deviation = {worst:.2e}, elapsed {elapsed:.1f}s")


def test_criterion_5_monte_carlo_cross_check():
    t0 = time.perf_counter()
    worst_sigma = 0.0
    worst_where = ""
    for n, b, p in ((3, 3, 0.75), (10, 5, 0.75), (100, 50, 0.55),
                    (100, 90, 0.95)):
        params = GameParams(n, b, p)
        result = evaluate(params)
        report = simulate(params, result.profile.lam, 1_000_000, seed=20260824)
        analytic = {
            "theta": result.theta,
            "penetration": result.penetration,
            "supply_h": result.supply.supply_h,
            "supply_l": result.supply.supply_l,
            "x": result.supply.x,
            "y": result.supply.y,
        }
        for key, value in analytic.items():
            se = report.std_errors[key]
            if not math.isfinite(se) or se == 0.0:
                continue
            sigma = abs(report.estimates[key] - value) / se
            if sigma > worst_sigma:
                worst_sigma = sigma
                worst_where = f"n={n} b={b} p={p} {key}"
    elapsed = time.perf_counter() - t0
    ok = worst_sigma <= 4.0 and elapsed < 60.0
    _report("criterion 5 (seeded Monte Carlo cross-check)", ok,
            f"worst deviation = {worst_sigma:.2f} SE at {worst_where}, "
            f"elapsed {elapsed:.1f}s")


def test_criterion_6_single_crossing_and_indifference():
    rng = np.random.default_rng(90210)
    grid = np.linspace(0.0, 1.0, 1001)
    worst_flips = 0
    worst_residual = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 501))
        b = int(rng.integers(1, n + 1))
        p = float(rng.uniform(0.51, 0.99))
        params = GameParams(n, b, p)
        values = np.array([low_type_payoff(params, float(l)) for l in grid])
        flips = 0
        prev_nonneg = values[0] >= 0
        for v in values[1:]:
            nonneg = v >= 0
            if prev_nonneg and not nonneg:
                flips += 1
            prev_nonneg = nonneg
        worst_flips = max(worst_flips, flips)
        profile = solve(params)
        if profile.lam > 0:
            worst_residual = max(
                worst_residual, abs(low_type_payoff(params, profile.lam)))
    ok = worst_flips <= 1 and worst_residual < 1e-10
    _report("criterion 6 (single crossing and indifference)", ok,
            f"max sign crossings = {worst_flips}, "
            f"max interior-root residual = {worst_residual:.2e}")


def test_criterion_7_correctness_limit_convergence():
    target = (3 * 0.75 - 1) / (2 * 0.75)
    errs = []
    for n in (100, 1000, 10000):
        b = -(-n // 2)
        result = evaluate(GameParams(n, b, 0.75))
        errs.append(abs(result.theta - target))
    ok = errs[0] > errs[1] > errs[2] and errs[2] < 0.01
    _report("criterion 7 (correctness approaches its limit)", ok,
            f"|theta - {target:.4f}| = "
            f"{errs[0]:.4f} (n=100), {errs[1]:.4f} (n=1000), "
            f"{errs[2]:.4f} (n=10000)")


def test_criterion_8_penetration_bound_attained():
    details = []
    ok = True
    for p in (0.55, 0.75, 0.95):
        bound = 1.0 / (2.0 * p)
        n = 2000
        best = 0.0
        for b in range(1, n + 1):
            r = evaluate(GameParams(n, b, p)).penetration
            if r > best:
                best = r
        ok = ok and best <= bound + 1e-9 and best >= bound - 0.05
        details.append(f"p={p}: max R = {best:.4f}, bound = {bound:.4f}")
    _report("criterion 8 (penetration bound tight at n=2000)", ok,
            "; ".join(details))


def test_criterion_9_tail_identities():
    rng = np.random.default_rng(112358)
    worst_integral = 0.0
    worst_mean = 0.0
    from scipy import integrate
    for _ in range(60):
        n = int(rng.integers(4, 5000))
        b = int(rng.integers(2, n + 1))
        g = float(rng.uniform(0.02, 0.98))
        log_c = (math.lgamma(n) - math.lgamma(b - 1) - math.lgamma(n - b + 1))

        def integrand(t):
            if t <= 0.0 or t >= 1.0:
                return 0.0
            return math.exp(log_c + (b - 2) * math.log(t)
                            + (n - b) * math.log1p(-t))

        peak = (b - 2) / (n - 2) if n > 2 else 0.5
        points = [peak] if 0.0 < peak < g else None
        value, _ = integrate.quad(integrand, 0.0, g, points=points,
                                  limit=400, epsabs=1e-12, epsrel=1e-12)
        worst_integral = max(worst_integral, abs(
            tail_prob(BinomialQuery(n - 1, g, b - 1)) - value))
    for _ in range(500):
        m = int(rng.integers(1, 100_001))
        g = float(rng.uniform(0.01, 0.99))
        b = int(rng.integers(0, m + 2))
        lhs = truncated_mean(m, g, b)
        rhs = m * g * tail_prob(BinomialQuery(m - 1, g, b - 1))
        scale = max(abs(lhs), abs(rhs), 1e-300)
        worst_mean = max(worst_mean, abs(lhs - rhs) / scale)
    ok = worst_integral <= 1e-9 and worst_mean <= 1e-12
    _report("criterion 9 (tail integral and truncated-mean identities)", ok,
            f"max integral deviation = {worst_integral:.2e}, "
            f"max truncated-mean relative deviation = {worst_mean:.2e}")
