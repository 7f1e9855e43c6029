import numpy as np
import pytest

from crowdgame import (EquilibriumProfile, GameParams, correctness, evaluate,
                       penetration, solve, supply_probs)


def profile_for(params, lam):
    return EquilibriumProfile(
        lam=lam, psi=1.0,
        lambda_h=params.p + (1 - params.p) * lam,
        lambda_l=(1 - params.p) + params.p * lam,
        residual=float("nan"))


def test_reference_cell_n10():
    result = evaluate(GameParams(10, 5, 0.75))
    assert round(result.theta, 3) == 0.895
    assert round(result.penetration, 3) == 0.439
    assert round(result.mean_xy, 3) == 0.593


def test_reference_cell_small_high_accuracy():
    result = evaluate(GameParams(5, 2, 0.95))
    assert round(result.theta, 3) == 0.989


def test_correctness_closed_form_threshold_one():
    # B=1, lambda=0: theta = (1 - (1-p)^n)/2 + p^n/2
    params = GameParams(5, 1, 0.55)
    profile = solve(params)
    assert profile.lam == 0.0
    expected = 0.5 * (1 - 0.45 ** 5) + 0.5 * 0.55 ** 5
    assert correctness(params, profile) == pytest.approx(expected, abs=1e-12)


def test_threshold_one_conditional_supply_is_certain():
    params = GameParams(8, 1, 0.7)
    supply = supply_probs(params, profile_for(params, 0.0))
    assert supply.x == 1.0
    assert supply.y == 1.0
    assert supply.supply_h == pytest.approx(1 - 0.3 ** 8, abs=1e-14)
    assert supply.supply_l == pytest.approx(1 - 0.7 ** 8, abs=1e-14)


def test_threshold_one_penetration_is_half():
    params = GameParams(12, 1, 0.8)
    assert penetration(params, profile_for(params, 0.0)) == pytest.approx(0.5, abs=1e-13)


def test_three_player_unanimity_closed_forms():
    params = GameParams(3, 3, 0.75)
    profile = solve(params)
    supply = supply_probs(params, profile)
    assert supply.x == pytest.approx(profile.lambda_h ** 2, rel=1e-12)
    assert supply.y == pytest.approx(profile.lambda_l ** 2, rel=1e-12)
    assert (1 - params.p) * supply.x - params.p * supply.y == pytest.approx(0.0, abs=1e-10)


def test_invariants_on_random_grid():
    rng = np.random.default_rng(43)
    for _ in range(40):
        n = int(rng.integers(1, 300))
        b = int(rng.integers(1, n + 1))
        p = float(rng.uniform(0.51, 0.99))
        params = GameParams(n, b, p)
        result = evaluate(params)
        supply = result.supply
        assert 0.0 <= result.theta <= 1.0
        assert 0.0 <= result.penetration <= 1.0
        assert supply.x >= supply.supply_h - 1e-12
        assert supply.y >= supply.supply_l - 1e-12
        assert result.penetration <= 0.5 * (supply.supply_h + supply.supply_l) + 1e-12
        if result.profile.lam > 0:
            assert abs((1 - p) * supply.x - p * supply.y) < 1e-10
