import math

import numpy as np
import pytest

from qgames.games import (
    kolkata,
    minority,
    play_pd,
    play_profile,
    play_symmetric,
    payoff_operator,
    prisoners_dilemma,
)
from qgames.solver import (
    SearchConfig,
    best_response,
    dominant_strategy,
    fidelity_sweep,
    pareto_check_symmetric,
    sweep_to_csv,
    verify_nash,
    _deviation_form,
    _deviation_payoffs,
    _symmetric_payoffs,
)
from qgames.states import pure_to_density, expectation
from qgames.strategies import (
    Family,
    KOLKATA_OPTIMAL_PARAMS,
    MINORITY_OPTIMAL_PARAMS,
    PD_EQUILIBRIUM_PARAMS,
    StrategySpec,
    su2_eisert,
    su2_full_batch,
    su3_frame_batch,
)

PD = prisoners_dilemma()
MINORITY4 = minority(4)
KOLKATA = kolkata()
EQ = StrategySpec(Family.EISERT_SU2, PD_EQUILIBRIUM_PARAMS)
MINORITY_OPT = StrategySpec(Family.FULL_SU2, MINORITY_OPTIMAL_PARAMS)
KOLKATA_OPT = StrategySpec(Family.FRAME_SU3, KOLKATA_OPTIMAL_PARAMS)


class TestSearchConfig:
    def test_defaults(self):
        cfg = SearchConfig()
        assert cfg.grid_points_per_axis == 24
        assert cfg.refine_iterations == 200
        assert cfg.refine_initial_step == 0.1
        assert cfg.epsilon_nash == 1e-6
        assert cfg.seed == 0

    def test_json_round_trip(self):
        cfg = SearchConfig(grid_points_per_axis=8, seed=42)
        assert SearchConfig.from_json(cfg.to_json()) == cfg

    def test_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(grid_points_per_axis=1)
        with pytest.raises(ValueError):
            SearchConfig(epsilon_nash=0.0)


class TestReducedEvaluators:
    """The fast payoff reductions must match the direct protocol."""

    def test_deviation_form_matches_play_profile(self):
        rng = np.random.default_rng(41)
        for _ in range(8):
            profile = [
                StrategySpec(Family.FULL_SU2,
                             (rng.uniform(0, np.pi), rng.uniform(-np.pi, np.pi),
                              rng.uniform(-np.pi, np.pi)))
                for _ in range(4)
            ]
            ops = [spec.matrix() for spec in reversed(profile)]
            f = float(rng.uniform(0, 1))
            direct = play_profile(MINORITY4, ops, fidelity=f)
            for player in range(1, 5):
                form = _deviation_form(MINORITY4, ops, player, f)
                value = _deviation_payoffs(
                    form, profile[player - 1].matrix()[None, :, :]
                )[0]
                assert abs(value - direct.payoffs[player - 1]) < 1e-10

    def test_deviation_form_matches_pd_protocol(self):
        rng = np.random.default_rng(42)
        for _ in range(8):
            alice = su2_eisert(rng.uniform(0, np.pi), rng.uniform(0, np.pi / 2))
            bob = su2_eisert(rng.uniform(0, np.pi), rng.uniform(0, np.pi / 2))
            state = play_pd(alice, bob)
            rho = pure_to_density(state)
            form = _deviation_form(PD, [bob, alice], 1, 1.0)
            value = _deviation_payoffs(form, alice[None, :, :])[0]
            assert abs(value - expectation(rho, payoff_operator(PD, 1))) < 1e-10

    def test_symmetric_batch_matches_play_symmetric(self):
        rng = np.random.default_rng(43)
        mats = su3_frame_batch(*[rng.uniform(0, 1, 6) for _ in range(8)])
        for f in (1.0, 0.4):
            batch = _symmetric_payoffs(KOLKATA, mats, f)
            for i in range(6):
                direct = play_symmetric(KOLKATA, mats[i], fidelity=f)
                assert abs(batch[i] - direct.payoffs[0]) < 1e-10

    def test_symmetric_batch_matches_pd(self):
        rng = np.random.default_rng(44)
        mats = su2_full_batch(rng.uniform(0, np.pi, 6),
                              rng.uniform(-np.pi, np.pi, 6),
                              rng.uniform(-np.pi, np.pi, 6))
        batch = _symmetric_payoffs(PD, mats, 1.0)
        for i in range(6):
            direct = play_symmetric(PD, mats[i])
            assert abs(batch[i] - direct.payoffs[0]) < 1e-10


class TestBestResponse:
    def test_pd_eisert_against_equilibrium_dense_oracle(self):
        """Dense 256x256 oracle over the two-parameter box.

        The independent oracle plays every grid strategy through the full
        protocol; the search result must match its supremum, achieved at
        the equilibrium point itself.
        """
        q = EQ.matrix()
        p_alice = payoff_operator(PD, 1)
        best = -np.inf
        for theta in np.linspace(0, np.pi, 256):
            for alpha in np.linspace(0, np.pi / 2, 256):
                state = play_pd(su2_eisert(theta, alpha), q)
                value = expectation(pure_to_density(state), p_alice)
                best = max(best, value)
        result = best_response(PD, [EQ, EQ], 1, Family.EISERT_SU2)
        assert result.payoff <= 5.0
        assert result.payoff >= 3.0 - 1e-6
        assert abs(result.payoff - best) < 1e-6
        theta, alpha = result.strategy.params
        assert abs(theta - 0.0) < 1e-6 and abs(alpha - np.pi / 2) < 1e-6

    def test_minority_deviation_capped_at_quarter(self):
        result = best_response(MINORITY4, [MINORITY_OPT] * 4, 1, Family.FULL_SU2)
        assert result.payoff <= 0.25 + 1e-6
        assert result.payoff >= 0.25 - 1e-9

    def test_single_point_space_returned(self):
        only = StrategySpec(Family.CLASSICAL_BIT, (1.0,))
        result = best_response(PD, [EQ, EQ], 1, [only])
        assert result.strategy == only
        assert result.evaluations == 1

    def test_full_su2_beats_restricted_equilibrium(self):
        result = best_response(PD, [EQ, EQ], 1, Family.FULL_SU2)
        assert result.payoff > 3.0 + 0.1

    def test_incompatible_space_rejected(self):
        with pytest.raises(ValueError):
            best_response(PD, [EQ, EQ], 1, Family.FRAME_SU3)
        with pytest.raises(ValueError):
            best_response(PD, [EQ, EQ], 3, Family.EISERT_SU2)

    def test_reproducible_across_threads_and_runs(self):
        results = [
            best_response(MINORITY4, [MINORITY_OPT] * 4, 2, Family.FULL_SU2,
                          SearchConfig(seed=5), threads=t)
            for t in (1, 8, 1)
        ]
        assert results[0] == results[1] == results[2]

    def test_seed_changes_are_still_deterministic(self):
        a = best_response(PD, [EQ, EQ], 1, Family.EISERT_SU2, SearchConfig(seed=1))
        b = best_response(PD, [EQ, EQ], 1, Family.EISERT_SU2, SearchConfig(seed=1))
        assert a == b

    def test_payoff_not_below_any_grid_point(self):
        cfg = SearchConfig(grid_points_per_axis=9)
        result = best_response(PD, [EQ, EQ], 2, Family.EISERT_SU2, cfg)
        q = EQ.matrix()
        p_bob = payoff_operator(PD, 2)
        for theta in np.linspace(0, np.pi, 9):
            for alpha in np.linspace(0, np.pi / 2, 9):
                state = play_pd(q, su2_eisert(theta, alpha))
                value = expectation(pure_to_density(state), p_bob)
                assert result.payoff >= value - 1e-10


class TestVerifyNash:
    def test_pd_classical_defection_equilibrium(self):
        defect = StrategySpec(Family.CLASSICAL_BIT, (1.0,))
        verdict = verify_nash(PD, [defect, defect], Family.CLASSICAL_BIT)
        assert verdict.is_equilibrium
        assert verdict.max_unilateral_gain == 0.0
        np.testing.assert_allclose(verdict.profile_payoffs, [1.0, 1.0], atol=1e-12)

    def test_pd_classical_cooperation_is_not_equilibrium(self):
        coop = StrategySpec(Family.CLASSICAL_BIT, (0.0,))
        verdict = verify_nash(PD, [coop, coop], Family.CLASSICAL_BIT)
        assert not verdict.is_equilibrium
        assert abs(verdict.max_unilateral_gain - 2.0) < 1e-12  # 5 vs 3

    def test_pd_quantum_equilibrium(self):
        verdict = verify_nash(PD, [EQ, EQ], Family.EISERT_SU2)
        assert verdict.is_equilibrium
        assert verdict.max_unilateral_gain <= 1e-6
        assert verdict.max_unilateral_gain >= -1e-12

    def test_pd_equilibrium_vanishes_in_full_su2(self):
        profile = [StrategySpec(Family.FULL_SU2, (0.0, math.pi / 2, 0.0))] * 2
        verdict = verify_nash(PD, profile, Family.FULL_SU2)
        assert not verdict.is_equilibrium
        assert verdict.max_unilateral_gain > 0.1

    def test_minority_equilibrium(self):
        verdict = verify_nash(MINORITY4, [MINORITY_OPT] * 4, Family.FULL_SU2)
        assert verdict.is_equilibrium
        assert verdict.max_unilateral_gain <= 1e-6

    def test_classical_agreement_with_enumeration(self):
        # exhaustive enumeration over {I, X} pairs, via the direct protocol
        defect = StrategySpec(Family.CLASSICAL_BIT, (1.0,))
        verdict = verify_nash(PD, [defect, defect], Family.CLASSICAL_BIT)
        ops = [spec.matrix() for spec in [defect, defect]]
        for player in (1, 2):
            best = -np.inf
            for candidate in (0, 1):
                trial = [defect, defect]
                trial[player - 1] = StrategySpec(Family.CLASSICAL_BIT, (float(candidate),))
                report = play_profile(PD, [s.matrix() for s in reversed(trial)])
                best = max(best, report.payoffs[player - 1])
            assert abs(verdict.deviation_payoffs[player - 1] - best) < 1e-12


class TestDominantStrategy:
    def test_pd_defection_dominates(self):
        assert dominant_strategy(PD, 1) == 1
        assert dominant_strategy(PD, 2) == 1

    def test_minority_has_none(self):
        for player in range(1, 5):
            assert dominant_strategy(MINORITY4, player) is None

    def test_kolkata_has_none(self):
        assert dominant_strategy(KOLKATA, 1) is None

    def test_enumeration_oracle(self):
        # re-derive by brute force over the payoff table for the dilemma
        game = PD
        for player in (1, 2):
            dominant = []
            for own in (0, 1):
                ok = True
                for other in (0, 1):
                    digits = [0, 0]
                    digits[player - 1] = own
                    digits[2 - player] = other
                    label = f"{digits[1]}{digits[0]}"
                    rival_digits = digits.copy()
                    for alt in (0, 1):
                        rival_digits[player - 1] = alt
                        rival_label = f"{rival_digits[1]}{rival_digits[0]}"
                        if (game.payoff_table[label][player - 1]
                                < game.payoff_table[rival_label][player - 1]):
                            ok = False
                if ok:
                    dominant.append(own)
            assert dominant_strategy(game, player) == (dominant[0] if dominant else None)


class TestPareto:
    def test_minority_quarter_certified_analytically(self):
        verdict = pareto_check_symmetric(MINORITY4, 0.25, Family.FULL_SU2)
        assert verdict.is_optimal
        assert verdict.certificate == "payoff-sum-bound"

    def test_pd_cooperative_payoff_certified(self):
        verdict = pareto_check_symmetric(PD, 3.0, Family.EISERT_SU2)
        assert verdict.is_optimal
        assert verdict.certificate == "payoff-sum-bound"

    def test_kolkata_classical_value_dominated(self):
        verdict = pareto_check_symmetric(KOLKATA, 4 / 9, Family.FRAME_SU3)
        assert not verdict.is_optimal
        assert verdict.certificate == "symmetric-witness"
        assert verdict.witness_payoff > 4 / 9 + 1e-3
        assert abs(verdict.witness_payoff - 2 / 3) < 1e-6

    def test_single_point_space(self):
        verdict = pareto_check_symmetric(
            KOLKATA, 2 / 3, [StrategySpec(Family.CYCLIC_C3, (0.0,))]
        )
        assert verdict.is_optimal
        assert verdict.certificate in ("payoff-sum-bound", "symmetric-search-exhausted")


class TestFidelitySweep:
    def test_kolkata_affine_law(self):
        sweep = fidelity_sweep(KOLKATA, KOLKATA_OPT, [i / 10 for i in range(11)])
        assert abs(sweep.slope - 2 / 9) < 1e-9
        assert abs(sweep.intercept - 4 / 9) < 1e-9
        assert sweep.max_residual < 1e-9

    def test_endpoints(self):
        sweep = fidelity_sweep(KOLKATA, KOLKATA_OPT, [0.0, 1.0])
        np.testing.assert_allclose(sweep.payoffs[0], [4 / 9] * 3, atol=1e-9)
        np.testing.assert_allclose(sweep.payoffs[1], [2 / 3] * 3, atol=1e-9)

    def test_out_of_range_fidelity(self):
        with pytest.raises(ValueError):
            fidelity_sweep(KOLKATA, KOLKATA_OPT, [0.0, 1.5])

    def test_minority_sweep_affine(self):
        sweep = fidelity_sweep(MINORITY4, MINORITY_OPT, [0.0, 0.5, 1.0])
        assert sweep.max_residual < 1e-9
        assert abs(sweep.payoffs[-1][0] - 0.25) < 1e-9

    def test_csv_layout(self):
        sweep = fidelity_sweep(KOLKATA, KOLKATA_OPT, [0.0, 1.0])
        text = sweep_to_csv(sweep)
        lines = text.strip().split("\n")
        assert lines[0] == "f,player1,player2,player3"
        assert lines[1].startswith("0,")
        assert len(lines) == 3
        assert "." in lines[2] and "," in lines[2]


class TestRefinementBehavior:
    def test_refinement_monotone(self):
        # the best payoff recorded never decreases as iterations grow
        values = []
        for iterations in (0, 5, 40, 200):
            cfg = SearchConfig(refine_iterations=iterations, grid_points_per_axis=6)
            result = best_response(MINORITY4, [MINORITY_OPT] * 4, 1,
                                   Family.FULL_SU2, cfg)
            values.append(result.payoff)
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    def test_gain_never_meaningfully_negative(self):
        verdict = verify_nash(MINORITY4, [MINORITY_OPT] * 4, Family.FULL_SU2,
                              SearchConfig(grid_points_per_axis=5))
        assert all(g >= -1e-12 for g in verdict.gains)
