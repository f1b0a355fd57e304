"""Numerical solution concepts over the strategy spaces.

Best responses are found by an exhaustive grid over the family's parameter
box followed by coordinate-descent refinement (halve the step after a cycle
with no improvement).  Eight-parameter boxes use a coarse 6-point grid with
multi-start refinement from the best 16 grid points; smaller boxes use the
configured grid resolution directly.

Payoff evaluation for a unilateral deviation is reduced once per search to a
d^2 x d^2 Hermitian form T with E(U) = vec(U) . T . conj(vec(U)), which makes
grid scans cheap and exactly matches the density-matrix protocol.  Symmetric
scans over the GHZ games use the product structure of the shared state.
Both reductions are cross-checked against the direct protocol in the tests.

Everything here is deterministic: grids are traversed in lexicographic
order, ties resolve to the first candidate encountered, chunked evaluation
merges results by index regardless of thread count, and the only randomness
(supplementary refinement starts) comes from the seed in `SearchConfig`.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .games import (
    GameSpec,
    entangler,
    payoff_diagonal,
    play_symmetric,
)
from .states import add_noise, basis_state, ghz
from .strategies import (
    FAMILY_PRESETS,
    LOCAL_DIMENSION,
    Family,
    StrategySpec,
    parameter_box,
    su2_eisert_batch,
    su2_full_batch,
    su3_frame_batch,
)

_EVAL_CHUNK = 65536  # fixed so results do not depend on the thread count
_MIN_STEP = 1e-8
_RANDOM_STARTS = 4


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for grid search and refinement.

    seed only affects the supplementary random refinement starts and the
    coordinate ordering inside refinement cycles; given the same seed,
    results are reproducible bit for bit at any thread count.
    """

    grid_points_per_axis: int = 24
    refine_iterations: int = 200
    refine_initial_step: float = 0.1
    epsilon_nash: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.grid_points_per_axis < 2:
            raise ValueError("grid_points_per_axis must be >= 2")
        if self.epsilon_nash <= 0:
            raise ValueError("epsilon_nash must be positive")

    def to_json(self) -> dict:
        return {
            "grid_points_per_axis": self.grid_points_per_axis,
            "refine_iterations": self.refine_iterations,
            "refine_initial_step": self.refine_initial_step,
            "epsilon_nash": self.epsilon_nash,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchConfig":
        return cls(**data)


@dataclass(frozen=True)
class BestResponseResult:
    strategy: StrategySpec
    payoff: float
    evaluations: int


@dataclass(frozen=True)
class EquilibriumVerdict:
    """Outcome of a unilateral-deviation scan over every player."""

    is_equilibrium: bool
    max_unilateral_gain: float
    profile_payoffs: tuple[float, ...]
    deviation_payoffs: tuple[float, ...]
    best_deviations: tuple[StrategySpec, ...]
    gains: tuple[float, ...]


@dataclass(frozen=True)
class ParetoVerdict:
    is_optimal: bool
    certificate: str
    witness: StrategySpec | None
    witness_payoff: float | None


@dataclass(frozen=True)
class FidelitySweep:
    fidelities: tuple[float, ...]
    payoffs: tuple[tuple[float, ...], ...]
    slope: float
    intercept: float
    max_residual: float


# --- candidate spaces ---------------------------------------------------------

def _family_matrices(family: Family, params: np.ndarray) -> np.ndarray:
    """Batch-construct strategy matrices from an (N, k) parameter array."""
    if family == Family.FULL_SU2:
        return su2_full_batch(params[:, 0], params[:, 1], params[:, 2])
    if family == Family.EISERT_SU2:
        return su2_eisert_batch(params[:, 0], params[:, 1])
    if family == Family.FRAME_SU3:
        return su3_frame_batch(*[params[:, i] for i in range(8)])
    raise ValueError(f"{family.value} is not a continuous family")


def _discrete_candidates(space) -> list[StrategySpec] | None:
    if isinstance(space, Family):
        if space == Family.CLASSICAL_BIT:
            return [StrategySpec(space, (float(k),)) for k in range(2)]
        if space == Family.CYCLIC_C3:
            return [StrategySpec(space, (float(k),)) for k in range(3)]
        return None
    return [s if isinstance(s, StrategySpec) else StrategySpec(*s) for s in space]


def _space_dimension(space) -> int:
    if isinstance(space, Family):
        return LOCAL_DIMENSION[space]
    candidates = _discrete_candidates(space)
    if not candidates:
        raise ValueError("an explicit strategy space must be non-empty")
    dims = {c.local_dimension for c in candidates}
    if len(dims) != 1:
        raise ValueError("mixed local dimensions in strategy space")
    return dims.pop()


def _grid_parameters(family: Family, grid_points: int) -> np.ndarray:
    """Lexicographic (N, k) grid over the family's parameter box."""
    box = parameter_box(family)
    points = grid_points if len(box) <= 3 else min(grid_points, 6)
    axes = [np.linspace(lo, hi, points) for lo, hi in box]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=-1)


def _clamp_to_box(params: Sequence[float], box) -> tuple[float, ...]:
    return tuple(
        min(max(float(p), lo), hi) for p, (lo, hi) in zip(params, box)
    )


# --- payoff evaluators ---------------------------------------------------------

def _tensor_slot(n: int, player: int) -> int:
    """Index of player's factor in a player-n-first operator list."""
    return n - player


def _deviation_form(game: GameSpec, fixed_ops: Sequence[np.ndarray], player: int,
                    fidelity: float) -> np.ndarray:
    """Hermitian form T with payoff(U) = vec(U) . T . conj(vec(U)).

    ``fixed_ops`` is the player-n-first operator list; the entry at the
    deviating player's slot is ignored.  The form folds in the shared state,
    the noise mix, the entangler pair for the dilemma, and the player's
    payoff operator.
    """
    n, d = game.shape.n, game.shape.d
    slot = _tensor_slot(n, player)
    if game.use_entangler_pair:
        if fidelity != 1.0:
            raise ValueError("the dilemma protocol is pure; fidelity must be 1")
        amp = entangler() @ basis_state(game.shape, (0, 0)).amplitudes
        rho_in = np.outer(amp, amp.conj())
        wrap = entangler().conj().T
    else:
        rho_in = add_noise(ghz(game.shape), fidelity).matrix
        wrap = None
    diag = payoff_diagonal(game, player)

    units = []
    for a, b in itertools.product(range(d), repeat=2):
        basis_unit = np.zeros((d, d), dtype=complex)
        basis_unit[a, b] = 1.0
        factors = [basis_unit if k == slot else np.asarray(fixed_ops[k], dtype=complex)
                   for k in range(n)]
        full = factors[0]
        for f in factors[1:]:
            full = np.kron(full, f)
        units.append(wrap @ full if wrap is not None else full)
    units_arr = np.stack(units)                    # (d^2, D, D)
    propagated = units_arr @ rho_in                # C_ab rho
    return np.einsum("K,aKV,bKV->ab", diag, propagated, units_arr.conj())


def _deviation_payoffs(form: np.ndarray, matrices: np.ndarray) -> np.ndarray:
    """Evaluate the bilinear payoff form on a batch of (N, d, d) matrices."""
    d = matrices.shape[-1]
    flat = matrices.reshape(-1, d * d)
    return np.real(np.einsum("gi,ij,gj->g", flat, form, flat.conj()))


def _symmetric_payoffs(game: GameSpec, matrices: np.ndarray,
                       fidelity: float) -> np.ndarray:
    """Player-1 payoff for symmetric profiles, batched over (N, d, d)."""
    n, d = game.shape.n, game.shape.d
    diag = payoff_diagonal(game, 1)
    if game.use_entangler_pair:
        if fidelity != 1.0:
            raise ValueError("the dilemma protocol is pure; fidelity must be 1")
        j = entangler()
        seed_state = j @ basis_state(game.shape, (0, 0)).amplitudes
        pair = np.einsum("gab,gcd->gacbd", matrices, matrices).reshape(-1, 4, 4)
        final = np.einsum("ij,gj->gi", j.conj().T,
                          np.einsum("gij,j->gi", pair, seed_state))
        return (np.abs(final) ** 2) @ diag
    # GHZ games: amplitude at |i_n ... i_1> is sum_k prod_j U[i_j, k] / sqrt(d)
    acc = matrices  # axes (g, i_1, k)
    for _ in range(n - 1):
        acc = np.einsum("g...k,gik->gi...k", acc, matrices)
    amplitudes = acc.sum(axis=-1).reshape(matrices.shape[0], -1) / math.sqrt(d)
    pure = (np.abs(amplitudes) ** 2) @ diag
    return fidelity * pure + (1.0 - fidelity) * float(diag.mean())


def _chunked(evaluate: Callable[[np.ndarray], np.ndarray], params: np.ndarray,
             threads: int) -> np.ndarray:
    """Evaluate parameter rows in fixed-size chunks, merged in index order."""
    chunks = [params[i:i + _EVAL_CHUNK] for i in range(0, len(params), _EVAL_CHUNK)]
    if threads <= 1 or len(chunks) <= 1:
        results = [evaluate(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, chunks))
    return np.concatenate(results) if results else np.empty(0)


# --- grid search + refinement ---------------------------------------------------

def _refine(evaluate_one: Callable[[tuple[float, ...]], float],
            start: tuple[float, ...], start_value: float, box,
            cfg: SearchConfig, rng_axis_order: np.random.Generator) -> tuple[tuple[float, ...], float, int]:
    """Coordinate descent: cycle axes, halve the step on stalled cycles."""
    best = tuple(start)
    best_value = start_value
    step = cfg.refine_initial_step
    evaluations = 0
    k = len(box)
    for _ in range(cfg.refine_iterations):
        if step < _MIN_STEP:
            break
        improved = False
        axis_order = rng_axis_order.permutation(k)
        for axis in axis_order:
            for direction in (1.0, -1.0):
                candidate = list(best)
                candidate[axis] += direction * step
                candidate = _clamp_to_box(candidate, box)
                value = evaluate_one(candidate)
                evaluations += 1
                if value > best_value:
                    best, best_value = candidate, value
                    improved = True
        if not improved:
            step /= 2.0
    return best, best_value, evaluations


def _search_family(family: Family, evaluate_batch, extra_starts,
                   cfg: SearchConfig, threads: int) -> tuple[tuple[float, ...], float, int]:
    """Grid + multi-start refinement over one continuous family."""
    box = parameter_box(family)
    grid = _grid_parameters(family, cfg.grid_points_per_axis)
    grid_payoffs = _chunked(evaluate_batch, grid, threads)
    evaluations = len(grid)

    def evaluate_one(params: tuple[float, ...]) -> float:
        return float(evaluate_batch(np.asarray(params, dtype=float)[None, :])[0])

    start_count = 16 if len(box) >= 4 else 1
    order = np.argsort(-grid_payoffs, kind="stable")[:start_count]
    starts = [tuple(map(float, grid[i])) for i in order]
    for params in extra_starts:
        starts.append(_clamp_to_box(params, box))
    rng = np.random.default_rng(cfg.seed)
    for _ in range(_RANDOM_STARTS):
        starts.append(tuple(float(rng.uniform(lo, hi)) for lo, hi in box))

    best_params = starts[0]
    best_value = -math.inf
    for start in starts:
        value = evaluate_one(start)
        evaluations += 1
        refined, refined_value, used = _refine(
            evaluate_one, start, value, box, cfg, rng
        )
        evaluations += used
        if refined_value > best_value:
            best_params, best_value = refined, refined_value
    return best_params, best_value, evaluations


def _presets_for(space) -> list[tuple[float, ...]]:
    if isinstance(space, Family):
        return list(FAMILY_PRESETS.get(space, ()))
    return []


def best_response(game: GameSpec, profile: Sequence[StrategySpec], player: int,
                  space, cfg: SearchConfig | None = None, fidelity: float = 1.0,
                  threads: int = 1) -> BestResponseResult:
    """Best strategy for one player with the rest of the profile held fixed.

    ``profile`` is player-1-first.  ``space`` is a Family or an explicit
    sequence of StrategySpec candidates; discrete spaces are enumerated
    exhaustively, continuous ones are searched by grid plus refinement.
    """
    cfg = cfg or SearchConfig()
    n = game.shape.n
    if len(profile) != n:
        raise ValueError(f"profile needs {n} strategies, got {len(profile)}")
    if not 1 <= player <= n:
        raise ValueError(f"player {player} out of range 1..{n}")
    if _space_dimension(space) != game.shape.d:
        raise ValueError("strategy space dimension does not match the game")
    for spec in profile:
        if spec.local_dimension != game.shape.d:
            raise ValueError("profile strategy dimension does not match the game")

    ordered = list(reversed([spec.matrix() for spec in profile]))  # player-n-first
    form = _deviation_form(game, ordered, player, fidelity)

    discrete = _discrete_candidates(space)
    if discrete is not None:
        matrices = np.stack([spec.matrix() for spec in discrete])
        payoffs = _deviation_payoffs(form, matrices)
        index = int(np.argmax(payoffs))
        return BestResponseResult(discrete[index], float(payoffs[index]), len(discrete))

    family = space

    def evaluate_batch(params: np.ndarray) -> np.ndarray:
        return _deviation_payoffs(form, _family_matrices(family, params))

    extra = _presets_for(space)
    current = profile[player - 1]
    if current.family == family:
        extra = [current.params] + extra
    params, value, evaluations = _search_family(family, evaluate_batch, extra, cfg, threads)
    return BestResponseResult(StrategySpec(family, params), value, evaluations)


def _profile_payoff(game: GameSpec, profile: Sequence[StrategySpec], player: int,
                    fidelity: float) -> float:
    """Player's payoff at the profile, through the same reduced form."""
    ordered = list(reversed([spec.matrix() for spec in profile]))
    form = _deviation_form(game, ordered, player, fidelity)
    own = profile[player - 1].matrix()[None, :, :]
    return float(_deviation_payoffs(form, own)[0])


def verify_nash(game: GameSpec, profile: Sequence[StrategySpec], space,
                cfg: SearchConfig | None = None, fidelity: float = 1.0,
                threads: int = 1) -> EquilibriumVerdict:
    """Scan every player for profitable unilateral deviations."""
    cfg = cfg or SearchConfig()
    profile_payoffs = []
    deviation_payoffs = []
    deviations = []
    gains = []
    for player in range(1, game.shape.n + 1):
        base = _profile_payoff(game, profile, player, fidelity)
        response = best_response(game, profile, player, space, cfg, fidelity, threads)
        profile_payoffs.append(base)
        deviation_payoffs.append(response.payoff)
        deviations.append(response.strategy)
        gains.append(response.payoff - base)
    max_gain = max(gains)
    return EquilibriumVerdict(
        is_equilibrium=max_gain <= cfg.epsilon_nash,
        max_unilateral_gain=max_gain,
        profile_payoffs=tuple(profile_payoffs),
        deviation_payoffs=tuple(deviation_payoffs),
        best_deviations=tuple(deviations),
        gains=tuple(gains),
    )


def dominant_strategy(game: GameSpec, player: int) -> int | None:
    """Weakly dominant pure classical strategy, or None.

    Enumerates the exact payoff table; ties resolve to the lowest index.
    """
    n, d = game.shape.n, game.shape.d
    if not 1 <= player <= n:
        raise ValueError(f"player {player} out of range 1..{n}")

    def payoff(own: int, others: tuple[int, ...]) -> Fraction:
        digits_player_order = list(others[:player - 1]) + [own] + list(others[player - 1:])
        label = "".join(str(k) for k in reversed(digits_player_order))
        return game.payoff_table[label][player - 1]

    opponent_profiles = list(itertools.product(range(d), repeat=n - 1))
    for candidate in range(d):
        dominant = True
        for rival in range(d):
            if rival == candidate:
                continue
            if any(
                payoff(candidate, others) < payoff(rival, others)
                for others in opponent_profiles
            ):
                dominant = False
                break
        if dominant:
            return candidate
    return None


def _payoff_sum_bound(game: GameSpec) -> Fraction:
    """max_b sum_i payoff_i(b); bounds total payoff in any state."""
    return max(sum(row) for row in game.payoff_table.values())


def pareto_check_symmetric(game: GameSpec, payoff: float, space,
                           cfg: SearchConfig | None = None, fidelity: float = 1.0,
                           threads: int = 1) -> ParetoVerdict:
    """Heuristic Pareto certificate for a symmetric common payoff.

    If the exact bound max_b sum_i payoff_i(b) / n already certifies the
    value, that analytic certificate is returned.  Otherwise symmetric
    profiles over the space are searched for one that beats the value by
    more than epsilon; finding one disproves optimality with a witness.
    """
    cfg = cfg or SearchConfig()
    n = game.shape.n
    bound = _payoff_sum_bound(game) / n
    if payoff >= float(bound) - 1e-9:
        return ParetoVerdict(True, "payoff-sum-bound", None, None)

    discrete = _discrete_candidates(space)
    if discrete is not None:
        matrices = np.stack([spec.matrix() for spec in discrete])
        values = _symmetric_payoffs(game, matrices, fidelity)
        index = int(np.argmax(values))
        best_spec, best_value = discrete[index], float(values[index])
    else:
        family = space

        def evaluate_batch(params: np.ndarray) -> np.ndarray:
            return _symmetric_payoffs(game, _family_matrices(family, params), fidelity)

        extra = _presets_for(space)
        params, best_value, _ = _search_family(family, evaluate_batch, extra, cfg, threads)
        best_spec = StrategySpec(family, params)

    if best_value > payoff + cfg.epsilon_nash:
        return ParetoVerdict(False, "symmetric-witness", best_spec, best_value)
    return ParetoVerdict(True, "symmetric-search-exhausted", best_spec, best_value)


def fidelity_sweep(game: GameSpec, strategy: StrategySpec | np.ndarray,
                   f_grid: Sequence[float]) -> FidelitySweep:
    """Symmetric payoffs across fidelities, with an affine least-squares fit."""
    fs = [float(f) for f in f_grid]
    if not fs:
        raise ValueError("fidelity grid must be non-empty")
    for f in fs:
        if not 0.0 <= f <= 1.0:
            raise ValueError(f"fidelity {f} outside [0, 1]")
    matrix = strategy.matrix() if isinstance(strategy, StrategySpec) else strategy
    rows = [play_symmetric(game, matrix, fidelity=f).payoffs for f in fs]
    means = np.array([float(np.mean(row)) for row in rows])
    xs = np.array(fs)
    if len(fs) >= 2 and float(np.ptp(xs)) > 0:
        slope, intercept = np.polyfit(xs, means, 1)
    else:
        slope, intercept = 0.0, float(means[0])
    residual = float(np.max(np.abs(means - (slope * xs + intercept))))
    return FidelitySweep(
        fidelities=tuple(fs),
        payoffs=tuple(tuple(row) for row in rows),
        slope=float(slope),
        intercept=float(intercept),
        max_residual=residual,
    )


def sweep_to_csv(sweep: FidelitySweep) -> str:
    """CSV rendering with columns f,player1,...,playerN."""
    players = len(sweep.payoffs[0])
    lines = ["f," + ",".join(f"player{i}" for i in range(1, players + 1))]
    for f, row in zip(sweep.fidelities, sweep.payoffs):
        lines.append(",".join(format(v, ".12g") for v in (f, *row)))
    return "\n".join(lines) + "\n"
