"""Quantum game engine.

Simulates three entanglement-assisted protocols — the two-player dilemma
with an entangler/disentangler pair, n-player minority games, and the
three-player/three-choice restaurant game — together with exact classical
oracles and a deterministic equilibrium-search layer.
"""

from .games import (
    EmbeddingCheck,
    GameSpec,
    PayoffReport,
    classical_embedding_check,
    classical_uniform_payoff,
    entangler,
    game_by_name,
    game_to_json,
    kolkata,
    minority,
    payoff_diagonal,
    payoff_operator,
    play_pd,
    play_profile,
    play_symmetric,
    prisoners_dilemma,
)
from .solver import (
    BestResponseResult,
    EquilibriumVerdict,
    FidelitySweep,
    ParetoVerdict,
    SearchConfig,
    best_response,
    dominant_strategy,
    fidelity_sweep,
    pareto_check_symmetric,
    sweep_to_csv,
    verify_nash,
)
from .states import (
    DensityMatrix,
    PureState,
    SystemShape,
    add_noise,
    apply_local_pure,
    basis_state,
    bell,
    conjugate_density,
    expectation,
    ghz,
    outcome_probabilities,
    pure_to_density,
)
from .strategies import (
    Family,
    FrameVectors,
    KOLKATA_OPTIMAL_PARAMS,
    MINORITY_OPTIMAL_PARAMS,
    PD_EQUILIBRIUM_PARAMS,
    StrategySpec,
    classical_set,
    cyclic_s,
    frame_vectors,
    parse_radians,
    parse_strategy,
    pauli,
    su2_eisert,
    su2_full,
    su3_frame,
)

__version__ = "0.1.0"

__all__ = [
    "BestResponseResult",
    "DensityMatrix",
    "EmbeddingCheck",
    "EquilibriumVerdict",
    "Family",
    "FidelitySweep",
    "FrameVectors",
    "GameSpec",
    "KOLKATA_OPTIMAL_PARAMS",
    "MINORITY_OPTIMAL_PARAMS",
    "PD_EQUILIBRIUM_PARAMS",
    "ParetoVerdict",
    "PayoffReport",
    "PureState",
    "SearchConfig",
    "StrategySpec",
    "SystemShape",
    "add_noise",
    "apply_local_pure",
    "basis_state",
    "bell",
    "best_response",
    "classical_embedding_check",
    "classical_set",
    "classical_uniform_payoff",
    "conjugate_density",
    "cyclic_s",
    "dominant_strategy",
    "entangler",
    "expectation",
    "fidelity_sweep",
    "frame_vectors",
    "game_by_name",
    "game_to_json",
    "ghz",
    "kolkata",
    "minority",
    "outcome_probabilities",
    "pareto_check_symmetric",
    "parse_radians",
    "parse_strategy",
    "pauli",
    "payoff_diagonal",
    "payoff_operator",
    "play_pd",
    "play_profile",
    "play_symmetric",
    "prisoners_dilemma",
    "pure_to_density",
    "su2_eisert",
    "su2_full",
    "su3_frame",
    "sweep_to_csv",
    "verify_nash",
]
