"""Anatomy of the equilibrium search layer.

Best responses come from an exhaustive grid over the family's parameter
box plus coordinate-descent refinement.  This script shows the moving
parts: grids, refinement, warm starts, Pareto certificates, and the
determinism guarantees that make search reports reproducible.
"""

from qgames import (
    Family,
    KOLKATA_OPTIMAL_PARAMS,
    MINORITY_OPTIMAL_PARAMS,
    PD_EQUILIBRIUM_PARAMS,
    SearchConfig,
    StrategySpec,
    best_response,
    kolkata,
    minority,
    pareto_check_symmetric,
    prisoners_dilemma,
    verify_nash,
)

pd = prisoners_dilemma()
equilibrium = StrategySpec(Family.EISERT_SU2, PD_EQUILIBRIUM_PARAMS)

print("=== grid resolution vs. result quality ===")
for grid in (4, 8, 24):
    cfg = SearchConfig(grid_points_per_axis=grid, refine_iterations=0)
    result = best_response(pd, [equilibrium, equilibrium], 1,
                           Family.EISERT_SU2, cfg)
    print(f"  grid {grid:2d}/axis, no refinement: best payoff {result.payoff:.9f}"
          f" after {result.evaluations} evaluations")
print("the coarse grids already bracket the optimum; refinement closes the gap:")
cfg = SearchConfig(grid_points_per_axis=4)
result = best_response(pd, [equilibrium, equilibrium], 1, Family.EISERT_SU2, cfg)
print(f"  grid 4/axis + coordinate descent: {result.payoff:.9f} at "
      f"{result.strategy.literal()}")

print("\n=== a full equilibrium verdict ===")
mg = minority(4)
optimal = StrategySpec(Family.FULL_SU2, MINORITY_OPTIMAL_PARAMS)
verdict = verify_nash(mg, [optimal] * 4, Family.FULL_SU2, SearchConfig(seed=2))
print(f"minority optimum: equilibrium={verdict.is_equilibrium}")
for i, (payoff, gain, dev) in enumerate(
    zip(verdict.profile_payoffs, verdict.gains, verdict.best_deviations), start=1
):
    print(f"  player {i}: payoff {payoff:.6f}, best deviation gain {gain:+.2e}"
          f" via {dev.literal()}")

print("\n=== pareto certificates ===")
bound = pareto_check_symmetric(mg, 0.25, Family.FULL_SU2)
print(f"minority 1/4: optimal={bound.is_optimal} via {bound.certificate}")
kg = kolkata()
cfg = SearchConfig(grid_points_per_axis=4, seed=3)  # coarse scan, warm-started
witness = pareto_check_symmetric(kg, 4 / 9, Family.FRAME_SU3, cfg)
print(f"kolkata 4/9: optimal={witness.is_optimal} via {witness.certificate}; "
      f"witness pays {witness.witness_payoff:.6f}")

print("\n=== determinism ===")
runs = [
    verify_nash(pd, [equilibrium, equilibrium], Family.EISERT_SU2,
                SearchConfig(seed=11), threads=threads)
    for threads in (1, 8)
]
print(f"same seed at 1 and 8 threads -> identical verdicts: {runs[0] == runs[1]}")
print("grids are traversed lexicographically, ties go to the first candidate,")
print("and chunked evaluation merges by index, so reports are reproducible.")
