"""Acceptance suite: every quantitative claim at its fixed tolerance.

Each test prints one pass/fail line per check (visible with ``pytest -s``)
and fails if any check in its group is out of tolerance.  The same checks
back the ``qgames verify`` command.
"""

from qgames import verify


def _run(check, criterion):
    results = check()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        tol = "" if result.tolerance is None else f" (tol {result.tolerance:g})"
        print(
            f"[{status}] acceptance {criterion}: {result.name}: "
            f"expected {result.expected}, observed {result.observed}{tol}"
        )
    failed = [r.name for r in results if not r.passed]
    assert not failed, f"criterion {criterion} failed: {failed}"


def test_criterion_1_pd_classical_embedding():
    """All four {I, sigma_x} profiles reproduce the dilemma payoff table."""
    _run(verify.check_pd_classical_embedding, 1)


def test_criterion_2_pd_quantum_equilibrium():
    """eisert(0, pi/2) pays 3 to both and survives the two-parameter scan."""
    _run(verify.check_pd_quantum_equilibrium, 2)


def test_criterion_3_pd_full_su2_destabilization():
    """The full SU(2) space breaks the restricted equilibrium by > 0.1."""
    _run(verify.check_pd_full_su2_destabilization, 3)


def test_criterion_4_minority_game():
    """Classical 1/8; quantum 1/4 with no even splits; Nash; Pareto bound."""
    _run(verify.check_minority, 4)


def test_criterion_5_kolkata_payoffs_and_fidelity_law():
    """Classical 4/9; optimal 2/3; payoff(f) affine with slope 2/9."""
    _run(verify.check_kolkata, 5)


def test_criterion_6_kolkata_classical_embedding():
    """All 27 cyclic-shift profiles reproduce the classical payoffs."""
    _run(verify.check_kolkata_classical_embedding, 6)


def test_criterion_7_property_suites():
    """1000-draw unitarity/determinant and norm/trace preservation suites."""
    _run(verify.check_property_suites, 7)


def test_criterion_8_search_determinism():
    """Same-seed searches are byte-identical at --threads 1 and 8."""
    _run(verify.check_search_determinism, 8)
