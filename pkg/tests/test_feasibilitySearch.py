import math

import pytest

from LinCodeProver.boundsTables import CodeParams
from LinCodeProver.feasibilitySearch import (ELIMINATION_RULES, FeasibilityProblem, SearchConfig, build_problem,
                                             check_distribution, search)
from LinCodeProver.smallCodes import brute_force_feasible, random_code, weight_distribution
from LinCodeProver.spectra import WeightDistribution
from LinCodeProver.utils import BudgetExhausted, PreconditionError

from conftest import FIVE_WEIGHTS

HAMMING = CodeParams(7, 4, 3)


def _oracle_cases():
    cases = []
    for n in range(1, 13):
        for k in range(1, min(4, n) + 1):
            for d in range(1, n + 1):
                size = n - d + 1
                if math.comb(2 ** k - 1 + size - 1, size - 1) > 500_000:
                    cases.append(pytest.param(n, k, d, marks=pytest.mark.slow))
                else:
                    cases.append((n, k, d))
    return cases


def test_build_problem():
    problem = build_problem(CodeParams(1988, 12, 992), FIVE_WEIGHTS, 0)
    assert problem.weights == FIVE_WEIGHTS
    assert problem.primal_upper == 4095
    assert problem.dual_upper == 2 ** 1976
    assert problem.a1_values() == (0,)
    assert FeasibilityProblem.from_dict(problem.to_dict()) == problem
    assert build_problem(HAMMING, [7, 3, 4, 3]).weights == (3, 4, 7)
    assert len(build_problem(HAMMING, [3, 4, 7]).a1_values()) == 8


@pytest.mark.parametrize("params, weights, a1", [
    (HAMMING, [], None),
    (HAMMING, [2, 3], None),
    (HAMMING, [3, 8], None),
    (HAMMING, [3, 4], 9),
    (CodeParams(6, 3, 4, q=4), [4], None),
])
def test_build_problem_rejects(params, weights, a1):
    with pytest.raises(PreconditionError):
        build_problem(params, weights, a1)


def test_check_distribution():
    assert check_distribution(WeightDistribution(7, {0: 1, 3: 7, 4: 7, 7: 1}), 4)
    failed = check_distribution(WeightDistribution.code_spectrum(324, {160: 1023}), 10)
    assert not failed.passed
    assert failed.condition == "A_1^dual integrality"
    assert check_distribution(WeightDistribution(9, {0: 1}), 0).passed
    assert check_distribution(WeightDistribution(7, {0: 2, 3: 14}), 4).condition == "A_0"
    assert check_distribution(WeightDistribution(7, {0: 1, 3: 7}), 4).condition == "total"


def test_hamming_witness():
    verdict = search(build_problem(HAMMING, [3, 4, 7]))
    assert verdict.feasible
    assert verdict.witness.as_dict() == {0: 1, 3: 7, 4: 7, 7: 1}
    assert dict(verdict.dual.items()) == {0: 1, 4: 7}
    assert check_distribution(verdict.witness, 4)


def test_lemma_two_is_infeasible():
    verdict = search(build_problem(CodeParams(356, 10, 176), [176, 192]))
    assert not verdict.feasible
    record = verdict.record
    assert record["mode"] == "exhaustive"
    assert record["pivots"] == [176, 192] and record["free"] == []
    assert record["a1_values"] == [0, 356]
    assert set(record["eliminated"]) == set(ELIMINATION_RULES)


def test_single_weight_problems():
    assert search(build_problem(CodeParams(7, 3, 4), [4])).witness.as_dict() == {0: 1, 4: 7}
    assert not search(build_problem(CodeParams(324, 10, 160), [160])).feasible


@pytest.mark.parametrize("n, k, d", _oracle_cases())
def test_agrees_with_brute_force(n, k, d):
    weights = range(d, n + 1)
    verdict = search(build_problem(CodeParams(n, k, d), weights))
    expected = brute_force_feasible(n, k, weights)
    assert verdict.feasible == (expected is not None)
    if expected is not None:
        assert verdict.witness.as_dict() == expected.as_dict()


def test_fixed_a1_agrees_with_brute_force():
    for a1 in range(8):
        verdict = search(build_problem(HAMMING, [3, 4, 5, 6, 7], a1))
        expected = brute_force_feasible(7, 4, [3, 4, 5, 6, 7], a1)
        assert verdict.feasible == (expected is not None)
        if expected is not None:
            assert verdict.witness.as_dict() == expected.as_dict()
            assert verdict.dual.value(1) == a1


def test_true_spectra_are_feasible(rng):
    for _ in range(40):
        n = int(rng.integers(3, 11))
        k = int(rng.integers(1, min(4, n) + 1))
        A = weight_distribution(random_code(n, k, rng))
        d = min(A.support())
        verdict = search(build_problem(CodeParams(n, k, d), A.support()))
        assert verdict.feasible
        assert check_distribution(verdict.witness, k)


def test_workers_do_not_change_the_verdict():
    problem = build_problem(CodeParams(8, 4, 2), range(2, 9))
    single = search(problem)
    pooled = search(problem, SearchConfig(workers=2))
    assert single.feasible and pooled.feasible
    assert pooled.witness.as_dict() == single.witness.as_dict()


def test_row_choice_does_not_change_the_verdict():
    problem = build_problem(CodeParams(9, 3, 4), range(4, 10))
    reference = search(problem)
    for cfg in (SearchConfig(congruence_rows=(), nonnegativity_rows=()),
                SearchConfig(congruence_rows=(3, 1, 2), nonnegativity_rows=(2,))):
        verdict = search(problem, cfg)
        assert verdict.feasible == reference.feasible
        if reference.feasible:
            assert verdict.witness.as_dict() == reference.witness.as_dict()


def test_node_budget():
    with pytest.raises(BudgetExhausted) as caught:
        search(build_problem(HAMMING, [3, 4, 7]), SearchConfig(node_budget=0))
    assert caught.value.counters["nodes"] == 1


def test_pruning_audit():
    verdict = search(build_problem(CodeParams(356, 10, 176), [176, 192]), SearchConfig(audit_rate=1.0))
    audit = verdict.record["audit"]
    assert audit["sampled"] == audit["confirmed"]


def test_pruning_audit_with_free_variables():
    problem = build_problem(CodeParams(10, 3, 5), range(5, 11))
    verdict = search(problem, SearchConfig(audit_rate=0.5, audit_seed=7))
    assert verdict.feasible == (brute_force_feasible(10, 3, range(5, 11)) is not None)
    if not verdict.feasible:
        assert verdict.record["audit"]["sampled"] == verdict.record["audit"]["confirmed"]


def test_search_config_round_trip():
    cfg = SearchConfig(congruence_rows=(1, 2), time_budget=10.0, workers=3, audit_rate=0.01)
    assert SearchConfig.from_dict(cfg.to_dict()) == cfg


def test_exhaustion_record_is_deterministic():
    problem = build_problem(CodeParams(356, 10, 176), [176, 192])
    assert search(problem).record == search(problem).record


@pytest.mark.slow
def test_five_weights_of_1988_are_infeasible():
    verdict = search(build_problem(CodeParams(1988, 12, 992), FIVE_WEIGHTS, 0), SearchConfig(time_budget=24 * 3600.0))
    assert not verdict.feasible
    assert verdict.record["pivots"] == [1056, 1088]
