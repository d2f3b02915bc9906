"""Acceptance suite: one test per release criterion, each printing a
pass/fail line.  Criteria 6 and 7 need the observed-proportions CSV and are
skipped (not failed) when it is absent.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import random
import time
from fractions import Fraction

from click.testing import CliRunner

from epicoord import (
    GameInstance,
    HumanData,
    ModelKind,
    RandomStructureConfig,
    brute_force_common_p_belief,
    common_p_belief,
    compare_models,
    conditional_belief,
    default_risk_grid,
    evidence_level,
    evident_ladder,
    fit_level,
    fixedpoint_common_p_belief,
    human_agent_sweep,
    is_c_indicating,
    is_p_evident,
    knowledge_conditions,
    largest_p_evident_indicating_event,
    predict,
    random_structure,
    verify_equilibrium,
)
from epicoord.cli import cli
from epicoord.experiments import PAYOFF_CONDITION_1, SWEEP_STRATEGIES, AgentStrategy
from epicoord.strategies import risk_threshold

from .conftest import DELTA, human_data_path, requires_human_data


def _report(number: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number}: {status} ({detail})")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    queries = 0
    for seed in range(500):
        structure, target = random_structure(RandomStructureConfig(seed=seed, num_states=8))
        for player in (0, 1):
            for state in range(8):
                expected = brute_force_common_p_belief(structure, target, player, state)
                actual = common_p_belief(structure, target, player, state)
                if actual != expected:
                    _report(
                        1,
                        False,
                        f"seed={seed} player={player} state={state}: engine {actual} != oracle {expected}",
                    )
                queries += 1
    elapsed = time.perf_counter() - start
    _report(1, elapsed < 60.0, f"{queries} queries over 500 random structures agree exactly in {elapsed:.1f}s")


def test_criterion_2_structure_properties():
    start = time.perf_counter()
    for seed in range(1000, 1200):
        structure, target = random_structure(RandomStructureConfig(seed=seed, num_states=8))
        n = len(structure)
        ladder = evident_ladder(structure, target)

        # nesting: strictly shrinking rungs, strictly rising levels, valid at each level
        assert ladder.rungs[0].event == structure.universe()
        for rung in ladder:
            assert is_p_evident(structure, rung.event, rung.level)
            assert is_c_indicating(structure, rung.event, target, rung.level)
        for earlier, later in zip(ladder.rungs, ladder.rungs[1:]):
            assert later.event < earlier.event
            assert later.level > earlier.level

        # zero-or-threshold belief on every rung
        for rung in ladder:
            for player in (0, 1):
                for state in range(n):
                    belief = conditional_belief(structure, player, rung.event, state)
                    assert belief == 0 or belief >= rung.level

        # union closure for random evident event pairs
        rng = random.Random(seed)
        for _ in range(2):
            first = frozenset(rng.sample(range(n), rng.randint(1, n)))
            second = frozenset(rng.sample(range(n), rng.randint(1, n)))
            level = min(
                evidence_level(structure, first, target),
                evidence_level(structure, second, target),
            )
            union = first | second
            assert is_p_evident(structure, union, level)
            assert is_c_indicating(structure, union, target, level)

        # containment of largest evident events across levels
        low, high = sorted(Fraction(rng.randint(0, 16), 16) for _ in range(2))
        assert largest_p_evident_indicating_event(structure, target, high) <= (
            largest_p_evident_indicating_event(structure, target, low)
        )
    elapsed = time.perf_counter() - start
    _report(2, elapsed < 30.0, f"union/containment/threshold/nesting hold on 200 structures in {elapsed:.1f}s")


def test_criterion_3_condition_exactness():
    start = time.perf_counter()
    conditions = knowledge_conditions(DELTA)
    private = next(c for c in conditions if c.name == "private")

    oracle_private = fixedpoint_common_p_belief(
        private.structure(), private.target(), private.participant, private.state_index()
    )
    assert oracle_private == Fraction(1, 4), "oracle disagrees on the private-condition value"

    table = predict(ModelKind.MATCHED, conditions).probs
    assert table["secondary"] == table["tertiary"]
    assert table["common"] == Fraction(1)
    assert table["private"] == Fraction(1, 4) == oracle_private
    assert table["private"] < table["secondary"] < table["common"]

    messenger = private.structure()
    levels = evident_ladder(messenger, private.target()).levels
    assert levels == (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))

    elapsed = time.perf_counter() - start
    _report(
        3,
        elapsed < 1.0,
        "matched = (1/4, 1/2, 1/2, 1) with secondary == tertiary, private oracle-confirmed, "
        f"ladder levels (0, 1/4, 1/2, 1), in {elapsed:.3f}s",
    )


def test_criterion_4_rational_is_too_extreme():
    start = time.perf_counter()
    assert risk_threshold(PAYOFF_CONDITION_1) == Fraction(10, 11)
    table = predict(ModelKind.RATIONAL, knowledge_conditions(DELTA), PAYOFF_CONDITION_1).probs
    assert table == {
        "private": Fraction(0),
        "secondary": Fraction(0),
        "tertiary": Fraction(0),
        "common": Fraction(1),
    }
    elapsed = time.perf_counter() - start
    _report(4, elapsed < 1.0, f"threshold rule attacks only under common knowledge, in {elapsed:.3f}s")


def test_criterion_5_equilibrium_verification():
    start = time.perf_counter()
    for condition in (knowledge_conditions(DELTA)[0], knowledge_conditions(DELTA)[3]):
        game = GameInstance(condition.structure(), PAYOFF_CONDITION_1, condition.target())
        report = verify_equilibrium(game)
        assert report.applicable, report.reason
        assert report.violations == ()
    elapsed = time.perf_counter() - start
    _report(5, elapsed < 1.0, f"no profitable deviations in either built-in model, in {elapsed:.3f}s")


@requires_human_data
def test_criterion_6_model_comparison_on_observed_data():
    human = HumanData.from_csv(human_data_path())
    conditions = knowledge_conditions(DELTA)
    fits = {fit.kind: fit for fit in compare_models(conditions, PAYOFF_CONDITION_1, human)}
    matched_error = fits[ModelKind.MATCHED].error
    others = [fits[k].error for k in (ModelKind.RATIONAL, ModelKind.ITERMAX, ModelKind.ITERMATCH)]
    assert all(matched_error < error for error in others), "matched model is not strictly best"
    best_max = fit_level(ModelKind.ITERMAX, conditions, PAYOFF_CONDITION_1, human)
    best_match = fit_level(ModelKind.ITERMATCH, conditions, PAYOFF_CONDITION_1, human)
    assert best_max == 1 and best_match == 3, f"grid search found k=({best_max}, {best_match})"
    _report(6, True, "matched model strictly lowest mse; grid search recovers k=1 and k=3")


@requires_human_data
def test_criterion_7_sweep_orderings():
    human = HumanData.from_csv(human_data_path())
    conditions = knowledge_conditions(DELTA)
    result = human_agent_sweep(default_risk_grid(), conditions, human, SWEEP_STRATEGIES)
    private = result.values[AgentStrategy.PRIVATE]
    pair = result.values[AgentStrategy.PAIR]
    cognitive = result.values[AgentStrategy.COGNITIVE]
    assert private[0] > pair[0], "private heuristic must lead the heuristics at the lowest risk"
    assert pair[-1] > private[-1], "pair heuristic must lead at the highest risk"
    assert cognitive[0] >= 0, "cognitive agent must not lose value at the lowest risk"
    _report(7, True, "heuristic orderings at the extremes and cognitive sign pattern hold")


def test_criterion_8_machine_output_determinism(tmp_path):
    csv_path = tmp_path / "human.csv"
    csv_path.write_text(
        "condition,n,prob_a\nprivate,34,0.2\nsecondary,36,0.55\ntertiary,33,0.6\ncommon,35,0.85\n"
    )
    runner = CliRunner()
    compare_args = ["--format", "json", "compare", "--human", str(csv_path)]
    sweep_args = ["sweep", "--human", str(csv_path)]
    compare_outputs = [runner.invoke(cli, compare_args).output for _ in range(2)]
    sweep_outputs = [runner.invoke(cli, sweep_args).output for _ in range(2)]
    assert compare_outputs[0] and compare_outputs[0] == compare_outputs[1]
    assert sweep_outputs[0] and sweep_outputs[0] == sweep_outputs[1]
    _report(8, True, "compare and sweep machine outputs are byte-identical across runs")
