"""Scenario harness: the four built-in knowledge conditions, per-model
prediction tables, mean-squared-error comparison with a recursion-depth grid
search, and the simulated agent-vs-human risk sweep."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .epistemic import Event, InformationStructure, from_world_model
from .game import stage_payoff
from .rational import parse_rational
from .strategies import (
    Action,
    Level0Rule,
    PayoffParams,
    cognitive_strategy,
    iterated_matching,
    iterated_maximization_prob,
    matched_p_belief_prob,
    pair_heuristic,
    private_heuristic,
    rational_p_belief_action,
)
from .worldmodel import State, WorldModelSpec, builtin_loudspeaker, builtin_messenger, x_event

CONDITION_NAMES = ("private", "secondary", "tertiary", "common")
CONDITION_LABELS = {
    "private": "Private",
    "secondary": "Secondary",
    "tertiary": "Tertiary",
    "common": "Common Knowledge",
}
DEFAULT_DELTA = Fraction(1, 4)
PAYOFF_CONDITION_1 = PayoffParams("1.1", "0", "1", "0.4")


@dataclass(frozen=True)
class KnowledgeCondition:
    """One scenario: a world model, the realized state, and which seat the
    human participant occupies (the simulated agent takes the other seat)."""

    name: str
    model: WorldModelSpec
    state: State
    participant: int

    @property
    def agent(self) -> int:
        return 1 - self.participant

    def structure(self) -> InformationStructure:
        return from_world_model(self.model)

    def state_index(self) -> int:
        return self.structure().space.index_of(self.state)

    def target(self) -> Event:
        return x_event(self.model, self.structure().space)


def knowledge_conditions(delta=DEFAULT_DELTA) -> tuple[KnowledgeCondition, ...]:
    """The four built-in conditions at a given good-state prior.

    The first three live in the messenger model (x=1, participant visited and
    told of a plan, the partner respectively unvisited / visited without
    follow-up toward the participant / visited with one-sided follow-up); the
    fourth is the loudspeaker broadcast.  The participant is player 0 except
    in the secondary condition.
    """
    delta = parse_rational(delta)
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie strictly in (0, 1), got {delta}")
    messenger = builtin_messenger(delta)
    loudspeaker = builtin_loudspeaker(delta)
    return (
        KnowledgeCondition("private", messenger, (1, 1, 0, 1, 0), participant=0),
        KnowledgeCondition("secondary", messenger, (1, 1, 1, 0, 1), participant=1),
        KnowledgeCondition("tertiary", messenger, (1, 1, 1, 1, 0), participant=0),
        KnowledgeCondition("common", loudspeaker, (1, 1), participant=0),
    )


@dataclass
class HumanData:
    """Observed per-condition sample sizes and proportions choosing A."""

    counts: dict[str, int]
    prob_a: dict[str, Fraction]

    def __post_init__(self) -> None:
        missing = set(CONDITION_NAMES) - set(self.prob_a)
        if missing:
            raise ValueError(f"missing conditions: {sorted(missing)}")
        unknown = set(self.prob_a) - set(CONDITION_NAMES)
        if unknown:
            raise ValueError(f"unknown conditions: {sorted(unknown)}")
        for name, value in self.prob_a.items():
            if not 0 <= value <= 1:
                raise ValueError(f"condition {name!r}: prob_a {value} outside [0, 1]")

    @classmethod
    def from_csv(cls, path) -> "HumanData":
        """Load ``condition,n,prob_a`` rows; prob_a may be decimal or ``p/q``."""
        path = Path(path)
        counts: dict[str, int] = {}
        prob_a: dict[str, Fraction] = {}
        with path.open(newline="") as handle:
            reader = csv.DictReader(handle)
            fields = set(reader.fieldnames or ())
            required = {"condition", "n", "prob_a"}
            if not required <= fields:
                raise ValueError(
                    f"{path}: expected columns {sorted(required)}, found {sorted(fields)}"
                )
            for row in reader:
                name = row["condition"].strip()
                if name in prob_a:
                    raise ValueError(f"{path}: duplicate condition {name!r}")
                counts[name] = int(row["n"])
                prob_a[name] = parse_rational(row["prob_a"])
        return cls(counts, prob_a)


class ModelKind(str, enum.Enum):
    RATIONAL = "rational"
    MATCHED = "matched"
    ITERMAX = "itermax"
    ITERMATCH = "itermatch"


LEVEL_GRID = (0, 1, 2, 3, 4, 5)


@dataclass
class PredictionTable:
    """Per-condition predicted probability of choosing A."""

    model: str
    level: int | None
    probs: dict[str, Fraction]


def predict(
    kind: ModelKind,
    conditions: tuple[KnowledgeCondition, ...],
    payoffs: PayoffParams | None = None,
    level: int | None = None,
    level0: Level0Rule = Level0Rule.PRIMARY,
) -> PredictionTable:
    """Evaluate one model for the participant seat at each condition state.

    Deterministic strategies map to probability 0 or 1; the matching models
    report their exact mixing probability.
    """
    if kind in (ModelKind.RATIONAL, ModelKind.ITERMAX) and payoffs is None:
        raise ValueError(f"{kind.value} predictions require payoffs")
    if kind in (ModelKind.ITERMAX, ModelKind.ITERMATCH) and level is None:
        raise ValueError(f"{kind.value} predictions require a recursion level")
    probs: dict[str, Fraction] = {}
    for condition in conditions:
        structure = condition.structure()
        target = condition.target()
        seat = condition.participant
        state = condition.state_index()
        if kind is ModelKind.RATIONAL:
            action = rational_p_belief_action(structure, target, payoffs, seat, state)
            probs[condition.name] = Fraction(1) if action is Action.A else Fraction(0)
        elif kind is ModelKind.MATCHED:
            probs[condition.name] = matched_p_belief_prob(structure, target, seat, state)
        elif kind is ModelKind.ITERMAX:
            probs[condition.name] = iterated_maximization_prob(
                structure, target, payoffs, level, seat, state, level0
            )
        else:
            probs[condition.name] = iterated_matching(
                structure, target, level, seat, state, level0
            )
    return PredictionTable(kind.value, level, probs)


def mse(table: PredictionTable, human: HumanData) -> Fraction:
    """Mean squared prediction error over the four conditions, exact."""
    total = Fraction(0)
    for name in CONDITION_NAMES:
        if name not in table.probs:
            raise ValueError(f"prediction table is missing condition {name!r}")
        total += (table.probs[name] - human.prob_a[name]) ** 2
    return total / len(CONDITION_NAMES)


def fit_level(
    kind: ModelKind,
    conditions: tuple[KnowledgeCondition, ...],
    payoffs: PayoffParams,
    human: HumanData,
    levels: tuple[int, ...] = LEVEL_GRID,
    level0: Level0Rule = Level0Rule.PRIMARY,
) -> int:
    """Grid-search the recursion depth minimizing mse; ties go to smaller k."""
    if kind not in (ModelKind.ITERMAX, ModelKind.ITERMATCH):
        raise ValueError(f"{kind.value} has no recursion level to fit")
    return min(
        levels,
        key=lambda k: (mse(predict(kind, conditions, payoffs, k, level0), human), k),
    )


@dataclass
class ModelFit:
    kind: ModelKind
    level: int | None
    table: PredictionTable
    error: Fraction


def compare_models(
    conditions: tuple[KnowledgeCondition, ...],
    payoffs: PayoffParams,
    human: HumanData,
    levels: tuple[int, ...] = LEVEL_GRID,
    level0: Level0Rule = Level0Rule.PRIMARY,
) -> list[ModelFit]:
    """All four models against the human data, recursion depths fitted."""
    rows: list[ModelFit] = []
    for kind in (ModelKind.RATIONAL, ModelKind.MATCHED):
        table = predict(kind, conditions, payoffs)
        rows.append(ModelFit(kind, None, table, mse(table, human)))
    for kind in (ModelKind.ITERMAX, ModelKind.ITERMATCH):
        best = fit_level(kind, conditions, payoffs, human, levels, level0)
        table = predict(kind, conditions, payoffs, best, level0)
        rows.append(ModelFit(kind, best, table, mse(table, human)))
    return rows


class AgentStrategy(str, enum.Enum):
    COGNITIVE = "cognitive"
    PRIVATE = "private"
    PAIR = "pair"
    ALWAYS_B = "always_b"


SWEEP_STRATEGIES = (AgentStrategy.COGNITIVE, AgentStrategy.PRIVATE, AgentStrategy.PAIR)


def agent_action(
    strategy: AgentStrategy, condition: KnowledgeCondition, payoffs: PayoffParams
) -> Action:
    """The simulated agent's action from the non-participant seat."""
    structure = condition.structure()
    target = condition.target()
    seat = condition.agent
    state = condition.state_index()
    if strategy is AgentStrategy.COGNITIVE:
        return cognitive_strategy(structure, target, payoffs, seat, state)
    if strategy is AgentStrategy.PRIVATE:
        return private_heuristic(structure, target, seat, state)
    if strategy is AgentStrategy.PAIR:
        return pair_heuristic(structure, target, seat, state)
    return Action.B


def marginal_value(
    strategy: AgentStrategy,
    conditions: tuple[KnowledgeCondition, ...],
    human: HumanData,
    payoffs: PayoffParams,
) -> Fraction:
    """Summed expected payoff across conditions, over always playing safe.

    The agent's action comes from its own information set; the payoff is then
    evaluated at the realized condition state against the human seat mixing at
    the observed proportion.  Playing B contributes exactly zero.
    """
    total = Fraction(0)
    for condition in conditions:
        action = agent_action(strategy, condition, payoffs)
        if action is Action.B:
            continue
        human_prob = human.prob_a[condition.name]
        x_is_one = condition.state_index() in condition.target()
        total += stage_payoff(payoffs, x_is_one, Fraction(1), human_prob) - payoffs.c
    return total


def default_risk_grid() -> tuple[Fraction, ...]:
    return tuple(Fraction(k, 20) for k in range(1, 20))


@dataclass
class SweepResult:
    grid: tuple[Fraction, ...]
    values: dict[AgentStrategy, tuple[Fraction, ...]]


def human_agent_sweep(
    grid: tuple[Fraction, ...],
    conditions: tuple[KnowledgeCondition, ...],
    human: HumanData,
    strategies: tuple[AgentStrategy, ...] = SWEEP_STRATEGIES,
) -> SweepResult:
    """Marginal value of each agent strategy at payoffs (1, 0, p*, 0) for each
    risk level p* on the grid."""
    grid = tuple(grid)
    if any(not 0 < p < 1 for p in grid):
        raise ValueError("risk grid values must lie strictly in (0, 1)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("risk grid must be strictly increasing")
    values: dict[AgentStrategy, list[Fraction]] = {s: [] for s in strategies}
    for p_star in grid:
        payoffs = PayoffParams(Fraction(1), Fraction(0), p_star, Fraction(0))
        for strategy in strategies:
            values[strategy].append(marginal_value(strategy, conditions, human, payoffs))
    return SweepResult(grid, {s: tuple(v) for s, v in values.items()})
