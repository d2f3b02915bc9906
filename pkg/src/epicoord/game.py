"""Attack-game semantics: payoff evaluation, the noiseless-signal condition,
and exhaustive verification that the threshold strategy is an equilibrium."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .epistemic import Event, InformationStructure, from_world_model
from .strategies import Action, PayoffParams, rational_p_belief_action, risk_threshold
from .worldmodel import State, WorldModelSpec, x_event

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class GameInstance:
    """An information structure, payoffs, and the good-state event the players
    are trying to coordinate on."""

    structure: InformationStructure
    payoffs: PayoffParams
    target: Event

    def __post_init__(self) -> None:
        if not self.target <= self.structure.universe():
            raise ValueError("target event references state indices outside the space")

    @classmethod
    def from_world_model(cls, spec: WorldModelSpec, payoffs: PayoffParams) -> "GameInstance":
        structure = from_world_model(spec)
        return cls(structure, payoffs, x_event(spec, structure.space))


@dataclass(frozen=True)
class Policy:
    """Per-player, per-state probability of playing A.

    A uniform carrier for pure and mixed strategies; meaningful policies are
    constant on each player's information sets (see is_partition_measurable).
    """

    prob_a: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prob_a", tuple(tuple(row) for row in self.prob_a))
        for row in self.prob_a:
            if any(not 0 <= p <= 1 for p in row):
                raise ValueError("action probabilities must lie in [0, 1]")

    def prob(self, player: int, state: int) -> Fraction:
        return self.prob_a[player][state]

    @classmethod
    def constant(cls, num_states: int, value: Fraction) -> "Policy":
        row = tuple(Fraction(value) for _ in range(num_states))
        return cls((row, row))


def is_partition_measurable(structure: InformationStructure, policy: Policy) -> bool:
    return all(
        len({policy.prob(player, state) for state in block}) == 1
        for player in (0, 1)
        for block in structure.partitions[player].blocks
    )


def stage_payoff(
    payoffs: PayoffParams, x_is_one: bool, my_prob_a: Fraction, other_prob_a: Fraction
) -> Fraction:
    """Row player's bimatrix expectation at a single state: B is worth c
    outright; A pays a or d (by the state bit) on a match and b on a mismatch."""
    match_payoff = payoffs.a if x_is_one else payoffs.d
    risky = other_prob_a * match_payoff + (1 - other_prob_a) * payoffs.b
    return my_prob_a * risky + (1 - my_prob_a) * payoffs.c


def expected_utility(
    game: GameInstance,
    player: int,
    state: int,
    my_prob_a: Fraction,
    companion: Policy,
) -> Fraction:
    """Expected payoff over the player's information set, against the
    companion's policy at each state it contains."""
    structure = game.structure
    block = structure.block(player, state)
    block_mass = structure.measure_of(block)
    total = ZERO
    for member in sorted(block):
        weight = structure.space.measures[member] / block_mass
        total += weight * stage_payoff(
            game.payoffs,
            member in game.target,
            my_prob_a,
            companion.prob(1 - player, member),
        )
    return total


def noiseless_check(game: GameInstance) -> bool:
    """True when any evidence for the target is conclusive: no state lifts a
    player's target belief above the prior without reaching certainty."""
    structure = game.structure
    prior = structure.measure_of(game.target)
    for player in (0, 1):
        for block in structure.partitions[player].blocks:
            belief = structure.measure_of(game.target & block) / structure.measure_of(block)
            if belief > prior and belief != 1:
                return False
    return True


def rational_policy(game: GameInstance) -> Policy:
    """Both players following the common-belief threshold rule everywhere."""
    rows = []
    for player in (0, 1):
        row = tuple(
            ONE
            if rational_p_belief_action(game.structure, game.target, game.payoffs, player, state)
            is Action.A
            else ZERO
            for state in range(len(game.structure))
        )
        rows.append(row)
    return Policy((rows[0], rows[1]))


@dataclass(frozen=True)
class Violation:
    player: int
    state_index: int
    state: State
    chosen: Action
    gap: Fraction  # how much the deviation would gain; always > 0


@dataclass(frozen=True)
class EquilibriumReport:
    applicable: bool
    reason: str | None
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return self.applicable and not self.violations


def verify_equilibrium(game: GameInstance) -> EquilibriumReport:
    """Check, at every state and for both players, that deviating from the
    threshold rule against a threshold-rule companion never pays.

    Requires noiseless signals and a risk threshold above the target's prior;
    otherwise the report is marked not applicable rather than pass/fail.
    Pure deviations suffice: expected utility is linear in the own mix.
    """
    threshold = risk_threshold(game.payoffs)
    prior = game.structure.measure_of(game.target)
    if not noiseless_check(game):
        return EquilibriumReport(
            False, "signals are noisy: some belief exceeds the prior without certainty", ()
        )
    if not threshold > prior:
        return EquilibriumReport(
            False,
            f"risk threshold {threshold} does not exceed the target prior {prior}",
            (),
        )
    policy = rational_policy(game)
    violations = []
    for player in (0, 1):
        for state in range(len(game.structure)):
            chosen_prob = policy.prob(player, state)
            chosen_utility = expected_utility(game, player, state, chosen_prob, policy)
            other_utility = expected_utility(game, player, state, 1 - chosen_prob, policy)
            if other_utility > chosen_utility:
                violations.append(
                    Violation(
                        player,
                        state,
                        game.structure.space.states[state],
                        Action.A if chosen_prob == ONE else Action.B,
                        other_utility - chosen_utility,
                    )
                )
    return EquilibriumReport(True, None, tuple(violations))
