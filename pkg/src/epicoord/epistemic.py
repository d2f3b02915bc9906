"""Exact conditional belief and graded common belief over finite information structures.

The central construction is the nested sequence of maximally evident
target-indicating events: starting from the full space, repeatedly shrink to
the largest subset whose members all hold strictly higher belief in both the
subset and the target than the current evidence level.  The sequence is
finite, unique, and player-independent; a player's perceived maximal common
belief at a state is the evidence level of the deepest rung that still
intersects the player's information set.  Everything here is exact rational
arithmetic — no epsilons, because weak-vs-strict inequality is load-bearing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .worldmodel import (
    Partition,
    StateSpace,
    WorldModelSpec,
    build_information_partition,
    enumerate_states,
)

Event = frozenset[int]


@dataclass(frozen=True)
class InformationStructure:
    """A finite state space with an exact measure and one partition per player."""

    space: StateSpace
    partitions: tuple[Partition, Partition]

    def __post_init__(self) -> None:
        object.__setattr__(self, "partitions", tuple(self.partitions))
        if len(self.partitions) != 2:
            raise ValueError("exactly two player partitions are required")
        for player, partition in enumerate(self.partitions):
            if len(partition.block_of) != len(self.space.states):
                raise ValueError(f"partition for player {player} does not cover the state space")

    def __len__(self) -> int:
        return len(self.space.states)

    def universe(self) -> Event:
        return frozenset(range(len(self.space.states)))

    def block(self, player: int, state: int) -> frozenset[int]:
        """The information set of `player` containing state index `state`."""
        if player not in (0, 1):
            raise IndexError(f"player must be 0 or 1, got {player}")
        if not 0 <= state < len(self.space.states):
            raise IndexError(f"state index {state} out of range 0..{len(self.space.states) - 1}")
        partition = self.partitions[player]
        return partition.blocks[partition.block_of[state]]

    def measure_of(self, event: Event) -> Fraction:
        measures = self.space.measures
        return sum((measures[index] for index in event), Fraction(0))


@lru_cache(maxsize=None)
def from_world_model(spec: WorldModelSpec) -> InformationStructure:
    """Enumerate a world model's states and build both players' partitions."""
    space = enumerate_states(spec)
    return InformationStructure(
        space,
        (
            build_information_partition(spec, space, 0),
            build_information_partition(spec, space, 1),
        ),
    )


def conditional_belief(structure: InformationStructure, player: int, event: Event, state: int) -> Fraction:
    """The probability `player` assigns to `event` at `state`: mu(E | block)."""
    block = structure.block(player, state)
    return structure.measure_of(event & block) / structure.measure_of(block)


def min_belief(structure: InformationStructure, event: Event, target: Event, state: int) -> Fraction:
    """The weakest of both players' beliefs in the event and in the target at `state`."""
    return min(
        min(
            conditional_belief(structure, player, event, state),
            conditional_belief(structure, player, target, state),
        )
        for player in (0, 1)
    )


def evidence_level(structure: InformationStructure, event: Event, target: Event) -> Fraction:
    """The largest p at which `event` is p-evident and target-indicating.

    This is the minimum of min_belief over the event's members; the empty
    event has no evidence level and is rejected.
    """
    if not event:
        raise ValueError("the empty event has no evidence level")
    return min(min_belief(structure, event, target, state) for state in event)


def super_p_evident(structure: InformationStructure, event: Event, target: Event, level: Fraction) -> Event:
    """Largest subset whose members all keep strictly-above-`level` belief in it and the target.

    Repeatedly removes, in batch, every member whose min_belief against the
    current survivor set is <= level, until a full scan removes nothing.  The
    fixpoint is order-independent; the result may be empty.
    """
    current = frozenset(event)
    while current:
        violators = frozenset(
            state for state in current if min_belief(structure, current, target, state) <= level
        )
        if not violators:
            break
        current -= violators
    return current


@dataclass(frozen=True)
class LadderRung:
    event: Event
    level: Fraction


@dataclass(frozen=True)
class EvidentLadder:
    """The nested maximally evident target-indicating events, shallowest first.

    Rung 0 is always the full space; each later rung is a strict subset of its
    predecessor with a strictly larger evidence level.
    """

    rungs: tuple[LadderRung, ...]

    def __len__(self) -> int:
        return len(self.rungs)

    def __iter__(self):
        return iter(self.rungs)

    @property
    def levels(self) -> tuple[Fraction, ...]:
        return tuple(rung.level for rung in self.rungs)


@lru_cache(maxsize=None)
def evident_ladder(structure: InformationStructure, target: Event) -> EvidentLadder:
    """Walk the full nested sequence of maximally evident target-indicating events."""
    rungs = []
    event = structure.universe()
    while event:
        level = evidence_level(structure, event, target)
        rungs.append(LadderRung(event, level))
        event = super_p_evident(structure, event, target, level)
    return EvidentLadder(tuple(rungs))


def common_p_belief(structure: InformationStructure, target: Event, player: int, state: int) -> Fraction:
    """Largest p such that `player` p-believes at `state` that `target` is common p-belief.

    Equals the evidence level of the deepest ladder rung that intersects the
    player's information set; since all states carry positive measure, a
    nonempty intersection is exactly positive belief.  Depends on `state`
    only through the player's block.
    """
    block = structure.block(player, state)
    result = None
    for rung in evident_ladder(structure, target).rungs:
        if rung.event & block:
            result = rung.level
        else:
            break
    assert result is not None  # rung 0 is the universe, which meets every block
    return result


def is_p_evident(structure: InformationStructure, event: Event, level: Fraction) -> bool:
    """Does every member state give both players belief >= level in the event?"""
    return all(
        conditional_belief(structure, player, event, state) >= level
        for state in event
        for player in (0, 1)
    )


def is_c_indicating(structure: InformationStructure, event: Event, target: Event, level: Fraction) -> bool:
    """Does every member state give both players belief >= level in the target?"""
    return all(
        conditional_belief(structure, player, target, state) >= level
        for state in event
        for player in (0, 1)
    )
