"""Declarative generative world models over gated Bernoulli variables.

A model lists binary variables in dependency order, each drawn from a
Bernoulli whose draw is suppressed (value pinned to 0) while any of its gate
variables is 0, plus guarded observation rules that reveal variable values to
one of two players.  Enumerating every positive-probability assignment yields
a finite state space with an exact rational measure; replaying the rules at a
state yields the ordered trace a player would see there, and grouping states
by trace yields that player's information partition.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .rational import format_rational, parse_rational

State = tuple[int, ...]
# Each fired rule contributes (rule index, observed values); the tag keeps
# traces from colliding when different rules happen to reveal equal tuples.
ObservationTrace = tuple[tuple[int, tuple[int, ...]], ...]


class SpecError(ValueError):
    """A world-model definition that violates its structural rules."""


@dataclass(frozen=True)
class VariableSpec:
    """One Bernoulli variable; while any gate variable is 0 its value is forced to 0."""

    name: str
    bias: Fraction
    gate: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gate", tuple(self.gate))
        try:
            object.__setattr__(self, "bias", parse_rational(self.bias))
        except ValueError as exc:
            raise SpecError(f"variable {self.name!r}: {exc}") from exc


@dataclass(frozen=True)
class ObservationRule:
    """Reveal `observed` values to `player` at states where all guard variables are 1."""

    guard: tuple[str, ...]
    player: int
    observed: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "guard", tuple(self.guard))
        object.__setattr__(self, "observed", tuple(self.observed))


@dataclass(frozen=True)
class WorldModelSpec:
    """An ordered variable list plus ordered observation rules.

    Gates may only reference earlier variables, so the declaration order is a
    topological order of the generative process.  Every model must declare a
    variable named ``x``: the coordination-relevant state bit.
    """

    variables: tuple[VariableSpec, ...]
    observations: tuple[ObservationRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "observations", tuple(self.observations))
        declared: set[str] = set()
        for var in self.variables:
            if var.name in declared:
                raise SpecError(f"duplicate variable name {var.name!r}")
            if not 0 <= var.bias <= 1:
                raise SpecError(f"variable {var.name!r}: bias {var.bias} outside [0, 1]")
            for gate_name in var.gate:
                if gate_name not in declared:
                    raise SpecError(
                        f"variable {var.name!r}: gate {gate_name!r} is not an earlier variable"
                    )
            declared.add(var.name)
        if "x" not in declared:
            raise SpecError("a world model must declare a variable named 'x'")
        for index, rule in enumerate(self.observations):
            if rule.player not in (0, 1):
                raise SpecError(f"observation rule {index}: player must be 0 or 1")
            for name in itertools.chain(rule.guard, rule.observed):
                if name not in declared:
                    raise SpecError(f"observation rule {index}: unknown variable {name!r}")

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(var.name for var in self.variables)

    def variable_index(self, name: str) -> int:
        try:
            return self.variable_names.index(name)
        except ValueError:
            raise SpecError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class StateSpace:
    """Indexed positive-measure states with an exact probability measure."""

    states: tuple[State, ...]
    measures: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(tuple(s) for s in self.states))
        object.__setattr__(self, "measures", tuple(self.measures))
        if len(self.states) != len(self.measures):
            raise ValueError("states and measures differ in length")
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate state assignments")
        if any(m <= 0 for m in self.measures):
            raise ValueError("every enumerated state must have positive measure")
        if sum(self.measures, Fraction(0)) != 1:
            raise ValueError("state measures must sum to exactly 1")

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self, state: State) -> int:
        try:
            return self.states.index(tuple(state))
        except ValueError:
            raise ValueError(f"state {tuple(state)} has zero measure or is not in the space") from None


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering the state-index range, plus the index -> block map."""

    blocks: tuple[frozenset[int], ...]
    block_of: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(frozenset(b) for b in self.blocks))
        object.__setattr__(self, "block_of", tuple(self.block_of))
        if any(not block for block in self.blocks):
            raise ValueError("partition blocks must be nonempty")
        if sum(len(block) for block in self.blocks) != len(self.block_of):
            raise ValueError("partition blocks must be disjoint and exhaustive")
        for index, block_id in enumerate(self.block_of):
            if index not in self.blocks[block_id]:
                raise ValueError(f"state {index} is not in its assigned block")

    def block(self, index: int) -> frozenset[int]:
        return self.blocks[self.block_of[index]]


def enumerate_states(spec: WorldModelSpec) -> StateSpace:
    """Enumerate every positive-measure assignment with its exact probability.

    An active variable contributes a factor of `bias` (value 1) or `1 - bias`
    (value 0); a gated-off variable contributes no factor but must hold value
    0.  Assignments containing an impossible value (a gated-off 1, or a factor
    of 0 from a degenerate bias) are dropped outright, so conditional beliefs
    are defined at every enumerated state and the measures sum to exactly 1.
    """
    names = spec.variable_names
    gate_indices = tuple(
        tuple(names.index(g) for g in var.gate) for var in spec.variables
    )
    states: list[State] = []
    measures: list[Fraction] = []
    for assignment in itertools.product((0, 1), repeat=len(spec.variables)):
        weight: Fraction | None = Fraction(1)
        for var, value, gates in zip(spec.variables, assignment, gate_indices):
            if any(assignment[g] == 0 for g in gates):
                if value == 1:
                    weight = None
                    break
                continue
            factor = var.bias if value == 1 else 1 - var.bias
            if factor == 0:
                weight = None
                break
            weight *= factor
        if weight is not None:
            states.append(assignment)
            measures.append(weight)
    return StateSpace(tuple(states), tuple(measures))


def run_observations(spec: WorldModelSpec, player: int, state: State) -> ObservationTrace:
    """Replay the observation rules for one player at one state.

    Returns the ordered trace of (rule index, observed values) for every rule
    owned by the player whose guard variables are all 1 at the state.
    """
    if len(state) != len(spec.variables):
        raise SpecError(
            f"state has {len(state)} values but the model declares {len(spec.variables)} variables"
        )
    names = spec.variable_names
    trace = []
    for rule_index, rule in enumerate(spec.observations):
        if rule.player != player:
            continue
        if all(state[names.index(g)] == 1 for g in rule.guard):
            values = tuple(state[names.index(v)] for v in rule.observed)
            trace.append((rule_index, values))
    return tuple(trace)


def trace_values(trace: ObservationTrace) -> tuple[tuple[int, ...], ...]:
    """Strip rule tags, leaving just the observed value tuples in firing order."""
    return tuple(values for _, values in trace)


def build_information_partition(spec: WorldModelSpec, space: StateSpace, player: int) -> Partition:
    """Group the states a player cannot tell apart: equal traces, same block."""
    groups: dict[ObservationTrace, list[int]] = {}
    for index, state in enumerate(space.states):
        groups.setdefault(run_observations(spec, player, state), []).append(index)
    blocks = tuple(frozenset(members) for members in groups.values())
    block_of = [0] * len(space.states)
    for block_id, members in enumerate(groups.values()):
        for index in members:
            block_of[index] = block_id
    return Partition(blocks, tuple(block_of))


_HALF = Fraction(1, 2)


def _checked_delta(value) -> Fraction:
    delta = parse_rational(value)
    if not 0 <= delta <= 1:
        raise SpecError(f"delta must lie in [0, 1], got {delta}")
    return delta


def builtin_loudspeaker(delta) -> WorldModelSpec:
    """Public-announcement model: a fair broadcast coin reveals x to both players at once."""
    delta = _checked_delta(delta)
    return WorldModelSpec(
        variables=(
            VariableSpec("x", delta),
            VariableSpec("broadcast", _HALF),
        ),
        observations=(
            ObservationRule(("broadcast",), 0, ("x",)),
            ObservationRule(("broadcast",), 1, ("x",)),
        ),
    )


def builtin_messenger(delta) -> WorldModelSpec:
    """Door-to-door messenger model.

    A visit reveals x to the visited player (player 1 also learns whether
    player 0 was visited); a follow-up "tell plan" pass, possible only after a
    visit, relays what the messenger knows about the other player's situation.
    """
    delta = _checked_delta(delta)
    return WorldModelSpec(
        variables=(
            VariableSpec("x", delta),
            VariableSpec("visit_0", _HALF),
            VariableSpec("visit_1", _HALF),
            VariableSpec("tell_plan_0", _HALF, gate=("visit_0",)),
            VariableSpec("tell_plan_1", _HALF, gate=("visit_1",)),
        ),
        observations=(
            ObservationRule(("visit_0",), 0, ("x",)),
            ObservationRule(("visit_0", "tell_plan_0"), 0, ("visit_1", "tell_plan_1")),
            ObservationRule(("visit_1",), 1, ("x", "visit_0")),
            ObservationRule(("visit_1", "tell_plan_1"), 1, ("tell_plan_0",)),
        ),
    )


# --- JSON interchange -------------------------------------------------------

_VARIABLE_KEYS = {"name", "bias", "gate"}
_RULE_KEYS = {"guard", "player", "observed"}


def spec_from_json(document: Mapping) -> WorldModelSpec:
    """Build a model from the JSON document shape produced by spec_to_json."""
    unknown = set(document) - {"variables", "observations"}
    if unknown:
        raise SpecError(f"unknown top-level keys: {sorted(unknown)}")
    if "variables" not in document:
        raise SpecError("missing 'variables'")
    variables = []
    for entry in document["variables"]:
        extra = set(entry) - _VARIABLE_KEYS
        if extra:
            raise SpecError(f"variable entry {entry.get('name', '?')!r}: unknown keys {sorted(extra)}")
        if "name" not in entry or "bias" not in entry:
            raise SpecError(f"variable entry {entry!r}: 'name' and 'bias' are required")
        variables.append(
            VariableSpec(entry["name"], entry["bias"], tuple(entry.get("gate", ())))
        )
    observations = []
    for index, entry in enumerate(document.get("observations", ())):
        extra = set(entry) - _RULE_KEYS
        if extra:
            raise SpecError(f"observation rule {index}: unknown keys {sorted(extra)}")
        missing = _RULE_KEYS - set(entry)
        if missing:
            raise SpecError(f"observation rule {index}: missing keys {sorted(missing)}")
        observations.append(
            ObservationRule(tuple(entry["guard"]), entry["player"], tuple(entry["observed"]))
        )
    return WorldModelSpec(tuple(variables), tuple(observations))


def spec_to_json(spec: WorldModelSpec) -> dict:
    return {
        "variables": [
            {"name": var.name, "bias": format_rational(var.bias), "gate": list(var.gate)}
            for var in spec.variables
        ],
        "observations": [
            {"guard": list(rule.guard), "player": rule.player, "observed": list(rule.observed)}
            for rule in spec.observations
        ],
    }


def load_spec(path) -> WorldModelSpec:
    """Read a world-model JSON file; decimal biases convert to exact rationals."""
    text = Path(path).read_text()
    try:
        document = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from exc
    return spec_from_json(document)


# --- event helpers ----------------------------------------------------------


def event_where(spec: WorldModelSpec, space: StateSpace, assignment: Mapping[str, int]) -> frozenset[int]:
    """Indices of the states satisfying every `name: value` constraint."""
    pairs = []
    for name, value in assignment.items():
        if value not in (0, 1):
            raise SpecError(f"constraint {name}={value!r}: value must be 0 or 1")
        pairs.append((spec.variable_index(name), value))
    return frozenset(
        index
        for index, state in enumerate(space.states)
        if all(state[position] == value for position, value in pairs)
    )


def parse_event_predicate(text: str) -> dict[str, int]:
    """Parse a conjunction like ``x=1,visit_0=0`` (comma or ``&`` separated)."""
    constraints: dict[str, int] = {}
    for raw in re.split(r"[,&]", text):
        clause = raw.strip()
        if not clause:
            raise SpecError(f"empty clause in event predicate {text!r}")
        name, sep, value = clause.partition("=")
        name = name.strip()
        value = value.strip()
        if not sep or value not in ("0", "1") or not name:
            raise SpecError(f"clause {clause!r}: expected the form var=0 or var=1")
        if constraints.get(name, int(value)) != int(value):
            raise SpecError(f"conflicting constraints for {name!r}")
        constraints[name] = int(value)
    return constraints


def x_event(spec: WorldModelSpec, space: StateSpace) -> frozenset[int]:
    """The event that the coordination bit x is 1."""
    return event_where(spec, space, {"x": 1})
