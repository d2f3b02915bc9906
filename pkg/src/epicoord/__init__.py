"""Exact graded common belief and coordination strategies for finite two-player Bayesian games."""

from .epistemic import (
    Event,
    EvidentLadder,
    InformationStructure,
    LadderRung,
    common_p_belief,
    conditional_belief,
    evidence_level,
    evident_ladder,
    from_world_model,
    is_c_indicating,
    is_p_evident,
    min_belief,
    super_p_evident,
)
from .experiments import (
    CONDITION_NAMES,
    PAYOFF_CONDITION_1,
    AgentStrategy,
    HumanData,
    KnowledgeCondition,
    ModelFit,
    ModelKind,
    PredictionTable,
    SweepResult,
    compare_models,
    default_risk_grid,
    fit_level,
    human_agent_sweep,
    knowledge_conditions,
    marginal_value,
    mse,
    predict,
)
from .game import (
    EquilibriumReport,
    GameInstance,
    Policy,
    Violation,
    expected_utility,
    is_partition_measurable,
    noiseless_check,
    rational_policy,
    stage_payoff,
    verify_equilibrium,
)
from .oracle import (
    RandomStructureConfig,
    brute_force_common_p_belief,
    fixedpoint_common_p_belief,
    largest_p_evident_indicating_event,
    random_structure,
)
from .rational import format_rational, parse_rational
from .strategies import (
    Action,
    Level0Rule,
    PayoffParams,
    cognitive_strategy,
    iterated_matching,
    iterated_maximization,
    iterated_maximization_prob,
    matched_p_belief_prob,
    pair_heuristic,
    private_heuristic,
    rational_p_belief_action,
    risk_threshold,
)
from .worldmodel import (
    ObservationRule,
    ObservationTrace,
    Partition,
    SpecError,
    State,
    StateSpace,
    VariableSpec,
    WorldModelSpec,
    build_information_partition,
    builtin_loudspeaker,
    builtin_messenger,
    enumerate_states,
    event_where,
    load_spec,
    parse_event_predicate,
    run_observations,
    spec_from_json,
    spec_to_json,
    trace_values,
    x_event,
)

__version__ = "0.1.0"
