"""Command-line front end.

Subcommands: partition (information sets), pbelief (perceived maximal common
belief), ladder (the nested evident events), act (strategy evaluation), verify
(equilibrium check), compare (model table vs. observed data), sweep (agent
marginal value across risk levels), and fuzz (engine vs. brute-force oracle).
Exact rationals are printed as p/q everywhere; human tables add a decimal
rendering alongside.
"""

from __future__ import annotations

import functools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import click

from . import epistemic, experiments, game, oracle, strategies, worldmodel
from .rational import format_rational, parse_rational

_STRATEGY_CHOICES = ("rational", "matched", "itermax", "itermatch", "private", "pair", "cognitive")
_PAYOFF_STRATEGIES = {"rational", "itermax", "cognitive"}


def _domain_errors(func):
    """Map domain failures to exit code 1, leaving usage errors (2) to click."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except (worldmodel.SpecError, ValueError, OSError) as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _load_model(model: str, delta: str) -> worldmodel.WorldModelSpec:
    if model == "builtin:messenger":
        return worldmodel.builtin_messenger(parse_rational(delta))
    if model == "builtin:loudspeaker":
        return worldmodel.builtin_loudspeaker(parse_rational(delta))
    return worldmodel.load_spec(Path(model))


def _parse_state(text: str) -> worldmodel.State:
    parts = [part.strip() for part in text.split(",")]
    if any(part not in ("0", "1") for part in parts):
        raise click.ClickException(f"state must be comma-separated bits, got {text!r}")
    return tuple(int(part) for part in parts)


def _event_from(spec, space, predicate: str) -> frozenset[int]:
    return worldmodel.event_where(spec, space, worldmodel.parse_event_predicate(predicate))


def _state_text(state: worldmodel.State) -> str:
    return "(" + ",".join(str(v) for v in state) + ")"


def _rational_with_decimal(value: Fraction) -> str:
    return f"{format_rational(value)} ({float(value)})"


def _table_cell(value: Fraction) -> str:
    return f"{format_rational(value)} ({float(value):.6g})"


def _render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header), *(len(row[i]) for row in rows)) if rows else len(header)
        for i, header in enumerate(headers)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _check_format(fmt: str, allowed: tuple[str, ...]) -> None:
    if fmt not in allowed:
        raise click.UsageError(f"--format {fmt} is not available here (choose from {', '.join(allowed)})")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text)
    else:
        Path(out).write_text(text + "\n")


@click.group()
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["table", "json", "csv"]),
    default="table",
    show_default=True,
    help="Output mode; machine formats render rationals as p/q.",
)
@click.pass_context
def cli(ctx, fmt):
    """Exact common-belief engine and coordination-strategy toolkit."""
    ctx.obj = {"format": fmt}


@cli.command()
@click.option("--model", required=True, help="Path to a model JSON file, builtin:messenger, or builtin:loudspeaker.")
@click.option("--delta", default="1/4", show_default=True, help="Good-state prior for builtin models.")
@click.option("--player", type=click.IntRange(0, 1), required=True)
@click.pass_context
@_domain_errors
def partition(ctx, model, delta, player):
    """Print one information set per line as sorted state tuples."""
    spec = _load_model(model, delta)
    structure = epistemic.from_world_model(spec)
    blocks = [
        sorted(structure.space.states[index] for index in block)
        for block in structure.partitions[player].blocks
    ]
    blocks.sort(key=lambda states: states[0])
    if ctx.obj["format"] == "json":
        click.echo(json.dumps({"blocks": [[list(s) for s in block] for block in blocks]}, indent=2))
        return
    _check_format(ctx.obj["format"], ("table", "json"))
    for block in blocks:
        click.echo(" ".join(_state_text(state) for state in block))


@cli.command()
@click.option("--model", required=True)
@click.option("--delta", default="1/4", show_default=True)
@click.option("--event", "predicate", default="x=1", show_default=True, help="Conjunction like x=1,visit_0=1.")
@click.option("--player", type=click.IntRange(0, 1), required=True)
@click.option("--state", required=True, help="Comma-separated bits in variable declaration order.")
@click.pass_context
@_domain_errors
def pbelief(ctx, model, delta, predicate, player, state):
    """Perceived maximal common belief in the event at a state."""
    spec = _load_model(model, delta)
    structure = epistemic.from_world_model(spec)
    target = _event_from(spec, structure.space, predicate)
    index = structure.space.index_of(_parse_state(state))
    value = epistemic.common_p_belief(structure, target, player, index)
    if ctx.obj["format"] == "json":
        click.echo(json.dumps({"value": format_rational(value)}))
        return
    _check_format(ctx.obj["format"], ("table", "json"))
    click.echo(_rational_with_decimal(value))


@cli.command()
@click.option("--model", required=True)
@click.option("--delta", default="1/4", show_default=True)
@click.option("--event", "predicate", default="x=1", show_default=True)
@click.pass_context
@_domain_errors
def ladder(ctx, model, delta, predicate):
    """The nested maximally evident events with their evidence levels."""
    spec = _load_model(model, delta)
    structure = epistemic.from_world_model(spec)
    target = _event_from(spec, structure.space, predicate)
    rungs = epistemic.evident_ladder(structure, target).rungs
    if ctx.obj["format"] == "json":
        payload = [
            {
                "level": format_rational(rung.level),
                "members": [list(structure.space.states[i]) for i in sorted(rung.event)],
            }
            for rung in rungs
        ]
        click.echo(json.dumps({"rungs": payload}, indent=2))
        return
    _check_format(ctx.obj["format"], ("table", "json"))
    for rung in rungs:
        members = sorted(structure.space.states[i] for i in rung.event)
        rendered = ",".join(_state_text(state) for state in members)
        click.echo(f"level={format_rational(rung.level)}  members=[{rendered}]")


@cli.command()
@click.option("--strategy", type=click.Choice(_STRATEGY_CHOICES), required=True)
@click.option("--k", "level", type=click.IntRange(min=0), default=0, show_default=True, help="Recursion depth for itermax/itermatch.")
@click.option("--payoffs", default=None, help="a,b,c,d as rationals or decimals; required for rational, itermax, cognitive.")
@click.option("--level0", type=click.Choice([r.value for r in strategies.Level0Rule]), default="primary", show_default=True)
@click.option("--model", required=True)
@click.option("--delta", default="1/4", show_default=True)
@click.option("--player", type=click.IntRange(0, 1), required=True)
@click.option("--state", required=True)
@click.pass_context
@_domain_errors
def act(ctx, strategy, level, payoffs, level0, model, delta, player, state):
    """Evaluate one strategy at a state: an action, or an exact probability of A."""
    if strategy in _PAYOFF_STRATEGIES and payoffs is None:
        raise click.UsageError(f"--payoffs is required for strategy {strategy}")
    spec = _load_model(model, delta)
    structure = epistemic.from_world_model(spec)
    target = worldmodel.x_event(spec, structure.space)
    index = structure.space.index_of(_parse_state(state))
    params = strategies.PayoffParams.parse(payoffs) if payoffs is not None else None
    rule = strategies.Level0Rule(level0)
    result: strategies.Action | Fraction
    if strategy == "rational":
        result = strategies.rational_p_belief_action(structure, target, params, player, index)
    elif strategy == "matched":
        result = strategies.matched_p_belief_prob(structure, target, player, index)
    elif strategy == "itermax":
        result = strategies.iterated_maximization(structure, target, params, level, player, index, rule)
    elif strategy == "itermatch":
        result = strategies.iterated_matching(structure, target, level, player, index, rule)
    elif strategy == "private":
        result = strategies.private_heuristic(structure, target, player, index)
    elif strategy == "pair":
        result = strategies.pair_heuristic(structure, target, player, index)
    else:
        result = strategies.cognitive_strategy(structure, target, params, player, index)
    if isinstance(result, strategies.Action):
        if ctx.obj["format"] == "json":
            click.echo(json.dumps({"action": result.value}))
        else:
            _check_format(ctx.obj["format"], ("table", "json"))
            click.echo(result.value)
    else:
        if ctx.obj["format"] == "json":
            click.echo(json.dumps({"prob_a": format_rational(result)}))
        else:
            _check_format(ctx.obj["format"], ("table", "json"))
            click.echo(_rational_with_decimal(result))


@cli.command()
@click.option("--model", required=True)
@click.option("--delta", default="1/4", show_default=True)
@click.option("--payoffs", required=True)
@click.pass_context
@_domain_errors
def verify(ctx, model, delta, payoffs):
    """Check the threshold strategy profile for profitable deviations."""
    spec = _load_model(model, delta)
    instance = game.GameInstance.from_world_model(spec, strategies.PayoffParams.parse(payoffs))
    report = game.verify_equilibrium(instance)
    if not report.applicable:
        status = "N-A"
    elif report.violations:
        status = "FAIL"
    else:
        status = "PASS"
    if ctx.obj["format"] == "json":
        click.echo(
            json.dumps(
                {
                    "status": status,
                    "reason": report.reason,
                    "violations": [
                        {
                            "player": v.player,
                            "state": list(v.state),
                            "chosen": v.chosen.value,
                            "gap": format_rational(v.gap),
                        }
                        for v in report.violations
                    ],
                },
                indent=2,
            )
        )
    else:
        _check_format(ctx.obj["format"], ("table", "json"))
        if status == "N-A":
            click.echo(f"N-A: {report.reason}")
        else:
            click.echo(status)
            for v in report.violations:
                click.echo(
                    f"player={v.player} state={_state_text(v.state)} "
                    f"chosen={v.chosen.value} gap={format_rational(v.gap)}"
                )
    if status == "FAIL":
        ctx.exit(1)


@cli.command()
@click.option("--human", "human_path", required=True, help="CSV with columns condition,n,prob_a.")
@click.option("--delta", default="1/4", show_default=True)
@click.option("--payoffs", default="1.1,0,1,0.4", show_default=True)
@click.option("--out", default=None, help="Write the output to a file instead of stdout.")
@click.pass_context
@_domain_errors
def compare(ctx, human_path, delta, payoffs, out):
    """Per-model predictions, fitted recursion depths, and mean squared error."""
    human = experiments.HumanData.from_csv(human_path)
    conditions = experiments.knowledge_conditions(parse_rational(delta))
    params = strategies.PayoffParams.parse(payoffs)
    fits = experiments.compare_models(conditions, params, human)
    fmt = ctx.obj["format"]
    if fmt == "json":
        payload = {
            "delta": format_rational(parse_rational(delta)),
            "payoffs": {k: format_rational(getattr(params, k)) for k in ("a", "b", "c", "d")},
            "models": [
                {
                    "model": fit.kind.value,
                    "level": fit.level,
                    "predictions": {
                        name: format_rational(fit.table.probs[name])
                        for name in experiments.CONDITION_NAMES
                    },
                    "mse": format_rational(fit.error),
                }
                for fit in fits
            ],
        }
        _emit(json.dumps(payload, indent=2), out)
        return
    if fmt == "csv":
        lines = ["model,level,private,secondary,tertiary,common,mse"]
        for fit in fits:
            level = "" if fit.level is None else str(fit.level)
            cells = [format_rational(fit.table.probs[name]) for name in experiments.CONDITION_NAMES]
            lines.append(",".join([fit.kind.value, level, *cells, format_rational(fit.error)]))
        _emit("\n".join(lines), out)
        return
    headers = ["model", "k", "private", "secondary", "tertiary", "common", "mse"]
    rows = []
    for fit in fits:
        rows.append(
            [
                fit.kind.value,
                "-" if fit.level is None else str(fit.level),
                *(_table_cell(fit.table.probs[name]) for name in experiments.CONDITION_NAMES),
                _table_cell(fit.error),
            ]
        )
    _emit(_render_table(headers, rows), out)


def _parse_grid(text: str) -> tuple[Fraction, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise click.UsageError(f"--grid must be start:step:end, got {text!r}")
    start, step, end = (parse_rational(part) for part in parts)
    if step <= 0:
        raise click.UsageError("grid step must be positive")
    grid = []
    value = start
    while value <= end:
        grid.append(value)
        value += step
    return tuple(grid)


@cli.command()
@click.option("--human", "human_path", required=True)
@click.option("--delta", default="1/4", show_default=True)
@click.option("--grid", "grid_text", default="1/20:1/20:19/20", show_default=True, help="Risk levels start:step:end.")
@click.option("--out", default=None)
@click.pass_context
@_domain_errors
def sweep(ctx, human_path, delta, grid_text, out):
    """Agent marginal value per strategy across risk levels, as CSV."""
    human = experiments.HumanData.from_csv(human_path)
    conditions = experiments.knowledge_conditions(parse_rational(delta))
    result = experiments.human_agent_sweep(_parse_grid(grid_text), conditions, human)
    if ctx.obj["format"] == "json":
        payload = {
            "grid": [format_rational(p) for p in result.grid],
            "values": {
                strategy.value: [format_rational(v) for v in values]
                for strategy, values in result.values.items()
            },
        }
        _emit(json.dumps(payload, indent=2), out)
        return
    lines = ["p_star,strategy,marginal_value"]
    for position, p_star in enumerate(result.grid):
        for strategy in experiments.SWEEP_STRATEGIES:
            value = result.values[strategy][position]
            lines.append(f"{format_rational(p_star)},{strategy.value},{format_rational(value)}")
    _emit("\n".join(lines), out)


@cli.command()
@click.option("--seeds", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--states", type=click.IntRange(1, oracle.EXHAUSTIVE_STATE_LIMIT), default=8, show_default=True)
@click.pass_context
@_domain_errors
def fuzz(ctx, seeds, states):
    """Check the engine against the brute-force oracle on random structures.

    Honors EPICOORD_THREADS for parallel seed checking; output order is
    deterministic either way.  Prints the first counterexample and exits 1
    on any disagreement.
    """

    def check(seed: int):
        structure, target = oracle.random_structure(
            oracle.RandomStructureConfig(seed=seed, num_states=states)
        )
        for player in (0, 1):
            for state in range(states):
                expected = oracle.brute_force_common_p_belief(structure, target, player, state)
                actual = epistemic.common_p_belief(structure, target, player, state)
                if actual != expected:
                    dump = oracle.structure_to_json(structure, target)
                    dump.update(
                        {
                            "seed": seed,
                            "player": player,
                            "state": state,
                            "expected": format_rational(expected),
                            "actual": format_rational(actual),
                        }
                    )
                    return dump
        return None

    workers = max(1, int(os.environ.get("EPICOORD_THREADS", "1") or "1"))
    seed_range = range(seeds)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(check, seed_range))
    else:
        results = [check(seed) for seed in seed_range]
    for dump in results:
        if dump is not None:
            click.echo(json.dumps(dump, indent=2))
            ctx.exit(1)
    click.echo(f"fuzz: {seeds} seeds x {states} states: engine matches the oracle exactly")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
