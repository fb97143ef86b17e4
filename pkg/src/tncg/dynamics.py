"""Improving-response dynamics: schedulers, move rules, cycle detection.

A run activates one agent at a time; the agent moves iff its rule (greedy or
exact best response) strictly improves its cost vector.  States are recorded
after every applied move, keyed by the exact canonical profile, so revisits
are detected exactly rather than probabilistically.  The game has no finite
improvement property, so cycles are a real outcome, not an error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import TemporalGraph
from .game import CostVector, StrategyProfile, agent_cost
from .responses import DEFAULT_BUDGET, exact_best_response, greedy_best_response

OUTCOME_GE = "converged-GE"
OUTCOME_NE = "converged-NE"
OUTCOME_CYCLE = "cycle-detected"
OUTCOME_CAP = "step-cap-reached"


@dataclass(frozen=True)
class Move:
    step: int                       # 1-based move index
    agent: int
    old: tuple[int, ...]
    new: tuple[int, ...]
    cost_before: CostVector
    cost_after: CostVector


@dataclass
class DynamicsTrace:
    n: int
    rule: str
    schedule: str                   # "round-robin", "random", or "explicit"
    seed: int
    max_steps: int
    initial: tuple[tuple[int, ...], ...]
    moves: list[Move] = field(default_factory=list)
    outcome: str = OUTCOME_CAP
    period: Optional[int] = None
    entry: Optional[int] = None     # move count at which the revisited state first occurred
    final: tuple[tuple[int, ...], ...] = ()
    activations: int = 0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "rule": self.rule,
            "schedule": self.schedule,
            "seed": self.seed,
            "max_steps": self.max_steps,
            "initial": [list(s) for s in self.initial],
            "moves": [
                {
                    "step": m.step,
                    "agent": m.agent,
                    "old": list(m.old),
                    "new": list(m.new),
                    "cost_before": m.cost_before.as_dict(),
                    "cost_after": m.cost_after.as_dict(),
                }
                for m in self.moves
            ],
            "outcome": self.outcome,
            "period": self.period,
            "entry": self.entry,
            "final": [list(s) for s in self.final],
            "activations": self.activations,
        }


def trace_from_dict(data: dict) -> DynamicsTrace:
    trace = DynamicsTrace(
        n=data["n"],
        rule=data["rule"],
        schedule=data["schedule"],
        seed=data["seed"],
        max_steps=data["max_steps"],
        initial=tuple(tuple(s) for s in data["initial"]),
    )
    trace.moves = [
        Move(
            step=m["step"],
            agent=m["agent"],
            old=tuple(m["old"]),
            new=tuple(m["new"]),
            cost_before=CostVector(**m["cost_before"]),
            cost_after=CostVector(**m["cost_after"]),
        )
        for m in data["moves"]
    ]
    trace.outcome = data["outcome"]
    trace.period = data["period"]
    trace.entry = data["entry"]
    trace.final = tuple(tuple(s) for s in data["final"])
    trace.activations = data["activations"]
    return trace


def _try_move(host, profile, v, rule, budget_cap):
    """(new_strategy, cost_before, cost_after) when v improves, else None."""
    before = agent_cost(host, profile, v)
    if rule == "greedy":
        strategy, improved = greedy_best_response(host, profile, v)
        if not improved:
            return None
        after = agent_cost(host, profile.with_strategy(v, strategy), v)
        return strategy, before, after
    strategy, cost = exact_best_response(host, profile, v, budget_cap=budget_cap)
    if not (cost < before):
        return None
    return strategy, before, cost


def run_dynamics(
    host: TemporalGraph,
    profile: StrategyProfile,
    schedule: str | Sequence[int] = "round-robin",
    rule: str = "greedy",
    max_steps: Optional[int] = None,
    seed: int = 0,
    budget_cap: int = DEFAULT_BUDGET,
) -> DynamicsTrace:
    """Run improving-response dynamics until convergence, cycle, or cap.

    schedule: "round-robin", "random" (seeded), or an explicit agent
    sequence.  rule: "greedy" or "exact".  Convergence means a full pass with
    no improving agent; after n consecutive quiet random activations a
    deterministic sweep confirms it.  Explicit schedules are replay tools:
    exhausting one ends the run with the step-cap outcome.  max_steps caps
    applied moves (default 10 * n^2).
    """
    n = host.n
    if rule not in ("greedy", "exact"):
        raise ValueError(f"unknown rule {rule!r}")
    if max_steps is None:
        max_steps = 10 * n * n
    explicit: Optional[list[int]] = None
    if isinstance(schedule, str):
        if schedule not in ("round-robin", "random"):
            raise ValueError(f"unknown schedule {schedule!r}")
        schedule_name = schedule
    else:
        explicit = list(schedule)
        for v in explicit:
            if not (0 <= v < n):
                raise ValueError(f"scheduled agent {v} out of range")
        schedule_name = "explicit"

    trace = DynamicsTrace(
        n=n,
        rule=rule,
        schedule=schedule_name,
        seed=seed,
        max_steps=max_steps,
        initial=profile.canonical(),
    )
    converged_outcome = OUTCOME_GE if rule == "greedy" else OUTCOME_NE
    seen: dict[tuple, int] = {profile.canonical(): 0}
    rng = random.Random(seed)
    quiet = 0
    rr_next = 0
    explicit_pos = 0

    def next_agent() -> Optional[int]:
        nonlocal rr_next, explicit_pos
        if explicit is not None:
            if explicit_pos >= len(explicit):
                return None
            v = explicit[explicit_pos]
            explicit_pos += 1
            return v
        if schedule_name == "round-robin":
            v = rr_next
            rr_next = (rr_next + 1) % n
            return v
        return rng.randrange(n)

    def apply(v, attempt) -> None:
        nonlocal profile, quiet
        strategy, before, after = attempt
        old = tuple(sorted(profile.strategies[v]))
        profile = profile.with_strategy(v, strategy)
        trace.moves.append(
            Move(
                step=len(trace.moves) + 1,
                agent=v,
                old=old,
                new=tuple(sorted(strategy)),
                cost_before=before,
                cost_after=after,
            )
        )
        quiet = 0

    while True:
        if explicit is None and quiet >= n:
            if schedule_name == "round-robin":
                trace.outcome = converged_outcome
                break
            # random schedule: confirm quiescence with a deterministic sweep
            attempt = None
            sweep_agent = -1
            for v in range(n):
                trace.activations += 1
                attempt = _try_move(host, profile, v, rule, budget_cap)
                if attempt is not None:
                    sweep_agent = v
                    break
            if attempt is None:
                trace.outcome = converged_outcome
                break
            apply(sweep_agent, attempt)
            key = profile.canonical()
            if key in seen:
                trace.outcome = OUTCOME_CYCLE
                trace.entry = seen[key]
                trace.period = len(trace.moves) - seen[key]
                break
            seen[key] = len(trace.moves)
            if len(trace.moves) >= max_steps:
                trace.outcome = OUTCOME_CAP
                break
            continue
        v = next_agent()
        if v is None:
            trace.outcome = OUTCOME_CAP
            break
        trace.activations += 1
        attempt = _try_move(host, profile, v, rule, budget_cap)
        if attempt is None:
            quiet += 1
            continue
        apply(v, attempt)
        key = profile.canonical()
        if key in seen:
            trace.outcome = OUTCOME_CYCLE
            trace.entry = seen[key]
            trace.period = len(trace.moves) - seen[key]
            break
        seen[key] = len(trace.moves)
        if len(trace.moves) >= max_steps:
            trace.outcome = OUTCOME_CAP
            break

    trace.final = profile.canonical()
    return trace


def final_profile(trace: DynamicsTrace) -> StrategyProfile:
    return StrategyProfile(trace.n, [set(s) for s in trace.final])


def replay(trace: DynamicsTrace) -> StrategyProfile:
    """Re-apply the recorded moves from the initial profile.

    Verifies that each move's old strategy matches the evolving state and
    that the result equals the recorded final profile.
    """
    profile = StrategyProfile(trace.n, [set(s) for s in trace.initial])
    for move in trace.moves:
        current = tuple(sorted(profile.strategies[move.agent]))
        if current != move.old:
            raise ValueError(
                f"trace mismatch at step {move.step}: agent {move.agent} "
                f"has {current}, move expects {move.old}"
            )
        profile = profile.with_strategy(move.agent, move.new)
    if profile.canonical() != trace.final:
        raise ValueError("replayed final profile differs from the recorded one")
    return profile
