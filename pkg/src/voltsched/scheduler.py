"""Sensor querying sequences: brute-force optimum, sliding-window heuristic, round-robin.

All three minimize (or, for round-robin, merely report) the summed posterior
covariance trace. They only ever touch the measurement-free covariance
recursion, so schedules are computable offline and fully deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .estimator import covariance_step
from .model import Scenario

ENUMERATION_GUARD = 10**7


class SearchSpaceTooLarge(ValueError):
    """Enumeration would exceed the node guard."""

    def __init__(self, size: int, guard: int = ENUMERATION_GUARD):
        self.size = size
        self.guard = guard
        super().__init__(f"search space of {size} sequences exceeds guard of {guard}")


@dataclass(frozen=True)
class Schedule:
    sequence: tuple  # 1-based sensor indices, length K
    objective: float  # sum of trace(P_k) over k = 1..K
    method: str  # brute_force | sliding_window | round_robin
    per_step_trace: tuple = ()


def trace_series(seq, scenario: Scenario) -> list:
    """Posterior trace(P_k) for each step of seq, iterating from P0."""
    if len(seq) < 1:
        raise ValueError("sequence must be non-empty")
    N = scenario.num_sensors
    for i in seq:
        if not 1 <= i <= N:
            raise ValueError(f"invalid sensor index {i}, have sensors 1..{N}")
    P = scenario.P0
    traces = []
    for i in seq:
        P = covariance_step(P, scenario.plant, scenario.sensors.get(i))
        traces.append(float(np.trace(P)))
    return traces


def schedule_objective(seq, scenario: Scenario) -> float:
    """Sum of posterior covariance traces along seq (the scheduling objective)."""
    return sum(trace_series(seq, scenario))


def _expand_frontier(frontier: dict, scenario: Scenario) -> dict:
    """Grow every path in the frontier by one level (all sensors)."""
    out = {}
    for path, (P, traces) in frontier.items():
        for i in range(1, scenario.num_sensors + 1):
            P2 = covariance_step(P, scenario.plant, scenario.sensors.get(i))
            out[path + (i,)] = (P2, traces + (float(np.trace(P2)),))
    return out


def _build_frontier(P0: np.ndarray, depth: int, scenario: Scenario) -> dict:
    frontier = {(): (P0, ())}
    for _ in range(depth):
        frontier = _expand_frontier(frontier, scenario)
    return frontier


def _best_path(frontier: dict):
    # sum() left-to-right matches an incremental accumulation bit-for-bit, so
    # reuse and no-reuse variants rank paths identically; ties break to the
    # lexicographically smallest path.
    return min(frontier.items(), key=lambda kv: (sum(kv[1][1]), kv[0]))


def brute_force_schedule(scenario: Scenario) -> Schedule:
    """Exhaustive search over all N^K sequences; the optimal oracle."""
    N, K = scenario.num_sensors, scenario.horizon
    size = N**K
    if size > ENUMERATION_GUARD:
        raise SearchSpaceTooLarge(size)
    frontier = _build_frontier(scenario.P0, K, scenario)
    path, (_, traces) = _best_path(frontier)
    return Schedule(
        sequence=path, objective=sum(traces), method="brute_force", per_step_trace=traces
    )


def sliding_window_schedule(scenario: Scenario, d: int = None, reuse: bool = True) -> Schedule:
    """Receding-horizon search: enumerate d-step continuations, commit the first sensor.

    With reuse=True the surviving subtree's covariances carry over to the next
    window and only one new level is expanded; reuse=False re-enumerates every
    window from scratch (kept for the equivalence test). Both produce identical
    sequences.
    """
    d = scenario.window if d is None else d
    N, K = scenario.num_sensors, scenario.horizon
    if not 1 <= d <= K:
        raise ValueError(f"window must be in 1..{K}, got {d}")
    if N**d > ENUMERATION_GUARD:
        raise SearchSpaceTooLarge(N**d)

    committed = []
    committed_traces = []
    P = scenario.P0
    frontier = _build_frontier(P, min(d, K), scenario)
    for t in range(K):
        if not reuse and t > 0:
            frontier = _build_frontier(P, min(d, K - t), scenario)
        path, _ = _best_path(frontier)
        c = path[0]
        committed.append(c)
        # The committed belief always advances by an exact covariance step.
        P = covariance_step(P, scenario.plant, scenario.sensors.get(c))
        committed_traces.append(float(np.trace(P)))
        if t == K - 1:
            break
        if reuse:
            frontier = {
                p[1:]: (Pl, traces[1:])
                for p, (Pl, traces) in frontier.items()
                if p[0] == c and len(p) >= 2
            }
            if not frontier:  # d = 1 leaves no subtree to carry over
                frontier = {(): (P, ())}
            if K - (t + 1) >= d:
                frontier = _expand_frontier(frontier, scenario)
    return Schedule(
        sequence=tuple(committed),
        objective=sum(committed_traces),
        method="sliding_window",
        per_step_trace=tuple(committed_traces),
    )


def round_robin_schedule(scenario: Scenario) -> Schedule:
    """Fixed cyclic polling starting at scenario.round_robin_start."""
    N, K = scenario.num_sensors, scenario.horizon
    start = scenario.round_robin_start
    if not 1 <= start <= N:
        raise ValueError(f"round_robin_start must be in 1..{N}, got {start}")
    seq = tuple((start - 1 + j) % N + 1 for j in range(K))
    traces = tuple(trace_series(seq, scenario))
    return Schedule(
        sequence=seq, objective=sum(traces), method="round_robin", per_step_trace=traces
    )


def write_schedule(schedule: Schedule, path) -> Path:
    """Write the index list as one whitespace-separated line, plus a JSON sidecar."""
    path = Path(path)
    path.write_text(" ".join(str(i) for i in schedule.sequence) + "\n")
    sidecar = path.with_suffix(path.suffix + ".json")
    sidecar.write_text(
        json.dumps(
            {
                "method": schedule.method,
                "sequence": list(schedule.sequence),
                "per_step_trace": list(schedule.per_step_trace),
                "objective": schedule.objective,
            },
            indent=2,
        )
        + "\n"
    )
    return sidecar


def read_sequence(path) -> tuple:
    return tuple(int(tok) for tok in Path(path).read_text().split())
