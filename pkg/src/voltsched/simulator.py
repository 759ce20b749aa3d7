"""Closed-loop Monte Carlo: true plant + per-slot sensor + Kalman filter + LQR."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .controller import GainSchedule, control_input
from .estimator import BeliefState, NumericalFailure, predict, update
from .model import Scenario
from .scheduler import Schedule


def psd_factor(M: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition; F F' = M.

    Small negative eigenvalues (>= -1e-9) are clipped to zero; anything worse
    is a validation failure, never silently patched.
    """
    M = np.asarray(M, dtype=float)
    w, V = np.linalg.eigh((M + M.T) / 2.0)
    if w.min() < -1e-9:
        raise NumericalFailure(f"covariance not PSD, cannot factor (min eigenvalue {w.min():.3e})")
    return V * np.sqrt(np.clip(w, 0.0, None))


@dataclass(frozen=True)
class EpisodeRecord:
    seed: int
    k: np.ndarray  # (K,) slot indices 1..K
    x: np.ndarray  # (K+1, n) true deviations, row 0 is k=0
    x_hat: np.ndarray  # (K+1, n) estimates
    u: np.ndarray  # (K, m) controls u_1..u_K
    sensor: np.ndarray  # (K,) selected sensor per slot
    stage_cost: np.ndarray  # (K,)
    cum_cost: np.ndarray  # (K,)
    trace_P: np.ndarray  # (K,)
    est_err: np.ndarray  # (K,) ||x_k - x_hat_k||


@dataclass(frozen=True)
class MonteCarloSummary:
    runs: int
    methods: tuple  # method names, aligned with the arrays below
    mean_cum_cost: dict  # method -> (K,) mean cumulative cost per slot
    mean_est_err: dict  # method -> (K,) mean estimation error per slot
    mean_abs_x: dict  # method -> (K, n) mean |deviation| per slot
    total_cost: dict  # method -> mean total cost
    ratios: dict  # (method_a, method_b) -> total_a / total_b


def _episode_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def run_episode(
    scenario: Scenario,
    schedule: Schedule,
    gains: GainSchedule,
    seed: int,
    initial_belief: str = "truth",
) -> EpisodeRecord:
    """Simulate one closed-loop episode; same seed gives a bit-identical record.

    Truth starts at the scenario's initial deviation. initial_belief selects
    the filter's starting estimate:
      "truth": estimate equals the true deviation (filter starts exact)
      "zero":  estimate is zero (the control center has not yet observed the
               fault; everything must be learned through the scheduled sensors)
      "noisy": estimate is truth plus a draw from N(0, P0), so the initial
               error actually has covariance P0 (filter-consistent start)
    """
    K = scenario.horizon
    if len(schedule.sequence) != K or gains.horizon != K:
        raise ValueError(
            f"horizon mismatch: scenario K={K}, schedule length {len(schedule.sequence)}, "
            f"gains horizon {gains.horizon}"
        )
    plant, costs = scenario.plant, scenario.costs
    n, m = plant.n, plant.m
    rng = _episode_rng(seed)
    Fq = psd_factor(plant.Q)
    Fr = [psd_factor(s.R) for s in scenario.sensors.sensors]

    x = np.empty((K + 1, n))
    x_hat = np.empty((K + 1, n))
    u = np.zeros((K, m))
    stage = np.empty(K)
    trace_P = np.empty(K)
    est_err = np.empty(K)

    x[0] = scenario.x0_deviation
    if initial_belief == "truth":
        x_hat[0] = x[0]
    elif initial_belief == "zero":
        x_hat[0] = 0.0
    elif initial_belief == "noisy":
        x_hat[0] = x[0] + psd_factor(scenario.P0) @ rng.standard_normal(n)
    else:
        raise ValueError(f"unknown initial_belief mode {initial_belief!r}")
    belief = BeliefState(x_hat=x_hat[0], P=scenario.P0, k=0)
    u_prev = np.zeros(m)

    for k in range(1, K + 1):
        w = Fq @ rng.standard_normal(n)
        x[k] = plant.A @ x[k - 1] + plant.B @ u_prev + w

        idx = schedule.sequence[k - 1]
        sensor = scenario.sensors.get(idx)
        v = Fr[idx - 1] @ rng.standard_normal(sensor.H.shape[0])
        y = sensor.H @ x[k] + v

        belief = update(predict(belief, u_prev, plant), y, sensor)
        x_hat[k] = belief.x_hat
        u[k - 1] = control_input(gains, k, belief.x_hat)
        u_prev = u[k - 1]

        stage[k - 1] = x[k] @ costs.D @ x[k] + u[k - 1] @ costs.E @ u[k - 1]
        trace_P[k - 1] = np.trace(belief.P)
        est_err[k - 1] = np.linalg.norm(x[k] - x_hat[k])

    return EpisodeRecord(
        seed=seed,
        k=np.arange(1, K + 1),
        x=x,
        x_hat=x_hat,
        u=u,
        sensor=np.asarray(schedule.sequence),
        stage_cost=stage,
        cum_cost=np.cumsum(stage),
        trace_P=trace_P,
        est_err=est_err,
    )


def run_monte_carlo(
    scenario: Scenario,
    schedules,
    runs: int,
    base_seed: int = 0,
    initial_belief: str = "truth",
) -> MonteCarloSummary:
    """Average `runs` episodes per schedule on a shared seed set (common random numbers)."""
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    from .controller import riccati_backward

    gains = riccati_backward(scenario.plant, scenario.costs, scenario.horizon)
    seeds = [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(base_seed).spawn(runs)]

    K, n = scenario.horizon, scenario.n
    mean_cum, mean_err, mean_abs, totals = {}, {}, {}, {}
    for sched in schedules:
        cum = np.zeros(K)
        err = np.zeros(K)
        abs_x = np.zeros((K, n))
        for seed in seeds:
            rec = run_episode(scenario, sched, gains, seed, initial_belief=initial_belief)
            cum += rec.cum_cost
            err += rec.est_err
            abs_x += np.abs(rec.x[1:])
        name = sched.method
        while name in totals:  # disambiguate repeated method tags
            name += "_2"
        mean_cum[name] = cum / runs
        mean_err[name] = err / runs
        mean_abs[name] = abs_x / runs
        totals[name] = float(cum[-1] / runs)

    ratios = {
        (a, b): totals[a] / totals[b] for a in totals for b in totals if a != b or len(totals) == 1
    }
    if len(totals) == 1:
        (only,) = totals
        ratios = {(only, only): 1.0}
    return MonteCarloSummary(
        runs=runs,
        methods=tuple(totals),
        mean_cum_cost=mean_cum,
        mean_est_err=mean_err,
        mean_abs_x=mean_abs,
        total_cost=totals,
        ratios=ratios,
    )


def estimation_error_series(records) -> tuple:
    """Per-slot mean error norm and per-slot empirical error covariance."""
    records = list(records)
    if not records:
        raise ValueError("no episode records given")
    K = len(records[0].k)
    if any(len(r.k) != K for r in records):
        raise ValueError("episode records have unequal lengths")
    errs = np.stack([r.est_err for r in records])  # (runs, K)
    diffs = np.stack([r.x[1:] - r.x_hat[1:] for r in records])  # (runs, K, n)
    mean_norm = errs.mean(axis=0)
    emp_cov = np.einsum("rki,rkj->kij", diffs, diffs) / len(records)
    return mean_norm, emp_cov


def write_episode_csv(rec: EpisodeRecord, path) -> None:
    """episode.csv: k, x1..xn, xhat1..xhatn, u1..um, sensor, stage_cost, cum_cost, traceP, est_err."""
    n = rec.x.shape[1]
    m = rec.u.shape[1]
    header = (
        ["k"]
        + [f"x{i + 1}" for i in range(n)]
        + [f"xhat{i + 1}" for i in range(n)]
        + [f"u{i + 1}" for i in range(m)]
        + ["sensor", "stage_cost", "cum_cost", "traceP", "est_err"]
    )
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for j, k in enumerate(rec.k):
            row = (
                [int(k)]
                + [repr(float(v)) for v in rec.x[k]]
                + [repr(float(v)) for v in rec.x_hat[k]]
                + [repr(float(v)) for v in rec.u[j]]
                + [
                    int(rec.sensor[j]),
                    repr(float(rec.stage_cost[j])),
                    repr(float(rec.cum_cost[j])),
                    repr(float(rec.trace_P[j])),
                    repr(float(rec.est_err[j])),
                ]
            )
            w.writerow(row)


def write_summary_csv(summary: MonteCarloSummary, path) -> None:
    """summary.csv: k, method, mean_cum_cost, mean_est_err, mean_abs_x1..xn."""
    some = next(iter(summary.mean_abs_x.values()))
    n = some.shape[1]
    header = ["k", "method", "mean_cum_cost", "mean_est_err"] + [
        f"mean_abs_x{i + 1}" for i in range(n)
    ]
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for method in summary.methods:
            cum = summary.mean_cum_cost[method]
            err = summary.mean_est_err[method]
            abs_x = summary.mean_abs_x[method]
            for j in range(len(cum)):
                w.writerow(
                    [j + 1, method, repr(float(cum[j])), repr(float(err[j]))]
                    + [repr(float(v)) for v in abs_x[j]]
                )
