"""Sensor-selection toolkit for voltage regulation: Kalman estimation,
finite-horizon LQR, and covariance-trace sensor scheduling."""

from importlib import resources

from .controller import GainSchedule, control_input, riccati_backward
from .estimator import BeliefState, Prediction, covariance_step, kalman_gain, predict, update
from .model import (
    CostWeights,
    PlantModel,
    Scenario,
    Sensor,
    SensorSuite,
    Setpoint,
    from_deviation,
    load_scenario,
    save_scenario,
    to_deviation,
    validate_scenario,
)
from .scheduler import (
    Schedule,
    brute_force_schedule,
    round_robin_schedule,
    schedule_objective,
    sliding_window_schedule,
)
from .simulator import (
    EpisodeRecord,
    MonteCarloSummary,
    estimation_error_series,
    run_episode,
    run_monte_carlo,
)

__version__ = "0.1.0"


def bundled_scenario_path(name: str = "three_bus"):
    """Path to a scenario file shipped with the package."""
    return resources.files(__name__).joinpath("data", f"{name}.json")


def bundled_scenario(name: str = "three_bus") -> Scenario:
    return load_scenario(bundled_scenario_path(name))
