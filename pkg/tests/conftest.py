import numpy as np
import pytest

from voltsched import bundled_scenario
from voltsched.model import CostWeights, PlantModel, Scenario, Sensor, SensorSuite


@pytest.fixture(scope="session")
def three_bus():
    return bundled_scenario()


def random_psd(rng, n, scale=1.0):
    X = rng.standard_normal((n, n))
    return scale * (X @ X.T) / n


def random_small_scenario(rng, n_sensors=None, horizon=None, n=2):
    """Random well-posed scenario small enough for brute-force enumeration."""
    N = n_sensors if n_sensors is not None else int(rng.integers(1, 4))
    K = horizon if horizon is not None else int(rng.integers(2, 7))
    A = np.diag(1.0 + 0.1 * rng.random(n))
    B = rng.standard_normal((n, n)) * 0.5
    Q = random_psd(rng, n, scale=0.1)
    sensors = []
    for _ in range(N):
        H = rng.standard_normal((1, n))
        R = np.atleast_2d(0.05 + rng.random())
        sensors.append(Sensor(H=H, R=R))
    return Scenario(
        plant=PlantModel(A=A, B=B, Q=Q),
        sensors=SensorSuite(tuple(sensors)),
        costs=CostWeights(D=np.eye(n), E=np.eye(n)),
        x0_deviation=rng.standard_normal(n),
        P0=random_psd(rng, n, scale=1.0) + 0.1 * np.eye(n),
        horizon=K,
        window=min(2, K),
        round_robin_start=1,
    )
