"""Problem data: plant dynamics, sensor suite, cost weights, scenario I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

SYM_TOL = 1e-9
PSD_EIG_FLOOR = -1e-9

DEFAULT_HORIZON = 40
DEFAULT_ROUND_ROBIN_START = 2


def _ro(a) -> np.ndarray:
    """Copy to a float array and lock it read-only."""
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


def _is_symmetric(M: np.ndarray, tol: float = SYM_TOL) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.all(np.abs(M - M.T) <= tol)


def _min_eig(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh((M + M.T) / 2.0).min())


@dataclass(frozen=True)
class PlantModel:
    """Discrete linear deviation dynamics: dx_k = A dx_{k-1} + B u_{k-1} + w, w ~ N(0, Q)."""

    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", _ro(self.A))
        object.__setattr__(self, "B", _ro(self.B))
        object.__setattr__(self, "Q", _ro(self.Q))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1] if self.B.ndim == 2 else 0


@dataclass(frozen=True)
class Sensor:
    """One sensor: observation map H (p x n) and measurement-noise covariance R (p x p)."""

    H: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "H", _ro(np.atleast_2d(self.H)))
        object.__setattr__(self, "R", _ro(np.atleast_2d(self.R)))


@dataclass(frozen=True)
class SensorSuite:
    sensors: tuple

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple(self.sensors))

    def __len__(self) -> int:
        return len(self.sensors)

    def __getitem__(self, i: int) -> Sensor:
        return self.sensors[i]

    def get(self, index: int) -> Sensor:
        """Fetch by 1-based sensor index."""
        if not 1 <= index <= len(self.sensors):
            raise IndexError(f"sensor index {index} out of range 1..{len(self.sensors)}")
        return self.sensors[index - 1]


@dataclass(frozen=True)
class CostWeights:
    """Quadratic stage-cost weights: deviation penalty D and control penalty E."""

    D: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "D", _ro(self.D))
        object.__setattr__(self, "E", _ro(self.E))


@dataclass(frozen=True)
class Setpoint:
    """Desired absolute voltages x_star and per-sensor desired measurements y_star."""

    x_star: np.ndarray
    y_star: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x_star", _ro(self.x_star))
        object.__setattr__(self, "y_star", tuple(_ro(y) for y in self.y_star))


@dataclass(frozen=True)
class Scenario:
    plant: PlantModel
    sensors: SensorSuite
    costs: CostWeights
    x0_deviation: np.ndarray
    P0: np.ndarray
    horizon: int = DEFAULT_HORIZON
    window: int = 5
    round_robin_start: int = DEFAULT_ROUND_ROBIN_START

    def __post_init__(self):
        object.__setattr__(self, "x0_deviation", _ro(self.x0_deviation))
        object.__setattr__(self, "P0", _ro(self.P0))

    @property
    def n(self) -> int:
        return self.plant.n

    @property
    def num_sensors(self) -> int:
        return len(self.sensors)


def to_deviation(x_abs: np.ndarray, sp: Setpoint) -> np.ndarray:
    """Deviation coordinates: x - x_star."""
    x_abs = np.asarray(x_abs, dtype=float)
    if x_abs.shape != sp.x_star.shape:
        raise ValueError(f"dimension mismatch: x has shape {x_abs.shape}, setpoint {sp.x_star.shape}")
    return x_abs - sp.x_star


def from_deviation(dx: np.ndarray, sp: Setpoint) -> np.ndarray:
    """Absolute coordinates: x_star + dx."""
    dx = np.asarray(dx, dtype=float)
    if dx.shape != sp.x_star.shape:
        raise ValueError(f"dimension mismatch: dx has shape {dx.shape}, setpoint {sp.x_star.shape}")
    return sp.x_star + dx


def validate_scenario(s: Scenario) -> list:
    """Collect every invariant violation as a human-readable string; empty list means valid.

    Total over finite inputs: never raises, just reports.
    """
    v = []
    A, B, Q = s.plant.A, s.plant.B, s.plant.Q
    n = A.shape[0] if A.ndim == 2 else -1

    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        v.append(f"plant.A: must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        v.append("plant.A: contains non-finite entries")
    if B.ndim != 2 or B.shape[0] != n:
        v.append(f"plant.B: must have {n} rows, got shape {B.shape}")
    if not np.all(np.isfinite(B)):
        v.append("plant.B: contains non-finite entries")
    if Q.shape != (n, n):
        v.append(f"plant.Q: must be {n}x{n}, got shape {Q.shape}")
    elif not np.all(np.isfinite(Q)):
        v.append("plant.Q: contains non-finite entries")
    else:
        if not _is_symmetric(Q):
            v.append("plant.Q: not symmetric (tolerance 1e-9)")
        elif _min_eig(Q) < PSD_EIG_FLOOR:
            v.append(f"plant.Q: not positive semidefinite (min eigenvalue {_min_eig(Q):.3e})")

    if len(s.sensors) < 1:
        v.append("sensors: at least one sensor required")
    for i, sensor in enumerate(s.sensors.sensors, start=1):
        H, R = sensor.H, sensor.R
        if H.ndim != 2 or H.shape[1] != n:
            v.append(f"sensors[{i}].H: must have {n} columns, got shape {H.shape}")
        if not np.all(np.isfinite(H)):
            v.append(f"sensors[{i}].H: contains non-finite entries")
        p = H.shape[0] if H.ndim == 2 else -1
        if R.shape != (p, p):
            v.append(f"sensors[{i}].R: must be {p}x{p}, got shape {R.shape}")
        elif not np.all(np.isfinite(R)):
            v.append(f"sensors[{i}].R: contains non-finite entries")
        else:
            if not _is_symmetric(R):
                v.append(f"sensors[{i}].R: not symmetric (tolerance 1e-9)")
            elif _min_eig(R) <= 0:
                v.append(f"sensors[{i}].R: not positive definite (min eigenvalue {_min_eig(R):.3e})")

    for name, M, dim in (("costs.D", s.costs.D, n), ("costs.E", s.costs.E, s.plant.m)):
        if M.shape != (dim, dim):
            v.append(f"{name}: must be {dim}x{dim}, got shape {M.shape}")
        elif not np.all(np.isfinite(M)):
            v.append(f"{name}: contains non-finite entries")
        else:
            if not _is_symmetric(M):
                v.append(f"{name}: not symmetric (tolerance 1e-9)")
            elif _min_eig(M) <= 0:
                v.append(f"{name}: not positive definite (min eigenvalue {_min_eig(M):.3e})")

    if s.x0_deviation.shape != (n,):
        v.append(f"x0_deviation: must be length-{n} vector, got shape {s.x0_deviation.shape}")
    elif not np.all(np.isfinite(s.x0_deviation)):
        v.append("x0_deviation: contains non-finite entries")

    if s.P0.shape != (n, n):
        v.append(f"P0: must be {n}x{n}, got shape {s.P0.shape}")
    elif not np.all(np.isfinite(s.P0)):
        v.append("P0: contains non-finite entries")
    else:
        if not _is_symmetric(s.P0):
            v.append("P0: not symmetric (tolerance 1e-9)")
        elif _min_eig(s.P0) < PSD_EIG_FLOOR:
            v.append(f"P0: not positive semidefinite (min eigenvalue {_min_eig(s.P0):.3e})")

    K = s.horizon
    if not (isinstance(K, (int, np.integer)) and K >= 1):
        v.append(f"horizon: must be a positive integer, got {K!r}")
    if not (isinstance(s.window, (int, np.integer)) and 1 <= s.window):
        v.append(f"window: must be a positive integer, got {s.window!r}")
    elif isinstance(K, (int, np.integer)) and K >= 1 and s.window > K:
        v.append(f"window: must be <= horizon ({K}), got {s.window}")
    if not 1 <= s.round_robin_start <= len(s.sensors):
        v.append(
            f"round_robin_start: must be in 1..{len(s.sensors)}, got {s.round_robin_start}"
        )
    return v


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a Scenario from the JSON document layout (matrices as row arrays)."""
    A = np.array(doc["A"], dtype=float)
    n = A.shape[0] if A.ndim == 2 else 0
    sensors = SensorSuite(tuple(Sensor(H=e["H"], R=e["R"]) for e in doc["sensors"]))
    P0 = doc.get("P0")
    return Scenario(
        plant=PlantModel(A=A, B=np.array(doc["B"], dtype=float), Q=np.array(doc["Q"], dtype=float)),
        sensors=sensors,
        costs=CostWeights(D=np.array(doc["D"], dtype=float), E=np.array(doc["E"], dtype=float)),
        x0_deviation=np.array(doc["x0"], dtype=float),
        P0=np.eye(n) if P0 is None else np.array(P0, dtype=float),
        horizon=int(doc.get("K", DEFAULT_HORIZON)),
        window=int(doc["d"]),
        round_robin_start=int(doc.get("round_robin_start", DEFAULT_ROUND_ROBIN_START)),
    )


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "A": s.plant.A.tolist(),
        "B": s.plant.B.tolist(),
        "Q": s.plant.Q.tolist(),
        "sensors": [{"H": sen.H.tolist(), "R": sen.R.tolist()} for sen in s.sensors.sensors],
        "D": s.costs.D.tolist(),
        "E": s.costs.E.tolist(),
        "x0": s.x0_deviation.tolist(),
        "P0": s.P0.tolist(),
        "K": s.horizon,
        "d": s.window,
        "round_robin_start": s.round_robin_start,
    }


def load_scenario(path) -> Scenario:
    with open(path) as f:
        return scenario_from_dict(json.load(f))


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w") as f:
        json.dump(scenario_to_dict(s), f, indent=2)
        f.write("\n")
