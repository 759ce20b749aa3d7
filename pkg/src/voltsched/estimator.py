"""Kalman filter in deviation coordinates with a per-slot switched sensor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PlantModel, Sensor

PSD_EIG_FLOOR = -1e-9


class NumericalFailure(RuntimeError):
    """Raised when a covariance loses positive semidefiniteness or a solve degenerates."""


def _symmetrize(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2.0


_EYE_CACHE = {}


def _eye(n: int) -> np.ndarray:
    if n not in _EYE_CACHE:
        _EYE_CACHE[n] = np.eye(n)
    return _EYE_CACHE[n]


def _check_psd(M: np.ndarray, what: str) -> np.ndarray:
    lo = float(np.linalg.eigvalsh(M).min())
    if lo < PSD_EIG_FLOOR:
        raise NumericalFailure(f"{what} lost positive semidefiniteness (min eigenvalue {lo:.3e})")
    return M


@dataclass(frozen=True)
class BeliefState:
    x_hat: np.ndarray
    P: np.ndarray
    k: int = 0


@dataclass(frozen=True)
class Prediction:
    x_hat_minus: np.ndarray
    P_minus: np.ndarray
    k: int = 0


def predict(b: BeliefState, u: np.ndarray, plant: PlantModel) -> Prediction:
    """Process update: x^- = A x + B u, P^- = A P A' + Q."""
    A, B, Q = plant.A, plant.B, plant.Q
    u = np.asarray(u, dtype=float)
    if b.x_hat.shape != (plant.n,) or u.shape != (plant.m,):
        raise ValueError(
            f"dimension mismatch: x_hat {b.x_hat.shape}, u {u.shape}, plant n={plant.n} m={plant.m}"
        )
    x_minus = A @ b.x_hat + B @ u
    P_minus = _symmetrize(A @ b.P @ A.T + Q)
    return Prediction(x_hat_minus=x_minus, P_minus=P_minus, k=b.k + 1)


def kalman_gain(P_minus: np.ndarray, sensor: Sensor) -> np.ndarray:
    """K = P^- H' (H P^- H' + R)^{-1}, via a linear solve on the innovation covariance."""
    H, R = sensor.H, sensor.R
    S = H @ P_minus @ H.T + R
    try:
        # Solve S K' = H P^- instead of forming S^{-1}.
        K = np.linalg.solve(S, H @ P_minus).T
    except np.linalg.LinAlgError:
        raise NumericalFailure(
            f"innovation covariance singular (condition estimate {np.linalg.cond(S):.3e})"
        ) from None
    if not np.all(np.isfinite(K)):
        raise NumericalFailure(
            f"innovation covariance near-singular (condition estimate {np.linalg.cond(S):.3e})"
        )
    return K


def update(pred: Prediction, y: np.ndarray, sensor: Sensor) -> BeliefState:
    """Measurement update: x = x^- + K(y - H x^-), P = (I - K H) P^-."""
    H = sensor.H
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.shape != (H.shape[0],):
        raise ValueError(f"dimension mismatch: y has shape {y.shape}, sensor emits {H.shape[0]}")
    K = kalman_gain(pred.P_minus, sensor)
    x_hat = pred.x_hat_minus + K @ (y - H @ pred.x_hat_minus)
    n = pred.P_minus.shape[0]
    P = _symmetrize((_eye(n) - K @ H) @ pred.P_minus)
    _check_psd(P, "posterior covariance")
    return BeliefState(x_hat=x_hat, P=P, k=pred.k)


def covariance_step(P: np.ndarray, plant: PlantModel, sensor: Sensor) -> np.ndarray:
    """One predict-then-update covariance cycle with the given sensor.

    Measurement-free: this is the recursion schedulers iterate offline.
    """
    A, Q = plant.A, plant.Q
    P_minus = _symmetrize(A @ P @ A.T + Q)
    K = kalman_gain(P_minus, sensor)
    n = P.shape[0]
    P_post = _symmetrize((_eye(n) - K @ sensor.H) @ P_minus)
    return _check_psd(P_post, "posterior covariance")
