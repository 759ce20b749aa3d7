"""Finite-horizon LQR: backward Riccati recursion and feedback law."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimator import NumericalFailure, _check_psd, _symmetrize
from .model import CostWeights, PlantModel


@dataclass(frozen=True)
class GainSchedule:
    """Feedback gains L_1..L_K and cost-to-go matrices M_0..M_K.

    gain(k) pairs L_k with M_k (same step, not M_{k+1}); conventions differ
    across textbooks, this one follows the recursion as used here:
    L_k = (E + B' M_k B)^{-1} B' M_k A.
    """

    L: tuple  # L[k-1] is L_k, k = 1..K
    M: tuple  # M[k] is M_k, k = 0..K

    @property
    def horizon(self) -> int:
        return len(self.L)

    def gain(self, k: int) -> np.ndarray:
        if not 1 <= k <= len(self.L):
            raise IndexError(f"time index {k} outside horizon 1..{len(self.L)}")
        return self.L[k - 1]


def riccati_backward(plant: PlantModel, costs: CostWeights, horizon: int) -> GainSchedule:
    """Backward recursion M_{k-1} = D + A'(M_k - M_k B (E + B' M_k B)^{-1} B' M_k) A, M_K = D."""
    A, B = plant.A, plant.B
    D, E = costs.D, costs.E
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")

    M = [None] * (horizon + 1)
    L = [None] * horizon
    M[horizon] = D.copy()
    for k in range(horizon, 0, -1):
        Mk = M[k]
        BtM = B.T @ Mk
        S = E + BtM @ B
        try:
            L[k - 1] = np.linalg.solve(S, BtM @ A)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"E + B'MB singular at step {k}") from exc
        M[k - 1] = _symmetrize(D + A.T @ (Mk - BtM.T @ np.linalg.solve(S, BtM)) @ A)
        _check_psd(M[k - 1], f"cost-to-go M_{k - 1}")
    return GainSchedule(L=tuple(L), M=tuple(M))


def control_input(g: GainSchedule, k: int, x_hat: np.ndarray) -> np.ndarray:
    """Feedback law u_k = -L_k x_hat_k, applied to the deviation estimate."""
    return -g.gain(k) @ np.asarray(x_hat, dtype=float)
