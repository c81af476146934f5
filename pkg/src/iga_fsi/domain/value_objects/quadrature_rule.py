from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import QuadratureOrderError

if TYPE_CHECKING:
    from numpy.typing import NDArray


@dataclass(frozen=True, slots=True, eq=False)
class QuadratureRule:
    """Quadrature nodes and weights on the unit interval [0, 1].

    Weights are positive and sum to 1 (the interval measure).
    """

    points: NDArray[np.float64]
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        if points.ndim != 1 or points.shape != weights.shape or points.size == 0:
            raise QuadratureOrderError("Quadrature points and weights must be equal-length vectors")
        if np.any(weights <= 0.0):
            raise QuadratureOrderError("Quadrature weights must be positive")
        if np.any(points < 0.0) or np.any(points > 1.0):
            raise QuadratureOrderError("Quadrature points must lie in [0, 1]")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.points.size)

    def mapped(self, start: float, end: float) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Nodes and weights on [start, end] (weights scaled by the interval length)."""
        length = end - start
        return start + length * self.points, abs(length) * self.weights
