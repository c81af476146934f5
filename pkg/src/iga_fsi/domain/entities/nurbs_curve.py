from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import InvalidControlNetError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import KnotVector


@dataclass(frozen=True, slots=True, eq=False)
class NurbsCurve:
    """Planar NURBS curve.

    Invariants:
      - one control point and one strictly positive weight per basis function
      - with the open knot vector the curve interpolates its first and last control points
    """

    knot_vector: KnotVector
    control_points: NDArray[np.float64]
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        points = np.array(self.control_points, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        n = self.knot_vector.size

        if points.shape != (n, 2):
            raise InvalidControlNetError(
                f"Curve needs {n} control points of dimension 2, got shape {points.shape}"
            )
        if weights.shape != (n,):
            raise InvalidControlNetError(f"Curve needs {n} weights, got shape {weights.shape}")
        if np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
            raise InvalidControlNetError("Curve weights must be finite and strictly positive")
        if not np.all(np.isfinite(points)):
            raise InvalidControlNetError("Curve control points must be finite")

        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "control_points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def polynomial(cls, knot_vector: KnotVector, control_points: ArrayLike) -> NurbsCurve:
        """B-spline curve (all weights 1)."""
        points = np.asarray(control_points, dtype=np.float64)
        return cls(knot_vector, points, np.ones(points.shape[0]))

    @classmethod
    def from_homogeneous(cls, knot_vector: KnotVector, homogeneous: ArrayLike) -> NurbsCurve:
        hw = np.asarray(homogeneous, dtype=np.float64)
        weights = hw[:, 2]
        return cls(knot_vector, hw[:, :2] / weights[:, None], weights)

    @property
    def degree(self) -> int:
        return self.knot_vector.degree

    @property
    def size(self) -> int:
        return self.knot_vector.size

    def homogeneous(self) -> NDArray[np.float64]:
        """Control points in projective form (w x, w y, w), shape (n, 3)."""
        return np.column_stack([self.control_points * self.weights[:, None], self.weights])

    def with_control_points(self, control_points: ArrayLike) -> NurbsCurve:
        points = np.asarray(control_points, dtype=np.float64)
        return NurbsCurve(self.knot_vector, points, self.weights)

    def transformed(self, matrix: ArrayLike, offset: ArrayLike = (0.0, 0.0)) -> NurbsCurve:
        """Affine image x -> A x + b (applied to control points only)."""
        a = np.asarray(matrix, dtype=np.float64)
        b = np.asarray(offset, dtype=np.float64)
        return self.with_control_points(self.control_points @ a.T + b)

    def bounding_box_diagonal(self) -> float:
        span = self.control_points.max(axis=0) - self.control_points.min(axis=0)
        return float(np.hypot(span[0], span[1]))
