from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import InvalidControlNetError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.value_objects import PatchLineage

# Local edge numbering of a patch on [0, 1]^2. Edges 0 and 2 run along xi,
# edges 1 and 3 along eta; every edge is parametrised in the increasing direction.
EDGE_ETA0 = 0
EDGE_XI1 = 1
EDGE_ETA1 = 2
EDGE_XI0 = 3
EDGES = (EDGE_ETA0, EDGE_XI1, EDGE_ETA1, EDGE_XI0)


def edge_parameters(edge: int, s: NDArray[np.float64]) -> NDArray[np.float64]:
    """Map edge coordinates s in [0, 1] to patch parameters (xi, eta), shape (len(s), 2)."""
    s = np.asarray(s, dtype=np.float64)
    zeros, ones = np.zeros_like(s), np.ones_like(s)
    match edge:
        case 0:
            return np.column_stack([s, zeros])
        case 1:
            return np.column_stack([ones, s])
        case 2:
            return np.column_stack([s, ones])
        case 3:
            return np.column_stack([zeros, s])
    raise ValueError(f"Unknown edge {edge}")


def edge_slice(edge: int) -> tuple[slice | int, slice | int]:
    """Index into a (p+1, p+1) control grid selecting the edge row in increasing order."""
    match edge:
        case 0:
            return slice(None), 0
        case 1:
            return -1, slice(None)
        case 2:
            return slice(None), -1
        case 3:
            return 0, slice(None)
    raise ValueError(f"Unknown edge {edge}")


@dataclass(frozen=True, slots=True, eq=False)
class BezierSegment:
    """Rational Bézier curve segment on [0, 1] with its lineage."""

    degree: int
    control_points: NDArray[np.float64]
    weights: NDArray[np.float64]
    lineage: PatchLineage

    def __post_init__(self) -> None:
        points = np.array(self.control_points, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        n = self.degree + 1
        if points.shape != (n, 2) or weights.shape != (n,):
            raise InvalidControlNetError(f"Degree {self.degree} segment needs {n} control points")
        if np.any(weights <= 0.0):
            raise InvalidControlNetError("Segment weights must be strictly positive")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "control_points", points)
        object.__setattr__(self, "weights", weights)

    def homogeneous(self) -> NDArray[np.float64]:
        return np.column_stack([self.control_points * self.weights[:, None], self.weights])


@dataclass(frozen=True, slots=True, eq=False)
class BezierPatch:
    """Rational Bézier patch: the DG element of the flow solver.

    Invariants:
      - parametric domain is [0, 1]^2, (p+1) x (p+1) control points indexed [i, j]
      - weights strictly positive
    Admissibility (positive Jacobian) is checked by the geometry services that
    build or move patches.
    """

    degree: int
    control_points: NDArray[np.float64]
    weights: NDArray[np.float64]
    lineage: PatchLineage

    def __post_init__(self) -> None:
        points = np.array(self.control_points, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        n = self.degree + 1
        if points.shape != (n, n, 2) or weights.shape != (n, n):
            raise InvalidControlNetError(
                f"Degree {self.degree} patch needs a {n}x{n} control grid, got {points.shape}"
            )
        if np.any(weights <= 0.0):
            raise InvalidControlNetError("Patch weights must be strictly positive")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "control_points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_homogeneous(
        cls, degree: int, homogeneous: NDArray[np.float64], lineage: PatchLineage
    ) -> BezierPatch:
        weights = homogeneous[..., 2]
        return cls(degree, homogeneous[..., :2] / weights[..., None], weights, lineage)

    def homogeneous(self) -> NDArray[np.float64]:
        return np.concatenate(
            [self.control_points * self.weights[..., None], self.weights[..., None]], axis=-1
        )

    def edge_control_points(self, edge: int) -> NDArray[np.float64]:
        return self.control_points[edge_slice(edge)]

    def edge_weights(self, edge: int) -> NDArray[np.float64]:
        return self.weights[edge_slice(edge)]

    def centroid(self) -> NDArray[np.float64]:
        """Mean of the control points (cheap location proxy for region rules)."""
        return self.control_points.reshape(-1, 2).mean(axis=0)
