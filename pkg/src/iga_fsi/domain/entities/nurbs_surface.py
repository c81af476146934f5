from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities.nurbs_curve import NurbsCurve
from iga_fsi.domain.exceptions import InvalidControlNetError
from iga_fsi.domain.value_objects import Side

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.value_objects import KnotVector


@dataclass(frozen=True, slots=True, eq=False)
class NurbsSurface:
    """Planar tensor-product NURBS surface.

    The control net is indexed [i, j] with i running along xi and j along eta;
    its dimensions must equal the basis sizes of both knot vectors.
    """

    knot_vectors: tuple[KnotVector, KnotVector]
    control_net: NDArray[np.float64]
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        net = np.array(self.control_net, dtype=np.float64)
        weights = np.array(self.weights, dtype=np.float64)
        shape = (self.knot_vectors[0].size, self.knot_vectors[1].size)

        if net.shape != (*shape, 2):
            raise InvalidControlNetError(
                f"Control net must have shape {(*shape, 2)}, got {net.shape}"
            )
        if weights.shape != shape:
            raise InvalidControlNetError(f"Weights must have shape {shape}, got {weights.shape}")
        if np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
            raise InvalidControlNetError("Surface weights must be finite and strictly positive")
        if not np.all(np.isfinite(net)):
            raise InvalidControlNetError("Surface control points must be finite")

        net.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "control_net", net)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def polynomial(
        cls, knot_vectors: tuple[KnotVector, KnotVector], control_net: ArrayLike
    ) -> NurbsSurface:
        net = np.asarray(control_net, dtype=np.float64)
        return cls(knot_vectors, net, np.ones(net.shape[:2]))

    @classmethod
    def from_homogeneous(
        cls, knot_vectors: tuple[KnotVector, KnotVector], homogeneous: ArrayLike
    ) -> NurbsSurface:
        hw = np.asarray(homogeneous, dtype=np.float64)
        weights = hw[..., 2]
        return cls(knot_vectors, hw[..., :2] / weights[..., None], weights)

    @property
    def degrees(self) -> tuple[int, int]:
        return self.knot_vectors[0].degree, self.knot_vectors[1].degree

    @property
    def shape(self) -> tuple[int, int]:
        return self.knot_vectors[0].size, self.knot_vectors[1].size

    def homogeneous(self) -> NDArray[np.float64]:
        """Control net in projective form, shape (n1, n2, 3)."""
        return np.concatenate(
            [self.control_net * self.weights[..., None], self.weights[..., None]], axis=-1
        )

    def with_control_net(self, control_net: ArrayLike) -> NurbsSurface:
        net = np.asarray(control_net, dtype=np.float64)
        return NurbsSurface(self.knot_vectors, net, self.weights)

    def side_indices(self, side: Side) -> NDArray[np.intp]:
        """Flat (C-order) control point indices of a side row, in increasing side parameter."""
        n1, n2 = self.shape
        grid = np.arange(n1 * n2).reshape(n1, n2)
        match side:
            case Side.XI0:
                return grid[0, :]
            case Side.XI1:
                return grid[-1, :]
            case Side.ETA0:
                return grid[:, 0]
            case Side.ETA1:
                return grid[:, -1]
        raise ValueError(f"Unknown side {side}")

    def side_curve(self, side: Side) -> NurbsCurve:
        """Boundary curve of a side, parametrised along the side direction."""
        idx = self.side_indices(side)
        points = self.control_net.reshape(-1, 2)[idx]
        weights = self.weights.reshape(-1)[idx]
        return NurbsCurve(self.knot_vectors[side.direction], points, weights)

    def parameter_bounds(self) -> tuple[tuple[float, float], tuple[float, float]]:
        kx, ky = self.knot_vectors
        return (kx.first, kx.last), (ky.first, ky.last)

    def bounding_box_diagonal(self) -> float:
        pts = self.control_net.reshape(-1, 2)
        span = pts.max(axis=0) - pts.min(axis=0)
        return float(np.hypot(span[0], span[1]))
