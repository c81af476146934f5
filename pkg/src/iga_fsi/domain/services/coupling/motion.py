"""Fluid mesh motion driven by interface displacements.

Control points on boundary sides of the underlying NURBS surfaces follow their
interface (or stay fixed); every other control point copies the displacement
of its closest boundary control point in the rest configuration, damped
linearly to zero at the damping radius. Patch control points are then
regenerated through the mesh's extraction-and-split operator, so moved
patches stay watertight.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.spatial import cKDTree

from iga_fsi.domain.entities import MeshMotion
from iga_fsi.domain.exceptions import CouplingError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import MultiPatchMesh
    from iga_fsi.domain.services.coupling.displacement import InterfaceTransfer

logger = logging.getLogger(__name__)

DEFAULT_RADIUS_FRACTION = 0.2


@dataclass(frozen=True, slots=True, eq=False)
class MeshMotionMap:
    """Rest-configuration association of surface control points with boundary points.

    Attributes:
        rest: stacked surface control points (Ns, 2).
        boundary: indices of boundary control points.
        interior: indices of the remaining control points.
        nearest: for each interior point, the position in `boundary` of its
            closest boundary point.
        damping: max(0, 1 - r / R) per interior point.
    """

    mesh: MultiPatchMesh
    transfers: tuple[InterfaceTransfer, ...]
    rest: NDArray[np.float64]
    boundary: NDArray[np.intp]
    interior: NDArray[np.intp]
    nearest: NDArray[np.intp]
    damping: NDArray[np.float64]
    radius: float

    @classmethod
    def build(
        cls,
        mesh: MultiPatchMesh,
        transfers: Sequence[InterfaceTransfer],
        radius: float | None = None,
    ) -> MeshMotionMap:
        rest = mesh.stacked_surface_points()
        offsets = mesh.surface_offsets()
        sides = {(face.surface, face.side) for face in mesh.boundary_faces}
        rows = [offsets[s] + mesh.surfaces[s].side_indices(side) for s, side in sorted(sides)]
        rows += [t.fluid_rows for t in transfers]
        boundary = np.unique(np.concatenate(rows)) if rows else np.zeros(0, dtype=np.intp)
        interior = np.setdiff1d(np.arange(rest.shape[0]), boundary)

        r = DEFAULT_RADIUS_FRACTION * mesh.domain_diagonal() if radius is None else radius
        if not r > 0.0:
            raise CouplingError(f"Damping radius must be positive, got {r}")
        if boundary.size and interior.size:
            distance, nearest = cKDTree(rest[boundary]).query(rest[interior])
            damping = np.maximum(0.0, 1.0 - np.asarray(distance) / r)
        else:
            nearest = np.zeros(interior.size, dtype=np.intp)
            damping = np.zeros(interior.size)
        logger.debug(
            "Mesh motion map: %d boundary, %d interior control points, radius %.4g",
            boundary.size,
            interior.size,
            r,
        )
        return cls(
            mesh=mesh,
            transfers=tuple(transfers),
            rest=rest,
            boundary=boundary.astype(np.intp),
            interior=interior.astype(np.intp),
            nearest=np.asarray(nearest, dtype=np.intp),
            damping=damping,
            radius=r,
        )

    def boundary_displacement(
        self, structure_fields: Sequence[NDArray[np.float64]]
    ) -> NDArray[np.float64]:
        """Displacement of every surface control point on a boundary side (others zero).

        `structure_fields[i]` is the (n_cp, 2) structure displacement seen by transfer i.
        Interface rows are written last so they win on shared corner points.
        """
        displacement = np.zeros_like(self.rest)
        for transfer, field in zip(self.transfers, structure_fields, strict=True):
            displacement[transfer.fluid_rows] = transfer.fluid_displacement(field)
        return displacement

    def propagate(self, boundary_displacement: NDArray[np.float64]) -> NDArray[np.float64]:
        """Fill interior control points with damped copies of their closest boundary point."""
        displacement = np.array(boundary_displacement, dtype=np.float64)
        boundary_values = displacement[self.boundary]
        displacement[self.interior] = self.damping[:, None] * boundary_values[self.nearest]
        return displacement

    def surface_displacement(
        self, structure_fields: Sequence[NDArray[np.float64]]
    ) -> NDArray[np.float64]:
        return self.propagate(self.boundary_displacement(structure_fields))

    def positions(self, structure_fields: Sequence[NDArray[np.float64]]) -> NDArray[np.float64]:
        """Patch control points (K, nb, 2) of the moved mesh."""
        moved = self.rest + self.surface_displacement(structure_fields)
        positions = self.mesh.regenerate(moved)
        warn_flipped_cells(positions, self.mesh.degree)
        return positions


def interpolated_motion(
    start: NDArray[np.float64], end: NDArray[np.float64], t0: float, dt: float
) -> tuple[NDArray[np.float64], Callable[[float], MeshMotion]]:
    """Constant mesh velocity over [t0, t0 + dt] and the provider of stage configurations."""
    velocity = (end - start) / dt

    def at(t: float) -> MeshMotion:
        fraction = (t - t0) / dt
        if fraction == 1.0:
            return MeshMotion(end, velocity, t)
        return MeshMotion(start + fraction * (end - start), velocity, t)

    return velocity, at


def warn_flipped_cells(positions: NDArray[np.float64], degree: int) -> int:
    """Log a warning when control-net cells lose their orientation; returns how many did.

    A flipped cell does not imply a negative Jacobian yet, but it is the first
    sign of an impending tangle.
    """
    n = degree + 1
    grid = positions.reshape(positions.shape[0], n, n, 2)
    a = grid[:, :-1, :-1]
    b = grid[:, 1:, :-1]
    c = grid[:, 1:, 1:]
    d = grid[:, :-1, 1:]
    diag1 = c - a
    diag2 = d - b
    area = 0.5 * (diag1[..., 0] * diag2[..., 1] - diag1[..., 1] * diag2[..., 0])
    flipped = int(np.count_nonzero(area <= 0.0))
    if flipped:
        patches = np.nonzero((area <= 0.0).any(axis=(1, 2)))[0]
        logger.warning(
            "Control net of %d patch(es) has %d flipped cell(s), first patches %s",
            patches.size,
            flipped,
            patches[:5].tolist(),
        )
    return flipped


def propagate_interior(
    motion: MeshMotionMap, boundary_displacement: NDArray[np.float64]
) -> MeshMotion:
    """Static mesh configuration for prescribed boundary control point displacements."""
    moved = motion.rest + motion.propagate(boundary_displacement)
    return MeshMotion.static(motion.mesh.regenerate(moved))


def transfer_displacement(
    motion: MeshMotionMap,
    structure_fields: Sequence[NDArray[np.float64]],
    previous: NDArray[np.float64],
    dt: float,
    time: float = 0.0,
) -> MeshMotion:
    """Moved patch control points for new structure displacements, velocity (x - x_prev) / dt."""
    positions = motion.positions(structure_fields)
    return MeshMotion(positions, (positions - previous) / dt, time)
