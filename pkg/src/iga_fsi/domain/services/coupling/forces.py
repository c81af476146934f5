"""Consistent transfer of fluid boundary tractions to structure control point loads.

Each paired edge shares its quadrature nodes with the flow boundary table, so
the traction sampled by the flow solver is integrated directly against the
structure basis: F_A = sum_q R_A(s_q) t(x_q) ds_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import UnpairedEdgeError
from iga_fsi.domain.services.nurbs import basis_table

if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import InterfacePairing, NurbsCurve
    from iga_fsi.domain.services.fluid.geometry import BoundaryTable


@dataclass(frozen=True, slots=True, eq=False)
class ForceTransfer:
    """Interface quadrature points and the structure basis evaluated at their images.

    points: flow boundary point index of every interface quadrature point (Q,).
    rows: structure control point indices of the local basis (Q, p+1).
    basis: rational structure basis values (Q, p+1).
    """

    points: NDArray[np.intp]
    rows: NDArray[np.intp]
    basis: NDArray[np.float64]
    control_point_count: int

    @classmethod
    def build(
        cls,
        pairing: InterfacePairing,
        boundary: BoundaryTable,
        curves: Sequence[NurbsCurve],
        structure_rows: Sequence[ArrayLike],
        control_point_count: int,
    ) -> ForceTransfer:
        """Collect the interface points of every paired edge.

        `curves[i]` and `structure_rows[i]` describe the structure boundary of
        interface spec i: the curve and the structure control point index of
        each of its basis functions.

        Raises:
            UnpairedEdgeError: a paired edge has no matching flow boundary quadrature.
        """
        points, rows, values = [], [], []
        for edge in pairing.edges:
            idx = np.nonzero(boundary.face_index == edge.boundary_face)[0]
            if idx.size != edge.fluid_points.size or not np.allclose(
                boundary.edge_parameter[idx], edge.fluid_points
            ):
                raise UnpairedEdgeError(
                    f"Boundary face {edge.boundary_face} does not share the interface quadrature"
                )
            curve = curves[edge.spec_index]
            local = np.asarray(structure_rows[edge.spec_index], dtype=np.intp)
            spans, basis = basis_table(curve.knot_vector, edge.structure_points, 0, curve.weights)
            offsets = np.arange(curve.degree + 1)
            points.append(idx)
            rows.append(local[spans[:, None] - curve.degree + offsets])
            values.append(basis[:, 0, :])
        if not points:
            raise UnpairedEdgeError("Interface pairing has no edges")
        return cls(
            points=np.concatenate(points),
            rows=np.concatenate(rows),
            basis=np.concatenate(values),
            control_point_count=control_point_count,
        )

    def loads(
        self, traction: NDArray[np.float64], measure: NDArray[np.float64]
    ) -> NDArray[np.float64]:
        """Control point loads (n_cp, 2) from boundary tractions (B, 2) and measures (B,)."""
        weighted = traction[self.points] * measure[self.points, None]
        out = np.zeros((self.control_point_count, 2))
        np.add.at(out, self.rows, self.basis[..., None] * weighted[:, None, :])
        return out

    def power(
        self,
        traction: NDArray[np.float64],
        measure: NDArray[np.float64],
        mesh_velocity: NDArray[np.float64],
    ) -> float:
        """Rate of work of the traction on the moving interface, sum t . v_mesh ds."""
        idx = self.points
        return float(np.einsum("q,qd,qd->", measure[idx], traction[idx], mesh_velocity[idx]))


def transfer_forces(
    transfer: ForceTransfer, traction: NDArray[np.float64], measure: NDArray[np.float64]
) -> NDArray[np.float64]:
    return transfer.loads(traction, measure)
