"""Exact transfer of structure boundary displacements onto fluid surface sides.

The fluid side curve and the structure boundary curve describe the same
geometry; the fluid side differs only by a sub-range, a possible reversal, an
affine reparametrisation and inserted knots. Composing the corresponding
homogeneous operators gives a fixed linear map from structure control point
displacements to fluid side control point displacements, so the moved fluid
boundary coincides with the moved structure for any displacement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import GeometryError, LineageMismatchError
from iga_fsi.domain.services.nurbs import refinement_matrix, subcurve_matrix

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from iga_fsi.domain.entities import InterfaceSpec, MultiPatchMesh, NurbsCurve

TRANSFER_TOLERANCE = 1e-10


@dataclass(frozen=True, slots=True, eq=False)
class InterfaceTransfer:
    """Linear displacement map of one interface.

    operator: (n_fluid_side, n_structure_side) acting on Cartesian displacements.
    structure_rows: structure control point indices of the boundary curve.
    fluid_rows: stacked surface control point indices of the fluid side.
    """

    spec: InterfaceSpec
    operator: NDArray[np.float64]
    structure_rows: NDArray[np.intp]
    fluid_rows: NDArray[np.intp]

    def fluid_displacement(self, structure_displacement: ArrayLike) -> NDArray[np.float64]:
        """Fluid side control point displacements (n_fluid_side, 2) from the structure field."""
        field = np.asarray(structure_displacement, dtype=np.float64).reshape(-1, 2)
        return self.operator @ field[self.structure_rows]


def transfer_operator(
    curve: NurbsCurve, target: NurbsCurve, spec: InterfaceSpec
) -> NDArray[np.float64]:
    """Homogeneous operator taking `curve` restricted to the interface range onto `target`'s basis.

    Raises:
        LineageMismatchError: degrees differ or the target knots do not refine the
            restricted curve.
    """
    kv = curve.knot_vector
    if kv.degree != target.degree:
        raise LineageMismatchError(
            f"Structure curve degree {kv.degree} differs from fluid side degree {target.degree}"
        )
    lo, hi = sorted(spec.structure_range)
    try:
        sub_kv, restrict = subcurve_matrix(kv, lo, hi)
        if spec.reversed:
            sub_kv = sub_kv.reversed()
            restrict = restrict[::-1]
        target_kv = target.knot_vector
        mapped = sub_kv.mapped(target_kv.first, target_kv.last)
        refine = refinement_matrix(mapped, target_kv)
    except GeometryError as e:
        raise LineageMismatchError(f"Fluid side does not refine the structure curve: {e}") from e
    return refine @ restrict


def build_transfer(
    mesh: MultiPatchMesh,
    spec: InterfaceSpec,
    curve: NurbsCurve,
    structure_rows: ArrayLike,
) -> InterfaceTransfer:
    """Transfer for one interface, validated on the rest geometry.

    Raises:
        LineageMismatchError: the rest fluid side is not reproduced from the structure curve.
    """
    surface = mesh.surfaces[spec.fluid_surface]
    target = surface.side_curve(spec.fluid_side)
    homogeneous = transfer_operator(curve, target, spec)

    weights = homogeneous @ curve.weights
    scale = max(float(np.max(np.abs(target.weights))), 1.0)
    if np.max(np.abs(weights - target.weights)) > TRANSFER_TOLERANCE * scale:
        raise LineageMismatchError("Fluid side weights differ from the refined structure curve")
    operator = homogeneous * curve.weights[None, :] / target.weights[:, None]

    moved = operator @ curve.control_points
    size = max(curve.bounding_box_diagonal(), 1.0)
    gap = float(np.max(np.linalg.norm(moved - target.control_points, axis=1)))
    if gap > TRANSFER_TOLERANCE * size:
        raise LineageMismatchError(
            f"Fluid side of surface {spec.fluid_surface} ({spec.fluid_side}) is {gap:.3e} "
            "away from the structure boundary"
        )

    offset = mesh.surface_offsets()[spec.fluid_surface]
    return InterfaceTransfer(
        spec=spec,
        operator=operator,
        structure_rows=np.asarray(structure_rows, dtype=np.intp),
        fluid_rows=offset + surface.side_indices(spec.fluid_side),
    )
