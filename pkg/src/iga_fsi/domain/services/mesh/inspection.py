from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import edge_parameters
from iga_fsi.domain.services.mesh.levels import refinement_level_difference
from iga_fsi.domain.services.nurbs import patch_points

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities import EdgeRef, MultiPatchMesh

CONSERVATIVE_VARIABLES = 4


@dataclass(frozen=True, slots=True)
class MeshStatistics:
    patch_count: int
    degree: int
    dofs_per_variable: int
    total_dofs: int
    interior_faces: int
    hanging_faces: int
    boundary_faces: int
    max_level_jump: int
    level_histogram: dict[int, int]
    boundary_tags: dict[str, int]


def mesh_statistics(mesh: MultiPatchMesh) -> MeshStatistics:
    return MeshStatistics(
        patch_count=mesh.patch_count,
        degree=mesh.degree,
        dofs_per_variable=mesh.dofs_per_variable,
        total_dofs=CONSERVATIVE_VARIABLES * mesh.dofs_per_variable,
        interior_faces=len(mesh.faces),
        hanging_faces=sum(f.is_hanging for f in mesh.faces),
        boundary_faces=len(mesh.boundary_faces),
        max_level_jump=refinement_level_difference(mesh),
        level_histogram=mesh.level_histogram(),
        boundary_tags=dict(sorted(Counter(f.tag for f in mesh.boundary_faces).items())),
    )


def edge_curve_points(
    mesh: MultiPatchMesh,
    ref: EdgeRef,
    s: NDArray[np.float64],
    positions: NDArray[np.float64] | None = None,
) -> NDArray[np.float64]:
    """Points on a patch edge for the rest or a moved configuration (K, nb, 2)."""
    points = mesh.control_points if positions is None else positions
    params = edge_parameters(ref.edge, s)
    return patch_points(
        mesh.degree, points[ref.patch], mesh.weights[ref.patch], params[:, 0], params[:, 1]
    )


def sample_face_deviation(
    mesh: MultiPatchMesh, samples: int = 7, positions: NDArray[np.float64] | None = None
) -> float:
    """Largest distance between the two traces of any interior or hanging face."""
    u = np.linspace(0.0, 1.0, samples)
    worst = 0.0
    for face in mesh.faces:
        for sub in face.fine:
            fine = edge_curve_points(mesh, sub.ref, u, positions)
            coarse = edge_curve_points(mesh, face.coarse, sub.coarse_parameter(u), positions)
            worst = max(worst, float(np.max(np.linalg.norm(fine - coarse, axis=1))))
    return worst
