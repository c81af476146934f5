from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import numpy as np

from iga_fsi.domain.entities import EDGES, EdgeRef
from iga_fsi.domain.exceptions import ConfigurationError
from iga_fsi.domain.services.mesh import edge_curve_points, mesh_statistics, sample_face_deviation

if TYPE_CHECKING:
    from iga_fsi.application.ports import FieldWriter
    from iga_fsi.application.simulation import SimulationCase


@dataclass(frozen=True, slots=True)
class InspectMeshRequest:
    case: SimulationCase
    wireframe: bool = False
    samples: int = 9


@dataclass(frozen=True, slots=True)
class InspectMeshResponse:
    statistics: dict[str, Any]
    face_deviation: float
    wireframe: str | None = None


class InspectMeshUseCase:
    """Counts, level histogram and watertightness of a case's fluid mesh."""

    def __init__(self, fields: FieldWriter) -> None:
        self._fields = fields

    def execute(self, request: InspectMeshRequest) -> InspectMeshResponse:
        mesh = request.case.mesh
        if mesh is None:
            raise ConfigurationError(f"Case {request.case.name} has no fluid mesh")

        # Step 1: Counts
        statistics = dataclasses.asdict(mesh_statistics(mesh))
        statistics.update(request.case.degrees_of_freedom())

        # Step 2: Watertightness audit
        deviation = sample_face_deviation(mesh, request.samples)

        # Step 3: Optional wireframe of every patch boundary
        name = None
        if request.wireframe:
            s = np.linspace(0.0, 1.0, request.samples)
            lines = np.stack(
                [
                    edge_curve_points(mesh, EdgeRef(k, edge), s)
                    for k in range(mesh.patch_count)
                    for edge in EDGES
                ]
            )
            name = self._fields.write_wireframe("mesh", lines)
        return InspectMeshResponse(statistics=statistics, face_deviation=deviation, wireframe=name)
