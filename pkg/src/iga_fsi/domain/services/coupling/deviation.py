from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.services.mesh import edge_curve_points
from iga_fsi.domain.services.nurbs import sample_curve

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities import InterfacePairing, MultiPatchMesh
    from iga_fsi.domain.services.coupling.structures import StructureSolver


def interface_deviation(
    mesh: MultiPatchMesh,
    pairing: InterfacePairing,
    structure: StructureSolver,
    positions: NDArray[np.float64] | None = None,
    samples: int = 9,
) -> float:
    """Largest distance between moved fluid interface edges and the deformed structure boundary.

    Edges are sampled at `samples` uniform parameters including both end points;
    the result is zero up to round-off when the displacement transfer is exact.
    """
    u = np.linspace(0.0, 1.0, samples)
    curves = {i: structure.deformed_curve(spec) for i, spec in enumerate(pairing.specs)}
    worst = 0.0
    for edge in pairing.edges:
        fluid = edge_curve_points(mesh, edge.edge, u, positions)
        solid = sample_curve(curves[edge.spec_index], edge.structure_parameter(u))
        worst = max(worst, float(np.max(np.linalg.norm(fluid - solid, axis=1))))
    return worst
