"""Fluid tessellation: extraction, refinement, connectivity and inspection."""

from iga_fsi.domain.services.mesh.builder import (
    CONNECTIVITY_TOLERANCE,
    build_fluid_mesh,
    check_admissible,
    regeneration_operator,
)
from iga_fsi.domain.services.mesh.connectivity import discover_connectivity, edge_surface_side
from iga_fsi.domain.services.mesh.inspection import (
    MeshStatistics,
    edge_curve_points,
    mesh_statistics,
    sample_face_deviation,
)
from iga_fsi.domain.services.mesh.levels import (
    check_balance,
    check_split_balance,
    refine_patches,
    refinement_level_difference,
)

__all__ = [
    "CONNECTIVITY_TOLERANCE",
    "MeshStatistics",
    "build_fluid_mesh",
    "check_admissible",
    "check_balance",
    "check_split_balance",
    "discover_connectivity",
    "edge_curve_points",
    "edge_surface_side",
    "mesh_statistics",
    "refine_patches",
    "refinement_level_difference",
    "regeneration_operator",
    "sample_face_deviation",
]
