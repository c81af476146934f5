"""Membrane and hyperelastic structural solvers."""

from iga_fsi.domain.services.structure.continuum import (
    energy_density,
    first_piola,
    green_lagrange,
    material_tangent,
    pk2_stress,
)
from iga_fsi.domain.services.structure.hyperelastic import (
    deformation_gradients,
    gravity_load,
    hyperelastic_initial_state,
    hyperelastic_internal_force,
    hyperelastic_step,
    point_displacement,
    solid_mass_matrix,
    strain_energy,
)
from iga_fsi.domain.services.structure.membrane import (
    MembraneSystem,
    arc_length,
    assemble_membrane,
    membrane_deflection,
    membrane_energy,
    membrane_initial_state,
    membrane_static,
    membrane_step,
    membrane_tension,
    pressure_load,
)
from iga_fsi.domain.services.structure.tabulation import (
    CurveTable,
    SurfaceTable,
    curve_table,
    surface_table,
)

__all__ = [
    "CurveTable",
    "MembraneSystem",
    "SurfaceTable",
    "arc_length",
    "assemble_membrane",
    "curve_table",
    "deformation_gradients",
    "energy_density",
    "first_piola",
    "gravity_load",
    "green_lagrange",
    "hyperelastic_initial_state",
    "hyperelastic_internal_force",
    "hyperelastic_step",
    "material_tangent",
    "membrane_deflection",
    "membrane_energy",
    "membrane_initial_state",
    "membrane_static",
    "membrane_step",
    "membrane_tension",
    "pk2_stress",
    "point_displacement",
    "pressure_load",
    "solid_mass_matrix",
    "strain_energy",
    "surface_table",
]
