"""Discontinuous Galerkin solver for the compressible Navier-Stokes equations in ALE form."""

from iga_fsi.domain.services.fluid.boundary import (
    boundary_states,
    farfield_states,
    inflow_states,
    outflow_states,
    wall_states,
)
from iga_fsi.domain.services.fluid.discretization import (
    BoundaryTraces,
    DGOperator,
    PatchMap,
)
from iga_fsi.domain.services.fluid.fluxes import (
    ale_flux,
    convective_flux,
    normal_component,
    velocity_gradients,
    viscous_flux,
    viscous_stress,
)
from iga_fsi.domain.services.fluid.gas import (
    check_positivity,
    conservative,
    mach_number,
    pressure,
    primitive,
    sound_speed,
)
from iga_fsi.domain.services.fluid.geometry import (
    DGTables,
    FlowGeometry,
    build_tables,
    edge_basis,
    flow_geometry,
)
from iga_fsi.domain.services.fluid.ldg import ldg_fluxes, penalty_coefficient, penalty_scales
from iga_fsi.domain.services.fluid.loads import (
    boundary_traction,
    force_coefficients,
    integrated_force,
    pressure_coefficient,
)
from iga_fsi.domain.services.fluid.riemann import hll_ale_flux, wave_speeds
from iga_fsi.domain.services.fluid.solver import advance, stable_dt, total_energy, total_mass

__all__ = [
    "BoundaryTraces",
    "DGOperator",
    "DGTables",
    "FlowGeometry",
    "PatchMap",
    "advance",
    "ale_flux",
    "boundary_states",
    "boundary_traction",
    "build_tables",
    "check_positivity",
    "conservative",
    "convective_flux",
    "edge_basis",
    "farfield_states",
    "flow_geometry",
    "force_coefficients",
    "hll_ale_flux",
    "inflow_states",
    "integrated_force",
    "ldg_fluxes",
    "mach_number",
    "normal_component",
    "outflow_states",
    "penalty_coefficient",
    "penalty_scales",
    "pressure",
    "pressure_coefficient",
    "primitive",
    "sound_speed",
    "stable_dt",
    "total_energy",
    "total_mass",
    "velocity_gradients",
    "viscous_flux",
    "viscous_stress",
    "wall_states",
]
