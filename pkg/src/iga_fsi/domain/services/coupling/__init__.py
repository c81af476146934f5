"""Fluid-structure coupling: interface pairing, transfers, mesh motion and the step loop."""

from iga_fsi.domain.services.coupling.deviation import interface_deviation
from iga_fsi.domain.services.coupling.displacement import (
    InterfaceTransfer,
    build_transfer,
    transfer_operator,
)
from iga_fsi.domain.services.coupling.energy import (
    EnergyMonitor,
    EnergyRecord,
    fluid_work,
    structure_work,
)
from iga_fsi.domain.services.coupling.forces import ForceTransfer, transfer_forces
from iga_fsi.domain.services.coupling.loop import (
    PHASES,
    CoupledSystem,
    FluidSide,
    StepReport,
    coupling_step,
)
from iga_fsi.domain.services.coupling.motion import (
    MeshMotionMap,
    interpolated_motion,
    propagate_interior,
    transfer_displacement,
    warn_flipped_cells,
)
from iga_fsi.domain.services.coupling.pairing import build_pairing, structure_map
from iga_fsi.domain.services.coupling.structures import (
    MembraneStructure,
    SolidStructure,
    StructureSolver,
)

__all__ = [
    "PHASES",
    "CoupledSystem",
    "EnergyMonitor",
    "EnergyRecord",
    "FluidSide",
    "ForceTransfer",
    "InterfaceTransfer",
    "MembraneStructure",
    "MeshMotionMap",
    "SolidStructure",
    "StepReport",
    "StructureSolver",
    "build_pairing",
    "build_transfer",
    "coupling_step",
    "fluid_work",
    "interface_deviation",
    "interpolated_motion",
    "propagate_interior",
    "structure_map",
    "structure_work",
    "transfer_displacement",
    "transfer_forces",
    "transfer_operator",
    "warn_flipped_cells",
]
