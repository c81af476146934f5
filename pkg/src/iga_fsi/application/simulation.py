"""The assembled, runnable case shared by all use cases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.application.ports import Checkpoint
from iga_fsi.domain.entities import FlowState, StructState
from iga_fsi.domain.exceptions import ConfigurationError

if TYPE_CHECKING:
    from iga_fsi.domain.entities import InterfacePairing, MultiPatchMesh
    from iga_fsi.domain.services.coupling import CoupledSystem


@dataclass(frozen=True, slots=True)
class ForceReference:
    """Normalisation of integrated forces into drag and lift coefficients."""

    density: float
    speed: float
    length: float
    alpha_deg: float = 0.0


@dataclass(frozen=True, slots=True)
class ProfileSettings:
    """Time-averaged membrane profiles: stations along the chord and the C_p reference."""

    stations: int
    start_time: float
    upper_tag: str
    lower_tag: str
    pressure: float


@dataclass(frozen=True, slots=True)
class RunSettings:
    end_time: float
    output_every: int = 10
    snapshot_every: int = 0
    checkpoint_every: int = 0
    snapshot_resolution: int = 4
    periods: int = 5


@dataclass(slots=True, eq=False)
class SimulationCase:
    """A coupled system plus what the run loop needs around it."""

    name: str
    system: CoupledSystem
    run: RunSettings
    config: str
    grid: str | None = None
    mesh: MultiPatchMesh | None = None
    pairing: InterfacePairing | None = None
    reference: ForceReference | None = None
    profile: ProfileSettings | None = None
    step: int = 0

    @property
    def time(self) -> float:
        return self.system.time

    def degrees_of_freedom(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        if self.mesh is not None:
            counts["fluid_dofs"] = self.mesh.dofs_per_variable
            counts["fluid_elements"] = self.mesh.patch_count
        if self.system.structure is not None:
            counts["structure_control_points"] = self.system.structure.control_point_count
        return counts

    def checkpoint(self) -> Checkpoint:
        system = self.system
        fluid, structure = system.fluid, system.structure
        return Checkpoint(
            step=self.step,
            time=self.time,
            config=self.config,
            flow_w=None if fluid is None else np.array(fluid.state.w),
            flow_g=None if fluid is None else np.array(fluid.state.g),
            positions=None if fluid is None else np.array(fluid.positions),
            velocities=None if fluid is None else np.array(fluid.velocities),
            structure_u=None if structure is None else np.array(structure.state.u),
            structure_v=None if structure is None else np.array(structure.state.v),
            structure_a=None if structure is None else np.array(structure.state.a),
            energy_transferred=system.energy.transferred,
            energy_steps=system.energy.steps,
        )

    def restore(self, checkpoint: Checkpoint) -> None:
        """Put the case into the state stored in a checkpoint of the same configuration.

        Raises:
            ConfigurationError: the checkpoint lacks a side this case has, or its
                arrays do not fit the case.
        """
        system = self.system
        if system.fluid is not None:
            fluid = system.fluid
            if checkpoint.flow_w is None or checkpoint.flow_g is None:
                raise ConfigurationError("Checkpoint has no flow state for a case with flow")
            if checkpoint.flow_w.shape != fluid.state.w.shape:
                raise ConfigurationError(
                    f"Checkpoint flow shape {checkpoint.flow_w.shape} does not match "
                    f"the case ({fluid.state.w.shape})"
                )
            fluid.state = FlowState(checkpoint.flow_w, checkpoint.flow_g, checkpoint.time)
            if checkpoint.positions is not None:
                fluid.positions = np.array(checkpoint.positions)
            if checkpoint.velocities is not None:
                fluid.velocities = np.array(checkpoint.velocities)
        if system.structure is not None:
            u, v, a = checkpoint.structure_u, checkpoint.structure_v, checkpoint.structure_a
            if u is None or v is None or a is None:
                raise ConfigurationError("Checkpoint has no structure state for a case with one")
            if u.shape != system.structure.state.u.shape:
                raise ConfigurationError(
                    f"Checkpoint structure shape {u.shape} does not match the case"
                )
            system.structure.restore(StructState(u, v, a, checkpoint.time))
        system.energy.restore(checkpoint.energy_transferred, checkpoint.energy_steps)
        system.invalidate_cache()
        self.step = checkpoint.step
