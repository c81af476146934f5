"""Loosely coupled fluid-structure time stepping.

One step runs five phases in order: step size, interface loads from the
current flow, structure step, mesh motion from the new structure state, and
the flow step on the moving mesh. Either side may be absent, which gives the
flow-only and structure-only cases of the same loop.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import MeshMotion
from iga_fsi.domain.exceptions import CouplingError, CouplingPhaseError, DomainException
from iga_fsi.domain.services.coupling.energy import (
    EnergyMonitor,
    EnergyRecord,
    fluid_work,
    structure_work,
)
from iga_fsi.domain.services.coupling.motion import interpolated_motion
from iga_fsi.domain.services.fluid import advance, boundary_traction, stable_dt

if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import FlowState, StructState
    from iga_fsi.domain.services.coupling.forces import ForceTransfer
    from iga_fsi.domain.services.coupling.motion import MeshMotionMap
    from iga_fsi.domain.services.coupling.structures import StructureSolver
    from iga_fsi.domain.services.fluid import DGOperator, FlowGeometry

logger = logging.getLogger(__name__)

PHASES = ("dt", "load", "structure", "motion", "fluid")


@contextmanager
def _phase(name: str, time: float) -> Iterator[None]:
    try:
        yield
    except DomainException as e:
        raise CouplingPhaseError(name, time, e) from e


@dataclass(slots=True, eq=False)
class FluidSide:
    """Flow solver, its state and the mesh configuration at the state's time.

    Interface loads use the pressure above `ambient_pressure`; the structure's
    rest configuration is in equilibrium with it.
    """

    operator: DGOperator
    state: FlowState
    positions: NDArray[np.float64]
    velocities: NDArray[np.float64] | None = None
    cfl: float = 0.5
    force_tags: tuple[str, ...] = ()
    ambient_pressure: float = 0.0

    def __post_init__(self) -> None:
        if self.velocities is None:
            self.velocities = np.zeros_like(self.positions)


@dataclass(frozen=True, slots=True, eq=False)
class StepReport:
    time: float
    dt: float
    force: NDArray[np.float64] | None
    monitor: NDArray[np.float64] | None
    energy: EnergyRecord | None
    newton_iterations: int = 0


@dataclass(slots=True, eq=False)
class CoupledSystem:
    """Everything a coupling step mutates.

    `max_dt` caps the flow step and is the step of structure-only runs.
    `external_load(t)` gives structure loads (n_cp, 2) at the end of a step
    when there is no flow.
    """

    fluid: FluidSide | None = None
    structure: StructureSolver | None = None
    motion: MeshMotionMap | None = None
    forces: ForceTransfer | None = None
    max_dt: float | None = None
    external_load: Callable[[float], NDArray[np.float64]] | None = None
    energy: EnergyMonitor = field(default_factory=EnergyMonitor)
    _geometry: FlowGeometry | None = field(default=None, init=False, repr=False)
    _traction: NDArray[np.float64] | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.fluid is None and self.structure is None:
            raise CouplingError("A coupled system needs a flow or a structure")
        if self.fluid is not None and self.structure is not None:
            if self.motion is None or self.forces is None:
                raise CouplingError("Coupled runs need a mesh motion map and a force transfer")
        if self.fluid is None and self.max_dt is None:
            raise CouplingError("Structure-only runs need a fixed step size")
        if self.max_dt is not None and not self.max_dt > 0.0:
            raise CouplingError(f"Step size must be positive, got {self.max_dt}")

    @property
    def is_coupled(self) -> bool:
        return self.fluid is not None and self.structure is not None

    @property
    def time(self) -> float:
        if self.fluid is not None:
            return self.fluid.state.time
        assert self.structure is not None
        return self.structure.state.time

    def geometry(self) -> FlowGeometry:
        """Flow geometry of the current mesh configuration (cached until the mesh moves)."""
        assert self.fluid is not None
        if self._geometry is None:
            self._geometry = self.fluid.operator.geometry(self.fluid.positions)
        return self._geometry

    def traction(self) -> NDArray[np.float64]:
        assert self.fluid is not None
        if self._traction is None:
            fluid = self.fluid
            assert fluid.velocities is not None
            geometry = self.geometry()
            traction = boundary_traction(fluid.operator, fluid.state, geometry, fluid.velocities)
            self._traction = traction - fluid.ambient_pressure * geometry.boundary_normals
        return self._traction

    def time_step(self) -> float:
        if self.fluid is None:
            assert self.max_dt is not None
            return self.max_dt
        fluid = self.fluid
        assert fluid.velocities is not None
        dt = stable_dt(fluid.operator, fluid.state, self.geometry(), fluid.velocities, fluid.cfl)
        if self.max_dt is not None:
            dt = min(dt, self.max_dt)
        if not (np.isfinite(dt) and dt > 0.0):
            raise CouplingError(f"Stable step is not positive: {dt}")
        return dt

    def body_force(self) -> NDArray[np.float64] | None:
        """Integrated traction on the force tags at the current state."""
        if self.fluid is None or not self.fluid.force_tags:
            return None
        bnd = self.fluid.operator.tables.boundary
        idx = np.concatenate([bnd.points_of(tag) for tag in self.fluid.force_tags])
        measure = self.geometry().boundary_measure[idx]
        return np.einsum("f,fd->d", measure, self.traction()[idx])

    def invalidate_cache(self) -> None:
        """Drop cached geometry and tractions after the flow state or mesh was replaced."""
        self._geometry = None
        self._traction = None

    def snapshot(self) -> tuple[FlowState | None, StructState | None]:
        return (
            None if self.fluid is None else self.fluid.state,
            None if self.structure is None else self.structure.state,
        )


def _boundary_velocity(system: CoupledSystem, velocity: NDArray[np.float64]) -> NDArray[np.float64]:
    assert system.fluid is not None
    bnd = system.fluid.operator.tables.boundary
    return np.einsum("fa,fad->fd", bnd.basis, velocity[bnd.patch])


def _static_motion(positions: NDArray[np.float64]) -> Callable[[float], MeshMotion]:
    def at(stage: float) -> MeshMotion:
        return MeshMotion.static(positions, stage)

    return at


def coupling_step(system: CoupledSystem) -> StepReport:
    """Advance the system by one step and return what was measured at its end.

    Raises:
        CouplingPhaseError: a sub-solver failed; the structure keeps its state
            from before the step.
    """
    t = system.time
    fluid, structure = system.fluid, system.structure
    with _phase("dt", t):
        dt = system.time_step()

    with _phase("load", t):
        loads: NDArray[np.float64] | None = None
        traction0 = measure0 = None
        if system.is_coupled:
            assert system.forces is not None
            traction0 = system.traction()
            measure0 = system.geometry().boundary_measure
            loads = system.forces.loads(traction0, measure0)
        elif structure is not None:
            if system.external_load is None:
                loads = np.zeros((structure.control_point_count, 2))
            else:
                loads = system.external_load(t + dt)

    start = None if structure is None else structure.state
    try:
        if structure is not None:
            assert loads is not None
            v0 = structure.velocity_field()
            with _phase("structure", t):
                structure.step(loads, dt)

        if fluid is not None:
            with _phase("motion", t):
                if system.motion is not None and structure is not None:
                    fields = [structure.displacement_field()] * len(system.motion.transfers)
                    end = system.motion.positions(fields)
                    velocity, provider = interpolated_motion(fluid.positions, end, t, dt)
                else:
                    end = fluid.positions
                    velocity = np.zeros_like(end)
                    provider = _static_motion(end)

            with _phase("fluid", t):
                new_state = advance(fluid.operator, fluid.state, provider, dt)
    except CouplingPhaseError:
        if structure is not None and start is not None:
            structure.restore(start)
        raise

    if fluid is not None:
        fluid.state, fluid.positions, fluid.velocities = new_state, end, velocity
        system.invalidate_cache()

    energy = None
    if system.is_coupled:
        assert structure is not None and system.forces is not None and fluid is not None
        assert traction0 is not None and measure0 is not None and loads is not None
        v_b = _boundary_velocity(system, velocity)
        p0 = system.forces.power(traction0, measure0, v_b)
        p1 = system.forces.power(system.traction(), system.geometry().boundary_measure, v_b)
        energy = system.energy.record(
            t + dt,
            dt,
            structure_work(loads, v0, structure.velocity_field(), dt),
            fluid_work(p0, p1, dt),
        )

    report = StepReport(
        time=t + dt,
        dt=dt,
        force=system.body_force(),
        monitor=None if structure is None else structure.monitor(),
        energy=energy,
        newton_iterations=0 if structure is None else structure.last_iterations,
    )
    logger.debug("Coupling step t=%.6g dt=%.4g", report.time, dt)
    return report
