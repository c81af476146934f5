from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.exceptions import ConfigurationError
from iga_fsi.domain.services.coupling import coupling_step, interface_deviation

if TYPE_CHECKING:
    from iga_fsi.application.ports import TimeSeriesRepository
    from iga_fsi.application.simulation import SimulationCase

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class AuditInterfaceRequest:
    """`random` replaces coupled steps by random structure displacements of the given
    amplitude, relative to the mesh diagonal."""

    case: SimulationCase
    steps: int = 10
    random: bool = False
    seed: int = 0
    amplitude: float = 1e-2
    samples: int = 200


@dataclass(frozen=True, slots=True)
class AuditInterfaceResponse:
    deviations: tuple[float, ...]

    @property
    def worst(self) -> float:
        return max(self.deviations, default=0.0)


class AuditInterfaceUseCase:
    """Largest distance between the moved fluid boundary and the deformed structure, per step."""

    def __init__(self, series: TimeSeriesRepository) -> None:
        self._series = series

    def execute(self, request: AuditInterfaceRequest) -> AuditInterfaceResponse:
        case = request.case
        system = case.system
        if case.mesh is None or case.pairing is None or system.structure is None:
            raise ConfigurationError(f"Case {case.name} has no fluid-structure interface")
        if system.fluid is None or system.motion is None:
            raise ConfigurationError(f"Case {case.name} has no moving fluid mesh")
        structure, motion = system.structure, system.motion
        rng = np.random.default_rng(request.seed)
        scale = request.amplitude * case.mesh.domain_diagonal()

        deviations = []
        for step in range(1, request.steps + 1):
            # Step 1: Move the interface
            if request.random:
                shape = structure.state.shape
                u = scale * rng.standard_normal(shape)
                zeros = np.zeros(shape)
                structure.restore(StructState(u, zeros, zeros, structure.state.time))
                fields = [structure.displacement_field()] * len(motion.transfers)
                positions = motion.positions(fields)
            else:
                coupling_step(system)
                positions = system.fluid.positions

            # Step 2: Measure the gap
            gap = interface_deviation(
                case.mesh, case.pairing, structure, positions, request.samples
            )
            deviations.append(gap)
            self._series.append("interface_audit", {"step": float(step), "deviation": gap})
            logger.info("audit step %d: max interface deviation %.3e", step, gap)
        self._series.flush()
        return AuditInterfaceResponse(tuple(deviations))
