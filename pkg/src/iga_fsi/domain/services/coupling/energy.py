"""Interface energy bookkeeping.

Over one step the structure receives dt/2 F . (v_n + v_{n+1}) through its
loads while the fluid gives away dt/2 (P_n + P_{n+1}), P the traction power
on the moving interface. The loosely coupled scheme does not balance the two;
their difference is the energy created or destroyed at the interface.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from numpy.typing import ArrayLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class EnergyRecord:
    time: float
    dt: float
    structure_work: float
    fluid_work: float
    loss: float
    relative_loss: float


def structure_work(load: ArrayLike, v_start: ArrayLike, v_end: ArrayLike, dt: float) -> float:
    """Work of the interface load over one step with trapezoidal velocity."""
    f = np.asarray(load, dtype=np.float64).ravel()
    v = np.asarray(v_start, dtype=np.float64).ravel() + np.asarray(v_end, dtype=np.float64).ravel()
    return 0.5 * dt * float(f @ v)


def fluid_work(power_start: float, power_end: float, dt: float) -> float:
    return 0.5 * dt * (power_start + power_end)


@dataclass(slots=True)
class EnergyMonitor:
    """Running record of interface energy loss.

    The relative loss divides by the mean absolute energy transferred per step
    so far; it is zero until some energy has been transferred.
    """

    records: list[EnergyRecord] = field(default_factory=list)
    _transferred: float = 0.0
    _steps: int = 0

    def record(
        self, time: float, dt: float, structure: float, fluid: float
    ) -> EnergyRecord:
        loss = abs(structure - fluid)
        self._transferred += abs(fluid)
        self._steps += 1
        mean = self._transferred / self._steps
        entry = EnergyRecord(
            time=time,
            dt=dt,
            structure_work=structure,
            fluid_work=fluid,
            loss=loss,
            relative_loss=loss / mean if mean > 0.0 else 0.0,
        )
        self.records.append(entry)
        return entry

    @property
    def mean_transfer(self) -> float:
        return self._transferred / self._steps if self._steps else 0.0

    @property
    def transferred(self) -> float:
        return self._transferred

    @property
    def steps(self) -> int:
        return self._steps

    def restore(self, transferred: float, steps: int) -> None:
        """Continue the running average from a checkpoint; earlier records are not kept."""
        self._transferred = transferred
        self._steps = steps

    @property
    def total_loss(self) -> float:
        return sum(r.loss for r in self.records)

    def summary(self) -> tuple[float, float]:
        """(mean loss, mean relative loss) over all recorded steps."""
        if not self.records:
            return 0.0, 0.0
        losses = np.array([(r.loss, r.relative_loss) for r in self.records])
        mean_loss, mean_relative = losses.mean(axis=0)
        return float(mean_loss), float(mean_relative)
