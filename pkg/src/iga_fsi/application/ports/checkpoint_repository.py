from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import numpy as np
    from numpy.typing import NDArray


@dataclass(frozen=True, slots=True, eq=False)
class Checkpoint:
    """Everything needed to continue a run.

    Flow arrays are None for structure-only runs and structure arrays are None
    for flow-only runs. `config` is the resolved case configuration text the
    run was started from.
    """

    step: int
    time: float
    config: str
    flow_w: NDArray[np.float64] | None = None
    flow_g: NDArray[np.float64] | None = None
    positions: NDArray[np.float64] | None = None
    velocities: NDArray[np.float64] | None = None
    structure_u: NDArray[np.float64] | None = None
    structure_v: NDArray[np.float64] | None = None
    structure_a: NDArray[np.float64] | None = None
    energy_transferred: float = 0.0
    energy_steps: int = 0


class CheckpointRepository(ABC):
    """Port for checkpoint persistence.

    Contract:
    - save() returns a reference string that load() accepts
    - load() raises CheckpointNotFoundError for unknown references
    - latest() returns None when nothing has been saved
    - saved checkpoints are never modified afterwards
    """

    @abstractmethod
    def save(self, checkpoint: Checkpoint) -> str:
        """Persist a checkpoint and return its reference."""

    @abstractmethod
    def load(self, reference: str) -> Checkpoint:
        """Retrieve a checkpoint by reference."""

    @abstractmethod
    def latest(self) -> Checkpoint | None:
        """Most recently saved checkpoint, if any."""
