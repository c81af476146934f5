from __future__ import annotations

import copy
import logging
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.application.ports import Checkpoint, CheckpointRepository
from iga_fsi.domain.exceptions import CheckpointNotFoundError, ConfigurationError

if TYPE_CHECKING:
    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

ARRAY_FIELDS = (
    "flow_w",
    "flow_g",
    "positions",
    "velocities",
    "structure_u",
    "structure_v",
    "structure_a",
)


class NpzCheckpointRepository(CheckpointRepository):
    """Checkpoints as compressed numpy archives, one file per saved step.

    Implementation notes:
    - File names are `checkpoint_<step>.npz`, so lexical order is step order
    - Absent flow or structure arrays are simply not stored
    - The configuration text is stored as a 0-d unicode array
    - References are file paths; a bare file name is resolved in the directory
    """

    PATTERN = "checkpoint_*.npz"

    def __init__(self, directory: Path) -> None:
        self.directory = directory

    def save(self, checkpoint: Checkpoint) -> str:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"checkpoint_{checkpoint.step:08d}.npz"
        arrays: dict[str, NDArray[np.generic]] = {
            name: value
            for name in ARRAY_FIELDS
            if (value := getattr(checkpoint, name)) is not None
        }
        np.savez_compressed(
            path,
            step=np.int64(checkpoint.step),
            time=np.float64(checkpoint.time),
            config=np.str_(checkpoint.config),
            energy_transferred=np.float64(checkpoint.energy_transferred),
            energy_steps=np.int64(checkpoint.energy_steps),
            **arrays,
        )
        return str(path)

    def load(self, reference: str) -> Checkpoint:
        path = self._resolve(reference)
        try:
            with np.load(path, allow_pickle=False) as data:
                arrays = {name: np.array(data[name]) for name in ARRAY_FIELDS if name in data}
                return Checkpoint(
                    step=int(data["step"]),
                    time=float(data["time"]),
                    config=str(data["config"]),
                    energy_transferred=float(data["energy_transferred"]),
                    energy_steps=int(data["energy_steps"]),
                    **arrays,
                )
        except (KeyError, ValueError, OSError) as e:
            raise ConfigurationError(f"Checkpoint {path} is unreadable: {e}") from e

    def latest(self) -> Checkpoint | None:
        files = sorted(self.directory.glob(self.PATTERN))
        return self.load(str(files[-1])) if files else None

    def _resolve(self, reference: str) -> Path:
        path = Path(reference)
        candidates = [path] if path.is_absolute() else [path, self.directory / path]
        for candidate in candidates:
            if candidate.is_file():
                return candidate
        raise CheckpointNotFoundError(f"No checkpoint at {reference}")


class InMemoryCheckpointRepository(CheckpointRepository):
    """In-memory checkpoints for tests.

    Stores and returns deep copies, so a saved checkpoint cannot change when
    the running case mutates its arrays.
    """

    def __init__(self) -> None:
        self._saved: dict[str, Checkpoint] = {}
        self._order: list[str] = []

    def save(self, checkpoint: Checkpoint) -> str:
        reference = f"step-{checkpoint.step}"
        self._saved[reference] = copy.deepcopy(checkpoint)
        self._order.append(reference)
        return reference

    def load(self, reference: str) -> Checkpoint:
        if reference not in self._saved:
            raise CheckpointNotFoundError(f"No checkpoint named {reference}")
        return copy.deepcopy(self._saved[reference])

    def latest(self) -> Checkpoint | None:
        return self.load(self._order[-1]) if self._order else None

    @property
    def references(self) -> list[str]:
        return list(self._order)
