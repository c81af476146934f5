"""Ports - Abstract interfaces for external dependencies.

Ports define the contracts that infrastructure adapters must implement.
This allows the application layer to remain decoupled from concrete implementations.
"""

from iga_fsi.application.ports.case_factory import CaseFactory
from iga_fsi.application.ports.checkpoint_repository import Checkpoint, CheckpointRepository
from iga_fsi.application.ports.field_writer import FieldWriter
from iga_fsi.application.ports.patch_executor import PatchExecutor
from iga_fsi.application.ports.time_series_repository import TimeSeriesRepository

__all__ = [
    "CaseFactory",
    "Checkpoint",
    "CheckpointRepository",
    "FieldWriter",
    "PatchExecutor",
    "TimeSeriesRepository",
]
