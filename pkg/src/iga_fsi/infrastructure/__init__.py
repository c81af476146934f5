"""Infrastructure layer - Concrete implementations of ports.

This layer contains:
- Configuration: Validated case documents, overrides and packaged presets
- Geometry: Benchmark layouts and the geometry exchange file
- Case Factory: Assembly of runnable cases from a configuration
- Persistence: Checkpoints, CSV/JSON result series and VTK snapshots
- Execution: Serial and thread-pool patch executors, logging setup

Infrastructure adapters implement the ports defined in the application layer.
"""

from iga_fsi.infrastructure.case_factory import ConfiguredCaseFactory
from iga_fsi.infrastructure.checkpoints import (
    InMemoryCheckpointRepository,
    NpzCheckpointRepository,
)
from iga_fsi.infrastructure.executors import (
    SerialPatchExecutor,
    ThreadPatchExecutor,
    executor_for,
)
from iga_fsi.infrastructure.logging_setup import configure_logging
from iga_fsi.infrastructure.time_series import (
    CsvTimeSeriesRepository,
    InMemoryTimeSeriesRepository,
)
from iga_fsi.infrastructure.vtk_writer import InMemoryFieldWriter, VtkFieldWriter

__all__ = [
    "ConfiguredCaseFactory",
    "CsvTimeSeriesRepository",
    "InMemoryCheckpointRepository",
    "InMemoryFieldWriter",
    "InMemoryTimeSeriesRepository",
    "NpzCheckpointRepository",
    "SerialPatchExecutor",
    "ThreadPatchExecutor",
    "VtkFieldWriter",
    "configure_logging",
    "executor_for",
]
