from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from iga_fsi.application.use_cases.run_case import (
    RunCaseRequest,
    RunCaseResponse,
    RunCaseUseCase,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from iga_fsi.application.ports import (
        CaseFactory,
        CheckpointRepository,
        FieldWriter,
        TimeSeriesRepository,
    )

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ResumeCaseRequest:
    reference: str
    end_time: float | None = None


class ResumeCaseUseCase:
    """Continues a run from a checkpoint.

    The case is rebuilt from the configuration stored in the checkpoint, so the
    resumed run uses exactly the settings it was started with.
    """

    def __init__(
        self,
        factory_for: Callable[[str], CaseFactory],
        series: TimeSeriesRepository,
        checkpoints: CheckpointRepository,
        fields: FieldWriter,
    ) -> None:
        self._factory_for = factory_for
        self._checkpoints = checkpoints
        self._run = RunCaseUseCase(series, checkpoints, fields)

    def execute(self, request: ResumeCaseRequest) -> RunCaseResponse:
        """Raises:
        CheckpointNotFoundError: the reference does not exist.
        ConfigurationError: the stored configuration or arrays do not fit.
        """
        # Step 1: Load the checkpoint
        checkpoint = self._checkpoints.load(request.reference)

        # Step 2: Rebuild the case and restore its state
        case = self._factory_for(checkpoint.config).build()
        case.restore(checkpoint)
        logger.info("Resuming %s at step %d, t=%.6g", case.name, case.step, case.time)

        # Step 3: Continue
        return self._run.execute(RunCaseRequest(case, request.end_time))
