from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

from iga_fsi.application.use_cases.run_case import RunCaseRequest, RunCaseUseCase
from iga_fsi.domain.exceptions import DomainException

if TYPE_CHECKING:
    from collections.abc import Sequence

    from iga_fsi.application.ports import (
        CaseFactory,
        CheckpointRepository,
        FieldWriter,
        TimeSeriesRepository,
    )

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SweepRequest:
    alphas: Sequence[float]
    grid: str | None = None
    end_time: float | None = None


@dataclass(frozen=True, slots=True)
class SweepRow:
    alpha: float
    drag: float
    lift: float
    failed: bool = False

    @property
    def lift_to_drag(self) -> float:
        return self.lift / self.drag if self.drag else float("nan")


@dataclass(frozen=True, slots=True)
class SweepResponse:
    rows: tuple[SweepRow, ...]


class SweepUseCase:
    """Incidence study: one run per angle, time-averaged drag and lift coefficients."""

    def __init__(
        self,
        factory: CaseFactory,
        series: TimeSeriesRepository,
        checkpoints: CheckpointRepository,
        fields: FieldWriter,
    ) -> None:
        self._factory = factory
        self._series = series
        self._run = RunCaseUseCase(series, checkpoints, fields)

    def execute(self, request: SweepRequest) -> SweepResponse:
        rows: list[SweepRow] = []
        for alpha in request.alphas:
            try:
                case = self._factory.build(grid=request.grid, alpha=alpha)
                summary = self._run.execute(RunCaseRequest(case, request.end_time)).summary
                rows.append(SweepRow(alpha, summary["c_d"]["mean"], summary["c_l"]["mean"]))
            except (DomainException, KeyError) as e:
                logger.error("Incidence %.4g failed: %s", alpha, e)
                rows.append(SweepRow(alpha, float("nan"), float("nan"), failed=True))
        self._series.write_table(
            "sweep",
            ["alpha", "c_d", "c_l", "lift_to_drag", "failed"],
            [[r.alpha, r.drag, r.lift, r.lift_to_drag, float(r.failed)] for r in rows],
        )
        self._series.flush()
        return SweepResponse(tuple(rows))
