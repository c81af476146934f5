from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

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

QUANTITIES = ("c_d", "c_l", "force_x", "force_y", "u_x", "u_y")
COUNT_SUFFIXES = ("_dofs", "_points", "_elements")


@dataclass(frozen=True, slots=True)
class ConvergenceRequest:
    grids: Sequence[str] = ()
    end_time: float | None = None


@dataclass(frozen=True, slots=True)
class ConvergenceRow:
    grid: str
    failed: bool
    dofs: dict[str, int] = field(default_factory=dict)
    means: dict[str, float] = field(default_factory=dict)
    amplitudes: dict[str, float] = field(default_factory=dict)
    deltas: dict[str, float] = field(default_factory=dict)
    error: str | None = None


@dataclass(frozen=True, slots=True)
class ConvergenceResponse:
    rows: tuple[ConvergenceRow, ...]

    def as_table(self) -> list[dict[str, Any]]:
        table = []
        for row in self.rows:
            entry: dict[str, Any] = {"grid": row.grid, "failed": row.failed, **row.dofs}
            entry.update({f"{k}_mean": v for k, v in row.means.items()})
            entry.update({f"{k}_amplitude": v for k, v in row.amplitudes.items()})
            entry.update({f"{k}_delta": v for k, v in row.deltas.items()})
            if row.error is not None:
                entry["error"] = row.error
            table.append(entry)
        return table


class ConvergenceUseCase:
    """Runs the same case on a list of grids and tabulates the summary values.

    A failing grid is recorded as a failed row and the study continues.
    Deltas are relative changes of each mean against the previous successful row.
    """

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

    def execute(self, request: ConvergenceRequest) -> ConvergenceResponse:
        grids = list(request.grids) or self._factory.grids()
        rows: list[ConvergenceRow] = []
        previous: dict[str, float] | None = None
        for grid in grids:
            # Step 1: Build and run one grid
            try:
                case = self._factory.build(grid=grid)
                result = self._run.execute(RunCaseRequest(case, request.end_time))
            except DomainException as e:
                logger.error("Grid %s failed: %s", grid, e)
                rows.append(ConvergenceRow(grid=grid, failed=True, error=str(e)))
                continue

            # Step 2: Collect means and amplitudes
            summary = result.summary
            means = {q: summary[q]["mean"] for q in QUANTITIES if q in summary}
            amplitudes = {q: summary[q]["amplitude"] for q in QUANTITIES if q in summary}
            dofs = {k: v for k, v in summary.items() if k.endswith(COUNT_SUFFIXES)}
            deltas = {}
            if previous is not None:
                deltas = {
                    q: (m - previous[q]) / abs(previous[q])
                    for q, m in means.items()
                    if previous.get(q)
                }
            rows.append(ConvergenceRow(grid, False, dofs, means, amplitudes, deltas))
            previous = means

        # Step 3: Persist the table
        response = ConvergenceResponse(tuple(rows))
        self._series.write_document("convergence", {"rows": response.as_table()})
        self._series.flush()
        return response
