from __future__ import annotations

import csv
import json
import logging
from typing import TYPE_CHECKING, Any, TextIO

from iga_fsi.application.ports import TimeSeriesRepository
from iga_fsi.domain.exceptions import DomainException

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence
    from pathlib import Path

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """numpy scalars and arrays as plain Python values for JSON."""
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"Not JSON serialisable: {type(value).__name__}")


def _float(value: float) -> str:
    # repr keeps every digit, so identical runs give identical files
    return repr(float(value))


class CsvTimeSeriesRepository(TimeSeriesRepository):
    """Series and tables as CSV files, documents as JSON, all in one directory.

    Implementation notes:
    - Each series keeps its file open and writes rows as they arrive
    - flush() pushes buffered rows to disk; close() also closes the files
    """

    def __init__(self, directory: Path) -> None:
        self.directory = directory
        self.directory.mkdir(parents=True, exist_ok=True)
        self._files: dict[str, TextIO] = {}
        self._columns: dict[str, tuple[str, ...]] = {}

    def append(self, series: str, row: Mapping[str, float]) -> None:
        columns = tuple(row)
        if series not in self._files:
            handle = (self.directory / f"{series}.csv").open("w", newline="", encoding="utf-8")
            csv.writer(handle).writerow(columns)
            self._files[series] = handle
            self._columns[series] = columns
        elif columns != self._columns[series]:
            raise DomainException(
                f"Series {series} has columns {self._columns[series]}, got {columns}"
            )
        csv.writer(self._files[series]).writerow([_float(row[c]) for c in columns])

    def write_table(
        self, name: str, columns: Sequence[str], rows: Sequence[Sequence[float]]
    ) -> None:
        path = self.directory / f"{name}.csv"
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(columns)
            writer.writerows([_float(v) for v in row] for row in rows)
        logger.debug("Wrote %s (%d rows)", path, len(rows))

    def write_document(self, name: str, payload: Mapping[str, Any]) -> None:
        path = self.directory / f"{name}.json"
        path.write_text(json.dumps(payload, indent=2, default=_plain) + "\n", encoding="utf-8")

    def flush(self) -> None:
        for handle in self._files.values():
            handle.flush()

    def close(self) -> None:
        for handle in self._files.values():
            handle.close()
        self._files.clear()


class InMemoryTimeSeriesRepository(TimeSeriesRepository):
    """Keeps everything in dictionaries for assertions in tests."""

    def __init__(self) -> None:
        self.series: dict[str, list[dict[str, float]]] = {}
        self.tables: dict[str, tuple[list[str], list[list[float]]]] = {}
        self.documents: dict[str, dict[str, Any]] = {}
        self.flushes = 0

    def append(self, series: str, row: Mapping[str, float]) -> None:
        rows = self.series.setdefault(series, [])
        if rows and tuple(rows[0]) != tuple(row):
            raise DomainException(f"Series {series} has columns {tuple(rows[0])}, got {tuple(row)}")
        rows.append(dict(row))

    def write_table(
        self, name: str, columns: Sequence[str], rows: Sequence[Sequence[float]]
    ) -> None:
        self.tables[name] = (list(columns), [list(row) for row in rows])

    def write_document(self, name: str, payload: Mapping[str, Any]) -> None:
        self.documents[name] = json.loads(json.dumps(payload, default=_plain))

    def flush(self) -> None:
        self.flushes += 1

    def column(self, series: str, name: str) -> list[float]:
        return [row[name] for row in self.series.get(series, [])]
