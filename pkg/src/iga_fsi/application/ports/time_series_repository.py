from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence


class TimeSeriesRepository(ABC):
    """Port for tabular run outputs and documents.

    Contract:
    - append() adds one row to a named series; the first row fixes the columns
    - rows appended to the same series must carry the same columns
    - write_table() replaces a whole named table
    - write_document() stores a JSON-serialisable mapping under a name
    - flush() makes everything written so far durable; it is idempotent
    """

    @abstractmethod
    def append(self, series: str, row: Mapping[str, float]) -> None: ...

    @abstractmethod
    def write_table(
        self, name: str, columns: Sequence[str], rows: Sequence[Sequence[float]]
    ) -> None: ...

    @abstractmethod
    def write_document(self, name: str, payload: Mapping[str, Any]) -> None: ...

    @abstractmethod
    def flush(self) -> None: ...
