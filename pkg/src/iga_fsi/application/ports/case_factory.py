from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from iga_fsi.application.simulation import SimulationCase


class CaseFactory(ABC):
    """Port for assembling runnable cases from a configuration.

    Contract:
    - build() returns a fresh case at its initial state on every call
    - `grid` selects a named grid of the configuration (None keeps the default)
    - `alpha` overrides the free-stream incidence in degrees where the case has one
    - grids() lists the named grids in increasing resolution
    - configuration problems raise ConfigurationError
    """

    @abstractmethod
    def build(self, grid: str | None = None, alpha: float | None = None) -> SimulationCase: ...

    @abstractmethod
    def grids(self) -> list[str]: ...
