from __future__ import annotations

from enum import StrEnum


class Side(StrEnum):
    """Boundary side of a NURBS surface in its parameter domain."""

    XI0 = "xi0"
    XI1 = "xi1"
    ETA0 = "eta0"
    ETA1 = "eta1"

    @property
    def direction(self) -> int:
        """Parametric direction running along the side (0 = xi, 1 = eta)."""
        return 1 if self in (Side.XI0, Side.XI1) else 0

    @property
    def normal_direction(self) -> int:
        """Parametric direction held fixed on the side."""
        return 1 - self.direction

    @property
    def at_end(self) -> bool:
        """True for the side at the upper end of the fixed direction."""
        return self in (Side.XI1, Side.ETA1)
