from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum

from iga_fsi.domain.exceptions import MeshError

DEFAULT_MAX_LEVEL_JUMP = 1


class SplitDirection(StrEnum):
    BOTH = "both"
    XI = "xi"
    ETA = "eta"

    def levels(self, levels: int) -> tuple[int, int]:
        """Split counts (xi, eta) for a rule with the given number of levels."""
        match self:
            case SplitDirection.BOTH:
                return levels, levels
            case SplitDirection.XI:
                return levels, 0
            case SplitDirection.ETA:
                return 0, levels
        raise MeshError(f"Unknown split direction {self}")


@dataclass(frozen=True, slots=True)
class RefinementRule:
    """Selects patches and the number of mid-parameter splits applied to them.

    A patch is selected when it comes from `surface` (and, if given, from the
    knot spans `spans`), or when its control-point centroid lies inside `box`
    (xmin, ymin, xmax, ymax). Surface and box criteria combine with AND.
    """

    levels: int
    direction: SplitDirection = SplitDirection.BOTH
    surface: int | None = None
    spans: tuple[int, int] | None = None
    box: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        if self.levels < 0:
            raise MeshError(f"Refinement levels cannot be negative, got {self.levels}")
        if self.surface is None and self.box is None:
            raise MeshError("Refinement rule needs a surface or a box")
        if self.spans is not None and self.surface is None:
            raise MeshError("Span selection requires a surface")
        if self.box is not None:
            xmin, ymin, xmax, ymax = self.box
            if not (xmin < xmax and ymin < ymax):
                raise MeshError(f"Refinement box must be (xmin, ymin, xmax, ymax), got {self.box}")

    def selects(self, surface: int, spans: tuple[int, ...], centroid: tuple[float, float]) -> bool:
        if self.surface is not None:
            if surface != self.surface:
                return False
            if self.spans is not None and tuple(spans) != self.spans:
                return False
        if self.box is not None:
            xmin, ymin, xmax, ymax = self.box
            x, y = centroid
            if not (xmin <= x <= xmax and ymin <= y <= ymax):
                return False
        return True

    def split_counts(self) -> tuple[int, int]:
        return self.direction.levels(self.levels)


@dataclass(frozen=True, slots=True)
class RefinementPlan:
    """Declarative static refinement with a bound on the level jump across faces."""

    rules: tuple[RefinementRule, ...] = ()
    max_level_jump: int = DEFAULT_MAX_LEVEL_JUMP

    def __post_init__(self) -> None:
        if self.max_level_jump < 0:
            raise MeshError("Maximum level jump cannot be negative")

    def split_counts(
        self, surface: int, spans: tuple[int, ...], centroid: tuple[float, float]
    ) -> tuple[int, int]:
        """Largest split count per direction over all rules selecting the patch."""
        xi = eta = 0
        for rule in self.rules:
            if rule.selects(surface, spans, centroid):
                rx, ry = rule.split_counts()
                xi, eta = max(xi, rx), max(eta, ry)
        return xi, eta
