from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from iga_fsi.domain.exceptions import GeometryError

type Interval = tuple[float, float]
type ExactInterval = tuple[Fraction, Fraction]


@dataclass(frozen=True, slots=True)
class SplitStep:
    """One de Casteljau split: direction (0 = xi, 1 = eta), kept half, split parameter."""

    direction: int
    upper: bool
    t: Fraction = Fraction(1, 2)


@dataclass(frozen=True, slots=True)
class PatchLineage:
    """Where a Bézier segment or patch comes from.

    Records the source NURBS object, the knot-span indices and parameter intervals
    of the extracted element, and the ordered split history. Sub-boxes of the
    element are tracked with exact rationals so that neighbouring children agree
    bit for bit on their shared parameters.
    """

    source_id: int
    spans: tuple[int, ...]
    intervals: tuple[Interval, ...]
    splits: tuple[SplitStep, ...] = ()

    def __post_init__(self) -> None:
        if len(self.spans) != len(self.intervals) or len(self.spans) not in (1, 2):
            raise GeometryError("Lineage needs one span index and interval per direction")
        for step in self.splits:
            if not 0 <= step.direction < len(self.spans):
                raise GeometryError(f"Split direction {step.direction} out of range")
            if not Fraction(0) < step.t < Fraction(1):
                raise GeometryError(f"Split parameter must lie in (0, 1), got {step.t}")

    @property
    def dimension(self) -> int:
        return len(self.spans)

    @property
    def level(self) -> int:
        return len(self.splits)

    def levels(self) -> tuple[int, ...]:
        """Number of splits applied in each direction."""
        return tuple(
            sum(1 for s in self.splits if s.direction == d) for d in range(self.dimension)
        )

    def extended(
        self, direction: int, upper: bool, t: float | Fraction = Fraction(1, 2)
    ) -> PatchLineage:
        step = SplitStep(direction=direction, upper=upper, t=Fraction(t))
        return replace(self, splits=(*self.splits, step))

    def local_box(self) -> tuple[ExactInterval, ...]:
        """Sub-box of the extracted element's [0, 1]^d covered by this patch (exact)."""
        box = [(Fraction(0), Fraction(1)) for _ in range(self.dimension)]
        for step in self.splits:
            lo, hi = box[step.direction]
            mid = lo + step.t * (hi - lo)
            box[step.direction] = (mid, hi) if step.upper else (lo, mid)
        return tuple(box)

    def parametric_box(self) -> tuple[Interval, ...]:
        """Sub-box in source parameters; element end knots are reproduced exactly."""
        result = []
        for (a, b), (lo, hi) in zip(self.intervals, self.local_box(), strict=True):
            result.append((_interpolate(a, b, lo), _interpolate(a, b, hi)))
        return tuple(result)

    def exact_parametric_box(self) -> tuple[ExactInterval, ...]:
        """Sub-box in source parameters as exact rationals of the float knots."""
        result = []
        for (a, b), (lo, hi) in zip(self.intervals, self.local_box(), strict=True):
            fa, fb = Fraction(a), Fraction(b)
            result.append((fa + lo * (fb - fa), fa + hi * (fb - fa)))
        return tuple(result)

    def key(self) -> str:
        """Stable text id, e.g. ``2:3,1/x0y1`` (surface 2, spans (3, 1), two splits)."""
        path = "".join(f"{'xy'[s.direction]}{int(s.upper)}" for s in self.splits)
        spans = ",".join(str(i) for i in self.spans)
        return f"{self.source_id}:{spans}/{path}" if path else f"{self.source_id}:{spans}"


def _interpolate(a: float, b: float, s: Fraction) -> float:
    if s == 0:
        return a
    if s == 1:
        return b
    return float(Fraction(a) + s * (Fraction(b) - Fraction(a)))
