from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import InvalidKnotVectorError, ParameterOutOfRangeError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

MAX_DEGREE = 4
KNOT_TOLERANCE = 1e-12


@dataclass(frozen=True, slots=True, eq=False)
class KnotVector:
    """Open, nondecreasing knot vector of a B-spline basis.

    Invariants:
      - 0 <= degree <= 4 (curves and patches use 1..4, degree 0 is the recursion base)
      - knots nondecreasing, first and last knots repeated exactly degree+1 times
      - len(knots) = n + degree + 1 with n the number of basis functions

    Knots closer than 1e-12 x (knot range) are treated as equal when counting
    multiplicities.
    """

    knots: NDArray[np.float64]
    degree: int

    def __post_init__(self) -> None:
        knots = np.array(self.knots, dtype=np.float64)
        p = self.degree

        if not 0 <= p <= MAX_DEGREE:
            raise InvalidKnotVectorError(f"Degree must be in [0, {MAX_DEGREE}], got {p}")
        if knots.ndim != 1 or knots.size < 2 * (p + 1):
            raise InvalidKnotVectorError(
                f"Degree {p} needs at least {2 * (p + 1)} knots, got {knots.size}"
            )
        if not np.all(np.isfinite(knots)):
            raise InvalidKnotVectorError("Knots must be finite")
        if np.any(np.diff(knots) < 0.0):
            raise InvalidKnotVectorError("Knots must be nondecreasing")

        span = knots[-1] - knots[0]
        if span <= 0.0:
            raise InvalidKnotVectorError("Knot range must have positive length")

        tol = KNOT_TOLERANCE * span
        if np.any(knots[: p + 1] - knots[0] > tol) or np.any(knots[-1] - knots[-p - 1 :] > tol):
            raise InvalidKnotVectorError(f"End knots must be repeated {p + 1} times (open form)")
        if knots[p + 1] - knots[0] <= tol or knots[-1] - knots[-p - 2] <= tol:
            raise InvalidKnotVectorError(f"End knots must have multiplicity exactly {p + 1}")

        knots.setflags(write=False)
        object.__setattr__(self, "knots", knots)

    @classmethod
    def uniform(
        cls, degree: int, elements: int, start: float = 0.0, end: float = 1.0
    ) -> KnotVector:
        """Open knot vector with `elements` equal spans on [start, end]."""
        if elements < 1:
            raise InvalidKnotVectorError(f"Element count must be positive, got {elements}")
        interior = np.linspace(start, end, elements + 1)[1:-1]
        knots = np.concatenate([[start] * (degree + 1), interior, [end] * (degree + 1)])
        return cls(knots=knots, degree=degree)

    @classmethod
    def from_breaks(cls, degree: int, breaks: ArrayLike) -> KnotVector:
        """Open knot vector with simple interior knots at the given break points."""
        values = np.asarray(breaks, dtype=np.float64)
        lo = np.full(degree + 1, values[0])
        hi = np.full(degree + 1, values[-1])
        knots = np.concatenate([lo, values[1:-1], hi])
        return cls(knots=knots, degree=degree)

    @property
    def size(self) -> int:
        """Number of basis functions n."""
        return int(self.knots.size - self.degree - 1)

    @property
    def first(self) -> float:
        return float(self.knots[0])

    @property
    def last(self) -> float:
        return float(self.knots[-1])

    @property
    def tolerance(self) -> float:
        return KNOT_TOLERANCE * (self.last - self.first)

    def unique_knots(self) -> NDArray[np.float64]:
        """Distinct knot values (break points), tolerance-aware."""
        knots = self.knots
        keep = np.concatenate([[True], np.diff(knots) > self.tolerance])
        return knots[keep]

    def multiplicity(self, xi: float) -> int:
        return int(np.count_nonzero(np.abs(self.knots - xi) <= self.tolerance))

    def interior_knots(self) -> NDArray[np.float64]:
        p = self.degree
        return self.knots[p + 1 : self.knots.size - p - 1]

    def clamp(self, xi: float) -> float:
        """Return xi clamped into the knot range, rejecting values beyond the tolerance."""
        if xi < self.first - self.tolerance or xi > self.last + self.tolerance:
            raise ParameterOutOfRangeError(
                f"Parameter {xi!r} outside knot range [{self.first}, {self.last}]"
            )
        return min(max(float(xi), self.first), self.last)

    def find_span(self, xi: float) -> int:
        """Index i with knots[i] <= xi < knots[i+1]; the final knot maps to the last span."""
        x = self.clamp(xi)
        span = int(np.searchsorted(self.knots, x, side="right")) - 1
        return min(max(span, self.degree), self.size - 1)

    def spans(self) -> list[int]:
        """Indices of nonempty knot spans, in increasing parameter order."""
        tol = self.tolerance
        return [
            i
            for i in range(self.degree, self.size)
            if self.knots[i + 1] - self.knots[i] > tol
        ]

    def span_bounds(self, span: int) -> tuple[float, float]:
        return float(self.knots[span]), float(self.knots[span + 1])

    def element_count(self) -> int:
        return len(self.spans())

    def with_knot(self, xi: float) -> KnotVector:
        knots = np.sort(np.concatenate([self.knots, [xi]]), kind="stable")
        return KnotVector(knots=knots, degree=self.degree)

    def mapped(self, start: float, end: float) -> KnotVector:
        """Affine reparametrisation onto [start, end]; start > end reverses the direction."""
        s = (self.knots - self.first) / (self.last - self.first)
        if start <= end:
            knots = start + s * (end - start)
            knots[0 : self.degree + 1] = start
            knots[-self.degree - 1 :] = end
            return KnotVector(knots=knots, degree=self.degree)
        return self.reversed().mapped(end, start)

    def reversed(self) -> KnotVector:
        knots = (self.first + self.last) - self.knots[::-1]
        knots[0 : self.degree + 1] = self.first
        knots[-self.degree - 1 :] = self.last
        return KnotVector(knots=knots, degree=self.degree)

    def matches(self, other: KnotVector, rtol: float = 1e-12) -> bool:
        if self.degree != other.degree or self.knots.size != other.knots.size:
            return False
        scale = max(self.last - self.first, 1.0)
        return bool(np.all(np.abs(self.knots - other.knots) <= rtol * scale))
