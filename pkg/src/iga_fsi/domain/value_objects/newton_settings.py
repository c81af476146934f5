from __future__ import annotations

from dataclasses import dataclass

from iga_fsi.domain.exceptions import NumericsError

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 25


@dataclass(frozen=True, slots=True)
class NewtonSettings:
    """Newton-Raphson stopping rules.

    Convergence is declared when ||R|| <= tolerance * ||R0|| or, if set,
    ||R|| <= absolute_tolerance.
    """

    tolerance: float = DEFAULT_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    line_search: bool = False
    absolute_tolerance: float = 0.0

    def __post_init__(self) -> None:
        if not self.tolerance > 0.0:
            raise NumericsError(f"Newton tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise NumericsError(f"Newton needs at least one iteration, got {self.max_iterations}")
        if self.absolute_tolerance < 0.0:
            raise NumericsError("Absolute Newton tolerance cannot be negative")
