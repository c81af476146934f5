from __future__ import annotations

from dataclasses import dataclass

from iga_fsi.domain.exceptions import NumericsError


@dataclass(frozen=True, slots=True)
class NewmarkParams:
    """Newmark coefficients and step size.

    The defaults beta = 1/4, gamma = 1/2 give the average-acceleration scheme:
    second order and unconditionally stable for linear problems.
    """

    dt: float
    beta: float = 0.25
    gamma: float = 0.5

    def __post_init__(self) -> None:
        if not self.dt > 0.0:
            raise NumericsError(f"Newmark step must be positive, got dt={self.dt}")
        if not self.beta > 0.0:
            raise NumericsError(f"Newmark beta must be positive, got {self.beta}")
        if not self.gamma > 0.0:
            raise NumericsError(f"Newmark gamma must be positive, got {self.gamma}")
