from __future__ import annotations

from dataclasses import dataclass

from iga_fsi.domain.exceptions import FlowError


@dataclass(frozen=True, slots=True)
class GasModel:
    """Calorically perfect gas with Newtonian viscosity.

    Invariants: gamma > 1, prandtl > 0, mu >= 0.
    """

    mu: float = 0.0
    gamma: float = 1.4
    prandtl: float = 0.72

    def __post_init__(self) -> None:
        if not self.gamma > 1.0:
            raise FlowError(f"Heat capacity ratio must exceed 1, got {self.gamma}")
        if not self.prandtl > 0.0:
            raise FlowError(f"Prandtl number must be positive, got {self.prandtl}")
        if self.mu < 0.0:
            raise FlowError(f"Dynamic viscosity cannot be negative, got {self.mu}")

    @property
    def is_viscous(self) -> bool:
        return self.mu > 0.0

    @property
    def conductivity(self) -> float:
        """Coefficient of the energy gradient in the heat flux, gamma * mu / Pr."""
        return self.gamma * self.mu / self.prandtl
