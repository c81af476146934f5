from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum

from iga_fsi.domain.exceptions import FlowError


class BoundaryKind(StrEnum):
    WALL = "wall"
    FARFIELD = "farfield"
    INFLOW = "inflow"
    OUTFLOW = "outflow"


@dataclass(frozen=True, slots=True)
class WallCondition:
    """No-slip wall moving with the mesh; adiabatic unless stated otherwise."""

    adiabatic: bool = True

    @property
    def kind(self) -> BoundaryKind:
        return BoundaryKind.WALL


@dataclass(frozen=True, slots=True)
class FarFieldCondition:
    """Characteristic far-field state (density, velocity, pressure)."""

    density: float
    velocity: tuple[float, float]
    pressure: float

    def __post_init__(self) -> None:
        if not self.density > 0.0 or not self.pressure > 0.0:
            raise FlowError("Far-field density and pressure must be positive")

    @property
    def kind(self) -> BoundaryKind:
        return BoundaryKind.FARFIELD

    @classmethod
    def at_incidence(
        cls, density: float, speed: float, pressure: float, alpha_deg: float
    ) -> FarFieldCondition:
        """Free stream of the given speed rotated by the incidence angle alpha."""
        alpha = math.radians(alpha_deg)
        return cls(
            density=density,
            velocity=(speed * math.cos(alpha), speed * math.sin(alpha)),
            pressure=pressure,
        )


@dataclass(frozen=True, slots=True)
class InflowCondition:
    """Parabolic channel inflow with a smooth start.

    u(y, t) = 1.5 * U_mean * (y - y0) * (H - (y - y0)) / (H / 2)^2 * s(t),
    s(t) = (1 - cos(pi t / t_ramp)) / 2 for t < t_ramp and 1 afterwards.
    """

    density: float
    mean_velocity: float
    height: float
    bottom: float = 0.0
    ramp_time: float = 2.0

    def __post_init__(self) -> None:
        if not self.density > 0.0 or not self.height > 0.0:
            raise FlowError("Inflow density and channel height must be positive")
        if self.ramp_time < 0.0:
            raise FlowError("Inflow ramp time cannot be negative")

    @property
    def kind(self) -> BoundaryKind:
        return BoundaryKind.INFLOW

    def ramp(self, t: float) -> float:
        return smooth_start(t, self.ramp_time)

    def profile(self, y: float) -> float:
        eta = y - self.bottom
        half = 0.5 * self.height
        return 1.5 * self.mean_velocity * eta * (self.height - eta) / (half * half)


@dataclass(frozen=True, slots=True)
class OutflowCondition:
    """Pressure outlet: ghost state keeps interior density and velocity."""

    pressure: float

    def __post_init__(self) -> None:
        if not self.pressure > 0.0:
            raise FlowError("Outflow pressure must be positive")

    @property
    def kind(self) -> BoundaryKind:
        return BoundaryKind.OUTFLOW


type BoundaryCondition = WallCondition | FarFieldCondition | InflowCondition | OutflowCondition


def smooth_start(t: float, ramp_time: float) -> float:
    """(1 - cos(pi t / t_ramp)) / 2 on [0, t_ramp), 1 afterwards."""
    if ramp_time <= 0.0 or t >= ramp_time:
        return 1.0
    if t <= 0.0:
        return 0.0
    return 0.5 * (1.0 - math.cos(math.pi * t / ramp_time))
