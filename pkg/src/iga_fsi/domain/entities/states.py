from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import DomainException

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray


def _frozen(values: ArrayLike) -> NDArray[np.float64]:
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class StructState:
    """Structural DOFs at one instant.

    For the membrane the arrays hold one transverse value per control point;
    for the solid they hold (n_cp, 2) displacement components. Constrained
    entries are kept at zero by the solvers.
    """

    u: NDArray[np.float64]
    v: NDArray[np.float64]
    a: NDArray[np.float64]
    time: float = 0.0

    def __post_init__(self) -> None:
        u, v, a = _frozen(self.u), _frozen(self.v), _frozen(self.a)
        if not u.shape == v.shape == a.shape:
            raise DomainException(
                f"Structural state arrays must share a shape, got {u.shape}, {v.shape}, {a.shape}"
            )
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "a", a)

    @classmethod
    def zeros(cls, shape: int | tuple[int, ...], time: float = 0.0) -> StructState:
        z = np.zeros(shape)
        return cls(u=z, v=z, a=z, time=time)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.u.shape)

    def with_acceleration(self, a: ArrayLike) -> StructState:
        return replace(self, a=np.asarray(a, dtype=np.float64))


@dataclass(frozen=True, slots=True, eq=False)
class FlowState:
    """Fluid DOFs: conservative variables w (K, nb, 4) and gradients g (K, nb, 4, 2)."""

    w: NDArray[np.float64]
    g: NDArray[np.float64]
    time: float = 0.0

    def __post_init__(self) -> None:
        w = _frozen(self.w)
        g = _frozen(self.g)
        if w.ndim != 3 or w.shape[2] != 4:
            raise DomainException(f"Flow state must have shape (K, nb, 4), got {w.shape}")
        if g.shape != (*w.shape, 2):
            raise DomainException(f"Gradient DOFs must have shape {(*w.shape, 2)}, got {g.shape}")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "g", g)

    @classmethod
    def uniform(
        cls, patch_count: int, basis_size: int, w0: ArrayLike, time: float = 0.0
    ) -> FlowState:
        """Every DOF set to one conservative vector; the rational basis reproduces constants."""
        w = np.broadcast_to(np.asarray(w0, dtype=np.float64), (patch_count, basis_size, 4))
        return cls(w=w, g=np.zeros((patch_count, basis_size, 4, 2)), time=time)

    @property
    def patch_count(self) -> int:
        return int(self.w.shape[0])

    @property
    def basis_size(self) -> int:
        return int(self.w.shape[1])


@dataclass(frozen=True, slots=True, eq=False)
class MeshMotion:
    """Patch control point positions and velocities (K, nb, 2) at one stage time."""

    positions: NDArray[np.float64]
    velocities: NDArray[np.float64]
    time: float = 0.0

    def __post_init__(self) -> None:
        x = _frozen(self.positions)
        v = _frozen(self.velocities)
        if x.ndim != 3 or x.shape[2] != 2 or x.shape != v.shape:
            raise DomainException(
                "Mesh positions and velocities must share shape (K, nb, 2), "
                f"got {x.shape}, {v.shape}"
            )
        object.__setattr__(self, "positions", x)
        object.__setattr__(self, "velocities", v)

    @classmethod
    def static(cls, positions: ArrayLike, time: float = 0.0) -> MeshMotion:
        x = np.asarray(positions, dtype=np.float64)
        return cls(positions=x, velocities=np.zeros_like(x), time=time)

    @property
    def is_static(self) -> bool:
        return not np.any(self.velocities)
