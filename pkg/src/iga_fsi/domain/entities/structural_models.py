from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import StructureError
from iga_fsi.domain.value_objects import Side

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities.nurbs_curve import NurbsCurve
    from iga_fsi.domain.entities.nurbs_surface import NurbsSurface


@dataclass(frozen=True, slots=True, eq=False)
class MembraneModel:
    """Tensioned membrane of span L pinned at both ends.

    The reference curve lies on the x-axis; its x-coordinates are fixed and the
    transverse displacement of every control point is a DOF. The first and last
    DOFs are constrained to zero.
    """

    curve: NurbsCurve
    density: float
    thickness: float
    young: float
    pretension: float = 0.0
    span: float = field(default=0.0)

    def __post_init__(self) -> None:
        if not self.density > 0.0 or not self.thickness > 0.0:
            raise StructureError("Membrane density and thickness must be positive")
        if self.young < 0.0 or self.pretension < 0.0:
            raise StructureError("Membrane modulus and pretension cannot be negative")
        if self.young == 0.0 and self.pretension == 0.0:
            raise StructureError("Membrane needs a modulus or a pretension to carry load")
        if np.any(np.abs(self.curve.control_points[:, 1]) > 0.0):
            raise StructureError("Membrane reference curve must lie on the x-axis")
        x = self.curve.control_points[:, 0]
        if np.any(np.diff(x) <= 0.0):
            raise StructureError("Membrane control points must be strictly increasing in x")
        if self.span == 0.0:
            object.__setattr__(self, "span", float(x[-1] - x[0]))
        elif not self.span > 0.0:
            raise StructureError(f"Membrane span must be positive, got {self.span}")

    @property
    def dof_count(self) -> int:
        return self.curve.size

    @property
    def free_dofs(self) -> NDArray[np.intp]:
        return np.arange(1, self.curve.size - 1)

    @property
    def constrained_dofs(self) -> NDArray[np.intp]:
        return np.array([0, self.curve.size - 1])

    @property
    def state_shape(self) -> tuple[int, ...]:
        return (self.curve.size,)

    def deformed_curve(self, u: NDArray[np.float64]) -> NurbsCurve:
        points = self.curve.control_points.copy()
        points[:, 1] += u
        return self.curve.with_control_points(points)

    def displacement_field(self, u: NDArray[np.float64]) -> NDArray[np.float64]:
        """Control point displacements as 2-vectors (x components zero)."""
        return np.column_stack([np.zeros_like(u), u])


@dataclass(frozen=True, slots=True, eq=False)
class HyperelasticModel:
    """Saint Venant-Kirchhoff solid on an undeformed NURBS surface.

    Displacement DOFs are (n1 * n2, 2), flattened C-order over the control net.
    Control points on Dirichlet sides are clamped; interface sides receive the
    fluid traction.
    """

    surface: NurbsSurface
    density: float
    lame_lambda: float
    lame_mu: float
    gravity: tuple[float, float] = (0.0, 0.0)
    dirichlet_sides: tuple[Side, ...] = (Side.XI0,)
    interface_sides: tuple[Side, ...] = (Side.ETA0, Side.XI1, Side.ETA1)

    def __post_init__(self) -> None:
        if not self.density > 0.0:
            raise StructureError(f"Solid density must be positive, got {self.density}")
        if not self.lame_mu > 0.0:
            raise StructureError(f"Shear modulus must be positive, got {self.lame_mu}")
        if self.lame_lambda + self.lame_mu <= 0.0:
            raise StructureError("Lamé parameters must satisfy lambda + mu > 0")
        if set(self.dirichlet_sides) & set(self.interface_sides):
            raise StructureError("A side cannot be both clamped and loaded by the fluid")

    @classmethod
    def from_young(
        cls,
        surface: NurbsSurface,
        density: float,
        young: float,
        poisson: float,
        gravity: tuple[float, float] = (0.0, 0.0),
        dirichlet_sides: tuple[Side, ...] = (Side.XI0,),
        interface_sides: tuple[Side, ...] = (Side.ETA0, Side.XI1, Side.ETA1),
    ) -> HyperelasticModel:
        """Build from Young's modulus and Poisson ratio (plane strain)."""
        lam, mu = lame_from_young(young, poisson)
        return cls(surface, density, lam, mu, gravity, dirichlet_sides, interface_sides)

    @property
    def control_point_count(self) -> int:
        n1, n2 = self.surface.shape
        return n1 * n2

    @property
    def dof_count(self) -> int:
        return 2 * self.control_point_count

    @property
    def state_shape(self) -> tuple[int, ...]:
        return (self.control_point_count, 2)

    @property
    def clamped_points(self) -> NDArray[np.intp]:
        if not self.dirichlet_sides:
            return np.zeros(0, dtype=np.intp)
        rows = [self.surface.side_indices(s) for s in self.dirichlet_sides]
        return np.unique(np.concatenate(rows))

    @property
    def constrained_dofs(self) -> NDArray[np.intp]:
        points = self.clamped_points
        return np.sort(np.concatenate([2 * points, 2 * points + 1]))

    @property
    def free_dofs(self) -> NDArray[np.intp]:
        return np.setdiff1d(np.arange(self.dof_count), self.constrained_dofs)

    def deformed_surface(self, u: NDArray[np.float64]) -> NurbsSurface:
        n1, n2 = self.surface.shape
        return self.surface.with_control_net(self.surface.control_net + u.reshape(n1, n2, 2))

    def displacement_field(self, u: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.asarray(u, dtype=np.float64).reshape(-1, 2)


def lame_from_young(young: float, poisson: float) -> tuple[float, float]:
    """Plane-strain Lamé parameters (lambda, mu) from E and nu."""
    if not young > 0.0:
        raise StructureError(f"Young's modulus must be positive, got {young}")
    if not -1.0 < poisson < 0.5:
        raise StructureError(f"Poisson ratio must lie in (-1, 0.5), got {poisson}")
    mu = young / (2.0 * (1.0 + poisson))
    lam = poisson * young / ((1.0 + poisson) * (1.0 - 2.0 * poisson))
    return lam, mu
