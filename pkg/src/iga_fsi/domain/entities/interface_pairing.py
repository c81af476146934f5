from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import CouplingError

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities.multipatch_mesh import EdgeRef
    from iga_fsi.domain.value_objects import Side


@dataclass(frozen=True, slots=True)
class InterfaceSpec:
    """Declares that a fluid surface side lies on a structure boundary.

    `structure_side` is None for the membrane (the structure is a single curve),
    otherwise the side of the solid surface. The fluid side parameter range is
    mapped affinely onto `structure_range`; a decreasing range means the two
    parametrisations run in opposite directions.
    """

    fluid_surface: int
    fluid_side: Side
    structure_range: tuple[float, float]
    structure_side: Side | None = None

    def __post_init__(self) -> None:
        a, b = self.structure_range
        if a == b:
            raise CouplingError("Interface structure range must have positive length")

    @property
    def reversed(self) -> bool:
        a, b = self.structure_range
        return a > b


@dataclass(frozen=True, slots=True, eq=False)
class PairedEdge:
    """One fluid boundary Bézier edge and its image on the structure boundary.

    The edge parameter u in [0, 1] maps to s0 + u (s1 - s0) on the structure
    curve, with (s0, s1) kept as exact rationals. Quadrature nodes are stored in
    both parametrisations; the weights refer to the fluid edge parameter.
    """

    spec_index: int
    edge: EdgeRef
    boundary_face: int
    structure_interval: tuple[Fraction, Fraction]
    fluid_points: NDArray[np.float64]
    structure_points: NDArray[np.float64]
    weights: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name in ("fluid_points", "structure_points", "weights"):
            array = np.array(getattr(self, name), dtype=np.float64)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        if not self.fluid_points.shape == self.structure_points.shape == self.weights.shape:
            raise CouplingError("Paired quadrature arrays must share a shape")

    def structure_parameter(self, u: NDArray[np.float64]) -> NDArray[np.float64]:
        s0, s1 = (float(s) for s in self.structure_interval)
        return s0 + np.asarray(u) * (s1 - s0)

    @property
    def image_length(self) -> Fraction:
        s0, s1 = self.structure_interval
        return abs(s1 - s0)


@dataclass(frozen=True, slots=True, eq=False)
class InterfacePairing:
    """Per-quadrature-point pairing between fluid boundary edges and the structure boundary."""

    specs: tuple[InterfaceSpec, ...]
    edges: tuple[PairedEdge, ...]

    def edges_for(self, spec_index: int) -> tuple[PairedEdge, ...]:
        return tuple(e for e in self.edges if e.spec_index == spec_index)

    def covered_length(self, spec_index: int) -> Fraction:
        """Exact total length of the structure parameter images of one spec's edges."""
        return sum((e.image_length for e in self.edges_for(spec_index)), Fraction(0))

    @property
    def quadrature_size(self) -> int:
        return sum(e.weights.size for e in self.edges)
