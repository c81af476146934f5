from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.exceptions import NonConformingMeshError

if TYPE_CHECKING:
    from numpy.typing import NDArray
    from scipy.sparse import csr_matrix

    from iga_fsi.domain.entities.bezier import BezierPatch
    from iga_fsi.domain.entities.nurbs_surface import NurbsSurface
    from iga_fsi.domain.value_objects import Side


@dataclass(frozen=True, slots=True, order=True)
class EdgeRef:
    """A local edge (0..3) of a patch."""

    patch: int
    edge: int


@dataclass(frozen=True, slots=True)
class SubEdge:
    """A whole patch edge covering [a, b] of a coarse edge.

    The fine edge coordinate u maps to a + u (b - a) on the coarse edge, or to
    b - u (b - a) when `reversed` is set.
    """

    ref: EdgeRef
    interval: tuple[float, float]
    reversed: bool = False

    def coarse_parameter(self, u: NDArray[np.float64]) -> NDArray[np.float64]:
        a, b = self.interval
        return b - u * (b - a) if self.reversed else a + u * (b - a)


@dataclass(frozen=True, slots=True)
class FaceRecord:
    """Interior face: one coarse edge and the fine edges tiling it.

    A conforming face has a single sub-edge on [0, 1]. A hanging face has two or
    more sub-edges whose intervals partition [0, 1] without overlap. Normals are
    taken outward from the side with the lower patch id.
    """

    coarse: EdgeRef
    fine: tuple[SubEdge, ...]

    def __post_init__(self) -> None:
        if not self.fine:
            raise NonConformingMeshError("Face needs at least one sub-edge")
        intervals = sorted(sub.interval for sub in self.fine)
        if intervals[0][0] != 0.0 or intervals[-1][1] != 1.0:
            raise NonConformingMeshError(f"Sub-edges of {self.coarse} do not cover [0, 1]")
        for (_, b), (a, _) in zip(intervals, intervals[1:], strict=False):
            if a != b:
                raise NonConformingMeshError(f"Sub-edges of {self.coarse} overlap or leave gaps")

    @property
    def is_hanging(self) -> bool:
        return len(self.fine) > 1

    def level_jump(self) -> int:
        """Refinement level difference implied by the shortest sub-edge."""
        shortest = min(b - a for a, b in (sub.interval for sub in self.fine))
        return round(-np.log2(shortest))


@dataclass(frozen=True, slots=True)
class BoundaryFace:
    """Patch edge on the domain boundary with its condition tag and source surface side."""

    ref: EdgeRef
    tag: str
    surface: int
    side: Side


@dataclass(frozen=True, slots=True, eq=False)
class MultiPatchMesh:
    """Fluid tessellation: rational Bézier patches plus connectivity.

    `regeneration` maps the stacked control points of the underlying surfaces
    (weights fixed) to the stacked patch control points, shape
    (patch_count * (p+1)^2, total surface control points). Connectivity never
    changes during a run; moving meshes only produce new control point arrays.
    """

    degree: int
    patches: tuple[BezierPatch, ...]
    faces: tuple[FaceRecord, ...]
    boundary_faces: tuple[BoundaryFace, ...]
    surfaces: tuple[NurbsSurface, ...]
    regeneration: csr_matrix
    control_points: NDArray[np.float64] = field(init=False)
    weights: NDArray[np.float64] = field(init=False)

    def __post_init__(self) -> None:
        nb = (self.degree + 1) ** 2
        points = np.stack([p.control_points.reshape(nb, 2) for p in self.patches])
        weights = np.stack([p.weights.reshape(nb) for p in self.patches])
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "control_points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def patch_count(self) -> int:
        return len(self.patches)

    @property
    def basis_size(self) -> int:
        return (self.degree + 1) ** 2

    @property
    def dofs_per_variable(self) -> int:
        return self.patch_count * self.basis_size

    @property
    def boundary_tags(self) -> dict[int, str]:
        """Boundary face index -> condition tag."""
        return {i: face.tag for i, face in enumerate(self.boundary_faces)}

    def tags(self) -> set[str]:
        return {face.tag for face in self.boundary_faces}

    def surface_offsets(self) -> NDArray[np.intp]:
        sizes = [s.shape[0] * s.shape[1] for s in self.surfaces]
        return np.concatenate([[0], np.cumsum(sizes)]).astype(np.intp)

    def stacked_surface_points(self) -> NDArray[np.float64]:
        return np.concatenate([s.control_net.reshape(-1, 2) for s in self.surfaces])

    def regenerate(self, surface_points: NDArray[np.float64]) -> NDArray[np.float64]:
        """Patch control points (K, nb, 2) for moved surface control points (Ns, 2)."""
        out = self.regeneration @ np.asarray(surface_points, dtype=np.float64)
        return np.asarray(out).reshape(self.patch_count, self.basis_size, 2)

    def level_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(p.lineage.level for p in self.patches).items()))

    def domain_diagonal(self) -> float:
        pts = self.control_points.reshape(-1, 2)
        span = pts.max(axis=0) - pts.min(axis=0)
        return float(np.hypot(span[0], span[1]))
