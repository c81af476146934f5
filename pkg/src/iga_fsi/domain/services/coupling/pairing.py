"""Quadrature pairing between fluid boundary Bézier edges and structure boundary curves.

Every fluid boundary edge on an interface side descends, through extraction and
splits, from the fluid surface side curve; its lineage box gives the exact
parameter sub-interval it covers, and the interface spec maps that interval
affinely onto the structure parameter range.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import InterfacePairing, PairedEdge
from iga_fsi.domain.exceptions import LineageMismatchError, UnpairedEdgeError
from iga_fsi.domain.services.mesh import edge_curve_points
from iga_fsi.domain.services.nurbs import sample_curve
from iga_fsi.domain.services.numerics import gauss_legendre

if TYPE_CHECKING:
    from collections.abc import Sequence

    from iga_fsi.domain.entities import InterfaceSpec, MultiPatchMesh, NurbsCurve

logger = logging.getLogger(__name__)

PAIRING_TOLERANCE = 1e-10


def structure_map(mesh: MultiPatchMesh, spec: InterfaceSpec) -> tuple[Fraction, Fraction]:
    """(offset, slope) of s = offset + slope * t, t the fluid side parameter (exact)."""
    kv = mesh.surfaces[spec.fluid_surface].knot_vectors[spec.fluid_side.direction]
    f0, f1 = Fraction(kv.first), Fraction(kv.last)
    r0, r1 = (Fraction(r) for r in spec.structure_range)
    slope = (r1 - r0) / (f1 - f0)
    return r0 - slope * f0, slope


def build_pairing(
    mesh: MultiPatchMesh,
    specs: Sequence[InterfaceSpec],
    curves: Sequence[NurbsCurve],
    n_points: int | None = None,
) -> InterfacePairing:
    """Pair every fluid boundary edge of each interface side with its structure curve image.

    `curves[i]` is the undeformed structure boundary curve of `specs[i]`.
    Quadrature uses p+2 Gauss points per edge, the same nodes as the flow
    boundary integrals.

    Raises:
        UnpairedEdgeError: an interface side has no fluid boundary edge.
        LineageMismatchError: edge images do not tile the structure range, or
            paired points do not coincide.
    """
    if len(specs) != len(curves):
        raise UnpairedEdgeError(f"{len(specs)} interface specs but {len(curves)} structure curves")
    rule = gauss_legendre(mesh.degree + 2 if n_points is None else n_points)
    scale = max(mesh.domain_diagonal(), 1.0)
    edges: list[PairedEdge] = []

    for i, (spec, curve) in enumerate(zip(specs, curves, strict=True)):
        offset, slope = structure_map(mesh, spec)
        found = []
        for f, face in enumerate(mesh.boundary_faces):
            if face.surface != spec.fluid_surface or face.side != spec.fluid_side:
                continue
            box = mesh.patches[face.ref.patch].lineage.exact_parametric_box()
            a, b = box[spec.fluid_side.direction]
            found.append((a, f, (offset + slope * a, offset + slope * b)))
        if not found:
            raise UnpairedEdgeError(
                f"No fluid boundary edge on surface {spec.fluid_surface} side {spec.fluid_side}"
            )
        found.sort()
        _check_partition(i, spec.structure_range, [interval for _, _, interval in found])

        for _, f, interval in found:
            face = mesh.boundary_faces[f]
            s0, s1 = (float(s) for s in interval)
            structure_points = s0 + rule.points * (s1 - s0)
            fluid_xy = edge_curve_points(mesh, face.ref, rule.points)
            structure_xy = sample_curve(curve, structure_points)
            gap = float(np.max(np.linalg.norm(fluid_xy - structure_xy, axis=1)))
            if gap > PAIRING_TOLERANCE * scale:
                raise LineageMismatchError(
                    f"Interface {i}: fluid edge {face.ref} is {gap:.3e} away from the structure"
                )
            edges.append(
                PairedEdge(
                    spec_index=i,
                    edge=face.ref,
                    boundary_face=f,
                    structure_interval=interval,
                    fluid_points=rule.points,
                    structure_points=structure_points,
                    weights=rule.weights,
                )
            )
    pairing = InterfacePairing(specs=tuple(specs), edges=tuple(edges))
    logger.debug(
        "Interface pairing: %d edges, %d quadrature points", len(edges), pairing.quadrature_size
    )
    return pairing


def _check_partition(
    index: int, structure_range: tuple[float, float], intervals: list[tuple[Fraction, Fraction]]
) -> None:
    r0, r1 = (Fraction(r) for r in structure_range)
    position = r0
    for s0, s1 in intervals:
        if s0 != position:
            raise LineageMismatchError(
                f"Interface {index}: edge images leave a gap or overlap at {float(position)}"
            )
        position = s1
    if position != r1:
        raise LineageMismatchError(
            f"Interface {index}: edge images end at {float(position)}, expected {float(r1)}"
        )
