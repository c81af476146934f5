"""Geometric discovery of interior, hanging and boundary faces.

Edges lying on a tagged side of their source surface become boundary faces and
are never matched, which keeps zero-thickness slits open. All other edges are
matched by position: conforming pairs share endpoints and midpoint; a hanging
face is a coarse edge tiled by finer edges on dyadic sub-intervals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np
from scipy.spatial import cKDTree

from iga_fsi.domain.entities import (
    EDGES,
    BoundaryFace,
    EdgeRef,
    FaceRecord,
    SubEdge,
    edge_parameters,
)
from iga_fsi.domain.exceptions import NonConformingMeshError, UntaggedBoundaryError
from iga_fsi.domain.services.nurbs import eval_patch
from iga_fsi.domain.value_objects import Side

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from numpy.typing import NDArray

    from iga_fsi.domain.entities import BezierPatch, NurbsSurface

logger = logging.getLogger(__name__)

MAX_HANGING_DEPTH = 3


@dataclass(frozen=True, slots=True, eq=False)
class _Edge:
    ref: EdgeRef
    start: NDArray[np.float64]
    mid: NDArray[np.float64]
    end: NDArray[np.float64]
    surface_side: Side | None


def edge_surface_side(patch: BezierPatch, edge: int, surface: NurbsSurface) -> Side | None:
    """Side of the source surface that a patch edge lies on, if any."""
    (xa, xb), (ya, yb) = patch.lineage.exact_parametric_box()
    kx, ky = surface.knot_vectors
    match edge:
        case 0 if ya == Fraction(ky.first):
            return Side.ETA0
        case 1 if xb == Fraction(kx.last):
            return Side.XI1
        case 2 if yb == Fraction(ky.last):
            return Side.ETA1
        case 3 if xa == Fraction(kx.first):
            return Side.XI0
    return None


def edge_points(patch: BezierPatch, edge: int, s: NDArray[np.float64]) -> NDArray[np.float64]:
    params = edge_parameters(edge, s)
    return eval_patch(patch, params[:, 0], params[:, 1])


def discover_connectivity(
    patches: Sequence[BezierPatch],
    surfaces: Sequence[NurbsSurface],
    tags: Mapping[tuple[int, Side], str],
    tolerance: float,
    max_depth: int = MAX_HANGING_DEPTH,
) -> tuple[tuple[FaceRecord, ...], tuple[BoundaryFace, ...]]:
    """Classify every patch edge as interior face, hanging sub-face or boundary face.

    Raises:
        UntaggedBoundaryError: an edge on an untagged surface side has no neighbour.
        NonConformingMeshError: edges overlap without forming conforming or dyadic faces.
    """
    boundary: list[BoundaryFace] = []
    edges: list[_Edge] = []
    for k, patch in enumerate(patches):
        surface_id = patch.lineage.source_id
        for edge in EDGES:
            side = edge_surface_side(patch, edge, surfaces[surface_id])
            ref = EdgeRef(k, edge)
            if side is not None and (surface_id, side) in tags:
                boundary.append(BoundaryFace(ref, tags[(surface_id, side)], surface_id, side))
                continue
            start, mid, end = edge_points(patch, edge, np.array([0.0, 0.5, 1.0]))
            edges.append(_Edge(ref, start, mid, end, side))

    matched = np.zeros(len(edges), dtype=bool)
    faces = _conforming_faces(edges, matched, tolerance)
    faces += _hanging_faces(patches, edges, matched, tolerance, max_depth)
    _raise_for_unmatched(patches, edges, matched, tolerance)

    logger.debug(
        "Connectivity: %d faces (%d hanging), %d boundary faces",
        len(faces),
        sum(f.is_hanging for f in faces),
        len(boundary),
    )
    return tuple(faces), tuple(boundary)


def _close(a: NDArray[np.float64], b: NDArray[np.float64], tolerance: float) -> bool:
    return bool(np.hypot(*(a - b)) <= tolerance)


def _conforming_faces(
    edges: Sequence[_Edge], matched: NDArray[np.bool_], tolerance: float
) -> list[FaceRecord]:
    if len(edges) < 2:
        return []
    tree = cKDTree(np.array([e.mid for e in edges]))
    faces = []
    for i, j in sorted(tree.query_pairs(tolerance)):
        if matched[i] or matched[j]:
            continue
        a, b = edges[i], edges[j]
        if a.ref.patch == b.ref.patch:
            continue
        same = _close(a.start, b.start, tolerance) and _close(a.end, b.end, tolerance)
        flipped = _close(a.start, b.end, tolerance) and _close(a.end, b.start, tolerance)
        if not (same or flipped):
            continue
        minus, plus = (a, b) if a.ref < b.ref else (b, a)
        faces.append(FaceRecord(minus.ref, (SubEdge(plus.ref, (0.0, 1.0), reversed=flipped),)))
        matched[i] = matched[j] = True
    return faces


def _hanging_faces(
    patches: Sequence[BezierPatch],
    edges: Sequence[_Edge],
    matched: NDArray[np.bool_],
    tolerance: float,
    max_depth: int,
) -> list[FaceRecord]:
    remaining = np.nonzero(~matched)[0]
    if remaining.size < 3:
        return []
    tree = cKDTree(np.array([edges[i].mid for i in remaining]))
    faces = []
    for i in remaining:
        if matched[i]:
            continue
        coarse = edges[i]
        patch = patches[coarse.ref.patch]
        found: dict[Fraction, list[tuple[Fraction, int, bool]]] = {}
        for depth in range(1, max_depth + 1):
            m = 2**depth
            nodes = edge_points(patch, coarse.ref.edge, np.arange(m + 1) / m)
            mids = edge_points(patch, coarse.ref.edge, (np.arange(m) + 0.5) / m)
            for k in range(m):
                for hit in tree.query_ball_point(mids[k], tolerance):
                    j = int(remaining[hit])
                    if j == i or matched[j]:
                        continue
                    fine = edges[j]
                    lo, hi = nodes[k], nodes[k + 1]
                    forward = _close(fine.start, lo, tolerance) and _close(fine.end, hi, tolerance)
                    backward = _close(fine.start, hi, tolerance) and _close(fine.end, lo, tolerance)
                    if forward or backward:
                        entry = (Fraction(k + 1, m), j, backward)
                        found.setdefault(Fraction(k, m), []).append(entry)

        chosen: list[tuple[Fraction, Fraction, int, bool]] = []
        a = Fraction(0)
        while a < 1 and a in found:
            b, j, rev = max(found[a])
            chosen.append((a, b, j, rev))
            a = b
        if a != 1 or len(chosen) < 2:
            continue
        subs = tuple(
            SubEdge(edges[j].ref, (float(lo), float(hi)), reversed=rev) for lo, hi, j, rev in chosen
        )
        faces.append(FaceRecord(coarse.ref, subs))
        matched[i] = True
        for _, _, j, _ in chosen:
            matched[j] = True
    return faces


def _raise_for_unmatched(
    patches: Sequence[BezierPatch],
    edges: Sequence[_Edge],
    matched: NDArray[np.bool_],
    tolerance: float,
) -> None:
    left = np.nonzero(~matched)[0]
    if left.size == 0:
        return
    samples = np.linspace(0.0, 1.0, 9)
    owners: list[int] = []
    points = []
    for i in left:
        ref = edges[i].ref
        points.append(edge_points(patches[ref.patch], ref.edge, samples))
        owners.extend([ref.patch] * samples.size)
    tree = cKDTree(np.concatenate(points))
    for i in left:
        edge = edges[i]
        along = edge_points(patches[edge.ref.patch], edge.ref.edge, np.array([0.25, 0.5, 0.75]))
        overlapping = any(
            owners[h] != edge.ref.patch
            for point in along
            for h in tree.query_ball_point(point, tolerance)
        )
        where = f"patch {edge.ref.patch} edge {edge.ref.edge}"
        if edge.surface_side is not None and not overlapping:
            surface = patches[edge.ref.patch].lineage.source_id
            raise UntaggedBoundaryError(
                f"Boundary edge ({where}) lies on side {edge.surface_side} of surface {surface}, "
                "which has no boundary tag"
            )
        raise NonConformingMeshError(
            f"Edge ({where}) at {edge.mid.tolist()} has no conforming or hanging neighbour"
        )
