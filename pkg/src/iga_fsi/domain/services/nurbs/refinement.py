"""Knot insertion, Bézier extraction and de Casteljau splitting.

All algorithms run on homogeneous control points (w x, w y, w) so one code path
serves B-splines and NURBS. The array kernels act along axis 0 and accept any
trailing shape; feeding them an identity matrix yields the weight-independent
linear operator of the same transformation.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import (
    BezierPatch,
    BezierSegment,
    NurbsCurve,
    NurbsSurface,
)
from iga_fsi.domain.exceptions import (
    GeometryError,
    InvalidControlNetError,
    KnotMultiplicityError,
    ParameterOutOfRangeError,
)
from iga_fsi.domain.value_objects import KnotVector, PatchLineage
from iga_fsi.domain.value_objects.knot_vector import KNOT_TOLERANCE

if TYPE_CHECKING:
    from collections.abc import Iterable

    from numpy.typing import NDArray

logger = logging.getLogger(__name__)

type Segment = tuple[int, tuple[float, float]]


# =============================================================================
# Array kernels
# =============================================================================


def _tolerance(knots: NDArray[np.float64]) -> float:
    return KNOT_TOLERANCE * float(knots[-1] - knots[0])


def _snap(knots: NDArray[np.float64], x: float) -> float:
    """Return the existing knot value when x is within tolerance of one."""
    near = np.abs(knots - x) <= _tolerance(knots)
    return float(knots[np.argmax(near)]) if np.any(near) else float(x)


def _multiplicity(knots: NDArray[np.float64], x: float) -> int:
    return int(np.count_nonzero(np.abs(knots - x) <= _tolerance(knots)))


def _insert(
    knots: NDArray[np.float64], p: int, pw: NDArray[np.float64], x: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    tol = _tolerance(knots)
    if not knots[0] + tol < x < knots[-1] - tol:
        raise ParameterOutOfRangeError(
            f"Inserted knot {x} must lie strictly inside ({knots[0]}, {knots[-1]})"
        )
    x = _snap(knots, x)
    if _multiplicity(knots, x) + 1 > p + 1:
        raise KnotMultiplicityError(f"Knot {x} already has multiplicity {p + 1}")

    n = pw.shape[0]
    k = int(np.searchsorted(knots, x, side="right")) - 1
    out = np.empty((n + 1, *pw.shape[1:]))
    out[: k - p + 1] = pw[: k - p + 1]
    out[k + 1 :] = pw[k:]
    for i in range(k - p + 1, k + 1):
        den = knots[i + p] - knots[i]
        alpha = (x - knots[i]) / den if den != 0.0 else 0.0
        out[i] = alpha * pw[i] + (1.0 - alpha) * pw[i - 1]
    return np.insert(knots, k + 1, x), out


def _refine(
    knots: NDArray[np.float64], p: int, pw: NDArray[np.float64], target: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    tol = _tolerance(knots)
    if abs(target[0] - knots[0]) > tol or abs(target[-1] - knots[-1]) > tol:
        raise GeometryError("Target knot vector spans a different parameter range")
    source_keep = np.concatenate([[True], np.diff(knots) > tol])
    for value in knots[source_keep][1:-1]:
        if _multiplicity(knots, float(value)) > _multiplicity(target, float(value)):
            raise GeometryError(f"Target knot vector drops knot {value}: not a refinement")
    keep = np.concatenate([[True], np.diff(target) > tol])
    for value in target[keep][1:-1]:
        missing = _multiplicity(target, float(value)) - _multiplicity(knots, float(value))
        for _ in range(missing):
            knots, pw = _insert(knots, p, pw, float(value))
    if knots.size != target.size:
        raise GeometryError("Target knot vector is not a refinement of the source")
    return target.copy(), pw


def _subrange(
    knots: NDArray[np.float64], p: int, pw: NDArray[np.float64], a: float, b: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    tol = _tolerance(knots)
    if not knots[0] - tol <= a < b <= knots[-1] + tol:
        raise ParameterOutOfRangeError(
            f"Sub-range [{a}, {b}] must be increasing and inside [{knots[0]}, {knots[-1]}]"
        )
    a = knots[0] if a <= knots[0] + tol else _snap(knots, a)
    b = knots[-1] if b >= knots[-1] - tol else _snap(knots, b)
    for x in (a, b):
        if knots[0] < x < knots[-1]:
            while _multiplicity(knots, x) < p:
                knots, pw = _insert(knots, p, pw, x)
    tol = _tolerance(knots)
    last_a = int(np.nonzero(np.abs(knots - a) <= tol)[0][-1])
    first_b = int(np.nonzero(np.abs(knots - b) <= tol)[0][0])
    inner = knots[(knots > a + tol) & (knots < b - tol)]
    sub_knots = np.concatenate([[a] * (p + 1), inner, [b] * (p + 1)])
    return sub_knots, pw[last_a - p : first_b]


def _extract(
    knots: NDArray[np.float64], p: int, pw: NDArray[np.float64]
) -> tuple[NDArray[np.float64], NDArray[np.float64], list[int]]:
    """Raise every interior knot to multiplicity p; return refined knots, points and span starts."""
    tol = _tolerance(knots)
    keep = np.concatenate([[True], np.diff(knots) > tol])
    for value in knots[keep][1:-1]:
        for _ in range(p - _multiplicity(knots, float(value))):
            knots, pw = _insert(knots, p, pw, float(value))
    n = pw.shape[0]
    spans = [i for i in range(p, n) if knots[i + 1] - knots[i] > tol]
    return knots, pw, spans


def _de_casteljau(
    pw: NDArray[np.float64], t: float
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Split a Bézier control array along axis 0 at t into lower and upper halves."""
    q = np.array(pw, dtype=np.float64)
    p = q.shape[0] - 1
    lower = [q[0].copy()]
    upper = [q[p].copy()]
    for r in range(1, p + 1):
        q[: p - r + 1] = (1.0 - t) * q[: p - r + 1] + t * q[1 : p - r + 2]
        lower.append(q[0].copy())
        upper.append(q[p - r].copy())
    return np.stack(lower), np.stack(upper[::-1])


def _original_span(kv: KnotVector, a: float, b: float) -> int:
    return kv.find_span(0.5 * (a + b))


# =============================================================================
# Knot insertion and refinement
# =============================================================================


def insert_knot(curve: NurbsCurve, xi_bar: float) -> NurbsCurve:
    """Insert one knot; the curve geometry is unchanged."""
    kv = curve.knot_vector
    knots, hw = _insert(kv.knots, kv.degree, curve.homogeneous(), xi_bar)
    return NurbsCurve.from_homogeneous(KnotVector(knots, kv.degree), hw)


def insert_knots(curve: NurbsCurve, values: Iterable[float]) -> NurbsCurve:
    for value in values:
        curve = insert_knot(curve, value)
    return curve


def insert_surface_knot(surface: NurbsSurface, direction: int, xi_bar: float) -> NurbsSurface:
    kv = surface.knot_vectors[direction]
    hw = np.moveaxis(surface.homogeneous(), direction, 0)
    knots, hw = _insert(kv.knots, kv.degree, hw, xi_bar)
    kvs = list(surface.knot_vectors)
    kvs[direction] = KnotVector(knots, kv.degree)
    return NurbsSurface.from_homogeneous((kvs[0], kvs[1]), np.moveaxis(hw, 0, direction))


def refine_curve_to(curve: NurbsCurve, target: KnotVector) -> NurbsCurve:
    """Insert knots until the curve's knot vector equals `target`."""
    kv = curve.knot_vector
    if target.degree != kv.degree:
        raise GeometryError(f"Cannot refine degree {kv.degree} onto degree {target.degree}")
    knots, hw = _refine(kv.knots, kv.degree, curve.homogeneous(), target.knots)
    return NurbsCurve.from_homogeneous(KnotVector(knots, kv.degree), hw)


def refine_surface_to(
    surface: NurbsSurface, targets: tuple[KnotVector, KnotVector]
) -> NurbsSurface:
    """Insert knots in both directions until the knot vectors equal `targets`."""
    ax = refinement_matrix(surface.knot_vectors[0], targets[0])
    ay = refinement_matrix(surface.knot_vectors[1], targets[1])
    hw = np.einsum("ai,bj,ijc->abc", ax, ay, surface.homogeneous())
    return NurbsSurface.from_homogeneous(targets, hw)


def refinement_matrix(kv: KnotVector, target: KnotVector) -> NDArray[np.float64]:
    """Homogeneous refinement operator, shape (target.size, kv.size)."""
    _, matrix = _refine(kv.knots, kv.degree, np.eye(kv.size), target.knots)
    return matrix


def extract_subcurve(curve: NurbsCurve, start: float, end: float) -> NurbsCurve:
    """Restriction of the curve to [start, end] as an open NURBS curve."""
    kv = curve.knot_vector
    knots, hw = _subrange(kv.knots, kv.degree, curve.homogeneous(), start, end)
    return NurbsCurve.from_homogeneous(KnotVector(knots, kv.degree), hw)


def subcurve_matrix(
    kv: KnotVector, start: float, end: float
) -> tuple[KnotVector, NDArray[np.float64]]:
    """Knot vector of the restriction to [start, end] and its homogeneous operator."""
    knots, matrix = _subrange(kv.knots, kv.degree, np.eye(kv.size), start, end)
    return KnotVector(knots, kv.degree), matrix


def reverse_curve(curve: NurbsCurve) -> NurbsCurve:
    """Same point set traversed in the opposite direction on the same parameter range."""
    return NurbsCurve(
        curve.knot_vector.reversed(), curve.control_points[::-1], curve.weights[::-1]
    )


# =============================================================================
# Bézier extraction
# =============================================================================


def extraction_operators(
    kv: KnotVector,
) -> list[tuple[int, tuple[float, float], NDArray[np.float64]]]:
    """Per nonempty span: original span index, interval and the (p+1, n) extraction matrix."""
    p = kv.degree
    knots, matrix, spans = _extract(kv.knots, p, np.eye(kv.size))
    out = []
    for i in spans:
        interval = (float(knots[i]), float(knots[i + 1]))
        out.append((_original_span(kv, *interval), interval, matrix[i - p : i + 1]))
    return out


def bezier_extract_curve(curve: NurbsCurve, source_id: int = 0) -> list[BezierSegment]:
    """One rational Bézier segment per nonempty knot span, in parameter order."""
    kv = curve.knot_vector
    p = kv.degree
    knots, hw, spans = _extract(kv.knots, p, curve.homogeneous())
    segments = []
    for i in spans:
        interval = (float(knots[i]), float(knots[i + 1]))
        lineage = PatchLineage(source_id, (_original_span(kv, *interval),), (interval,))
        local = hw[i - p : i + 1]
        weights = local[:, 2]
        segments.append(BezierSegment(p, local[:, :2] / weights[:, None], weights, lineage))
    return segments


def bezier_extract_surface(surface: NurbsSurface, source_id: int = 0) -> list[BezierPatch]:
    """Rational Bézier patches of a surface, xi spans outermost."""
    kx, ky = surface.knot_vectors
    if kx.degree != ky.degree:
        raise InvalidControlNetError(
            f"Bézier patches need equal degrees, got ({kx.degree}, {ky.degree})"
        )
    p = kx.degree
    knots_x, hw, spans_x = _extract(kx.knots, p, surface.homogeneous())
    knots_y, hw_t, spans_y = _extract(ky.knots, p, np.moveaxis(hw, 1, 0))
    hw = np.moveaxis(hw_t, 0, 1)

    patches = []
    for i in spans_x:
        ix = (float(knots_x[i]), float(knots_x[i + 1]))
        for j in spans_y:
            iy = (float(knots_y[j]), float(knots_y[j + 1]))
            lineage = PatchLineage(
                source_id,
                (_original_span(kx, *ix), _original_span(ky, *iy)),
                (ix, iy),
            )
            local = hw[i - p : i + 1, j - p : j + 1]
            patches.append(BezierPatch.from_homogeneous(p, local, lineage))
    logger.debug("Extracted %d patches from surface %d", len(patches), source_id)
    return patches


def bezier_extract(
    geometry: NurbsCurve | NurbsSurface, source_id: int = 0
) -> list[BezierSegment] | list[BezierPatch]:
    if isinstance(geometry, NurbsCurve):
        return bezier_extract_curve(geometry, source_id)
    return bezier_extract_surface(geometry, source_id)


# =============================================================================
# Splitting
# =============================================================================


def split_matrices(
    p: int, t: float | Fraction = 0.5
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """De Casteljau operators (lower, upper), each (p+1, p+1)."""
    return _de_casteljau(np.eye(p + 1), float(t))


def split_bezier(
    patch: BezierPatch, direction: int, t: float | Fraction = Fraction(1, 2)
) -> tuple[BezierPatch, BezierPatch]:
    """Split a patch at t along xi (0) or eta (1); the children reproduce it exactly."""
    if direction not in (0, 1):
        raise GeometryError(f"Split direction must be 0 or 1, got {direction}")
    hw = np.moveaxis(patch.homogeneous(), direction, 0)
    lower, upper = _de_casteljau(hw, float(t))
    return (
        BezierPatch.from_homogeneous(
            patch.degree,
            np.moveaxis(lower, 0, direction),
            patch.lineage.extended(direction, False, t),
        ),
        BezierPatch.from_homogeneous(
            patch.degree,
            np.moveaxis(upper, 0, direction),
            patch.lineage.extended(direction, True, t),
        ),
    )


def split_segment(
    segment: BezierSegment, t: float | Fraction = Fraction(1, 2)
) -> tuple[BezierSegment, BezierSegment]:
    lower, upper = _de_casteljau(segment.homogeneous(), float(t))
    p, lineage = segment.degree, segment.lineage
    return (
        BezierSegment(p, lower[:, :2] / lower[:, 2:3], lower[:, 2], lineage.extended(0, False, t)),
        BezierSegment(p, upper[:, :2] / upper[:, 2:3], upper[:, 2], lineage.extended(0, True, t)),
    )
