"""Multipatch NURBS layouts of the benchmark domains.

Every block is a ruled surface between two quadratic (or cubic) boundary
curves and is refined by knot insertion afterwards, so neighbouring blocks
share their side curves exactly: the same control points, weights and knots.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import InterfaceSpec, NurbsCurve, NurbsSurface
from iga_fsi.domain.exceptions import ConfigurationError
from iga_fsi.domain.services.nurbs import refine_surface_to
from iga_fsi.domain.value_objects import KnotVector, Side

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

# Membrane wing in a rectangular far field, chord [0, 1] on y = 0
MEMBRANE_DEGREE = 3
MEMBRANE_COLUMNS = ((-3.0, 0.0), (0.0, 1.0), (1.0, 5.0))
MEMBRANE_ROWS = ((-3.0, 0.0), (0.0, 3.0))
MEMBRANE_COLUMN_ELEMENTS = (4, 8, 6)
MEMBRANE_ROW_ELEMENTS = (4, 4)
MEMBRANE_GROWTH = 1.3

# Channel with cylinder and elastic bar
CHANNEL_LENGTH = 2.5
CHANNEL_HEIGHT = 0.41
CYLINDER_CENTER = (0.2, 0.2)
CYLINDER_RADIUS = 0.05
BAR_END = 0.6
BAR_BOTTOM = 0.19
BAR_TOP = 0.21
BOX = (0.1, 0.3)


@dataclass(frozen=True, slots=True, eq=False)
class Layout:
    """Fluid surfaces with their boundary tags, and the structure they enclose.

    `structure` is the membrane reference curve, the solid's undeformed surface,
    or None for rigid bodies. `names` label the surfaces in diagnostics.
    """

    surfaces: tuple[NurbsSurface, ...]
    tags: dict[tuple[int, Side], str] = field(default_factory=dict)
    structure: NurbsCurve | NurbsSurface | None = None
    interfaces: tuple[InterfaceSpec, ...] = ()
    names: tuple[str, ...] = ()

    def surface_index(self, name: str) -> int:
        return self.names.index(name)


# =============================================================================
# Building blocks
# =============================================================================

type Curve = tuple[NDArray[np.float64], NDArray[np.float64]]


def line(start: ArrayLike, end: ArrayLike, weight: float = 1.0) -> Curve:
    """Quadratic rational line; a middle weight other than 1 keeps it straight and symmetric."""
    a, b = np.asarray(start, dtype=np.float64), np.asarray(end, dtype=np.float64)
    return np.array([a, 0.5 * (a + b), b]), np.array([1.0, weight, 1.0])


def arc(center: ArrayLike, radius: float, start: float, end: float) -> Curve:
    """Exact circular arc between two angles (radians, at most a half turn)."""
    c = np.asarray(center, dtype=np.float64)
    half = 0.5 * (end - start)
    mid = 0.5 * (start + end)
    points = np.array(
        [
            c + radius * np.array([math.cos(start), math.sin(start)]),
            c + radius / math.cos(half) * np.array([math.cos(mid), math.sin(mid)]),
            c + radius * np.array([math.cos(end), math.sin(end)]),
        ]
    )
    return points, np.array([1.0, math.cos(half), 1.0])


def _check_weights(first: Curve, second: Curve) -> NDArray[np.float64]:
    if not np.allclose(first[1], second[1], rtol=0.0, atol=1e-14):
        raise ConfigurationError("Ruled blocks need boundary curves with equal weights")
    return first[1]


def ruled_eta(bottom: Curve, top: Curve) -> NurbsSurface:
    """Single-element quadratic block between curves at eta = 0 and eta = 1 (both along xi)."""
    weights = _check_weights(bottom, top)
    net = np.stack([bottom[0], 0.5 * (bottom[0] + top[0]), top[0]], axis=1)
    unit = KnotVector.uniform(2, 1)
    return NurbsSurface((unit, unit), net, np.repeat(weights[:, None], 3, axis=1))


def ruled_xi(left: Curve, right: Curve) -> NurbsSurface:
    """Single-element quadratic block between curves at xi = 0 and xi = 1 (both along eta)."""
    weights = _check_weights(left, right)
    net = np.stack([left[0], 0.5 * (left[0] + right[0]), right[0]], axis=0)
    unit = KnotVector.uniform(2, 1)
    return NurbsSurface((unit, unit), net, np.repeat(weights[None, :], 3, axis=0))


def refined(surface: NurbsSurface, breaks_xi: ArrayLike, breaks_eta: ArrayLike) -> NurbsSurface:
    p, q = surface.degrees
    return refine_surface_to(
        surface, (KnotVector.from_breaks(p, breaks_xi), KnotVector.from_breaks(q, breaks_eta))
    )


def uniform_breaks(elements: int) -> NDArray[np.float64]:
    return np.linspace(0.0, 1.0, elements + 1)


def graded_breaks(elements: int, growth: float, toward_end: bool) -> NDArray[np.float64]:
    """Breaks on [0, 1] whose spacing grows geometrically away from one end."""
    if growth == 1.0:
        return uniform_breaks(elements)
    sizes = growth ** np.arange(elements)
    breaks = np.concatenate([[0.0], np.cumsum(sizes)]) / sizes.sum()
    return 1.0 - breaks[::-1] if toward_end else breaks


def greville(kv: KnotVector) -> NDArray[np.float64]:
    p = kv.degree
    return np.array([kv.knots[i + 1 : i + p + 1].mean() for i in range(kv.size)])


def affine_block(
    xs: tuple[float, float], ys: tuple[float, float], degree: int
) -> NurbsSurface:
    """Single-element polynomial rectangle with an affine parametrisation."""
    unit = KnotVector.uniform(degree, 1)
    t = greville(unit)
    x = xs[0] + t * (xs[1] - xs[0])
    y = ys[0] + t * (ys[1] - ys[0])
    net = np.stack(np.meshgrid(x, y, indexing="ij"), axis=-1)
    return NurbsSurface.polynomial((unit, unit), net)


# =============================================================================
# Membrane wing
# =============================================================================


def membrane_curve(elements: int, degree: int = MEMBRANE_DEGREE) -> NurbsCurve:
    """Undeformed membrane on the chord [0, 1], control points at the Greville abscissae."""
    kv = KnotVector.uniform(degree, elements)
    x = greville(kv)
    return NurbsCurve.polynomial(kv, np.column_stack([x, np.zeros_like(x)]))


def membrane_layout(scale: int, structure_elements: int | None) -> Layout:
    """Six cubic blocks around a membrane on the chord [0, 1].

    The two blocks touching the chord keep it as tagged sides, which leaves a
    zero-thickness slit between them. Spacing is uniform along the chord and
    grows geometrically towards the far field.
    """
    if scale < 1:
        raise ConfigurationError(f"Layout scale must be positive, got {scale}")
    growth = MEMBRANE_GROWTH ** (1.0 / scale)
    columns = [n * scale for n in MEMBRANE_COLUMN_ELEMENTS]
    rows = [n * scale for n in MEMBRANE_ROW_ELEMENTS]
    column_breaks = [
        graded_breaks(columns[0], growth, toward_end=True),
        uniform_breaks(columns[1]),
        graded_breaks(columns[2], growth, toward_end=False),
    ]
    row_breaks = [
        graded_breaks(rows[0], growth, toward_end=True),
        graded_breaks(rows[1], growth, toward_end=False),
    ]

    surfaces, names = [], []
    tags: dict[tuple[int, Side], str] = {}
    for r, ys in enumerate(MEMBRANE_ROWS):
        for c, xs in enumerate(MEMBRANE_COLUMNS):
            index = len(surfaces)
            block = affine_block(xs, ys, MEMBRANE_DEGREE)
            surfaces.append(refined(block, column_breaks[c], row_breaks[r]))
            names.append(f"{'lower' if r == 0 else 'upper'}_{('front', 'chord', 'wake')[c]}")
            if c == 0:
                tags[(index, Side.XI0)] = "farfield"
            if c == len(MEMBRANE_COLUMNS) - 1:
                tags[(index, Side.XI1)] = "farfield"
            tags[(index, Side.ETA0 if r == 0 else Side.ETA1)] = "farfield"
    lower, upper = names.index("lower_chord"), names.index("upper_chord")
    tags[(lower, Side.ETA1)] = "membrane_lower"
    tags[(upper, Side.ETA0)] = "membrane_upper"

    if structure_elements is None:
        return Layout(tuple(surfaces), tags, names=tuple(names))
    if columns[1] % structure_elements:
        raise ConfigurationError(
            f"{structure_elements} membrane elements do not divide the {columns[1]} "
            "fluid elements along the chord"
        )
    interfaces = (
        InterfaceSpec(lower, Side.ETA1, (0.0, 1.0)),
        InterfaceSpec(upper, Side.ETA0, (0.0, 1.0)),
    )
    return Layout(
        tuple(surfaces), tags, membrane_curve(structure_elements), interfaces, tuple(names)
    )


# =============================================================================
# Channel with cylinder and elastic bar
# =============================================================================


def bar_attachment() -> tuple[float, float]:
    """(x, angle) where the bar's upper edge meets the cylinder."""
    half_thickness = 0.5 * (BAR_TOP - BAR_BOTTOM)
    theta = math.asin(half_thickness / CYLINDER_RADIUS)
    return CYLINDER_CENTER[0] + CYLINDER_RADIUS * math.cos(theta), theta


def bar_split() -> float:
    """Bar parameter of the cylinder box side x = 0.3 along the bar edges."""
    x_a, _ = bar_attachment()
    return (BOX[1] - x_a) / (BAR_END - x_a)


def bar_surface(breaks_xi: ArrayLike, elements_eta: int) -> NurbsSurface:
    """Quadratic bar from its circular root to the free end at x = 0.6.

    xi runs along the bar, eta across it; the upper and lower edges are
    affinely parametrised straight lines.
    """
    _, theta = bar_attachment()
    root = arc(CYLINDER_CENTER, CYLINDER_RADIUS, -theta, theta)
    tip = line((BAR_END, BAR_BOTTOM), (BAR_END, BAR_TOP), math.cos(theta))
    return refined(ruled_xi(root, tip), breaks_xi, uniform_breaks(elements_eta))


def bar_breaks(root_elements: int, tail_elements: int) -> NDArray[np.float64]:
    """Uniform on the bar part next to the cylinder box, uniform on the rest."""
    split = bar_split()
    return np.concatenate(
        [
            np.linspace(0.0, split, root_elements + 1),
            np.linspace(split, 1.0, tail_elements + 1)[1:],
        ]
    )


@dataclass(frozen=True, slots=True)
class _ChannelCounts:
    inlet: int
    box: int
    near: int
    far: int
    rows: tuple[int, int, int, int, int]
    inlet_middle: int
    radial: int

    @classmethod
    def scaled(cls, scale: int) -> _ChannelCounts:
        if scale < 1:
            raise ConfigurationError(f"Layout scale must be positive, got {scale}")
        r = (2 * scale, 2 * scale, 1 * scale, 2 * scale, 2 * scale)
        return cls(2 * scale, 4 * scale, 6 * scale, 12 * scale, r, 4 * scale, 2 * scale)


def channel_layout(
    scale: int, structure_elements: tuple[int, int] | None, elastic: bool = True
) -> Layout:
    """Nineteen quadratic blocks around the cylinder and bar.

    Columns: inlet (x < 0.1), cylinder box (0.1..0.3), near wake (0.3..0.6)
    and far wake (0.6..2.5); five ring blocks fill the box around the
    cylinder. Rational middle weights of the ring arcs are carried along the
    rows and columns that touch each ring block so that shared sides coincide.

    With `elastic`, the bar is a structure coupled along five interfaces.
    Otherwise it is a rigid wall and `structure_elements` is ignored.
    """
    n = _ChannelCounts.scaled(scale)
    x_a, theta = bar_attachment()
    x0, x1 = BOX
    x2, x3 = BAR_END, CHANNEL_LENGTH
    h = CHANNEL_HEIGHT
    center, radius = CYLINDER_CENTER, CYLINDER_RADIUS
    quarter = math.pi / 4.0
    c_side = math.cos(0.5 * (quarter - theta))
    c_quarter = math.cos(quarter)
    c_bar = math.cos(theta)

    blocks: dict[str, NurbsSurface] = {}
    tags: dict[tuple[str, Side], str] = {}

    def block(
        name: str, surface: NurbsSurface, nx: int, ny: int, sides: dict[Side, str]
    ) -> None:
        blocks[name] = refined(surface, uniform_breaks(nx), uniform_breaks(ny))
        for side, tag in sides.items():
            tags[(name, side)] = tag

    def box(xa: float, xb: float, ya: float, yb: float, weight: float = 1.0) -> NurbsSurface:
        """Rectangle whose vertical sides carry `weight` along eta."""
        return ruled_xi(line((xa, ya), (xa, yb), weight), line((xb, ya), (xb, yb), weight))

    def slab(xa: float, xb: float, ya: float, yb: float, weight: float) -> NurbsSurface:
        """Rectangle whose horizontal sides carry `weight` along xi."""
        return ruled_eta(line((xa, ya), (xb, ya), weight), line((xa, yb), (xb, yb), weight))

    r0, r1, r2, r3, r4 = n.rows
    wall, inflow, outflow = Side.ETA0, Side.XI0, Side.XI1

    # Inlet column
    block("A1", box(0.0, x0, 0.0, x0), n.inlet, r0, {inflow: "inflow", wall: "wall"})
    block("A2", box(0.0, x0, x0, x1, c_quarter), n.inlet, n.inlet_middle, {inflow: "inflow"})
    block("A3", box(0.0, x0, x1, h), n.inlet, r4, {inflow: "inflow", Side.ETA1: "wall"})

    # Above and below the cylinder box
    block("B0", slab(x0, x1, 0.0, x0, c_quarter), n.box, r0, {wall: "wall"})
    block("B4", slab(x0, x1, x1, h, c_quarter), n.box, r4, {Side.ETA1: "wall"})

    # Ring: xi counter-clockwise, eta from the box side (0) to the cylinder (1)
    corners = {
        "R1": ((x1, BAR_TOP), (x1, x1), theta, quarter),
        "R2": ((x1, x1), (x0, x1), quarter, 3 * quarter),
        "R3": ((x0, x1), (x0, x0), 3 * quarter, 5 * quarter),
        "R4": ((x0, x0), (x1, x0), 5 * quarter, 7 * quarter),
        "R5": ((x1, x0), (x1, BAR_BOTTOM), 7 * quarter, 2 * math.pi - theta),
    }
    angular = {"R1": r3, "R2": n.box, "R3": n.inlet_middle, "R4": n.box, "R5": r1}
    for name, (start, end, a, b) in corners.items():
        inner = arc(center, radius, a, b)
        outer = line(start, end, inner[1][1])
        block(name, ruled_eta(outer, inner), angular[name], n.radial, {Side.ETA1: "cylinder"})
    tags[("R1", Side.XI0)] = "bar"
    tags[("R5", Side.XI1)] = "bar"

    # Near wake, split by the bar
    block("C0", box(x1, x2, 0.0, x0), n.near, r0, {wall: "wall"})
    block("C1", box(x1, x2, x0, BAR_BOTTOM, c_side), n.near, r1, {Side.ETA1: "bar"})
    block("C3", box(x1, x2, BAR_TOP, x1, c_side), n.near, r3, {Side.ETA0: "bar"})
    block("C4", box(x1, x2, x1, h), n.near, r4, {Side.ETA1: "wall"})

    # Far wake
    block("D0", box(x2, x3, 0.0, x0), n.far, r0, {wall: "wall", outflow: "outflow"})
    block("D1", box(x2, x3, x0, BAR_BOTTOM, c_side), n.far, r1, {outflow: "outflow"})
    block("D2", box(x2, x3, BAR_BOTTOM, BAR_TOP, c_bar), n.far, r2, {outflow: "outflow"})
    block("D3", box(x2, x3, BAR_TOP, x1, c_side), n.far, r3, {outflow: "outflow"})
    block("D4", box(x2, x3, x1, h), n.far, r4, {outflow: "outflow", Side.ETA1: "wall"})
    tags[("D2", Side.XI0)] = "bar"

    names = tuple(blocks)
    surfaces = tuple(blocks.values())
    index_tags = {(names.index(name), side): tag for (name, side), tag in tags.items()}
    logger.debug("Channel layout: %d blocks, attachment x=%.6f", len(names), x_a)
    if not elastic:
        return Layout(surfaces, index_tags, names=names)

    if structure_elements is None:
        raise ConfigurationError("An elastic bar needs structure element counts")
    along, across = structure_elements
    if along != n.radial + n.near:
        raise ConfigurationError(
            f"The bar needs {n.radial + n.near} elements along its length at this "
            f"scale ({n.radial} next to the cylinder, {n.near} in the wake), got {along}"
        )
    if r2 % across:
        raise ConfigurationError(
            f"{across} elements across the bar do not divide the {r2} fluid rows at its tip"
        )
    split = bar_split()
    bar = bar_surface(bar_breaks(n.radial, n.near), across)
    at = names.index
    interfaces = (
        InterfaceSpec(at("R1"), Side.XI0, (split, 0.0), Side.ETA1),
        InterfaceSpec(at("R5"), Side.XI1, (split, 0.0), Side.ETA0),
        InterfaceSpec(at("C3"), Side.ETA0, (split, 1.0), Side.ETA1),
        InterfaceSpec(at("C1"), Side.ETA1, (split, 1.0), Side.ETA0),
        InterfaceSpec(at("D2"), Side.XI0, (0.0, 1.0), Side.XI1),
    )
    return Layout(surfaces, index_tags, bar, interfaces, names)


def bar_layout(structure_elements: tuple[int, int]) -> Layout:
    """The bar alone, uniformly divided, for structure-only runs."""
    along, across = structure_elements
    return Layout((), structure=bar_surface(uniform_breaks(along), across))
