from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from typing import TYPE_CHECKING

import meshio
import numpy as np

from iga_fsi.application.ports import FieldWriter

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

    from numpy.typing import NDArray

logger = logging.getLogger(__name__)


def grid_quads(patches: int, resolution: int) -> NDArray[np.int64]:
    """Quadrilateral cells (patches * (r-1)^2, 4) over r x r point grids stored at i * r + j."""
    r = resolution
    i, j = np.meshgrid(np.arange(r - 1), np.arange(r - 1), indexing="ij")
    first = (i * r + j).ravel()
    local = np.stack([first, first + r, first + r + 1, first + 1], axis=1)
    offsets = np.arange(patches)[:, None, None] * r * r
    return (local[None] + offsets).reshape(-1, 4).astype(np.int64)


def polyline_segments(lines: int, samples: int) -> NDArray[np.int64]:
    start = np.arange(samples - 1)[None] + samples * np.arange(lines)[:, None]
    return np.stack([start.ravel(), start.ravel() + 1], axis=1).astype(np.int64)


def _planar(points: NDArray[np.float64]) -> NDArray[np.float64]:
    flat = points.reshape(-1, 2)
    return np.column_stack([flat, np.zeros(flat.shape[0])])


def _point_field(values: NDArray[np.float64], count: int) -> NDArray[np.float64]:
    flat = values.reshape(count, -1)
    if flat.shape[1] == 1:
        return flat[:, 0]
    if flat.shape[1] == 2:
        return np.column_stack([flat, np.zeros(count)])
    return flat


class VtkFieldWriter(FieldWriter):
    """Writes `.vtu` files through meshio plus a `.pvd` collection of the snapshots.

    Every patch is sampled on its own point grid, so the discontinuous flow
    field is shown as it is, with duplicated points along patch faces.
    """

    def __init__(self, directory: Path) -> None:
        self.directory = directory
        self._collection: list[tuple[float, str]] = []

    def write_patches(
        self,
        name: str,
        points: NDArray[np.float64],
        resolution: int,
        point_data: Mapping[str, NDArray[np.float64]],
        time: float = 0.0,
    ) -> str:
        self.directory.mkdir(parents=True, exist_ok=True)
        count = points.shape[0] * points.shape[1]
        mesh = meshio.Mesh(
            _planar(points),
            [("quad", grid_quads(points.shape[0], resolution))],
            point_data={key: _point_field(np.asarray(v), count) for key, v in point_data.items()},
        )
        path = self.directory / f"{name}.vtu"
        meshio.write(path, mesh)
        self._collection.append((time, path.name))
        self._write_collection()
        logger.debug("Snapshot %s at t=%.6g", path, time)
        return str(path)

    def write_wireframe(self, name: str, polylines: NDArray[np.float64]) -> str:
        self.directory.mkdir(parents=True, exist_ok=True)
        lines, samples = polylines.shape[:2]
        mesh = meshio.Mesh(_planar(polylines), [("line", polyline_segments(lines, samples))])
        path = self.directory / f"{name}.vtu"
        meshio.write(path, mesh)
        return str(path)

    def _write_collection(self) -> None:
        root = ET.Element("VTKFile", type="Collection", version="0.1")
        collection = ET.SubElement(root, "Collection")
        for time, file in self._collection:
            ET.SubElement(collection, "DataSet", timestep=repr(time), part="0", file=file)
        ET.ElementTree(root).write(self.directory / "snapshots.pvd", xml_declaration=True)


class InMemoryFieldWriter(FieldWriter):
    """Records what would have been written, for tests."""

    def __init__(self) -> None:
        self.patches: dict[str, tuple[NDArray[np.float64], dict[str, NDArray[np.float64]]]] = {}
        self.wireframes: dict[str, NDArray[np.float64]] = {}
        self.times: list[float] = []

    def write_patches(
        self,
        name: str,
        points: NDArray[np.float64],
        resolution: int,  # noqa: ARG002
        point_data: Mapping[str, NDArray[np.float64]],
        time: float = 0.0,
    ) -> str:
        self.patches[name] = (np.array(points), {k: np.array(v) for k, v in point_data.items()})
        self.times.append(time)
        return name

    def write_wireframe(self, name: str, polylines: NDArray[np.float64]) -> str:
        self.wireframes[name] = np.array(polylines)
        return name
