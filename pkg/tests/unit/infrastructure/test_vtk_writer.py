"""Tests for visualisation snapshot writers."""

import xml.etree.ElementTree as ET
from pathlib import Path

import meshio
import numpy as np

from iga_fsi.application.ports import FieldWriter
from iga_fsi.infrastructure import InMemoryFieldWriter, VtkFieldWriter
from iga_fsi.infrastructure.vtk_writer import grid_quads, polyline_segments


def _patches(resolution: int = 3) -> np.ndarray:
    s = np.linspace(0.0, 1.0, resolution)
    grid = np.stack(np.meshgrid(s, s, indexing="ij"), axis=-1).reshape(-1, 2)
    return np.stack([grid, grid + [1.0, 0.0]])


class TestConnectivity:
    def test_quads_follow_point_layout(self) -> None:
        quads = grid_quads(2, 3)
        assert quads.shape == (8, 4)
        np.testing.assert_array_equal(quads[0], [0, 3, 4, 1])
        np.testing.assert_array_equal(quads[4], [9, 12, 13, 10])

    def test_quads_are_counter_clockwise(self) -> None:
        points = _patches()[0]
        a, b, _, d = (points[i] for i in grid_quads(1, 3)[0])
        ab, ad = b - a, d - a
        assert ab[0] * ad[1] - ab[1] * ad[0] > 0.0

    def test_polyline_segments(self) -> None:
        np.testing.assert_array_equal(polyline_segments(2, 3), [[0, 1], [1, 2], [3, 4], [4, 5]])


class TestVtkFieldWriter:
    def test_implements_interface(self, tmp_path: Path) -> None:
        assert isinstance(VtkFieldWriter(tmp_path), FieldWriter)

    def test_patches_and_collection(self, tmp_path: Path) -> None:
        writer = VtkFieldWriter(tmp_path / "vtk")
        points = _patches()
        data = {"pressure": np.ones((2, 9)), "velocity": np.zeros((2, 9, 2))}
        writer.write_patches("flow_0", points, 3, data, time=0.0)
        path = writer.write_patches("flow_1", points, 3, data, time=0.5)

        mesh = meshio.read(path)
        assert mesh.points.shape == (18, 3)
        assert mesh.cells_dict["quad"].shape == (8, 4)
        assert mesh.point_data["velocity"].shape == (18, 3)
        np.testing.assert_allclose(mesh.point_data["pressure"], 1.0)

        root = ET.parse(tmp_path / "vtk" / "snapshots.pvd").getroot()
        datasets = root.findall("./Collection/DataSet")
        assert [d.get("file") for d in datasets] == ["flow_0.vtu", "flow_1.vtu"]
        assert [d.get("timestep") for d in datasets] == ["0.0", "0.5"]

    def test_wireframe(self, tmp_path: Path) -> None:
        writer = VtkFieldWriter(tmp_path)
        path = writer.write_wireframe("mesh", np.zeros((4, 5, 2)))
        assert meshio.read(path).cells_dict["line"].shape == (16, 2)


class TestInMemoryFieldWriter:
    def test_records_snapshots(self) -> None:
        writer = InMemoryFieldWriter()
        writer.write_patches("flow_0", _patches(), 3, {"rho": np.ones((2, 9))}, time=0.25)
        writer.write_wireframe("mesh", np.zeros((1, 2, 2)))
        assert writer.times == [0.25]
        assert set(writer.patches["flow_0"][1]) == {"rho"}
        assert writer.wireframes["mesh"].shape == (1, 2, 2)
