"""Integration tests for building runnable cases from the packaged presets.

Tests cover:
- Coupled membrane: conforming pairing of both slit sides, profile settings
- Channel cases: elastic bar with five interfaces, rigid bar without structure
- Structure-only bar case and named grid overrides
- Geometry exchange file layouts resolved against the case directory
- Short coupled runs keep the interface closed
"""

from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from iga_fsi.application.simulation import SimulationCase
from iga_fsi.domain.entities import NurbsCurve
from iga_fsi.domain.exceptions import ConfigurationError, ConfigValidationError
from iga_fsi.domain.services.coupling import coupling_step, interface_deviation
from iga_fsi.infrastructure import ConfiguredCaseFactory
from iga_fsi.infrastructure.config import validate_config, with_run
from iga_fsi.infrastructure.geometry import GeometryDocument, format_geometry, membrane_layout
from iga_fsi.infrastructure.presets import load_preset

pytestmark = pytest.mark.integration


# ===== Fixtures =====


@pytest.fixture(scope="module")
def membrane() -> SimulationCase:
    return ConfiguredCaseFactory(load_preset("membrane")).build()


def file_case_data(directory: Path) -> dict[str, Any]:
    """Membrane preset rewritten to read its blocks and curve from a geometry file."""
    layout = membrane_layout(1, 8)
    names = [f"block{i}" for i in range(len(layout.surfaces))]
    document = GeometryDocument(surfaces=dict(zip(names, layout.surfaces, strict=True)))
    assert isinstance(layout.structure, NurbsCurve)
    document.curves["membrane"] = layout.structure
    (directory / "slit.geo").write_text(format_geometry(document), encoding="utf-8")

    data = load_preset("membrane").model_dump(mode="json")
    data["geometry"] = {
        "layout": "file",
        "path": "slit.geo",
        "structure": "membrane",
        "tags": [
            {"surface": surface, "side": side.value, "tag": tag}
            for (surface, side), tag in layout.tags.items()
        ],
        "interfaces": [
            {
                "fluid_surface": spec.fluid_surface,
                "fluid_side": spec.fluid_side.value,
                "structure_range": list(spec.structure_range),
            }
            for spec in layout.interfaces
        ],
    }
    return data


# ===== Presets =====


class TestMembranePreset:
    def test_pairing_covers_both_slit_sides(self, membrane: SimulationCase) -> None:
        assert membrane.pairing is not None
        assert len(membrane.pairing.specs) == 2
        for index in range(2):
            assert membrane.pairing.covered_length(index) == Fraction(1)

    def test_counts(self, membrane: SimulationCase) -> None:
        dofs = membrane.degrees_of_freedom()
        assert dofs["structure_control_points"] == 11
        assert dofs["fluid_elements"] > 144
        assert membrane.grid == "very_coarse"

    def test_monitors(self, membrane: SimulationCase) -> None:
        assert membrane.reference is not None
        assert membrane.reference.alpha_deg == 4.0
        assert membrane.profile is not None
        assert membrane.profile.pressure == 1.0
        assert membrane.profile.stations == 41

    def test_incidence_override(self) -> None:
        case = ConfiguredCaseFactory(load_preset("membrane")).build(alpha=8.0)
        assert case.reference is not None
        assert case.reference.alpha_deg == 8.0
        assert case.system.fluid is not None
        w = case.system.fluid.state.w
        momentum = w[..., 1:3].reshape(-1, 2)[0]
        assert np.arctan2(momentum[1], momentum[0]) == pytest.approx(np.radians(8.0))

    def test_grids_in_declaration_order(self) -> None:
        factory = ConfiguredCaseFactory(load_preset("membrane"))
        assert factory.grids() == ["very_coarse", "coarse", "medium", "fine", "very_fine"]

    def test_unknown_grid(self) -> None:
        with pytest.raises(ConfigValidationError):
            ConfiguredCaseFactory(load_preset("membrane")).build(grid="huge")

    def test_coupled_steps_keep_interface_closed(self) -> None:
        case = ConfiguredCaseFactory(load_preset("membrane")).build()
        system = case.system
        assert case.mesh is not None and case.pairing is not None
        assert system.structure is not None and system.fluid is not None
        for _ in range(2):
            coupling_step(system)
        deviation = interface_deviation(
            case.mesh, case.pairing, system.structure, system.fluid.positions
        )
        assert deviation < 1e-10
        assert np.all(np.isfinite(system.fluid.state.w))


class TestChannelPresets:
    def test_elastic_bar_is_paired_on_five_sides(self) -> None:
        case = ConfiguredCaseFactory(load_preset("fsi2")).build()
        assert case.pairing is not None
        assert len(case.pairing.specs) == 5
        for index, spec in enumerate(case.pairing.specs):
            r0, r1 = (Fraction(r) for r in spec.structure_range)
            assert case.pairing.covered_length(index) == abs(r1 - r0)
        assert case.mesh is not None
        assert case.mesh.tags() == {"inflow", "outflow", "wall", "cylinder", "bar"}

    def test_rigid_bar_has_no_structure(self) -> None:
        case = ConfiguredCaseFactory(load_preset("cfd2")).build()
        assert case.system.structure is None
        assert case.pairing is None
        assert case.system.fluid is not None

    def test_elastic_flag_must_match_structure(self) -> None:
        data = load_preset("cfd2").model_dump(mode="json")
        data["geometry"]["elastic"] = True
        with pytest.raises(ConfigurationError, match="elastic channel"):
            ConfiguredCaseFactory(validate_config(data)).build()


class TestBarPreset:
    def test_structure_only(self) -> None:
        case = ConfiguredCaseFactory(load_preset("csm3")).build()
        assert case.mesh is None
        assert case.system.fluid is None
        assert case.system.max_dt == 0.005
        assert case.degrees_of_freedom() == {"structure_control_points": 18 * 4}

    def test_grid_override(self) -> None:
        case = ConfiguredCaseFactory(load_preset("csm3")).build(grid="medium")
        assert case.grid == "medium"
        assert case.degrees_of_freedom()["structure_control_points"] == 34 * 6

    def test_gravity_pulls_the_tip_down(self) -> None:
        config = with_run(load_preset("csm3"), end_time=0.02)
        case = ConfiguredCaseFactory(config).build()
        structure = case.system.structure
        assert structure is not None
        for _ in range(4):
            coupling_step(case.system)
        assert structure.monitor()[1] < 0.0


# ===== Geometry files =====


class TestFileLayout:
    def test_relative_path_resolves_against_base_dir(self, tmp_path: Path) -> None:
        config = validate_config(file_case_data(tmp_path))
        case = ConfiguredCaseFactory(config, base_dir=tmp_path).build()
        assert case.pairing is not None
        assert case.pairing.covered_length(0) == Fraction(1)
        assert case.pairing.covered_length(1) == Fraction(1)
        assert case.degrees_of_freedom()["structure_control_points"] == 11

    def test_missing_file(self, tmp_path: Path) -> None:
        config = validate_config(file_case_data(tmp_path))
        with pytest.raises(ConfigurationError, match="Cannot read geometry file"):
            ConfiguredCaseFactory(config, base_dir=tmp_path / "elsewhere").build()

    def test_unknown_structure_id(self, tmp_path: Path) -> None:
        data = file_case_data(tmp_path)
        data["geometry"]["structure"] = "sail"
        with pytest.raises(ConfigurationError, match="no id 'sail'"):
            ConfiguredCaseFactory(validate_config(data), base_dir=tmp_path).build()
