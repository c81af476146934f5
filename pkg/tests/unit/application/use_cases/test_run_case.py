"""Tests for RunCaseUseCase.

Tests cover:
- Stepping to the end time and the step count
- Force, structure and coupling series
- Checkpoint and snapshot cadences
- Summary statistics of every recorded signal
- Failure handling: outputs flushed, phase error propagated
"""

import numpy as np
import pytest

from iga_fsi.application.simulation import ForceReference, RunSettings, SimulationCase
from iga_fsi.application.use_cases import RunCaseRequest, RunCaseUseCase
from iga_fsi.domain.entities import StructState
from iga_fsi.domain.exceptions import CouplingPhaseError, StructureError
from iga_fsi.domain.services.coupling import CoupledSystem, MembraneStructure
from iga_fsi.infrastructure import (
    InMemoryCheckpointRepository,
    InMemoryFieldWriter,
    InMemoryTimeSeriesRepository,
)
from tests.unit.application.cases import box_case, membrane_case

# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def series() -> InMemoryTimeSeriesRepository:
    return InMemoryTimeSeriesRepository()


@pytest.fixture
def checkpoints() -> InMemoryCheckpointRepository:
    return InMemoryCheckpointRepository()


@pytest.fixture
def fields() -> InMemoryFieldWriter:
    return InMemoryFieldWriter()


@pytest.fixture
def use_case(
    series: InMemoryTimeSeriesRepository,
    checkpoints: InMemoryCheckpointRepository,
    fields: InMemoryFieldWriter,
) -> RunCaseUseCase:
    return RunCaseUseCase(series, checkpoints, fields)


class DivergingMembrane(MembraneStructure):
    """Fails on its third step."""

    def step(self, loads: np.ndarray, dt: float) -> StructState:
        if self.state.time > 1.5 * dt:
            raise StructureError("membrane diverged")
        return MembraneStructure.step(self, loads, dt)


# =============================================================================
# Structure-only runs
# =============================================================================


class TestStructureRun:
    def test_steps_to_end_time(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        result = use_case.execute(RunCaseRequest(membrane_case()))
        assert result.steps == 50
        assert result.final_time == pytest.approx(0.5)
        assert len(series.column("structure", "u_y")) == 50
        assert "forces" not in series.series
        assert series.documents["resolved_config"] == {"config": "{}"}

    def test_summary_has_monitored_signals(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        summary = use_case.execute(RunCaseRequest(membrane_case())).summary
        assert summary["case"] == "membrane-4"
        assert summary["steps"] == 50
        assert summary["structure_control_points"] == 6
        amplitude = summary["u_y"]["amplitude"]
        assert 0.0 < amplitude < 0.1
        assert series.documents["summary"]["u_y"]["amplitude"] == amplitude
        assert "energy_loss" not in summary

    def test_end_time_override(self, use_case: RunCaseUseCase) -> None:
        result = use_case.execute(RunCaseRequest(membrane_case(), end_time=0.1))
        assert result.steps == 10

    def test_checkpoint_cadence(
        self, use_case: RunCaseUseCase, checkpoints: InMemoryCheckpointRepository
    ) -> None:
        use_case.execute(RunCaseRequest(membrane_case(checkpoint_every=20)))
        assert checkpoints.references == ["step-20", "step-40"]
        latest = checkpoints.latest()
        assert latest is not None and latest.time == pytest.approx(0.4)
        assert latest.flow_w is None

    def test_failure_flushes_outputs(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        base = membrane_case()
        assert isinstance(base.system.structure, MembraneStructure)
        structure = DivergingMembrane(base.system.structure.model, base.system.structure.state)
        case = SimulationCase(
            "diverging",
            CoupledSystem(structure=structure, max_dt=0.01),
            RunSettings(end_time=1.0),
            "{}",
        )
        with pytest.raises(CouplingPhaseError) as info:
            use_case.execute(RunCaseRequest(case))
        assert info.value.phase == "structure"
        assert case.step == 2
        assert len(series.column("structure", "u_y")) == 2
        assert series.flushes == 1
        assert "summary" not in series.documents


# =============================================================================
# Flow runs
# =============================================================================


class TestFlowRun:
    def test_coupled_series(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        result = use_case.execute(RunCaseRequest(box_case()))
        assert result.steps == 3
        forces = series.series["forces"]
        assert set(forces[0]) == {"t", "mass", "energy", "force_x", "force_y"}
        assert all(row["force_y"] < 0.0 for row in forces)
        assert len(series.series["coupling"]) == 3
        assert "energy_loss" in result.summary
        assert result.summary["fluid_elements"] == 4

    def test_mass_is_conserved_on_fixed_mesh(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        use_case.execute(RunCaseRequest(box_case(coupled=False)))
        mass = series.column("forces", "mass")
        np.testing.assert_allclose(mass, mass[0], rtol=1e-12)

    def test_coefficients_with_reference(
        self, use_case: RunCaseUseCase, series: InMemoryTimeSeriesRepository
    ) -> None:
        case = box_case(coupled=False, reference=ForceReference(1.0, 1.0, 1.0))
        summary = use_case.execute(RunCaseRequest(case)).summary
        np.testing.assert_allclose(series.column("forces", "c_l"), -2.0, atol=1e-10)
        assert summary["c_l"]["mean"] == pytest.approx(-2.0, abs=1e-10)
        assert "force_y" not in summary

    def test_snapshot_cadence(
        self, use_case: RunCaseUseCase, fields: InMemoryFieldWriter
    ) -> None:
        use_case.execute(RunCaseRequest(box_case(snapshot_every=2, end_time=4e-3)))
        assert set(fields.patches) == {"flow_000002", "flow_000004"}
        points, data = fields.patches["flow_000002"]
        assert points.shape == (4, 16, 2)
        assert set(data) == {"density", "velocity", "pressure"}
        assert fields.times == pytest.approx([2e-3, 4e-3])
