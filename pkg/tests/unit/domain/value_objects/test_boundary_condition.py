"""Tests for boundary condition value objects and the inflow smooth start."""

import math

import pytest

from iga_fsi.domain.exceptions import FlowError
from iga_fsi.domain.value_objects import (
    BoundaryKind,
    FarFieldCondition,
    InflowCondition,
    OutflowCondition,
    WallCondition,
    smooth_start,
)

# =============================================================================
# Smooth start
# =============================================================================


class TestSmoothStart:
    def test_zero_at_start(self) -> None:
        assert smooth_start(0.0, 2.0) == 0.0

    def test_one_at_ramp_end(self) -> None:
        assert smooth_start(2.0, 2.0) == 1.0

    def test_half_at_mid_ramp(self) -> None:
        assert smooth_start(1.0, 2.0) == pytest.approx(0.5)

    def test_one_without_ramp(self) -> None:
        assert smooth_start(0.0, 0.0) == 1.0


# =============================================================================
# Conditions
# =============================================================================


class TestFarFieldCondition:
    def test_incidence_rotates_free_stream(self) -> None:
        condition = FarFieldCondition.at_incidence(1.4, 0.1, 1.0, 8.0)
        u, v = condition.velocity
        assert math.hypot(u, v) == pytest.approx(0.1)
        assert math.degrees(math.atan2(v, u)) == pytest.approx(8.0)
        assert condition.kind is BoundaryKind.FARFIELD

    def test_rejects_non_positive_pressure(self) -> None:
        with pytest.raises(FlowError):
            FarFieldCondition(density=1.0, velocity=(0.0, 0.0), pressure=0.0)


class TestInflowCondition:
    @pytest.fixture
    def inflow(self) -> InflowCondition:
        return InflowCondition(density=1000.0, mean_velocity=1.0, height=0.41)

    def test_profile_peaks_at_one_and_a_half_mean(self, inflow: InflowCondition) -> None:
        assert inflow.profile(0.205) == pytest.approx(1.5)

    def test_profile_vanishes_at_walls(self, inflow: InflowCondition) -> None:
        assert inflow.profile(0.0) == 0.0
        assert inflow.profile(0.41) == pytest.approx(0.0, abs=1e-14)

    def test_ramp_uses_smooth_start(self, inflow: InflowCondition) -> None:
        assert inflow.ramp(0.5) == pytest.approx(smooth_start(0.5, 2.0))

    def test_rejects_negative_ramp(self) -> None:
        with pytest.raises(FlowError):
            InflowCondition(density=1.0, mean_velocity=1.0, height=1.0, ramp_time=-1.0)


class TestWallAndOutflow:
    def test_wall_is_adiabatic_by_default(self) -> None:
        assert WallCondition().adiabatic
        assert WallCondition().kind is BoundaryKind.WALL

    def test_outflow_rejects_non_positive_pressure(self) -> None:
        with pytest.raises(FlowError):
            OutflowCondition(pressure=-1.0)
