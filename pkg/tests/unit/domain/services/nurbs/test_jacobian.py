"""Tests for patch Jacobians, edge tangents and the positivity check."""

import numpy as np
import pytest

from iga_fsi.domain.entities import BezierPatch
from iga_fsi.domain.exceptions import PatchTanglingError
from iga_fsi.domain.services.nurbs import (
    boundary_jacobian,
    edge_tangents,
    geometry_jacobian,
    require_positive,
)
from iga_fsi.domain.value_objects import PatchLineage

# =============================================================================
# Fixtures
# =============================================================================


def _patch(scale: tuple[float, float]) -> BezierPatch:
    t = np.linspace(0.0, 1.0, 3)
    grid = np.stack(np.meshgrid(t * scale[0], t * scale[1], indexing="ij"), axis=-1)
    lineage = PatchLineage(0, (2, 2), ((0.0, 1.0), (0.0, 1.0)))
    return BezierPatch(2, grid, np.ones((3, 3)), lineage)


@pytest.fixture
def rectangle() -> BezierPatch:
    return _patch((2.0, 0.5))


# =============================================================================
# Tests
# =============================================================================


class TestGeometryJacobian:
    def test_affine_patch_has_constant_jacobian(self, rectangle: BezierPatch) -> None:
        jac, det = geometry_jacobian(rectangle, 0.3, 0.8)
        np.testing.assert_allclose(jac, [[2.0, 0.0], [0.0, 0.5]], atol=1e-14)
        assert det == pytest.approx(1.0)

    def test_mirrored_patch_is_rejected(self) -> None:
        with pytest.raises(PatchTanglingError):
            geometry_jacobian(_patch((-1.0, 1.0)), 0.5, 0.5)

    def test_edge_tangents_follow_edge_direction(self, rectangle: BezierPatch) -> None:
        np.testing.assert_allclose(edge_tangents(rectangle, 0, [0.5]), [[2.0, 0.0]], atol=1e-14)
        np.testing.assert_allclose(edge_tangents(rectangle, 1, [0.5]), [[0.0, 0.5]], atol=1e-14)

    def test_boundary_jacobian_is_edge_length_rate(self, rectangle: BezierPatch) -> None:
        np.testing.assert_allclose(boundary_jacobian(rectangle, 2, [0.0, 1.0]), [2.0, 2.0])
        np.testing.assert_allclose(boundary_jacobian(rectangle, 3, [0.4]), [0.5])


class TestRequirePositive:
    def test_reports_offending_patch_ids(self) -> None:
        det = np.array([[1.0, 2.0], [0.5, -0.1], [0.0, 1.0]])
        with pytest.raises(PatchTanglingError) as info:
            require_positive(det, patch_ids=[10, 11, 12])
        assert info.value.patch_ids == (11, 12)

    def test_accepts_positive_determinants(self) -> None:
        require_positive(np.ones((2, 3)))
