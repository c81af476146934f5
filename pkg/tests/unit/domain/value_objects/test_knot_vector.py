"""Tests for KnotVector.

Tests cover:
- Open-form validation (end multiplicities, ordering, degree range)
- Span lookup, including the final knot
- Break points and multiplicities with the relative tolerance
- Reparametrisation and reversal
"""

import numpy as np
import pytest

from iga_fsi.domain.exceptions import InvalidKnotVectorError, ParameterOutOfRangeError
from iga_fsi.domain.value_objects import KnotVector

# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def quadratic() -> KnotVector:
    return KnotVector(np.array([0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]), 2)


# =============================================================================
# Validation
# =============================================================================


class TestKnotVectorValidation:
    def test_accepts_open_vector(self, quadratic: KnotVector) -> None:
        assert quadratic.size == 4
        assert quadratic.element_count() == 2

    def test_knots_are_read_only(self, quadratic: KnotVector) -> None:
        with pytest.raises(ValueError):
            quadratic.knots[0] = 1.0

    def test_rejects_decreasing_knots(self) -> None:
        with pytest.raises(InvalidKnotVectorError, match="nondecreasing"):
            KnotVector(np.array([0.0, 0.0, 0.6, 0.4, 1.0, 1.0]), 1)

    def test_rejects_missing_end_multiplicity(self) -> None:
        with pytest.raises(InvalidKnotVectorError, match="repeated"):
            KnotVector(np.array([0.0, 0.0, 0.5, 1.0, 1.0, 1.0]), 2)

    def test_rejects_excess_end_multiplicity(self) -> None:
        with pytest.raises(InvalidKnotVectorError, match="exactly"):
            KnotVector(np.array([0.0, 0.0, 0.0, 1.0, 1.0]), 1)

    def test_rejects_degree_above_four(self) -> None:
        with pytest.raises(InvalidKnotVectorError, match="Degree"):
            KnotVector.uniform(5, 1)

    def test_rejects_empty_range(self) -> None:
        with pytest.raises(InvalidKnotVectorError):
            KnotVector(np.zeros(4), 1)


# =============================================================================
# Queries
# =============================================================================


class TestKnotVectorQueries:
    def test_find_span_interior(self, quadratic: KnotVector) -> None:
        assert quadratic.find_span(0.25) == 2
        assert quadratic.find_span(0.5) == 3

    def test_find_span_maps_last_knot_to_last_span(self, quadratic: KnotVector) -> None:
        assert quadratic.find_span(1.0) == 3

    def test_find_span_rejects_parameter_outside_range(self, quadratic: KnotVector) -> None:
        with pytest.raises(ParameterOutOfRangeError):
            quadratic.find_span(1.1)

    def test_clamp_accepts_roundoff_beyond_end(self, quadratic: KnotVector) -> None:
        assert quadratic.clamp(1.0 + 1e-14) == 1.0

    def test_multiplicity_uses_tolerance(self) -> None:
        kv = KnotVector(np.array([0.0, 0.0, 0.5, 0.5 + 1e-14, 1.0, 1.0]), 1)
        assert kv.multiplicity(0.5) == 2
        np.testing.assert_allclose(kv.unique_knots(), [0.0, 0.5, 1.0])

    def test_spans_skip_repeated_knots(self) -> None:
        kv = KnotVector(np.array([0.0, 0.0, 0.0, 0.5, 0.5, 1.0, 1.0, 1.0]), 2)
        assert kv.spans() == [2, 4]

    def test_uniform_and_from_breaks_agree(self) -> None:
        assert KnotVector.uniform(3, 4).matches(
            KnotVector.from_breaks(3, [0.0, 0.25, 0.5, 0.75, 1.0])
        )


# =============================================================================
# Reparametrisation
# =============================================================================


class TestKnotVectorMapping:
    def test_mapped_keeps_end_knots_exact(self, quadratic: KnotVector) -> None:
        mapped = quadratic.mapped(0.1, 0.7)
        assert mapped.first == 0.1
        assert mapped.last == 0.7
        np.testing.assert_allclose(mapped.interior_knots(), [0.4])

    def test_reversed_mirrors_interior_knots(self) -> None:
        kv = KnotVector.from_breaks(2, [0.0, 0.2, 1.0])
        np.testing.assert_allclose(kv.reversed().interior_knots(), [0.8])

    def test_decreasing_map_reverses(self) -> None:
        kv = KnotVector.from_breaks(2, [0.0, 0.2, 1.0])
        np.testing.assert_allclose(kv.mapped(2.0, 0.0).interior_knots(), [1.6])

    def test_with_knot_adds_one_function(self, quadratic: KnotVector) -> None:
        assert quadratic.with_knot(0.25).size == quadratic.size + 1
