"""Tests for knot insertion, Bézier extraction and de Casteljau splitting.

Every transformation must leave the geometry unchanged; the operator forms
must agree with the direct algorithms.
"""

from fractions import Fraction

import numpy as np
import pytest

from iga_fsi.domain.entities import NurbsCurve, NurbsSurface
from iga_fsi.domain.exceptions import (
    GeometryError,
    InvalidControlNetError,
    KnotMultiplicityError,
    ParameterOutOfRangeError,
)
from iga_fsi.domain.services.nurbs import (
    bezier_extract_curve,
    bezier_extract_surface,
    eval_curve,
    eval_patch,
    eval_segment,
    extract_subcurve,
    extraction_operators,
    insert_knot,
    insert_knots,
    insert_surface_knot,
    refine_curve_to,
    refine_surface_to,
    refinement_matrix,
    reverse_curve,
    sample_curve,
    sample_surface,
    split_bezier,
    split_segment,
)
from iga_fsi.domain.value_objects import KnotVector

XI = np.linspace(0.0, 1.0, 17)

# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def curve() -> NurbsCurve:
    kv = KnotVector.from_breaks(3, [0.0, 0.3, 1.0])
    points = np.array([[0.0, 0.0], [0.2, 0.5], [0.6, 0.7], [0.9, 0.2], [1.2, 0.4]])
    return NurbsCurve(kv, points, np.array([1.0, 0.8, 1.3, 0.9, 1.0]))


@pytest.fixture
def surface() -> NurbsSurface:
    kvx = KnotVector.from_breaks(2, [0.0, 0.5, 1.0])
    kvy = KnotVector.uniform(2, 1)
    grid = np.stack(np.meshgrid(np.arange(3.0), np.arange(3.0), indexing="ij"), axis=-1)
    net = np.concatenate([grid, grid[-1:] + [1.0, 0.3]], axis=0)
    weights = np.ones((4, 3))
    weights[1, 1] = 0.7
    return NurbsSurface((kvx, kvy), net, weights)


# =============================================================================
# Knot insertion
# =============================================================================


class TestKnotInsertion:
    def test_insertion_preserves_curve(self, curve: NurbsCurve) -> None:
        refined = insert_knot(curve, 0.6)
        assert refined.size == curve.size + 1
        np.testing.assert_allclose(sample_curve(refined, XI), sample_curve(curve, XI), atol=1e-14)

    def test_repeated_insertion_up_to_degree_is_allowed(self, curve: NurbsCurve) -> None:
        refined = insert_knots(curve, [0.3, 0.3])
        assert refined.knot_vector.multiplicity(0.3) == 3
        np.testing.assert_allclose(sample_curve(refined, XI), sample_curve(curve, XI), atol=1e-14)

    def test_rejects_multiplicity_above_degree_plus_one(self, curve: NurbsCurve) -> None:
        with pytest.raises(KnotMultiplicityError):
            insert_knots(curve, [0.3, 0.3, 0.3, 0.3])

    def test_rejects_end_knot(self, curve: NurbsCurve) -> None:
        with pytest.raises(ParameterOutOfRangeError):
            insert_knot(curve, 1.0)

    def test_refine_to_target(self, curve: NurbsCurve) -> None:
        target = KnotVector.from_breaks(3, [0.0, 0.1, 0.3, 0.65, 1.0])
        refined = refine_curve_to(curve, target)
        assert refined.knot_vector.matches(target)
        np.testing.assert_allclose(sample_curve(refined, XI), sample_curve(curve, XI), atol=1e-14)

    def test_refine_rejects_dropped_knot(self, curve: NurbsCurve) -> None:
        with pytest.raises(GeometryError, match="not a refinement"):
            refine_curve_to(curve, KnotVector.from_breaks(3, [0.0, 0.5, 1.0]))

    def test_refinement_matrix_is_convex(self, curve: NurbsCurve) -> None:
        target = KnotVector.from_breaks(3, [0.0, 0.3, 0.5, 1.0])
        matrix = refinement_matrix(curve.knot_vector, target)
        assert matrix.shape == (target.size, curve.size)
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0)
        assert np.all(matrix >= 0.0)

    def test_surface_insertion_and_refinement_agree(self, surface: NurbsSurface) -> None:
        by_insertion = insert_surface_knot(surface, 1, 0.4)
        targets = (surface.knot_vectors[0], KnotVector.from_breaks(2, [0.0, 0.4, 1.0]))
        by_operator = refine_surface_to(surface, targets)
        np.testing.assert_allclose(by_insertion.control_net, by_operator.control_net)
        np.testing.assert_allclose(by_insertion.weights, by_operator.weights)
        xi, eta = XI, XI[::-1]
        np.testing.assert_allclose(
            sample_surface(by_operator, xi, eta), sample_surface(surface, xi, eta), atol=1e-14
        )


# =============================================================================
# Sub-curves and reversal
# =============================================================================


class TestSubcurves:
    def test_subcurve_keeps_parametrisation(self, curve: NurbsCurve) -> None:
        sub = extract_subcurve(curve, 0.2, 0.75)
        assert sub.knot_vector.first == 0.2
        assert sub.knot_vector.last == 0.75
        xs = np.linspace(0.2, 0.75, 9)
        np.testing.assert_allclose(sample_curve(sub, xs), sample_curve(curve, xs), atol=1e-14)

    def test_subcurve_on_existing_knot(self, curve: NurbsCurve) -> None:
        sub = extract_subcurve(curve, 0.0, 0.3)
        np.testing.assert_allclose(eval_curve(sub, 0.3), eval_curve(curve, 0.3))

    def test_rejects_decreasing_range(self, curve: NurbsCurve) -> None:
        with pytest.raises(ParameterOutOfRangeError):
            extract_subcurve(curve, 0.6, 0.2)

    def test_reverse_traverses_backwards(self, curve: NurbsCurve) -> None:
        reversed_curve = reverse_curve(curve)
        np.testing.assert_allclose(
            sample_curve(reversed_curve, 1.0 - XI), sample_curve(curve, XI), atol=1e-14
        )


# =============================================================================
# Bézier extraction and splitting
# =============================================================================


class TestBezierExtraction:
    def test_one_segment_per_span(self, curve: NurbsCurve) -> None:
        segments = bezier_extract_curve(curve, source_id=4)
        assert len(segments) == 2
        assert segments[1].lineage.key() == "4:4"
        assert segments[1].lineage.intervals == ((0.3, 1.0),)

    def test_segments_reproduce_curve(self, curve: NurbsCurve) -> None:
        t = np.linspace(0.0, 1.0, 5)
        for segment in bezier_extract_curve(curve):
            (a, b), = segment.lineage.intervals
            np.testing.assert_allclose(
                eval_segment(segment, t), sample_curve(curve, a + t * (b - a)), atol=1e-14
            )

    def test_extraction_operator_matches_direct_extraction(self, curve: NurbsCurve) -> None:
        segments = bezier_extract_curve(curve)
        for (_, _, matrix), segment in zip(
            extraction_operators(curve.knot_vector), segments, strict=True
        ):
            np.testing.assert_allclose(matrix @ curve.homogeneous(), segment.homogeneous())

    def test_surface_patches_in_xi_major_order(self, surface: NurbsSurface) -> None:
        patches = bezier_extract_surface(surface, source_id=1)
        assert [p.lineage.spans for p in patches] == [(2, 2), (3, 2)]
        point = eval_patch(patches[1], [0.5], [0.5])[0]
        np.testing.assert_allclose(point, sample_surface(surface, [0.75], [0.5])[0])

    def test_rejects_mixed_degrees(self) -> None:
        kvs = (KnotVector.uniform(2, 1), KnotVector.uniform(1, 1))
        surface = NurbsSurface.polynomial(kvs, np.zeros((3, 2, 2)))
        with pytest.raises(InvalidControlNetError):
            bezier_extract_surface(surface)


class TestSplitting:
    def test_split_children_reproduce_parent(self, surface: NurbsSurface) -> None:
        patch = bezier_extract_surface(surface)[0]
        lower, upper = split_bezier(patch, 1)
        s = np.linspace(0.0, 1.0, 5)
        np.testing.assert_allclose(
            eval_patch(lower, s, s), eval_patch(patch, s, 0.5 * s), atol=1e-14
        )
        np.testing.assert_allclose(
            eval_patch(upper, s, s), eval_patch(patch, s, 0.5 + 0.5 * s), atol=1e-14
        )
        assert upper.lineage.local_box()[1] == (Fraction(1, 2), Fraction(1))

    def test_split_segment_at_fraction(self, curve: NurbsCurve) -> None:
        segment = bezier_extract_curve(curve)[0]
        lower, _ = split_segment(segment, Fraction(1, 3))
        t = np.linspace(0.0, 1.0, 4)
        np.testing.assert_allclose(eval_segment(lower, t), eval_segment(segment, t / 3))

    def test_rejects_bad_direction(self, surface: NurbsSurface) -> None:
        with pytest.raises(GeometryError):
            split_bezier(bezier_extract_surface(surface)[0], 2)
