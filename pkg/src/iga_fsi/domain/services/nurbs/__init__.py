"""NURBS and Bézier geometry kernel."""

from iga_fsi.domain.services.nurbs.basis import (
    basis_table,
    eval_bspline_basis,
    eval_bspline_deriv,
    eval_bspline_ders,
    eval_nurbs_basis,
    global_basis,
    rational_ders,
)
from iga_fsi.domain.services.nurbs.bernstein import (
    bernstein,
    rational_curve_basis,
    rational_tables,
    tensor_bernstein,
)
from iga_fsi.domain.services.nurbs.curves import (
    eval_curve,
    eval_curve_derivative,
    eval_patch,
    eval_segment,
    eval_surface,
    eval_surface_derivatives,
    patch_points,
    sample_curve,
    sample_surface,
)
from iga_fsi.domain.services.nurbs.jacobian import (
    boundary_jacobian,
    edge_tangents,
    geometry_jacobian,
    patch_jacobians,
    require_positive,
)
from iga_fsi.domain.services.nurbs.refinement import (
    bezier_extract,
    bezier_extract_curve,
    bezier_extract_surface,
    extract_subcurve,
    extraction_operators,
    insert_knot,
    insert_knots,
    insert_surface_knot,
    refine_curve_to,
    refine_surface_to,
    refinement_matrix,
    reverse_curve,
    split_bezier,
    split_matrices,
    split_segment,
    subcurve_matrix,
)

__all__ = [
    "basis_table",
    "bernstein",
    "bezier_extract",
    "bezier_extract_curve",
    "bezier_extract_surface",
    "boundary_jacobian",
    "edge_tangents",
    "eval_bspline_basis",
    "eval_bspline_deriv",
    "eval_bspline_ders",
    "eval_curve",
    "eval_curve_derivative",
    "eval_nurbs_basis",
    "eval_patch",
    "eval_segment",
    "eval_surface",
    "eval_surface_derivatives",
    "extract_subcurve",
    "extraction_operators",
    "geometry_jacobian",
    "global_basis",
    "insert_knot",
    "insert_knots",
    "insert_surface_knot",
    "patch_jacobians",
    "patch_points",
    "rational_curve_basis",
    "rational_ders",
    "rational_tables",
    "refine_curve_to",
    "refine_surface_to",
    "refinement_matrix",
    "require_positive",
    "reverse_curve",
    "sample_curve",
    "sample_surface",
    "split_bezier",
    "split_matrices",
    "split_segment",
    "subcurve_matrix",
]
