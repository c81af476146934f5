"""Domain exceptions for iga-fsi.

Exception hierarchy:
    DomainException (base)
    ├── Geometry Errors
    │   ├── ParameterOutOfRangeError
    │   ├── InvalidKnotVectorError
    │   ├── KnotMultiplicityError
    │   ├── InvalidControlNetError
    │   └── PatchTanglingError
    ├── Mesh Errors
    │   ├── NonConformingMeshError
    │   ├── UntaggedBoundaryError
    │   └── RefinementBalanceError
    ├── Numerics Errors
    │   ├── QuadratureOrderError
    │   ├── SingularMatrixError
    │   └── NewtonConvergenceError
    ├── Structure Errors
    │   └── ElementInversionError
    ├── Flow Errors
    │   ├── PositivityError
    │   └── VacuumStateError
    ├── Coupling Errors
    │   ├── LineageMismatchError
    │   ├── UnpairedEdgeError
    │   └── CouplingPhaseError (sub-solver failure annotated with its phase)
    └── Configuration Errors
        ├── ConfigValidationError
        └── CheckpointNotFoundError

The CLI maps ConfigurationError to exit code 2 and every other DomainException to 3.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence


class DomainException(Exception):
    """Base exception for all domain-level errors.

    All domain exceptions inherit from this class so that solver failures can be
    told apart from programming errors and I/O failures.
    """


# =============================================================================
# Geometry Errors
# =============================================================================


class GeometryError(DomainException):
    """Base class for NURBS and Bézier geometry failures."""


class ParameterOutOfRangeError(GeometryError):
    """Raised when a parametric coordinate lies outside the knot range.

    Evaluation is defined on [first knot, last knot] only; values within the
    knot tolerance of an end are clamped, anything further out is rejected.
    """


class InvalidKnotVectorError(GeometryError):
    """Raised when a knot vector is decreasing, not open, or has an unsupported degree."""


class KnotMultiplicityError(GeometryError):
    """Raised when knot insertion would push a multiplicity above p+1."""


class InvalidControlNetError(GeometryError):
    """Raised when control points and weights do not match the knot vectors.

    Covers wrong grid dimensions, non-positive weights and mixed degrees where a
    square Bézier patch is required.
    """


class PatchTanglingError(GeometryError):
    """Raised when a geometry Jacobian determinant is not strictly positive.

    Carries the offending patch ids when known so that mesh motion failures can
    be located in snapshots.
    """

    def __init__(self, message: str, patch_ids: Sequence[int] = ()) -> None:
        super().__init__(message)
        self.patch_ids = tuple(patch_ids)


# =============================================================================
# Mesh Errors
# =============================================================================


class MeshError(DomainException):
    """Base class for fluid tessellation failures."""


class NonConformingMeshError(MeshError):
    """Raised when patch edges cannot be matched into conforming or hanging faces."""


class UntaggedBoundaryError(MeshError):
    """Raised when a boundary edge has no boundary tag.

    Every patch edge must be an interior face, a hanging sub-face, or carry
    exactly one boundary tag.
    """


class RefinementBalanceError(MeshError):
    """Raised when a refinement plan breaks the allowed level jump across a face."""


# =============================================================================
# Numerics Errors
# =============================================================================


class NumericsError(DomainException):
    """Base class for quadrature, linear algebra and iteration failures."""


class QuadratureOrderError(NumericsError):
    """Raised when a Gauss-Legendre rule is requested outside 1 <= n <= 16."""


class SingularMatrixError(NumericsError):
    """Raised when a mass, effective or tangent matrix cannot be factorized."""


class NewtonConvergenceError(NumericsError):
    """Raised when Newton-Raphson exceeds its iteration budget.

    The last residual norm and iteration count are kept for diagnostics.
    """

    def __init__(self, message: str, iterations: int, residual_norm: float) -> None:
        super().__init__(message)
        self.iterations = iterations
        self.residual_norm = residual_norm


# =============================================================================
# Structure Errors
# =============================================================================


class StructureError(DomainException):
    """Base class for structural solver failures."""


class ElementInversionError(StructureError):
    """Raised when det F <= 0 at a structural quadrature point."""


# =============================================================================
# Flow Errors
# =============================================================================


class FlowError(DomainException):
    """Base class for flow solver failures."""


class PositivityError(FlowError):
    """Raised when density or pressure is not positive at a quadrature point.

    This is a fatal diagnostic: the explicit scheme cannot recover from it.
    """

    def __init__(self, message: str, patch_ids: Sequence[int] = ()) -> None:
        super().__init__(message)
        self.patch_ids = tuple(patch_ids)


class VacuumStateError(FlowError):
    """Raised when a Riemann problem is posed with non-physical (vacuum) data."""


# =============================================================================
# Coupling Errors
# =============================================================================


class CouplingError(DomainException):
    """Base class for interface pairing and coupling loop failures."""


class LineageMismatchError(CouplingError):
    """Raised when fluid boundary edges do not descend from the declared structure curve."""


class UnpairedEdgeError(CouplingError):
    """Raised when an interface side has no fluid boundary edge or an edge has no pairing."""


class CouplingPhaseError(CouplingError):
    """Raised when a sub-solver fails inside a coupling step.

    The phase is one of ``dt``, ``load``, ``structure``, ``motion`` or ``fluid``;
    the original exception is chained as ``__cause__``.
    """

    def __init__(self, phase: str, time: float, cause: DomainException) -> None:
        super().__init__(f"{phase} phase failed at t={time:.6g}: {cause}")
        self.phase = phase
        self.time = time


# =============================================================================
# Configuration Errors
# =============================================================================


class ConfigurationError(DomainException):
    """Base class for case configuration failures (CLI exit code 2)."""


class ConfigValidationError(ConfigurationError):
    """Raised when a case file or geometry file fails validation.

    Attributes:
        diagnostics: One human-readable line per failing field, in the form
            ``<dotted.path>: <message>``.
    """

    def __init__(self, message: str, diagnostics: Sequence[str] = ()) -> None:
        lines = [message, *(f"  - {line}" for line in diagnostics)]
        super().__init__("\n".join(lines))
        self.diagnostics = tuple(diagnostics)


class CheckpointNotFoundError(ConfigurationError):
    """Raised when a checkpoint reference does not resolve to a stored checkpoint."""
