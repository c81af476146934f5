"""Value objects - Immutable objects defined by their attributes."""

from iga_fsi.domain.value_objects.boundary_condition import (
    BoundaryCondition,
    BoundaryKind,
    FarFieldCondition,
    InflowCondition,
    OutflowCondition,
    WallCondition,
    smooth_start,
)
from iga_fsi.domain.value_objects.gas_model import GasModel
from iga_fsi.domain.value_objects.knot_vector import KnotVector
from iga_fsi.domain.value_objects.newmark_params import NewmarkParams
from iga_fsi.domain.value_objects.newton_settings import NewtonSettings
from iga_fsi.domain.value_objects.patch_lineage import PatchLineage, SplitStep
from iga_fsi.domain.value_objects.quadrature_rule import QuadratureRule
from iga_fsi.domain.value_objects.refinement_plan import (
    RefinementPlan,
    RefinementRule,
    SplitDirection,
)
from iga_fsi.domain.value_objects.side import Side

__all__ = [
    "BoundaryCondition",
    "BoundaryKind",
    "FarFieldCondition",
    "GasModel",
    "InflowCondition",
    "KnotVector",
    "NewmarkParams",
    "NewtonSettings",
    "OutflowCondition",
    "PatchLineage",
    "QuadratureRule",
    "RefinementPlan",
    "RefinementRule",
    "Side",
    "SplitDirection",
    "SplitStep",
    "WallCondition",
    "smooth_start",
]
