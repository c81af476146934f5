"""Entities - geometry carriers, meshes, solver states and structural models."""

from iga_fsi.domain.entities.bezier import (
    EDGE_ETA0,
    EDGE_ETA1,
    EDGE_XI0,
    EDGE_XI1,
    EDGES,
    BezierPatch,
    BezierSegment,
    edge_parameters,
    edge_slice,
)
from iga_fsi.domain.entities.interface_pairing import InterfacePairing, InterfaceSpec, PairedEdge
from iga_fsi.domain.entities.multipatch_mesh import (
    BoundaryFace,
    EdgeRef,
    FaceRecord,
    MultiPatchMesh,
    SubEdge,
)
from iga_fsi.domain.entities.nurbs_curve import NurbsCurve
from iga_fsi.domain.entities.nurbs_surface import NurbsSurface
from iga_fsi.domain.entities.states import FlowState, MeshMotion, StructState
from iga_fsi.domain.entities.structural_models import (
    HyperelasticModel,
    MembraneModel,
    lame_from_young,
)

__all__ = [
    "EDGES",
    "EDGE_ETA0",
    "EDGE_ETA1",
    "EDGE_XI0",
    "EDGE_XI1",
    "BezierPatch",
    "BezierSegment",
    "BoundaryFace",
    "EdgeRef",
    "FaceRecord",
    "FlowState",
    "HyperelasticModel",
    "InterfacePairing",
    "InterfaceSpec",
    "MembraneModel",
    "MeshMotion",
    "MultiPatchMesh",
    "NurbsCurve",
    "NurbsSurface",
    "PairedEdge",
    "StructState",
    "SubEdge",
    "edge_parameters",
    "edge_slice",
    "lame_from_young",
]
