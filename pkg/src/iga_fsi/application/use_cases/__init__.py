"""Use cases - Application-specific orchestration of runs, studies and audits."""

from iga_fsi.application.use_cases.audit_interface import (
    AuditInterfaceRequest,
    AuditInterfaceResponse,
    AuditInterfaceUseCase,
)
from iga_fsi.application.use_cases.convergence import (
    ConvergenceRequest,
    ConvergenceResponse,
    ConvergenceRow,
    ConvergenceUseCase,
)
from iga_fsi.application.use_cases.inspect_mesh import (
    InspectMeshRequest,
    InspectMeshResponse,
    InspectMeshUseCase,
)
from iga_fsi.application.use_cases.resume_case import ResumeCaseRequest, ResumeCaseUseCase
from iga_fsi.application.use_cases.run_case import (
    RunCaseRequest,
    RunCaseResponse,
    RunCaseUseCase,
)
from iga_fsi.application.use_cases.sweep import SweepRequest, SweepResponse, SweepRow, SweepUseCase

__all__ = [
    "AuditInterfaceRequest",
    "AuditInterfaceResponse",
    "AuditInterfaceUseCase",
    "ConvergenceRequest",
    "ConvergenceResponse",
    "ConvergenceRow",
    "ConvergenceUseCase",
    "InspectMeshRequest",
    "InspectMeshResponse",
    "InspectMeshUseCase",
    "ResumeCaseRequest",
    "ResumeCaseUseCase",
    "RunCaseRequest",
    "RunCaseResponse",
    "RunCaseUseCase",
    "SweepRequest",
    "SweepResponse",
    "SweepRow",
    "SweepUseCase",
]
