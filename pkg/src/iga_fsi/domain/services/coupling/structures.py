"""Structure solvers seen from the coupling loop.

Both structural models expose the same surface: a committed state, a step
under interface loads, the control point displacement and velocity fields the
mesh motion and energy monitor need, and the boundary curve each interface
is paired with.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import StructState
from iga_fsi.domain.exceptions import CouplingError
from iga_fsi.domain.services.structure import (
    hyperelastic_step,
    membrane_deflection,
    membrane_step,
    point_displacement,
)
from iga_fsi.domain.value_objects import NewmarkParams

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.domain.entities import (
        HyperelasticModel,
        InterfaceSpec,
        MembraneModel,
        NurbsCurve,
    )
    from iga_fsi.domain.value_objects import NewtonSettings


class StructureSolver(ABC):
    """Contract:
    - `state` is the last committed state; `step` commits a new one only on success
    - fields are (n_cp, 2) Cartesian control point arrays
    - `loads` are (n_cp, 2) consistent nodal forces from the fluid
    """

    def __init__(self, state: StructState, beta: float = 0.25, gamma: float = 0.5) -> None:
        self._state = state
        self.last_iterations = 0
        self.beta = beta
        self.gamma = gamma

    def newmark(self, dt: float) -> NewmarkParams:
        return NewmarkParams(dt, self.beta, self.gamma)

    @property
    def state(self) -> StructState:
        return self._state

    def restore(self, state: StructState) -> None:
        self._state = state

    @property
    @abstractmethod
    def control_point_count(self) -> int: ...

    @abstractmethod
    def step(self, loads: NDArray[np.float64], dt: float) -> StructState: ...

    @abstractmethod
    def displacement_field(self) -> NDArray[np.float64]: ...

    @abstractmethod
    def velocity_field(self) -> NDArray[np.float64]: ...

    @abstractmethod
    def interface_curve(self, spec: InterfaceSpec) -> tuple[NurbsCurve, NDArray[np.intp]]:
        """Undeformed boundary curve paired with `spec` and its control point rows."""

    @abstractmethod
    def deformed_curve(self, spec: InterfaceSpec) -> NurbsCurve: ...

    @abstractmethod
    def monitor(self) -> NDArray[np.float64]:
        """Displacement (2,) of the monitored material point."""


class MembraneStructure(StructureSolver):
    """Transverse membrane; only the y component of the interface load acts on it."""

    def __init__(
        self,
        model: MembraneModel,
        state: StructState | None = None,
        monitor_at: float = 0.5,
        beta: float = 0.25,
        gamma: float = 0.5,
    ) -> None:
        super().__init__(state or StructState.zeros(model.state_shape), beta, gamma)
        self.model = model
        kv = model.curve.knot_vector
        self._monitor_parameter = kv.first + monitor_at * (kv.last - kv.first)

    @property
    def control_point_count(self) -> int:
        return self.model.dof_count

    def step(self, loads: NDArray[np.float64], dt: float) -> StructState:
        self._state = membrane_step(self.model, self._state, loads[:, 1], self.newmark(dt))
        return self._state

    def displacement_field(self) -> NDArray[np.float64]:
        return self.model.displacement_field(self._state.u)

    def velocity_field(self) -> NDArray[np.float64]:
        return self.model.displacement_field(self._state.v)

    def interface_curve(self, spec: InterfaceSpec) -> tuple[NurbsCurve, NDArray[np.intp]]:
        if spec.structure_side is not None:
            raise CouplingError("A membrane interface cannot name a structure side")
        return self.model.curve, np.arange(self.model.dof_count)

    def deformed_curve(self, spec: InterfaceSpec) -> NurbsCurve:
        return self.model.deformed_curve(self._state.u)

    def monitor(self) -> NDArray[np.float64]:
        _, y = membrane_deflection(self.model, self._state.u, self._monitor_parameter)
        return np.array([0.0, float(y[0])])


class SolidStructure(StructureSolver):
    """Saint Venant-Kirchhoff solid; Newton iterations of the last step are kept."""

    def __init__(
        self,
        model: HyperelasticModel,
        state: StructState | None = None,
        settings: NewtonSettings | None = None,
        monitor_at: tuple[float, float] = (1.0, 0.5),
        beta: float = 0.25,
        gamma: float = 0.5,
    ) -> None:
        super().__init__(state or StructState.zeros(model.state_shape), beta, gamma)
        self.model = model
        self.settings = settings
        (x0, x1), (y0, y1) = model.surface.parameter_bounds()
        self._monitor_parameters = (
            x0 + monitor_at[0] * (x1 - x0),
            y0 + monitor_at[1] * (y1 - y0),
        )

    @property
    def control_point_count(self) -> int:
        return self.model.control_point_count

    def step(self, loads: NDArray[np.float64], dt: float) -> StructState:
        state, result = hyperelastic_step(
            self.model, self._state, loads, self.newmark(dt), self.settings
        )
        self._state = state
        self.last_iterations = result.iterations
        return state

    def displacement_field(self) -> NDArray[np.float64]:
        return self.model.displacement_field(self._state.u)

    def velocity_field(self) -> NDArray[np.float64]:
        return self.model.displacement_field(self._state.v)

    def _side(self, spec: InterfaceSpec) -> NDArray[np.intp]:
        if spec.structure_side is None:
            raise CouplingError("A solid interface must name the structure side it lies on")
        return self.model.surface.side_indices(spec.structure_side)

    def interface_curve(self, spec: InterfaceSpec) -> tuple[NurbsCurve, NDArray[np.intp]]:
        rows = self._side(spec)
        assert spec.structure_side is not None
        return self.model.surface.side_curve(spec.structure_side), rows

    def deformed_curve(self, spec: InterfaceSpec) -> NurbsCurve:
        rows = self._side(spec)
        curve, _ = self.interface_curve(spec)
        return curve.with_control_points(curve.control_points + self.displacement_field()[rows])

    def monitor(self) -> NDArray[np.float64]:
        xi, eta = self._monitor_parameters
        return point_displacement(self.model, self._state.u, xi, eta)
