from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

from iga_fsi.application.ports import CaseFactory
from iga_fsi.application.simulation import (
    ForceReference,
    ProfileSettings,
    RunSettings,
    SimulationCase,
)
from iga_fsi.domain.entities import (
    FlowState,
    HyperelasticModel,
    InterfaceSpec,
    MembraneModel,
    NurbsCurve,
    NurbsSurface,
)
from iga_fsi.domain.exceptions import ConfigurationError
from iga_fsi.domain.services.coupling import (
    CoupledSystem,
    FluidSide,
    ForceTransfer,
    MembraneStructure,
    MeshMotionMap,
    SolidStructure,
    StructureSolver,
    build_pairing,
    build_transfer,
)
from iga_fsi.domain.services.fluid import DGOperator, conservative
from iga_fsi.domain.services.mesh import build_fluid_mesh
from iga_fsi.domain.services.structure import (
    hyperelastic_initial_state,
    membrane_initial_state,
)
from iga_fsi.domain.value_objects import (
    FarFieldCondition,
    GasModel,
    InflowCondition,
    NewtonSettings,
    OutflowCondition,
    RefinementPlan,
    RefinementRule,
    WallCondition,
)
from iga_fsi.infrastructure.config import (
    CaseConfig,
    FarFieldSettings,
    InflowSettings,
    OutflowSettings,
    WallSettings,
    dump_config,
    with_grid,
    with_incidence,
)
from iga_fsi.infrastructure.geometry import (
    Layout,
    bar_layout,
    channel_layout,
    membrane_layout,
    parse_geometry,
)

if TYPE_CHECKING:
    from iga_fsi.application.ports import PatchExecutor
    from iga_fsi.domain.entities import InterfacePairing, MultiPatchMesh
    from iga_fsi.domain.value_objects import BoundaryCondition
    from iga_fsi.infrastructure.config import ConditionSettings, StructureSettings

logger = logging.getLogger(__name__)


def boundary_condition(settings: ConditionSettings) -> BoundaryCondition:
    match settings:
        case WallSettings():
            return WallCondition(adiabatic=settings.adiabatic)
        case FarFieldSettings():
            return FarFieldCondition.at_incidence(
                settings.density, settings.speed, settings.pressure, settings.alpha_deg
            )
        case InflowSettings():
            return InflowCondition(
                settings.density,
                settings.mean_velocity,
                settings.height,
                settings.bottom,
                settings.ramp_time,
            )
        case OutflowSettings():
            return OutflowCondition(settings.pressure)
    raise ConfigurationError(f"Unknown boundary condition {settings!r}")


def refinement_plan(config: CaseConfig, surface_count: int) -> RefinementPlan:
    """Configured rules, each deepened by the selected grid's extra levels.

    Without configured rules the extra levels refine every surface.
    """
    entry = config.selected_grid()
    extra = 0 if entry is None else entry.extra_levels
    rules = [
        RefinementRule(
            levels=rule.levels + extra,
            direction=rule.direction,
            surface=rule.surface,
            spans=rule.spans,
            box=rule.box,
        )
        for rule in config.refinement.rules
    ]
    if extra and not rules:
        rules = [RefinementRule(levels=extra, surface=i) for i in range(surface_count)]
    return RefinementPlan(tuple(rules), config.refinement.max_level_jump)


class ConfiguredCaseFactory(CaseFactory):
    """Builds runnable cases from a validated configuration.

    Responsibilities:
    - Resolve the selected grid and incidence into the configuration
    - Build the geometry layout, fluid mesh and DG operator
    - Build the structure model with its consistent initial state
    - Pair the interfaces and assemble the coupling operators

    `base_dir` resolves relative geometry file paths.
    """

    def __init__(
        self,
        config: CaseConfig,
        executor: PatchExecutor | None = None,
        base_dir: Path | None = None,
    ) -> None:
        self._config = config
        self._executor = executor
        self._base_dir = base_dir or Path.cwd()

    @property
    def config(self) -> CaseConfig:
        return self._config

    def grids(self) -> list[str]:
        return list(self._config.grids)

    def build(self, grid: str | None = None, alpha: float | None = None) -> SimulationCase:
        config = self._config
        if grid is not None:
            config = with_grid(config, grid)
        if alpha is not None:
            config = with_incidence(config, alpha)

        # Step 1: Geometry
        layout = self.layout(config)

        # Step 2: Structure
        structure = None if config.structure is None else self._structure(config, layout)

        # Step 3: Flow
        fluid = mesh = None
        if config.fluid is not None:
            plan = refinement_plan(config, len(layout.surfaces))
            mesh = build_fluid_mesh(layout.surfaces, layout.tags, plan)
            fluid = self._fluid(config, mesh)

        # Step 4: Coupling operators
        pairing = motion = forces = None
        if fluid is not None and structure is not None:
            assert mesh is not None
            pairing, motion, forces = self._coupling(config, mesh, layout, fluid, structure)

        system = CoupledSystem(
            fluid=fluid,
            structure=structure,
            motion=motion,
            forces=forces,
            max_dt=config.run.max_dt,
        )
        case = SimulationCase(
            name=config.name,
            system=system,
            run=self._run_settings(config),
            config=dump_config(config),
            grid=config.grid,
            mesh=mesh,
            pairing=pairing,
            reference=self._reference(config),
            profile=self._profile(config),
        )
        logger.info("Built %s: %s", case.name, case.degrees_of_freedom())
        return case

    # ------------------------------------------------------------------
    # Geometry
    # ------------------------------------------------------------------

    def layout(self, config: CaseConfig) -> Layout:
        geometry = config.geometry
        entry = config.selected_grid()
        scale = geometry.scale if entry is None else entry.scale
        structure = config.structure
        elements = structure.elements if structure is not None else None
        if entry is not None and entry.structure_elements is not None:
            elements = entry.structure_elements

        match geometry.layout:
            case "membrane":
                along = None if elements is None or structure is None else elements[0]
                return membrane_layout(scale, along)
            case "channel":
                if geometry.elastic != (structure is not None):
                    raise ConfigurationError(
                        "An elastic channel needs a structure section and a rigid one must "
                        "not have one"
                    )
                pair = None if elements is None else _pair(elements)
                return channel_layout(scale, pair, elastic=geometry.elastic)
            case "bar":
                if elements is None or config.fluid is not None:
                    raise ConfigurationError("The bar layout is for structure-only solid cases")
                return bar_layout(_pair(elements))
            case "file":
                return self._file_layout(config)
        raise ConfigurationError(f"Unknown layout {geometry.layout!r}")

    def _file_layout(self, config: CaseConfig) -> Layout:
        geometry = config.geometry
        assert geometry.path is not None
        path = Path(geometry.path)
        if not path.is_absolute():
            path = self._base_dir / path
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Cannot read geometry file {path}: {e}") from e
        document = parse_geometry(text)

        structure: NurbsCurve | NurbsSurface | None = None
        surfaces = dict(document.surfaces)
        if geometry.structure is not None:
            if geometry.structure in document.curves:
                structure = document.curves[geometry.structure]
            elif geometry.structure in surfaces:
                structure = surfaces.pop(geometry.structure)
            else:
                raise ConfigurationError(f"Geometry file has no id {geometry.structure!r}")
        tags = {(t.surface, t.side): t.tag for t in geometry.tags}
        interfaces = tuple(
            InterfaceSpec(i.fluid_surface, i.fluid_side, i.structure_range, i.structure_side)
            for i in geometry.interfaces
        )
        return Layout(tuple(surfaces.values()), tags, structure, interfaces, tuple(surfaces))

    # ------------------------------------------------------------------
    # Sub-solvers
    # ------------------------------------------------------------------

    def _structure(self, config: CaseConfig, layout: Layout) -> StructureSolver:
        settings = config.structure
        assert settings is not None
        if settings.kind == "membrane":
            if not isinstance(layout.structure, NurbsCurve):
                raise ConfigurationError("A membrane structure needs a structure curve")
            model = MembraneModel(
                layout.structure,
                settings.density,
                settings.thickness,
                settings.young,
                settings.pretension,
            )
            monitor = 0.5 if settings.monitor is None else settings.monitor[0]
            return MembraneStructure(
                model,
                membrane_initial_state(model),
                monitor,
                beta=settings.beta,
                gamma=settings.gamma,
            )

        if not isinstance(layout.structure, NurbsSurface):
            raise ConfigurationError("A solid structure needs a structure surface")
        solid = HyperelasticModel.from_young(
            layout.structure,
            settings.density,
            settings.young,
            settings.poisson,
            gravity=settings.gravity,
        )
        at = (1.0, 0.5) if settings.monitor is None else _pair_float(settings.monitor)
        return SolidStructure(
            solid,
            hyperelastic_initial_state(solid),
            _newton(settings),
            monitor_at=at,
            beta=settings.beta,
            gamma=settings.gamma,
        )

    def _fluid(self, config: CaseConfig, mesh: MultiPatchMesh) -> FluidSide:
        settings = config.fluid
        assert settings is not None
        missing = sorted(mesh.tags() - set(settings.conditions))
        if missing:
            raise ConfigurationError(f"No boundary condition for tag(s): {', '.join(missing)}")
        gas = GasModel(settings.gas.viscosity, settings.gas.gamma, settings.gas.prandtl)
        conditions = {
            tag: boundary_condition(c)
            for tag, c in settings.conditions.items()
            if tag in mesh.tags()
        }
        operator = DGOperator(
            mesh,
            gas,
            conditions,
            patch_map=None if self._executor is None else self._executor.map,
            chunk_size=settings.chunk_size,
        )
        if settings.initial is not None:
            density, velocity, pressure = (
                settings.initial.density,
                settings.initial.velocity,
                settings.initial.pressure,
            )
        else:
            farfield = settings.farfield()
            assert farfield is not None
            stream = FarFieldCondition.at_incidence(
                farfield.density, farfield.speed, farfield.pressure, farfield.alpha_deg
            )
            density, velocity, pressure = stream.density, stream.velocity, stream.pressure
        w0 = conservative(density, velocity[0], velocity[1], pressure, gas)
        state = FlowState.uniform(mesh.patch_count, mesh.basis_size, w0)
        return FluidSide(
            operator,
            state,
            mesh.control_points.copy(),
            cfl=settings.cfl,
            force_tags=config.monitors.force_tags,
            ambient_pressure=pressure,
        )

    def _coupling(
        self,
        config: CaseConfig,
        mesh: MultiPatchMesh,
        layout: Layout,
        fluid: FluidSide,
        structure: StructureSolver,
    ) -> tuple[InterfacePairing, MeshMotionMap, ForceTransfer]:
        if not layout.interfaces:
            raise ConfigurationError("A coupled case needs at least one interface")
        curves, rows = zip(*(structure.interface_curve(s) for s in layout.interfaces), strict=True)
        pairing = build_pairing(mesh, layout.interfaces, curves)
        transfers = [
            build_transfer(mesh, spec, curve, row)
            for spec, curve, row in zip(layout.interfaces, curves, rows, strict=True)
        ]
        radius = config.coupling.damping_fraction * mesh.domain_diagonal()
        motion = MeshMotionMap.build(mesh, transfers, radius)
        forces = ForceTransfer.build(
            pairing, fluid.operator.tables.boundary, curves, rows, structure.control_point_count
        )
        return pairing, motion, forces

    # ------------------------------------------------------------------
    # Run settings and monitors
    # ------------------------------------------------------------------

    @staticmethod
    def _run_settings(config: CaseConfig) -> RunSettings:
        run = config.run
        return RunSettings(
            end_time=run.end_time,
            output_every=run.output_every,
            snapshot_every=run.snapshot_every,
            checkpoint_every=run.checkpoint_every,
            snapshot_resolution=run.snapshot_resolution,
            periods=run.periods,
        )

    @staticmethod
    def _reference(config: CaseConfig) -> ForceReference | None:
        reference = config.monitors.reference
        if reference is None:
            return None
        farfield = None if config.fluid is None else config.fluid.farfield()
        alpha = 0.0 if farfield is None else farfield.alpha_deg
        return ForceReference(reference.density, reference.speed, reference.length, alpha)

    @staticmethod
    def _profile(config: CaseConfig) -> ProfileSettings | None:
        profile = config.monitors.profile
        if profile is None or config.fluid is None:
            return None
        farfield = config.fluid.farfield()
        if farfield is None:
            raise ConfigurationError("Membrane profiles need a far-field reference pressure")
        return ProfileSettings(
            stations=profile.stations,
            start_time=profile.start_time,
            upper_tag=profile.upper_tag,
            lower_tag=profile.lower_tag,
            pressure=farfield.pressure,
        )


def _pair(elements: tuple[int, ...]) -> tuple[int, int]:
    if len(elements) != 2:
        raise ConfigurationError(f"A solid needs two element counts, got {list(elements)}")
    return elements[0], elements[1]


def _pair_float(values: tuple[float, ...]) -> tuple[float, float]:
    return values[0], values[1]


def _newton(settings: StructureSettings) -> NewtonSettings:
    newton = settings.newton
    return NewtonSettings(
        tolerance=newton.tolerance,
        max_iterations=newton.max_iterations,
        line_search=newton.line_search,
        absolute_tolerance=newton.absolute_tolerance,
    )
