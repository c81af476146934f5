"""Case configuration: strict JSON documents validated by pydantic.

A case names its geometry layout, the refinement plan, the flow and
structure parameters, the coupling and run controls, and what to monitor.
Named grids override the layout scale, structure element counts and extra
refinement levels, so one file covers a whole convergence study.
"""

from __future__ import annotations

import json
import logging
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    ValidationError,
    model_validator,
)

from iga_fsi.domain.exceptions import ConfigValidationError
from iga_fsi.domain.value_objects import Side, SplitDirection

logger = logging.getLogger(__name__)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# =============================================================================
# Geometry and refinement
# =============================================================================


class TagEntry(StrictModel):
    surface: NonNegativeInt
    side: Side
    tag: str


class InterfaceEntry(StrictModel):
    fluid_surface: NonNegativeInt
    fluid_side: Side
    structure_range: tuple[float, float]
    structure_side: Side | None = None


class GeometrySettings(StrictModel):
    """`layout` picks a built-in domain or a geometry exchange file.

    For `file`, `structure` names the curve or surface that is the structure and
    `tags` and `interfaces` refer to the remaining surfaces by their order in
    the file.
    """

    layout: Literal["membrane", "channel", "bar", "file"]
    scale: PositiveInt = 1
    elastic: bool = True
    path: str | None = None
    structure: str | None = None
    tags: tuple[TagEntry, ...] = ()
    interfaces: tuple[InterfaceEntry, ...] = ()

    @model_validator(mode="after")
    def _file_fields(self) -> GeometrySettings:
        if self.layout == "file" and self.path is None:
            raise ValueError("a file layout needs 'path'")
        if self.layout != "file" and (self.path or self.tags or self.interfaces):
            raise ValueError("'path', 'tags' and 'interfaces' only apply to file layouts")
        return self


class RuleSettings(StrictModel):
    levels: PositiveInt
    direction: SplitDirection = SplitDirection.BOTH
    surface: NonNegativeInt | None = None
    spans: tuple[NonNegativeInt, NonNegativeInt] | None = None
    box: tuple[float, float, float, float] | None = None

    @model_validator(mode="after")
    def _selection(self) -> RuleSettings:
        if self.surface is None and self.box is None:
            raise ValueError("a refinement rule needs 'surface' or 'box'")
        if self.spans is not None and self.surface is None:
            raise ValueError("'spans' requires 'surface'")
        return self


class RefinementSettings(StrictModel):
    rules: tuple[RuleSettings, ...] = ()
    max_level_jump: PositiveInt = 1


# =============================================================================
# Flow
# =============================================================================


class GasSettings(StrictModel):
    viscosity: NonNegativeFloat
    gamma: float = Field(default=1.4, gt=1.0)
    prandtl: PositiveFloat = 0.72


class WallSettings(StrictModel):
    kind: Literal["wall"] = "wall"
    adiabatic: bool = True


class FarFieldSettings(StrictModel):
    kind: Literal["farfield"] = "farfield"
    density: PositiveFloat
    speed: NonNegativeFloat
    pressure: PositiveFloat
    alpha_deg: float = 0.0


class InflowSettings(StrictModel):
    kind: Literal["inflow"] = "inflow"
    density: PositiveFloat
    mean_velocity: float
    height: PositiveFloat
    bottom: float = 0.0
    ramp_time: NonNegativeFloat = 2.0


class OutflowSettings(StrictModel):
    kind: Literal["outflow"] = "outflow"
    pressure: PositiveFloat


ConditionSettings = Annotated[
    WallSettings | FarFieldSettings | InflowSettings | OutflowSettings,
    Field(discriminator="kind"),
]


class InitialFlow(StrictModel):
    density: PositiveFloat
    velocity: tuple[float, float] = (0.0, 0.0)
    pressure: PositiveFloat


class FluidSettings(StrictModel):
    """`initial` defaults to the free stream of the first far-field condition."""

    gas: GasSettings
    conditions: dict[str, ConditionSettings]
    initial: InitialFlow | None = None
    cfl: PositiveFloat = 0.5
    chunk_size: PositiveInt = 256

    @model_validator(mode="after")
    def _initial_state(self) -> FluidSettings:
        if self.initial is None and self.farfield() is None:
            raise ValueError("'initial' is required without a far-field condition")
        return self

    def farfield(self) -> FarFieldSettings | None:
        for condition in self.conditions.values():
            if isinstance(condition, FarFieldSettings):
                return condition
        return None


# =============================================================================
# Structure
# =============================================================================


class NewtonOptions(StrictModel):
    tolerance: PositiveFloat = 1e-10
    max_iterations: PositiveInt = 25
    line_search: bool = False
    absolute_tolerance: NonNegativeFloat = 0.0


class StructureSettings(StrictModel):
    """Membrane (`young`, `thickness`, `pretension`) or plane-strain solid (`poisson`).

    `elements` is [along] for a membrane and [along, across] for a solid.
    `monitor` is the curve or surface parameter of the monitored point.
    """

    kind: Literal["membrane", "solid"]
    density: PositiveFloat
    young: NonNegativeFloat
    poisson: float = Field(default=0.0, gt=-1.0, lt=0.5)
    thickness: PositiveFloat = 1.0
    pretension: NonNegativeFloat = 0.0
    gravity: tuple[float, float] = (0.0, 0.0)
    elements: tuple[PositiveInt, ...] = (8,)
    beta: PositiveFloat = 0.25
    gamma: PositiveFloat = 0.5
    newton: NewtonOptions = NewtonOptions()
    monitor: tuple[float, ...] | None = None

    @model_validator(mode="after")
    def _elements(self) -> StructureSettings:
        expected = 1 if self.kind == "membrane" else 2
        if len(self.elements) != expected:
            raise ValueError(f"a {self.kind} needs {expected} element count(s)")
        if self.monitor is not None and len(self.monitor) != expected:
            raise ValueError(f"a {self.kind} monitor needs {expected} parameter(s)")
        return self


# =============================================================================
# Coupling, run controls and monitors
# =============================================================================


class CouplingSettings(StrictModel):
    damping_fraction: PositiveFloat = 0.2


class RunControls(StrictModel):
    """`max_dt` caps the flow step and is the step of structure-only runs."""

    end_time: PositiveFloat
    max_dt: PositiveFloat | None = None
    output_every: NonNegativeInt = 10
    snapshot_every: NonNegativeInt = 0
    snapshot_resolution: int = Field(default=4, ge=2)
    checkpoint_every: NonNegativeInt = 0
    threads: PositiveInt = 1
    periods: PositiveInt = 5


class ReferenceSettings(StrictModel):
    density: PositiveFloat
    speed: PositiveFloat
    length: PositiveFloat


class ProfileOptions(StrictModel):
    stations: int = Field(default=41, ge=2)
    start_time: NonNegativeFloat = 0.0
    upper_tag: str = "membrane_upper"
    lower_tag: str = "membrane_lower"


class MonitorSettings(StrictModel):
    force_tags: tuple[str, ...] = ()
    reference: ReferenceSettings | None = None
    profile: ProfileOptions | None = None


class GridEntry(StrictModel):
    """Grid of a study: layout scale, structure elements and extra refinement levels."""

    scale: PositiveInt = 1
    structure_elements: tuple[PositiveInt, ...] | None = None
    extra_levels: NonNegativeInt = 0


class CaseConfig(StrictModel):
    name: str
    geometry: GeometrySettings
    refinement: RefinementSettings = RefinementSettings()
    fluid: FluidSettings | None = None
    structure: StructureSettings | None = None
    coupling: CouplingSettings = CouplingSettings()
    run: RunControls
    monitors: MonitorSettings = MonitorSettings()
    grids: dict[str, GridEntry] = Field(default_factory=dict)
    grid: str | None = None

    @model_validator(mode="after")
    def _consistency(self) -> CaseConfig:
        if self.fluid is None and self.structure is None:
            raise ValueError("a case needs 'fluid', 'structure' or both")
        if self.fluid is None and self.run.max_dt is None:
            raise ValueError("structure-only cases need 'run.max_dt'")
        if self.grid is not None and self.grid not in self.grids:
            raise ValueError(f"grid {self.grid!r} is not one of {sorted(self.grids)}")
        if self.structure is not None and self.structure.kind == "membrane":
            if self.geometry.layout in ("channel", "bar"):
                raise ValueError(f"a membrane does not fit the {self.geometry.layout} layout")
        if self.monitors.profile is not None and self.monitors.reference is None:
            raise ValueError("membrane profiles need 'monitors.reference'")
        if self.fluid is not None:
            unknown = set(self.monitors.force_tags) - set(self.fluid.conditions)
            if unknown:
                raise ValueError(f"force tags without a boundary condition: {sorted(unknown)}")
        return self

    def selected_grid(self) -> GridEntry | None:
        return None if self.grid is None else self.grids[self.grid]


# =============================================================================
# Parsing, dumping and overrides
# =============================================================================


def _location(loc: tuple[int | str, ...]) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def validate_config(data: Any) -> CaseConfig:
    try:
        return CaseConfig.model_validate(data)
    except ValidationError as e:
        diagnostics = [f"{_location(err['loc'])}: {err['msg']}" for err in e.errors()]
        raise ConfigValidationError("Invalid case configuration", diagnostics) from e


def parse_config(text: str) -> CaseConfig:
    """Parse a case document; an empty document reports every required field.

    Raises:
        ConfigValidationError: JSON syntax errors (with line and column) or
            one diagnostic per failing field.
    """
    if not text.strip():
        return validate_config({})
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigValidationError(
            "Case file is not valid JSON", [f"line {e.lineno}, column {e.colno}: {e.msg}"]
        ) from e
    return validate_config(data)


def dump_config(config: CaseConfig) -> str:
    """Resolved configuration with every default; parse_config(dump_config(c)) == c."""
    return config.model_dump_json(indent=2) + "\n"


def _value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(config: CaseConfig, assignments: list[str]) -> CaseConfig:
    """Apply `dotted.path=value` assignments; values are JSON when they parse as JSON.

    Raises:
        ConfigValidationError: malformed assignments or an invalid result.
    """
    data = config.model_dump(mode="json")
    for assignment in assignments:
        path, sep, raw = assignment.partition("=")
        if not sep or not path:
            raise ConfigValidationError("Invalid override", [f"{assignment}: expected path=value"])
        keys = path.split(".")
        node = data
        for key in keys[:-1]:
            child = node.get(key) if isinstance(node, dict) else None
            if child is None:
                child = node[key] = {}
            if not isinstance(child, dict):
                raise ConfigValidationError("Invalid override", [f"{path}: {key} is not a section"])
            node = child
        node[keys[-1]] = _value(raw)
        logger.debug("Override %s = %s", path, raw)
    return validate_config(data)


def with_grid(config: CaseConfig, grid: str) -> CaseConfig:
    return validate_config({**config.model_dump(mode="json"), "grid": grid})


def with_incidence(config: CaseConfig, alpha_deg: float) -> CaseConfig:
    """Rotate every far-field free stream (and the force reference) to incidence alpha.

    Raises:
        ConfigValidationError: the case has no far-field condition.
    """
    data = config.model_dump(mode="json")
    fluid = data.get("fluid") or {}
    conditions = fluid.get("conditions", {})
    farfields = [c for c in conditions.values() if c["kind"] == "farfield"]
    if not farfields:
        raise ConfigValidationError(
            "Invalid override", ["alpha: the case has no far-field condition"]
        )
    for condition in farfields:
        condition["alpha_deg"] = alpha_deg
    return validate_config(data)


def with_run(
    config: CaseConfig, end_time: float | None = None, threads: int | None = None
) -> CaseConfig:
    run = config.run.model_dump(mode="json")
    if end_time is not None:
        run["end_time"] = end_time
    if threads is not None:
        run["threads"] = threads
    return validate_config({**config.model_dump(mode="json"), "run": run})
