from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from iga_fsi.domain.exceptions import CouplingPhaseError
from iga_fsi.domain.services.coupling import MembraneStructure, coupling_step
from iga_fsi.domain.services.fluid import (
    force_coefficients,
    pressure_coefficient,
    primitive,
    total_energy,
    total_mass,
)
from iga_fsi.domain.services.statistics import ProfileAccumulator, mean_amplitude
from iga_fsi.domain.services.structure import membrane_deflection

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from iga_fsi.application.ports import CheckpointRepository, FieldWriter, TimeSeriesRepository
    from iga_fsi.application.simulation import SimulationCase
    from iga_fsi.domain.services.coupling import StepReport

logger = logging.getLogger(__name__)

END_TIME_TOLERANCE = 1e-12


@dataclass(frozen=True, slots=True)
class RunCaseRequest:
    """Input DTO for the run use case; `end_time` overrides the case's own."""

    case: SimulationCase
    end_time: float | None = None


@dataclass(frozen=True, slots=True)
class RunCaseResponse:
    """Output DTO: the summary document also written to `summary.json`."""

    summary: dict[str, Any]
    steps: int
    final_time: float


@dataclass(slots=True)
class _Signals:
    time: list[float] = field(default_factory=list)
    values: dict[str, list[float]] = field(default_factory=dict)

    def add(self, time: float, **values: float) -> None:
        if not values:
            return
        if not self.time or self.time[-1] != time:
            self.time.append(time)
        for key, value in values.items():
            self.values.setdefault(key, []).append(value)


class RunCaseUseCase:
    """Runs one case to its end time.

    Responsibilities:
    - Advance the coupled system step by step
    - Record force, structure and coupling series at every step
    - Write snapshots and checkpoints at their cadences
    - Summarise every recorded signal as mean +- amplitude with its frequency
    """

    def __init__(
        self,
        series: TimeSeriesRepository,
        checkpoints: CheckpointRepository,
        fields: FieldWriter,
    ) -> None:
        self._series = series
        self._checkpoints = checkpoints
        self._fields = fields

    def execute(self, request: RunCaseRequest) -> RunCaseResponse:
        """Run until the end time.

        Raises:
            CouplingPhaseError: a sub-solver failed; outputs written so far are
                flushed and the last checkpoint is kept.
        """
        case = request.case
        end_time = case.run.end_time if request.end_time is None else request.end_time

        # Step 1: Record the resolved configuration
        self._series.write_document("resolved_config", {"config": case.config})
        profile = self._profile_accumulator(case)
        signals = _Signals()
        logger.info(
            "Running %s%s from t=%.6g to t=%.6g",
            case.name,
            "" if case.grid is None else f" ({case.grid})",
            case.time,
            end_time,
        )

        # Step 2: Time loop
        try:
            while case.time < end_time - END_TIME_TOLERANCE:
                report = coupling_step(case.system)
                case.step += 1
                self._record(case, report, signals, profile)
                self._outputs(case)
        except CouplingPhaseError:
            logger.exception("Run %s stopped at step %d", case.name, case.step)
            self._series.flush()
            raise

        # Step 3: Summaries
        summary = self._summary(case, signals)
        if profile is not None:
            self._write_profile(profile)
        self._series.write_document("summary", summary)
        self._series.flush()
        logger.info("Finished %s after %d steps at t=%.6g", case.name, case.step, case.time)
        return RunCaseResponse(summary=summary, steps=case.step, final_time=case.time)

    # ------------------------------------------------------------------

    def _record(
        self,
        case: SimulationCase,
        report: StepReport,
        signals: _Signals,
        profile: ProfileAccumulator | None,
    ) -> None:
        system = case.system
        t = report.time
        if system.fluid is not None:
            geometry = system.geometry()
            row = {
                "t": t,
                "mass": total_mass(system.fluid.operator, system.fluid.state.w, geometry),
                "energy": total_energy(system.fluid.operator, system.fluid.state.w, geometry),
            }
            if report.force is not None:
                row["force_x"], row["force_y"] = (float(f) for f in report.force)
                named = {"force_x": row["force_x"], "force_y": row["force_y"]}
                if case.reference is not None:
                    ref = case.reference
                    c_d, c_l = force_coefficients(
                        report.force, ref.density, ref.speed, ref.length, ref.alpha_deg
                    )
                    row["c_d"], row["c_l"] = c_d, c_l
                    named = {"c_d": c_d, "c_l": c_l}
                signals.add(t, **named)
            self._series.append("forces", row)
        if report.monitor is not None:
            u_x, u_y = (float(v) for v in report.monitor)
            self._series.append("structure", {"t": t, "u_x": u_x, "u_y": u_y})
            signals.add(t, u_x=u_x, u_y=u_y)
        if report.energy is not None:
            energy = report.energy
            self._series.append(
                "coupling",
                {
                    "t": t,
                    "dt": report.dt,
                    "loss": energy.loss,
                    "relative_loss": energy.relative_loss,
                    "transfer": energy.fluid_work,
                },
            )
        if profile is not None:
            self._accumulate_profile(case, report, profile)
        if case.run.output_every and case.step % case.run.output_every == 0:
            logger.info(
                "step %d t=%.6g dt=%.4g force=%s monitor=%s",
                case.step,
                t,
                report.dt,
                _fmt(report.force),
                _fmt(report.monitor),
            )

    def _outputs(self, case: SimulationCase) -> None:
        run = case.run
        if run.checkpoint_every and case.step % run.checkpoint_every == 0:
            reference = self._checkpoints.save(case.checkpoint())
            logger.info("Checkpoint %s at step %d", reference, case.step)
        if run.snapshot_every and case.step % run.snapshot_every == 0:
            self._snapshot(case)

    def _snapshot(self, case: SimulationCase) -> None:
        fluid = case.system.fluid
        if fluid is None:
            return
        resolution = case.run.snapshot_resolution
        points, values = fluid.operator.sample(fluid.state.w, fluid.positions, resolution)
        rho, u, p = primitive(values, fluid.operator.gas)
        self._fields.write_patches(
            f"flow_{case.step:06d}",
            points,
            resolution,
            {"density": rho, "velocity": u, "pressure": p},
            case.time,
        )

    # ------------------------------------------------------------------
    # Membrane profiles
    # ------------------------------------------------------------------

    def _profile_accumulator(self, case: SimulationCase) -> ProfileAccumulator | None:
        structure = case.system.structure
        if case.profile is None or not isinstance(structure, MembraneStructure):
            return None
        kv = structure.model.curve.knot_vector
        xi = np.linspace(kv.first, kv.last, case.profile.stations)
        x, _ = membrane_deflection(structure.model, structure.state.u, xi)
        return ProfileAccumulator(x, case.profile.start_time)

    def _accumulate_profile(
        self, case: SimulationCase, report: StepReport, profile: ProfileAccumulator
    ) -> None:
        structure = case.system.structure
        fluid = case.system.fluid
        settings = case.profile
        if not isinstance(structure, MembraneStructure) or fluid is None or settings is None:
            return
        kv = structure.model.curve.knot_vector
        xi = np.linspace(kv.first, kv.last, profile.stations.size)
        _, deflection = membrane_deflection(structure.model, structure.state.u, xi)
        reference = case.reference
        if reference is None:
            return
        cp = []
        assert fluid.velocities is not None
        for tag in (settings.upper_tag, settings.lower_tag):
            points, _, values = pressure_coefficient(
                fluid.operator,
                fluid.state,
                case.system.geometry(),
                fluid.velocities,
                tag,
                (settings.pressure, reference.density, reference.speed),
            )
            order = np.argsort(points[:, 0])
            cp.append(np.interp(profile.stations, points[order, 0], values[order]))
        profile.add(report.time, report.dt, deflection, cp[0], cp[1])

    def _write_profile(self, profile: ProfileAccumulator) -> None:
        means = profile.means()
        deviation = profile.deviation()
        rows = np.column_stack([profile.stations, means[0], means[1], means[2], deviation])
        self._series.write_table(
            "membrane_profile",
            ["x", "y_mean", "cp_upper", "cp_lower", "y_deviation"],
            rows.tolist(),
        )

    # ------------------------------------------------------------------
    # Summary
    # ------------------------------------------------------------------

    def _summary(self, case: SimulationCase, signals: _Signals) -> dict[str, Any]:
        summary: dict[str, Any] = {
            "case": case.name,
            "grid": case.grid,
            "steps": case.step,
            "final_time": case.time,
            **case.degrees_of_freedom(),
        }
        times = np.asarray(signals.time)
        for name, values in signals.values.items():
            series = np.asarray(values)
            if series.size >= 2 and series.size == times.size:
                summary[name] = mean_amplitude(times, series, case.run.periods).as_dict()
        energy = case.system.energy
        if energy.records:
            mean_loss, mean_relative = energy.summary()
            summary["energy_loss"] = {"mean": mean_loss, "mean_relative": mean_relative}
        return summary


def _fmt(values: NDArray[np.float64] | None) -> str:
    if values is None:
        return "-"
    return "(" + ", ".join(f"{v:.6g}" for v in values) + ")"
