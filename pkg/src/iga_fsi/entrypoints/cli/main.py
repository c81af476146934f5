"""`iga-fsi` command line.

Subcommands: run, convergence, sweep, mesh-info, audit-interface and resume.
A case is a packaged preset name or a path to a JSON case file. Results go
to the output directory; a JSON summary is printed on stdout.

Exit codes: 0 success, 2 configuration error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import ExitStack
from pathlib import Path
from typing import TYPE_CHECKING, Any

from iga_fsi import __version__
from iga_fsi.application.use_cases import (
    AuditInterfaceRequest,
    AuditInterfaceUseCase,
    ConvergenceRequest,
    ConvergenceUseCase,
    InspectMeshRequest,
    InspectMeshUseCase,
    ResumeCaseRequest,
    ResumeCaseUseCase,
    RunCaseRequest,
    RunCaseUseCase,
    SweepRequest,
    SweepUseCase,
)
from iga_fsi.domain.entities import NurbsCurve
from iga_fsi.domain.exceptions import ConfigurationError, DomainException
from iga_fsi.infrastructure import (
    ConfiguredCaseFactory,
    CsvTimeSeriesRepository,
    NpzCheckpointRepository,
    VtkFieldWriter,
    configure_logging,
    executor_for,
)
from iga_fsi.infrastructure.config import (
    apply_overrides,
    parse_config,
    with_grid,
    with_incidence,
    with_run,
)
from iga_fsi.infrastructure.geometry import GeometryDocument, format_geometry
from iga_fsi.infrastructure.presets import PRESETS, load_preset

if TYPE_CHECKING:
    from collections.abc import Sequence

    from iga_fsi.application.ports import PatchExecutor
    from iga_fsi.infrastructure.config import CaseConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


# =============================================================================
# Parser
# =============================================================================


def _case_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("case", help=f"preset ({', '.join(PRESETS)}) or path to a JSON case")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="PATH=VALUE",
        help="override a configuration field, value parsed as JSON when possible",
    )
    parser.add_argument("--end-time", type=float, help="override run.end_time")
    parser.add_argument("--threads", type=int, help="patch-parallel worker threads")
    parser.add_argument("--output", type=Path, help="output directory (default output/<name>)")


def _alphas(text: str) -> list[float]:
    try:
        return [float(a) for a in text.split(",") if a.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid incidence list {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iga-fsi", description="Isogeometric fluid-structure interaction in 2D."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    parser.add_argument("--log-file", type=Path)
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one case to its end time")
    _case_arguments(run)
    run.add_argument("--grid", help="named grid of the case")
    run.add_argument("--alpha", type=float, help="free-stream incidence in degrees")

    convergence = commands.add_parser("convergence", help="run a case on a list of grids")
    _case_arguments(convergence)
    convergence.add_argument(
        "--grids", help="comma separated grid names (default: every grid of the case)"
    )

    sweep = commands.add_parser("sweep", help="incidence study of a far-field case")
    _case_arguments(sweep)
    sweep.add_argument("--grid", help="named grid of the case")
    sweep.add_argument("--alphas", type=_alphas, default=[4.0, 8.0, 12.0, 16.0, 20.0])

    mesh = commands.add_parser("mesh-info", help="mesh statistics of a case")
    _case_arguments(mesh)
    mesh.add_argument("--grid", help="named grid of the case")
    mesh.add_argument("--wireframe", action="store_true", help="write a VTK wireframe")
    mesh.add_argument(
        "--geometry-out", type=Path, help="write the underlying surfaces as a geometry file"
    )

    audit = commands.add_parser("audit-interface", help="fluid/structure boundary deviation")
    _case_arguments(audit)
    audit.add_argument("--grid", help="named grid of the case")
    audit.add_argument("--steps", type=int, default=10)
    audit.add_argument("--random", action="store_true", help="random structure displacements")
    audit.add_argument("--seed", type=int, default=0)

    resume = commands.add_parser("resume", help="continue a run from a checkpoint")
    resume.add_argument("checkpoint", type=Path)
    resume.add_argument("--end-time", type=float, help="new end time")
    resume.add_argument("--threads", type=int, help="patch-parallel worker threads")
    resume.add_argument("--output", type=Path, help="output directory of the resumed run")
    return parser


# =============================================================================
# Configuration
# =============================================================================


def load_case(args: argparse.Namespace) -> CaseConfig:
    """Preset or case file with the command line overrides applied."""
    if args.case in PRESETS:
        config = load_preset(args.case)
    else:
        config = parse_config(Path(args.case).read_text(encoding="utf-8"))
    if args.overrides:
        config = apply_overrides(config, args.overrides)
    if getattr(args, "grid", None) is not None:
        config = with_grid(config, args.grid)
    if getattr(args, "alpha", None) is not None:
        config = with_incidence(config, args.alpha)
    if args.end_time is not None or args.threads is not None:
        config = with_run(config, args.end_time, args.threads)
    return config


def _base_dir(args: argparse.Namespace) -> Path | None:
    return None if args.case in PRESETS else Path(args.case).resolve().parent


# =============================================================================
# Commands
# =============================================================================


class _Outputs:
    """Result adapters rooted in one output directory."""

    def __init__(self, directory: Path) -> None:
        self.directory = directory
        self.series = CsvTimeSeriesRepository(directory)
        self.checkpoints = NpzCheckpointRepository(directory / "checkpoints")
        self.fields = VtkFieldWriter(directory / "snapshots")

    def close(self) -> None:
        self.series.close()


def _open(stack: ExitStack, args: argparse.Namespace, config: CaseConfig) -> _Outputs:
    directory = args.output or Path("output") / config.name
    outputs = _Outputs(directory)
    stack.callback(outputs.close)
    logger.info("Writing results to %s", directory)
    return outputs


def _executor(stack: ExitStack, threads: int) -> PatchExecutor:
    executor = executor_for(threads)
    stack.callback(executor.close)
    return executor


def _run(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:
    config = load_case(args)
    outputs = _open(stack, args, config)
    factory = ConfiguredCaseFactory(
        config, _executor(stack, config.run.threads), base_dir=_base_dir(args)
    )
    use_case = RunCaseUseCase(outputs.series, outputs.checkpoints, outputs.fields)
    response = use_case.execute(RunCaseRequest(factory.build()))
    return response.summary


def _convergence(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:
    config = load_case(args)
    outputs = _open(stack, args, config)
    factory = ConfiguredCaseFactory(
        config, _executor(stack, config.run.threads), base_dir=_base_dir(args)
    )
    grids = [g.strip() for g in args.grids.split(",")] if args.grids else []
    use_case = ConvergenceUseCase(factory, outputs.series, outputs.checkpoints, outputs.fields)
    response = use_case.execute(ConvergenceRequest(grids))
    return {"rows": response.as_table()}


def _sweep(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:
    config = load_case(args)
    outputs = _open(stack, args, config)
    factory = ConfiguredCaseFactory(
        config, _executor(stack, config.run.threads), base_dir=_base_dir(args)
    )
    use_case = SweepUseCase(factory, outputs.series, outputs.checkpoints, outputs.fields)
    response = use_case.execute(SweepRequest(args.alphas))
    return {
        "rows": [
            {
                "alpha": row.alpha,
                "c_d": row.drag,
                "c_l": row.lift,
                "lift_to_drag": row.lift_to_drag,
                "failed": row.failed,
            }
            for row in response.rows
        ]
    }


def _mesh_info(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:  # noqa: ARG001
    config = load_case(args)
    factory = ConfiguredCaseFactory(config, base_dir=_base_dir(args))
    if args.geometry_out is not None:
        layout = factory.layout(config)
        names = layout.names or tuple(f"s{i}" for i in range(len(layout.surfaces)))
        document = GeometryDocument(surfaces=dict(zip(names, layout.surfaces, strict=True)))
        if isinstance(layout.structure, NurbsCurve):
            document.curves["structure"] = layout.structure
        args.geometry_out.write_text(format_geometry(document), encoding="utf-8")
    case = factory.build()
    if case.mesh is None:
        raise ConfigurationError(f"Case {config.name} has no flow mesh")
    fields = VtkFieldWriter(args.output or Path("output") / config.name)
    response = InspectMeshUseCase(fields).execute(
        InspectMeshRequest(case, wireframe=args.wireframe)
    )
    return {
        **response.statistics,
        "face_deviation": response.face_deviation,
        "wireframe": response.wireframe,
    }


def _audit(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:
    config = load_case(args)
    outputs = _open(stack, args, config)
    factory = ConfiguredCaseFactory(
        config, _executor(stack, config.run.threads), base_dir=_base_dir(args)
    )
    request = AuditInterfaceRequest(
        factory.build(), steps=args.steps, random=args.random, seed=args.seed
    )
    response = AuditInterfaceUseCase(outputs.series).execute(request)
    return {"deviations": list(response.deviations), "worst": response.worst}


def _resume(args: argparse.Namespace, stack: ExitStack) -> dict[str, Any]:
    directory = args.output or args.checkpoint.resolve().parent.parent / "resumed"
    outputs = _Outputs(directory)
    stack.callback(outputs.close)

    def factory_for(text: str) -> ConfiguredCaseFactory:
        config = parse_config(text)
        if args.threads is not None:
            config = with_run(config, threads=args.threads)
        return ConfiguredCaseFactory(config, _executor(stack, config.run.threads))

    use_case = ResumeCaseUseCase(factory_for, outputs.series, outputs.checkpoints, outputs.fields)
    response = use_case.execute(ResumeCaseRequest(str(args.checkpoint), args.end_time))
    return response.summary


COMMANDS = {
    "run": _run,
    "convergence": _convergence,
    "sweep": _sweep,
    "mesh-info": _mesh_info,
    "audit-interface": _audit,
    "resume": _resume,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level, args.log_file)
    try:
        with ExitStack() as stack:
            result = COMMANDS[args.command](args, stack)
    except (ConfigurationError, json.JSONDecodeError, OSError) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except DomainException as e:
        logger.error("Solver failure: %s", e)
        return EXIT_SOLVER
    print(json.dumps(result, indent=2, default=_plain))
    return EXIT_OK


def _plain(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    return str(value)


if __name__ == "__main__":
    sys.exit(main())
