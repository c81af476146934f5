"""CLI entrypoint - the `iga-fsi` console script."""

from iga_fsi.entrypoints.cli.main import build_parser, main

__all__ = ["build_parser", "main"]
