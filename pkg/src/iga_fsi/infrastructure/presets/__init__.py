"""Packaged case files of the benchmark studies."""

from __future__ import annotations

from importlib import resources

from iga_fsi.domain.exceptions import ConfigurationError
from iga_fsi.infrastructure.config import CaseConfig, parse_config

PRESETS = ("membrane", "cfd2", "csm3", "fsi2")


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigurationError(f"Unknown preset {name!r}; choose one of {', '.join(PRESETS)}")
    return resources.files(__name__).joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_preset(name: str) -> CaseConfig:
    return parse_config(preset_text(name))
