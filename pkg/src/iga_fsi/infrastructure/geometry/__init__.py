"""Benchmark layouts and the NURBS geometry exchange file."""

from iga_fsi.infrastructure.geometry.exchange_file import (
    GeometryDocument,
    format_geometry,
    parse_geometry,
)
from iga_fsi.infrastructure.geometry.layouts import (
    Layout,
    bar_layout,
    channel_layout,
    membrane_curve,
    membrane_layout,
)

__all__ = [
    "GeometryDocument",
    "Layout",
    "bar_layout",
    "channel_layout",
    "format_geometry",
    "membrane_curve",
    "membrane_layout",
    "parse_geometry",
]
