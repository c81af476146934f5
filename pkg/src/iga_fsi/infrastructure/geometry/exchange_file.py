"""Reader and writer of the plain-text geometry exchange file.

Grammar (blank lines and `#` comments are ignored)::

    iga-fsi-geometry 1
    surface <id> <p> <q> <n1> <n2>
    knots_xi <reals>
    knots_eta <reals>
    <x> <y> <w>          # n1 * n2 lines, xi index fastest
    end
    curve <id> <p> <n>
    knots <reals>
    <x> <y> <w>          # n lines
    end
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from iga_fsi.domain.entities import NurbsCurve, NurbsSurface
from iga_fsi.domain.exceptions import ConfigValidationError, DomainException
from iga_fsi.domain.value_objects import KnotVector

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numpy.typing import NDArray

HEADER = "iga-fsi-geometry 1"


@dataclass(frozen=True, slots=True)
class GeometryDocument:
    surfaces: dict[str, NurbsSurface] = field(default_factory=dict)
    curves: dict[str, NurbsCurve] = field(default_factory=dict)


class _Lines:
    def __init__(self, text: str) -> None:
        self._items: list[tuple[int, list[str]]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].strip()
            if content:
                self._items.append((number, content.split()))
        self._position = 0

    def __iter__(self) -> Iterator[tuple[int, list[str]]]:
        return self

    def __next__(self) -> tuple[int, list[str]]:
        if self._position >= len(self._items):
            raise StopIteration
        item = self._items[self._position]
        self._position += 1
        return item

    def take(self, what: str) -> tuple[int, list[str]]:
        try:
            return next(self)
        except StopIteration:
            raise _error(None, f"unexpected end of file, expected {what}") from None


def _error(line: int | None, message: str) -> ConfigValidationError:
    where = "end of file" if line is None else f"line {line}"
    return ConfigValidationError("Invalid geometry file", [f"{where}: {message}"])


def _numbers(line: int, tokens: list[str], kind: type[float] | type[int]) -> list[float]:
    try:
        return [kind(token) for token in tokens]
    except ValueError as e:
        raise _error(line, f"expected numbers, got {' '.join(tokens)!r}") from e


def _keyword(lines: _Lines, keyword: str) -> tuple[int, list[str]]:
    line, tokens = lines.take(keyword)
    if tokens[0] != keyword:
        raise _error(line, f"expected {keyword!r}, got {tokens[0]!r}")
    return line, tokens[1:]


def _knots(lines: _Lines, keyword: str, degree: int, size: int) -> KnotVector:
    line, tokens = _keyword(lines, keyword)
    values = _numbers(line, tokens, float)
    if len(values) != size + degree + 1:
        raise _error(line, f"{keyword} needs {size + degree + 1} knots, got {len(values)}")
    try:
        return KnotVector(np.asarray(values), degree)
    except DomainException as e:
        raise _error(line, str(e)) from e


def _points(lines: _Lines, count: int) -> NDArray[np.float64]:
    rows = []
    for _ in range(count):
        line, tokens = lines.take("a control point")
        if len(tokens) != 3:
            raise _error(line, f"control point needs 'x y w', got {' '.join(tokens)!r}")
        rows.append(_numbers(line, tokens, float))
    line, tokens = lines.take("'end'")
    if tokens != ["end"]:
        raise _error(line, f"expected 'end' after {count} control points")
    return np.asarray(rows, dtype=np.float64)


def parse_geometry(text: str) -> GeometryDocument:
    """Parse an exchange file.

    Raises:
        ConfigValidationError: with the offending line number.
    """
    lines = _Lines(text)
    first = next(lines, None)
    if first is None or " ".join(first[1]) != HEADER:
        raise _error(None if first is None else first[0], f"first line must be {HEADER!r}")

    document = GeometryDocument()
    for line, tokens in lines:
        kind, args = tokens[0], tokens[1:]
        if kind == "surface" and len(args) == 5:
            name = args[0]
            p, q, n1, n2 = (int(v) for v in _numbers(line, args[1:], int))
            kx = _knots(lines, "knots_xi", p, n1)
            ky = _knots(lines, "knots_eta", q, n2)
            rows = _points(lines, n1 * n2)
            # xi index fastest: line j * n1 + i holds point [i, j]
            grid = rows.reshape(n2, n1, 3).transpose(1, 0, 2)
            try:
                surface = NurbsSurface((kx, ky), grid[..., :2], grid[..., 2])
            except DomainException as e:
                raise _error(line, str(e)) from e
            _store(document.surfaces, name, surface, line)
        elif kind == "curve" and len(args) == 3:
            name = args[0]
            p, n = (int(v) for v in _numbers(line, args[1:], int))
            kv = _knots(lines, "knots", p, n)
            rows = _points(lines, n)
            try:
                curve = NurbsCurve(kv, rows[:, :2], rows[:, 2])
            except DomainException as e:
                raise _error(line, str(e)) from e
            _store(document.curves, name, curve, line)
        else:
            raise _error(line, f"expected a 'surface' or 'curve' block, got {' '.join(tokens)!r}")
    return document


def _store[T](target: dict[str, T], name: str, item: T, line: int) -> None:
    if name in target:
        raise _error(line, f"duplicate id {name!r}")
    target[name] = item


def _format(values: NDArray[np.float64]) -> str:
    return " ".join(repr(float(v)) for v in values)


def format_geometry(document: GeometryDocument) -> str:
    """Exchange file text; parse_geometry(format_geometry(d)) reproduces d exactly."""
    out = [HEADER]
    for name, surface in document.surfaces.items():
        (p, q), (n1, n2) = surface.degrees, surface.shape
        out.append(f"surface {name} {p} {q} {n1} {n2}")
        out.append(f"knots_xi {_format(surface.knot_vectors[0].knots)}")
        out.append(f"knots_eta {_format(surface.knot_vectors[1].knots)}")
        for j in range(n2):
            for i in range(n1):
                x, y = surface.control_net[i, j]
                out.append(_format(np.array([x, y, surface.weights[i, j]])))
        out.append("end")
    for name, curve in document.curves.items():
        out.append(f"curve {name} {curve.degree} {curve.size}")
        out.append(f"knots {_format(curve.knot_vector.knots)}")
        out.extend(
            _format(np.array([x, y, w]))
            for (x, y), w in zip(curve.control_points, curve.weights, strict=True)
        )
        out.append("end")
    return "\n".join(out) + "\n"
