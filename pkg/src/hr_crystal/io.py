"""Configuration files: JSON ``{"format": "cartesian"|"axial", "points": [...]}``
or CSV with an ``x,y`` (cartesian) or ``i,j`` (axial) header."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .geometry import PointConfig
from .lattice import LatticeConfig, to_cartesian


class ConfigParseError(ValueError):
    pass


@dataclass(frozen=True)
class LoadedConfig:
    points: PointConfig
    cells: LatticeConfig | None = None

    @property
    def fmt(self) -> str:
        return "cartesian" if self.cells is None else "axial"


def _as_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError(f"not an integer: {v!r}")
    if isinstance(v, str):
        return int(v.strip())
    if isinstance(v, float) and not v.is_integer():
        raise ValueError(f"not an integer: {v!r}")
    return int(v)


def _from_axial(rows) -> LoadedConfig:
    try:
        cells = [(_as_int(a), _as_int(b)) for a, b in rows]
    except (TypeError, ValueError) as exc:
        raise ConfigParseError(f"axial points must be integer pairs: {exc}") from exc
    if len(set(cells)) != len(cells):
        raise ConfigParseError("duplicate axial points")
    if not cells:
        raise ConfigParseError("no points")
    lat = LatticeConfig(cells)
    return LoadedConfig(PointConfig(to_cartesian(c) for c in lat.sorted_cells()), lat)


def _from_cartesian(rows) -> LoadedConfig:
    try:
        pts = [(float(x), float(y)) for x, y in rows]
    except (TypeError, ValueError) as exc:
        raise ConfigParseError(f"cartesian points must be real pairs: {exc}") from exc
    if not pts:
        raise ConfigParseError("no points")
    return LoadedConfig(PointConfig(pts))


def parse_json(text: str) -> LoadedConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "points" not in doc:
        raise ConfigParseError('expected an object with "format" and "points"')
    fmt = doc.get("format")
    if fmt == "axial":
        return _from_axial(doc["points"])
    if fmt == "cartesian":
        return _from_cartesian(doc["points"])
    raise ConfigParseError(f"unknown format {fmt!r}")


def parse_csv(text: str) -> LoadedConfig:
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r and any(f.strip() for f in r)]
    if not rows:
        raise ConfigParseError("empty CSV")
    header = [h.strip().lower() for h in rows[0]]
    body = [tuple(f.strip() for f in r) for r in rows[1:]]
    if any(len(r) != 2 for r in body):
        raise ConfigParseError("each CSV row needs exactly two fields")
    if header == ["x", "y"]:
        return _from_cartesian(body)
    if header == ["i", "j"]:
        return _from_axial(body)
    raise ConfigParseError(f"CSV header must be x,y or i,j, got {','.join(header)}")


def load_config(path: str | Path) -> LoadedConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigParseError(str(exc)) from exc
    if path.suffix.lower() == ".csv":
        return parse_csv(text)
    if path.suffix.lower() == ".json":
        return parse_json(text)
    # sniff
    return parse_json(text) if text.lstrip().startswith("{") else parse_csv(text)


def axial_json(x: LatticeConfig) -> str:
    rows = ",\n".join(f"    [{a}, {b}]" for a, b in x.sorted_cells())
    return '{\n  "format": "axial",\n  "points": [\n' + rows + "\n  ]\n}\n"


def mixed_fixture() -> PointConfig:
    """The shipped 17-particle configuration: 10 triangles, one square, one
    pentagon and two wire edges."""
    text = resources.files("hr_crystal").joinpath("data/mixed17.json").read_text()
    return parse_json(text).points
