"""Triangular-lattice configurations in axial coordinates.

A cell ``(a, b)`` sits at ``a*e + b*f`` with ``e = (1, 0)`` and
``f = (1/2, sqrt(3)/2)``.  Rotation by 60 degrees counterclockwise is
``(a, b) -> (-b, a + b)`` and the reflection used for the full symmetry group
is ``(a, b) -> (b, a)``; canonical keys depend on both conventions.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .geometry import BondGraph, assemble, perimeter

AxialCoord = tuple[int, int]

# counterclockwise from angle 0
DIRECTIONS: tuple[AxialCoord, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

ROTATIONS = "rotations"
ROTATIONS_REFLECTIONS = "rotations+reflections"

_SQRT3_2 = math.sqrt(3) / 2


class TooSmall(ValueError):
    pass


class EmptyPeel(ValueError):
    pass


@dataclass(frozen=True)
class LatticeConfig:
    cells: frozenset[AxialCoord]

    def __init__(self, cells: Iterable[Iterable[int]]):
        cs = frozenset((int(a), int(b)) for a, b in cells)
        if not cs:
            raise ValueError("LatticeConfig needs at least one cell")
        object.__setattr__(self, "cells", cs)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[AxialCoord]:
        return iter(sorted(self.cells))

    def __contains__(self, c) -> bool:
        return c in self.cells

    def sorted_cells(self) -> list[AxialCoord]:
        return sorted(self.cells)

    def translated(self, da: int, db: int) -> LatticeConfig:
        return LatticeConfig((a + da, b + db) for a, b in self.cells)

    def to_points(self):
        from .geometry import PointConfig

        return PointConfig(to_cartesian(c) for c in self.sorted_cells())


@dataclass(frozen=True)
class CanonicalForm:
    key: tuple[AxialCoord, ...]
    group: str

    def serialize(self) -> str:
        return ";".join(f"{a},{b}" for a, b in self.key)

    def config(self) -> LatticeConfig:
        return LatticeConfig(self.key)


def to_cartesian(c: AxialCoord) -> tuple[float, float]:
    a, b = c
    return (a + b / 2, b * _SQRT3_2)


def hexagon(s: int) -> LatticeConfig:
    """The regular hexagon H_s with 3s^2 + 3s + 1 cells, centred at the origin."""
    return LatticeConfig(
        (a, b)
        for a in range(-s, s + 1)
        for b in range(-s, s + 1)
        if abs(a + b) <= s
    )


def lattice_distance(a: int, b: int) -> int:
    return max(abs(a), abs(b), abs(a + b))


@lru_cache(maxsize=64)
def bond_graph(x: LatticeConfig) -> BondGraph:
    """Bond graph of a lattice set; neighbour order comes from DIRECTIONS, so no
    floating-point angle sorting is involved."""
    cells = x.sorted_cells()
    n = len(cells)
    ab = np.array(cells, dtype=np.int64).reshape(n, 2)
    # keys sort like the cells, and the padding keeps neighbours from aliasing
    lo = ab.min(axis=0) - 1
    width = int(ab[:, 1].max() - lo[1]) + 2
    keys = (ab[:, 0] - lo[0]) * width + (ab[:, 1] - lo[1])
    nb = np.full((n, 6), -1, dtype=np.int64)
    for d, (da, db) in enumerate(DIRECTIONS):
        want = keys + da * width + db
        pos = np.minimum(np.searchsorted(keys, want), n - 1)
        nb[:, d] = np.where(keys[pos] == want, pos, -1)
    rows = nb.tolist()
    rotation = [[j for j in row if j >= 0] for row in rows]
    own = np.arange(n)[:, None]
    ei, ed = np.nonzero(nb > own)
    edges = list(zip(ei.tolist(), nb[ei, ed].tolist()))
    # each unit triangle once, from its lowest row, counterclockwise
    e, ne, nw = nb[:, 0], nb[:, 1], nb[:, 2]
    tri = np.stack([np.stack([own[:, 0], e, ne], axis=1), np.stack([own[:, 0], ne, nw], axis=1)], axis=1)
    keep = np.stack([(e >= 0) & (ne >= 0), (ne >= 0) & (nw >= 0)], axis=1)
    triangles = list(map(tuple, tri[keep].tolist()))
    # half-edge i -> i + u_d has a triangle on its left iff i + u_(d+1) is occupied
    oi, od = np.nonzero((nb >= 0) & (np.roll(nb, -1, axis=1) < 0))
    open_half_edges = list(zip(oi.tolist(), nb[oi, od].tolist()))
    return assemble(cells, rotation, edges, triangles, open_half_edges)


def lattice_perimeter(x: LatticeConfig) -> int:
    return perimeter(bond_graph(x))


def is_crystallized(x: LatticeConfig) -> bool:
    if len(x) < 3:
        raise TooSmall("crystallized configurations need at least 3 particles")
    g = bond_graph(x)
    if any(f.side_count != 3 for f in g.faces):
        return False
    boundary = g.boundary_edges()
    if not boundary or any(g.edge_face_count[e] == 0 for e in boundary):
        return False
    degree: dict[int, int] = {}
    for i, j in boundary:
        degree[i] = degree.get(i, 0) + 1
        degree[j] = degree.get(j, 0) + 1
    if any(d != 2 for d in degree.values()):
        return False
    # boundary must be one cycle, and the whole graph one piece
    return _connected(degree.keys(), boundary) and _connected(g.vertices, g.edges)


def _connected(vertices: Iterable[int], edges) -> bool:
    verts = list(vertices)
    if not verts:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def boundary_particles(x: LatticeConfig) -> set[AxialCoord]:
    cells = x.sorted_cells()
    g = bond_graph(x)
    out = set()
    for i, j in g.boundary_edges():
        out.add(cells[i])
        out.add(cells[j])
    return out


def peel(x: LatticeConfig) -> LatticeConfig:
    rest = x.cells - boundary_particles(x)
    if not rest:
        raise EmptyPeel("every particle is a boundary particle")
    return LatticeConfig(rest)


def grow(x: LatticeConfig) -> LatticeConfig:
    out = set(x.cells)
    for a, b in x.cells:
        for da, db in DIRECTIONS:
            out.add((a + da, b + db))
    return LatticeConfig(out)


_ROT = (
    lambda a, b: (a, b),
    lambda a, b: (-b, a + b),
    lambda a, b: (-a - b, a),
    lambda a, b: (-a, -b),
    lambda a, b: (b, -a - b),
    lambda a, b: (a + b, -a),
)


def rotate60(c: AxialCoord, times: int = 1) -> AxialCoord:
    """Rotate ``times`` x 60 degrees counterclockwise about the origin."""
    return _ROT[times % 6](*c)


def reflect(c: AxialCoord) -> AxialCoord:
    return (c[1], c[0])


def group_elements(group: str) -> list[tuple[int, bool]]:
    """(rotation count, reflect first) pairs making up the point group."""
    if group == ROTATIONS:
        return [(r, False) for r in range(6)]
    if group == ROTATIONS_REFLECTIONS:
        return [(r, m) for m in (False, True) for r in range(6)]
    raise ValueError(f"unknown symmetry group {group!r}")


def apply_element(cells: Iterable[AxialCoord], rot: int, mirror: bool) -> list[AxialCoord]:
    f = _ROT[rot % 6]
    if mirror:
        return [f(b, a) for a, b in cells]
    return [f(a, b) for a, b in cells]


def _normalized(cells: list[AxialCoord]) -> tuple[AxialCoord, ...]:
    cells.sort()
    a0, b0 = cells[0]
    return tuple((a - a0, b - b0) for a, b in cells)


def canonicalize(x: LatticeConfig, group: str = ROTATIONS) -> CanonicalForm:
    best = None
    for rot, mirror in group_elements(group):
        key = _normalized(apply_element(x.cells, rot, mirror))
        if best is None or key < best:
            best = key
    return CanonicalForm(key=best, group=group)


def find_isometry(x: LatticeConfig, y: LatticeConfig, group: str = ROTATIONS):
    """Return ``(rot, mirror, (da, db))`` mapping x onto y, or None."""
    if len(x) != len(y):
        return None
    ymin = min(y.cells)
    for rot, mirror in group_elements(group):
        img = apply_element(x.cells, rot, mirror)
        lo = min(img)
        da, db = ymin[0] - lo[0], ymin[1] - lo[1]
        if {(a + da, b + db) for a, b in img} == y.cells:
            return rot, mirror, (da, db)
    return None


def parse_key(text: str, group: str = ROTATIONS) -> CanonicalForm:
    """Inverse of CanonicalForm.serialize; the string does not record the group."""
    key = tuple(tuple(int(v) for v in part.split(",")) for part in text.split(";") if part)
    return CanonicalForm(key=key, group=group)
