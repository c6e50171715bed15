"""Bond graphs of planar particle configurations and the Heitmann-Radin energy.

The energy of a configuration is computed two ways: directly, by counting
unit-distance pairs, and geometrically, as ``-3N + P + mu + 3 chi`` from the
faces of the bond graph.  Both return exact integers.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_TOL = 1e-9

# Below this separation two points are treated as the same point.
_COINCIDENT = 1e-12


class GeometryError(ValueError):
    pass


class HardCoreViolation(GeometryError):
    """Two particles sit closer than one bond length (infinite energy)."""

    def __init__(self, i: int, j: int, distance: float):
        super().__init__(f"points {i} and {j} at distance {distance:.12g} < 1")
        self.pair = (i, j)
        self.distance = distance


class DegenerateInput(GeometryError):
    pass


@dataclass(frozen=True)
class PointConfig:
    points: tuple[tuple[float, float], ...]

    def __init__(self, points: Iterable[Sequence[float]]):
        object.__setattr__(
            self, "points", tuple((float(x), float(y)) for x, y in points)
        )

    def __len__(self) -> int:
        return len(self.points)

    def transformed(self, angle: float, dx: float = 0.0, dy: float = 0.0) -> PointConfig:
        c, s = math.cos(angle), math.sin(angle)
        return PointConfig((c * x - s * y + dx, s * x + c * y + dy) for x, y in self.points)


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]

    @property
    def side_count(self) -> int:
        return len(self.boundary)

    def edges(self) -> list[tuple[int, int]]:
        b = self.boundary
        return [_edge_key(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]


@dataclass(frozen=True)
class BondGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[Face, ...]
    edge_face_count: dict[tuple[int, int], int] = field(hash=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def boundary_edges(self) -> list[tuple[int, int]]:
        """Edges lying on at most one face (wire edges included)."""
        return [e for e in self.edges if self.edge_face_count[e] <= 1]

    def wire_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if self.edge_face_count[e] == 0]


@dataclass(frozen=True)
class EnergyBreakdown:
    n: int
    perimeter: int
    defect: int
    euler: int
    energy: int

    def __post_init__(self):
        expected = -3 * self.n + self.perimeter + self.defect + 3 * self.euler
        if self.energy != expected:
            raise ValueError(f"energy {self.energy} != -3N+P+mu+3chi = {expected}")

    def as_dict(self) -> dict[str, int]:
        return {
            "n": self.n,
            "perimeter": self.perimeter,
            "defect": self.defect,
            "euler": self.euler,
            "energy": self.energy,
        }


def _edge_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _close_pairs(points: Sequence[tuple[float, float]], reach: float):
    """Yield (i, j, distance) for i < j with distance <= reach, via a grid hash."""
    cell = max(reach, 1e-6)
    grid: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (x, y) in enumerate(points):
        grid[(math.floor(x / cell), math.floor(y / cell))].append(i)
    for (cx, cy), members in grid.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = grid.get((cx + dx, cy + dy))
                if not other:
                    continue
                for i in members:
                    xi, yi = points[i]
                    for j in other:
                        if j <= i:
                            continue
                        d = math.hypot(points[j][0] - xi, points[j][1] - yi)
                        if d <= reach:
                            yield i, j, d


def signed_area2(coords: Sequence[Sequence[float]], cycle: Sequence[int]) -> float:
    """Twice the signed area of the polygon ``cycle`` (positive if counterclockwise)."""
    total = 0
    m = len(cycle)
    for t in range(m):
        x0, y0 = coords[cycle[t]]
        x1, y1 = coords[cycle[(t + 1) % m]]
        total += x0 * y1 - x1 * y0
    return total


def point_in_polygon(pt: Sequence[float], poly: Sequence[Sequence[float]]) -> bool:
    """Even-odd ray test; points on the boundary are not expected here."""
    x, y = pt
    inside = False
    m = len(poly)
    for t in range(m):
        x0, y0 = poly[t]
        x1, y1 = poly[(t + 1) % m]
        if (y0 > y) != (y1 > y):
            # compare x against the crossing without dividing
            lhs = (x - x0) * (y1 - y0)
            rhs = (x1 - x0) * (y - y0)
            if (lhs < rhs) == (y1 > y0):
                inside = not inside
    return inside


def trace_faces(
    coords: Sequence[Sequence[float]],
    rotation: Sequence[Sequence[int]],
    triangles: Iterable[tuple[int, int, int]] = (),
    open_half_edges: Iterable[tuple[int, int]] | None = None,
) -> list[Face]:
    """Faces of a plane graph given its counterclockwise rotation system.

    Every half-edge is walked once, keeping the region on the left.  A walk
    becomes a Face only if it is a simple cycle of length >= 3, bounds a
    positive-area region, and no other vertex lies strictly inside it.
    A caller that already knows some counterclockwise unit triangles are
    faces may pass them as ``triangles`` together with every half-edge not on
    one of them as ``open_half_edges``; only those are walked.
    """
    used: set[tuple[int, int]] = set()
    faces = [Face(tri) for tri in triangles]
    if open_half_edges is None:
        for p, q, r in triangles:
            used.update(((p, q), (q, r), (r, p)))
        open_half_edges = [(u, v) for u, nbrs in enumerate(rotation) for v in nbrs]
    # a walk keeps one face on its left, so from an open half-edge it never
    # steps onto a triangle's half-edge
    candidates: list[list[int]] = []
    for start in open_half_edges:
        if start in used:
            continue
        walk = []
        a, b = start
        while (a, b) not in used:
            used.add((a, b))
            walk.append(a)
            nbrs = rotation[b]
            # index -1 wraps to the last neighbour, as the rotation is cyclic
            a, b = b, nbrs[nbrs.index(a) - 1]
        m = len(walk)
        if m == 3:
            p, q, r = walk
            if p == r:
                continue
            (x0, y0), (x1, y1), (x2, y2) = coords[p], coords[q], coords[r]
            if (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0) > 0:
                # a unit triangle cannot hold a hard-core-feasible point
                faces.append(Face((p, q, r)))
        elif m > 3 and len(set(walk)) == m and signed_area2(coords, walk) > 0:
            candidates.append(walk)
    for walk in candidates:
        if not _encloses_any(coords, walk):
            faces.append(Face(tuple(walk)))
    return faces


def _encloses_any(coords: Sequence[Sequence[float]], walk: list[int]) -> bool:
    poly = [coords[v] for v in walk]
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)
    on_cycle = set(walk)
    for idx, pt in enumerate(coords):
        if idx in on_cycle:
            continue
        if x_lo < pt[0] < x_hi and y_lo < pt[1] < y_hi and point_in_polygon(pt, poly):
            return True
    return False


def assemble(coords, rotation, edges, triangles=(), open_half_edges=None) -> BondGraph:
    faces = trace_faces(coords, rotation, triangles, open_half_edges)
    counts = dict.fromkeys(edges, 0)
    for f in faces:
        b = f.boundary
        prev = b[-1]
        for v in b:
            counts[(prev, v) if prev < v else (v, prev)] += 1
            prev = v
    return BondGraph(
        vertices=tuple(range(len(coords))),
        edges=tuple(sorted(edges)),
        faces=tuple(sorted(faces, key=lambda f: min(f.boundary))),
        edge_face_count=counts,
    )


def _check_planar(points, edges) -> None:
    mids = [((points[i][0] + points[j][0]) / 2, (points[i][1] + points[j][1]) / 2) for i, j in edges]
    for s, t, _ in _close_pairs(mids, 1.0):
        (a, b), (c, d) = edges[s], edges[t]
        if len({a, b, c, d}) < 4:
            continue
        if _segments_cross(points[a], points[b], points[c], points[d]):
            raise AssertionError(f"bonds {edges[s]} and {edges[t]} cross")


def _segments_cross(p, q, r, s) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(p, q, r), orient(p, q, s)
    d3, d4 = orient(r, s, p), orient(r, s, q)
    return d1 * d2 < 0 and d3 * d4 < 0


def build_bond_graph(config: PointConfig, tol: float = DEFAULT_TOL) -> BondGraph:
    if len(config) == 0:
        raise DegenerateInput("empty configuration")
    if not 0 < tol < 0.1:
        raise ValueError("tol must lie in (0, 0.1)")
    pts = config.points
    edges: list[tuple[int, int]] = []
    for i, j, d in _close_pairs(pts, 1.0 + tol):
        if d <= _COINCIDENT:
            raise DegenerateInput(f"points {i} and {j} coincide")
        if d < 1.0 - tol:
            raise HardCoreViolation(i, j, d)
        edges.append((i, j))
    edges.sort()
    _check_planar(pts, edges)

    nbrs: list[list[int]] = [[] for _ in pts]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    rotation = []
    for i, ns in enumerate(nbrs):
        x, y = pts[i]
        ns.sort(key=lambda j: math.atan2(pts[j][1] - y, pts[j][0] - x))
        rotation.append(ns)
    return assemble(pts, rotation, edges)


def energy_direct(config: PointConfig, tol: float = DEFAULT_TOL) -> float | int:
    """Minus the number of bonded pairs, or +inf if any pair is too close."""
    bonds = 0
    for _, _, d in _close_pairs(config.points, 1.0 + tol):
        if d < 1.0 - tol:
            return math.inf
        bonds += 1
    return -bonds


def perimeter(g: BondGraph) -> int:
    return sum(2 - c for c in g.edge_face_count.values())


def defect_measure(g: BondGraph) -> int:
    return sum(f.side_count - 3 for f in g.faces)


def euler_characteristic(g: BondGraph) -> int:
    return len(g.vertices) - len(g.edges) + len(g.faces)


def energy_decomposed(g: BondGraph) -> EnergyBreakdown:
    n = len(g.vertices)
    p, mu, chi = perimeter(g), defect_measure(g), euler_characteristic(g)
    return EnergyBreakdown(n=n, perimeter=p, defect=mu, euler=chi, energy=-3 * n + p + mu + 3 * chi)
