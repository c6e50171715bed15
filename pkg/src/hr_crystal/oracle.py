"""Exhaustive minimizer search over filled self-avoiding lattice polygons.

A lattice set has only triangular faces and a simply closed boundary exactly
when it is the set of lattice points on or inside a self-avoiding polygon, so
scanning polygons by increasing length finds every minimal-perimeter
configuration.  Polygons are anchored at their lexicographically least
vertex and walked counterclockwise, which visits each translation class once.

The polygon count grows roughly like 4.15**p; the walk itself runs in a
numba kernel.  Work can be split over threads by fixed path prefixes; results
are merged in prefix order so the output never depends on the worker count.
The closed forms in ``minimizers`` are never consulted here.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

from .lattice import (
    DIRECTIONS,
    ROTATIONS,
    ROTATIONS_REFLECTIONS,
    LatticeConfig,
    canonicalize,
    lattice_distance,
)
from .minimizers import MinimizerReport

DEFAULT_MAX_N = 40
MAX_PERIMETER = 24
_PREFIX_STEPS = 3

_DA = np.array([d[0] for d in DIRECTIONS], dtype=np.int64)
_DB = np.array([d[1] for d in DIRECTIONS], dtype=np.int64)


class LimitExceeded(ValueError):
    pass


def max_n() -> int:
    """Oracle particle-number bound; HR_ORACLE_MAX_N overrides the default."""
    raw = os.environ.get("HR_ORACLE_MAX_N")
    return int(raw) if raw else DEFAULT_MAX_N


@dataclass(frozen=True)
class SapPolygon:
    vertices: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def steps(self) -> tuple[tuple[int, int], ...]:
        v = self.vertices
        m = len(v)
        return tuple((v[(t + 1) % m][0] - v[t][0], v[(t + 1) % m][1] - v[t][1]) for t in range(m))

    def area2(self) -> int:
        """Signed area in units of elementary triangles (positive: counterclockwise)."""
        v = self.vertices
        m = len(v)
        return sum(v[t][0] * v[(t + 1) % m][1] - v[(t + 1) % m][0] * v[t][1] for t in range(m))

    def cell_count(self) -> int:
        # Pick's theorem on the triangular lattice: A = 2I + B - 2 triangles
        return (abs(self.area2()) + len(self) + 2) // 2


@numba.njit(cache=True, nogil=True)
def _sap_kernel(prefixes, p, want, hist, out, n_out, da, db):
    """Walk every polygon of length p extending each prefix.

    prefixes: (m, L+1, 2) vertex paths starting at the origin.
    want: bool per cell count; matching polygons are copied to ``out`` until
    it is full, ``n_out[0]`` counts all matches (overflow is detected by the
    caller).  hist: polygon count per enclosed cell count.
    """
    size = 2 * p + 1
    off = p
    grid = np.zeros((size, size), dtype=np.bool_)
    pa = np.empty(p + 1, dtype=np.int64)
    pb = np.empty(p + 1, dtype=np.int64)
    nxt = np.empty(p + 1, dtype=np.int64)
    cap = out.shape[0]
    steps = prefixes.shape[1] - 1
    for m in range(prefixes.shape[0]):
        area = 0
        for t in range(steps + 1):
            pa[t] = prefixes[m, t, 0]
            pb[t] = prefixes[m, t, 1]
            grid[pa[t] + off, pb[t] + off] = True
            if t > 0:
                area += pa[t - 1] * pb[t] - pa[t] * pb[t - 1]
        depth = steps
        nxt[depth] = 0
        while depth >= steps:
            a = pa[depth]
            b = pb[depth]
            remaining = p - depth
            if remaining == 1:
                # last step must land on the origin
                if max(abs(a), abs(b), abs(a + b)) == 1 and area > 0:
                    cells = (area + p + 2) // 2
                    hist[cells] += 1
                    if want[cells]:
                        k = n_out[0]
                        if k < cap:
                            for t in range(p):
                                out[k, t, 0] = pa[t]
                                out[k, t, 1] = pb[t]
                        n_out[0] = k + 1
                nxt[depth] = 6
            d = nxt[depth]
            if d >= 6:
                if depth > steps:
                    grid[a + off, b + off] = False
                    area -= pa[depth - 1] * b - a * pb[depth - 1]
                depth -= 1
                if depth >= steps:
                    nxt[depth] += 1
                continue
            na = a + da[d]
            nb = b + db[d]
            ok = na > 0 or (na == 0 and nb > 0)
            if ok and grid[na + off, nb + off]:
                ok = False
            if ok and max(abs(na), abs(nb), abs(na + nb)) > remaining - 1:
                ok = False
            if not ok:
                nxt[depth] = d + 1
                continue
            depth += 1
            pa[depth] = na
            pb[depth] = nb
            grid[na + off, nb + off] = True
            area += a * nb - na * b
            nxt[depth] = 0
        for t in range(steps + 1):
            grid[pa[t] + off, pb[t] + off] = False


def _prefixes(p: int, steps: int) -> np.ndarray:
    """All admissible starting paths of ``steps`` steps, in direction order."""
    paths = [[(0, 0)]]
    for depth in range(steps):
        remaining = p - depth
        grown = []
        for path in paths:
            a, b = path[-1]
            for da, db in DIRECTIONS:
                na, nb = a + da, b + db
                if not (na > 0 or (na == 0 and nb > 0)):
                    continue
                if (na, nb) in path:
                    continue
                if lattice_distance(na, nb) > remaining - 1:
                    continue
                grown.append(path + [(na, nb)])
        paths = grown
    return np.array(paths, dtype=np.int64).reshape(len(paths), steps + 1, 2)


def _scan(p: int, want_cells, workers: int = 1):
    """Histogram of cell counts over all polygons of length p, plus the vertex
    lists of those whose cell count is in ``want_cells`` (in canonical order)."""
    if not 3 <= p <= MAX_PERIMETER:
        raise LimitExceeded(f"perimeter {p} outside [3, {MAX_PERIMETER}]")
    steps = min(_PREFIX_STEPS, p - 1)
    prefixes = _prefixes(p, steps)
    n_cells = p * p + 2
    want = np.zeros(n_cells, dtype=np.bool_)
    for c in want_cells:
        if 0 <= c < n_cells:
            want[c] = True
    chunks = np.array_split(np.arange(len(prefixes)), max(1, workers))

    def run(idx, cap=64):
        while True:
            hist = np.zeros(n_cells, dtype=np.int64)
            out = np.zeros((cap, p, 2), dtype=np.int64)
            n_out = np.zeros(1, dtype=np.int64)
            _sap_kernel(prefixes[idx], p, want, hist, out, n_out, _DA, _DB)
            if n_out[0] <= cap:
                return hist, out[: n_out[0]]
            cap = int(n_out[0])

    if workers <= 1:
        results = [run(idx) for idx in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, chunks))
    hist = sum(r[0] for r in results)
    polys = [tuple(map(tuple, poly.tolist())) for r in results for poly in r[1]]
    return hist, polys


def enumerate_saps(perimeter: int, visit: Callable[[SapPolygon], None], workers: int = 1) -> None:
    """Call ``visit`` once per translation class of self-avoiding polygons."""
    _, polys = _scan(perimeter, range(perimeter * perimeter + 2), workers)
    for verts in polys:
        visit(SapPolygon(verts))


def fill(p: SapPolygon) -> LatticeConfig:
    """Lattice points on or strictly inside the polygon."""
    verts = p.vertices
    on = set(verts)
    b_lo = min(v[1] for v in verts)
    b_hi = max(v[1] for v in verts)
    span = b_hi - b_lo
    a_lo = min(v[0] for v in verts) - span
    a_hi = max(v[0] for v in verts) + span
    cells = set(on)
    m = len(verts)
    # horizontal rays in cartesian space = rays along +a at fixed b
    for b in range(b_lo + 1, b_hi):
        crossings = []
        for t in range(m):
            a0, b0 = verts[t]
            a1, b1 = verts[(t + 1) % m]
            if (b0 > b) != (b1 > b):
                # a-coordinate of the crossing, times (b1 - b0)
                crossings.append((a0 * (b1 - b0) + (b - b0) * (a1 - a0), b1 - b0))
        for a in range(a_lo, a_hi + 1):
            if (a, b) in on:
                continue
            inside = False
            for num, den in crossings:
                if (a * den < num) == (den > 0):
                    inside = not inside
            if inside:
                cells.add((a, b))
    return LatticeConfig(cells)


class _Cache:
    def __init__(self):
        self.clear()

    def clear(self):
        self.hist: dict[int, np.ndarray] = {}
        self.minimizers: dict[int, tuple[int, list]] = {}


_cache = _Cache()


def clear_cache() -> None:
    _cache.clear()


def _histogram(p: int, workers: int) -> np.ndarray:
    if p not in _cache.hist:
        _cache.hist[p], _ = _scan(p, (), workers)
    return _cache.hist[p]


def _resolve(targets, workers: int) -> None:
    """Find the minimal perimeter and minimizing polygons of every target."""
    pending = {n for n in targets if n not in _cache.minimizers}
    p = 3
    while pending:
        if p > MAX_PERIMETER:
            raise LimitExceeded(f"no minimizer found up to perimeter {MAX_PERIMETER}")
        want = {n for n in pending if n < p * p + 2}
        hist, polys = _scan(p, want, workers)
        _cache.hist.setdefault(p, hist)
        by_n: dict[int, list] = {}
        for verts in polys:
            by_n.setdefault(SapPolygon(verts).cell_count(), []).append(verts)
        for n in sorted(want):
            if hist[n] > 0:
                _cache.minimizers[n] = (p, by_n[n])
                pending.discard(n)
        p += 1


def _check_bound(n: int) -> None:
    bound = max_n()
    if n > bound:
        raise LimitExceeded(f"n={n} exceeds oracle bound {bound} (set HR_ORACLE_MAX_N)")


def enumerate_minimizers(n: int, workers: int = 1) -> MinimizerReport:
    if n < 3:
        raise ValueError("n must be >= 3")
    _check_bound(n)
    _resolve([n], workers)
    return _report(n)


def _report(n: int) -> MinimizerReport:
    p, polys = _cache.minimizers[n]
    rot: dict = {}
    refl = set()
    for verts in polys:
        cfg = fill(SapPolygon(verts))
        rot.setdefault(canonicalize(cfg, ROTATIONS).key, cfg)
        refl.add(canonicalize(cfg, ROTATIONS_REFLECTIONS).key)
    reps = [LatticeConfig(key) for key in sorted(rot)]
    return MinimizerReport(
        n=n,
        min_perimeter=p,
        class_count_rot=len(rot),
        class_count_rot_refl=len(refl),
        representatives=reps,
    )


@dataclass
class CheckResult:
    name: str
    passed: bool
    rows: list[dict]
    failures: list[dict]

    def as_dict(self) -> dict:
        return {
            "check": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "rows": self.rows,
            "failures": self.failures,
        }


def _oracle_range(n_max: int, workers: int) -> list[MinimizerReport]:
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    _check_bound(n_max)
    _resolve(range(3, n_max + 1), workers)
    return [_report(n) for n in range(3, n_max + 1)]


def verify_theorem(n_max: int, workers: int = 1) -> CheckResult:
    from .minimizers import is_uniqueness_number

    rows, failures = [], []
    for rep in _oracle_range(n_max, workers):
        predicted = is_uniqueness_number(rep.n)
        row = {
            "n": rep.n,
            "classes_rot": rep.class_count_rot,
            "classes_rot_refl": rep.class_count_rot_refl,
            "predicted_unique": predicted,
        }
        rows.append(row)
        if (rep.class_count_rot == 1) != predicted:
            failures.append(dict(row, representatives=rep.as_dict()["representatives"]))
    return CheckResult("theorem", not failures, rows, failures)


def verify_min_perimeter(n_max: int, workers: int = 1) -> CheckResult:
    from .minimizers import min_perimeter

    rows, failures = [], []
    for rep in _oracle_range(n_max, workers):
        row = {"n": rep.n, "oracle": rep.min_perimeter, "formula": min_perimeter(rep.n)}
        rows.append(row)
        if row["oracle"] != row["formula"]:
            failures.append(row)
    return CheckResult("min_perimeter", not failures, rows, failures)


def oracle_max_n_for_perimeter(p_max: int, workers: int = 1) -> dict[int, int]:
    """For each 3 <= p <= p_max, the largest N first realised at perimeter p."""
    seen: set[int] = set()
    out = {}
    for p in range(3, p_max + 1):
        hist = _histogram(p, workers)
        reached = {int(c) for c in np.nonzero(hist)[0]}
        fresh = reached - seen
        seen |= reached
        out[p] = max(fresh) if fresh else 0
    return out


def verify_max_n(p_max: int, workers: int = 1) -> CheckResult:
    from .minimizers import diophantine_count, sequence_term

    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    rows, failures = [], []
    for p, found in oracle_max_n_for_perimeter(p_max, workers).items():
        row = {"p": p, "oracle": found, "a_p": sequence_term(p), "diophantine": diophantine_count(p)}
        rows.append(row)
        if not found == row["a_p"] == row["diophantine"]:
            failures.append(row)
    return CheckResult("max_n", not failures, rows, failures)


def enumerate_crystallized(n_max: int, workers: int = 1) -> list[LatticeConfig]:
    """Every crystallized configuration with 3 <= N <= n_max, one per
    translation class, sorted by (N, cells).

    The boundary of such a set is a polygon through its boundary particles,
    so P <= N and perimeters up to n_max suffice.  Polygons that cut across a
    bonded triangle fill to a set already reached through its true boundary;
    the translation dedup absorbs them.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    if n_max > MAX_PERIMETER:
        raise LimitExceeded(f"n_max={n_max} needs perimeters above {MAX_PERIMETER}")
    seen: set[tuple] = set()
    for p in range(3, n_max + 1):
        _, polys = _scan(p, range(3, n_max + 1), workers)
        for verts in polys:
            cells = sorted(fill(SapPolygon(verts)).cells)
            a0, b0 = cells[0]
            seen.add(tuple((a - a0, b - b0) for a, b in cells))
    return [LatticeConfig(k) for k in sorted(seen, key=lambda k: (len(k), k))]
