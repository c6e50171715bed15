"""Closed forms for Heitmann-Radin ground states and explicit minimizers.

Every particle number N >= 1 is written uniquely as

    N = 3s^2 + 3s + 1 + (s+1)k + j,   0 <= k <= 5,  0 <= j <= s,

i.e. a regular hexagon H_s plus k complete outer rows plus j extra particles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .lattice import LatticeConfig, hexagon

# outer-ring walking directions, counterclockwise, first row first
_RING_STEPS = ((-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0), (0, 1))


class NoSuchN(ValueError):
    pass


@dataclass(frozen=True)
class SkjTriple:
    s: int
    k: int
    j: int

    @property
    def n(self) -> int:
        return hex_count(self.s) + (self.s + 1) * self.k + self.j


@dataclass
class MinimizerReport:
    n: int
    min_perimeter: int
    class_count_rot: int
    class_count_rot_refl: int
    representatives: list[LatticeConfig] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "min_perimeter": self.min_perimeter,
            "classes_rot": self.class_count_rot,
            "classes_rot_refl": self.class_count_rot_refl,
            "representatives": [[list(c) for c in r.sorted_cells()] for r in self.representatives],
        }


def hex_count(s: int) -> int:
    return 3 * s * s + 3 * s + 1


def skj_decompose(n: int) -> SkjTriple:
    if n < 1:
        raise ValueError("n must be >= 1")
    s = (math.isqrt(12 * n - 3) - 3) // 6
    while hex_count(s + 1) <= n:
        s += 1
    while hex_count(s) > n:
        s -= 1
    k, j = divmod(n - hex_count(s), s + 1)
    return SkjTriple(s, k, j)


def min_perimeter(n: int) -> int:
    t = skj_decompose(n)
    if t.k == 0 and t.j == 0:
        return 6 * t.s
    return 6 * t.s + t.k + 1


def ground_state_energy(n: int) -> int:
    return -3 * n + 3 + min_perimeter(n)


def is_uniqueness_number(n: int) -> bool:
    t = skj_decompose(n)
    return (t.k == 0 and t.j == 0) or (t.j == t.s and t.k <= 4)


def sequence_term(p: int) -> int:
    """a_p: the uniqueness number attached to perimeter p >= 3."""
    if p < 3:
        raise ValueError("a_p is defined for p >= 3")
    s, r = divmod(p, 6)
    if r == 0:
        return hex_count(s)
    k = r - 1
    return hex_count(s) + (s + 1) * k + s


def uniqueness_sequence(max_n: int) -> list[int]:
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    out = [n for n in (1, 2) if n <= max_n]
    p = 3
    while (a := sequence_term(p)) <= max_n:
        out.append(a)
        p += 1
    return out


def diophantine_count(n: int) -> int:
    """Number of (x, y, z) >= 0 with x + 2y + 3z = n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    count = 0
    for z in range(n // 3 + 1):
        rest = n - 3 * z
        # y ranges over 0..rest//2, x is then forced
        count += rest // 2 + 1
    return count


def max_n_for_perimeter(p: int) -> int:
    """Largest N whose minimal perimeter is p, by inverting min_perimeter."""
    if p < 3:
        raise ValueError("p must be >= 3")
    lo, hi = 1, 1
    while min_perimeter(hi) <= p:
        hi *= 2
    # min_perimeter is non-decreasing: find the last N with value <= p
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if min_perimeter(mid) <= p:
            lo = mid
        else:
            hi = mid
    if min_perimeter(lo) != p:
        raise NoSuchN(f"no particle number has minimal perimeter {p}")
    return lo


def outer_ring(s: int) -> list[tuple[int, int]]:
    """Cells of the ring around H_s, counterclockwise, starting at (s, 1)."""
    a, b = s + 1, 0
    out = []
    for da, db in _RING_STEPS:
        for _ in range(s + 1):
            a, b = a + da, b + db
            out.append((a, b))
    return out


def canonical_minimizer(n: int) -> LatticeConfig:
    t = skj_decompose(n)
    arc = outer_ring(t.s)[: (t.s + 1) * t.k + t.j]
    return LatticeConfig(hexagon(t.s).cells | set(arc))


def added_cells(n: int) -> list[tuple[int, int]]:
    """The particles of canonical_minimizer(n) outside its central hexagon."""
    t = skj_decompose(n)
    return outer_ring(t.s)[: (t.s + 1) * t.k + t.j]


def _hex_side(s: int, side: int) -> list[tuple[int, int]]:
    """The s+1 cells of H_s facing outer row ``side``."""
    ring = outer_ring(s - 1) if s > 0 else []
    # side i of H_s is row i of the ring around H_{s-1}, plus the corner before it
    corner_before = [(s, 0), (0, s), (-s, s), (-s, 0), (0, -s), (s, -s)][side]
    if s == 0:
        return [corner_before]
    return [corner_before] + ring[side * s : (side + 1) * s]


def alternate_minimizer(n: int, oracle=None) -> LatticeConfig | None:
    """A minimizer inequivalent to canonical_minimizer(n), or None if n is a
    uniqueness number.

    k <= 2: the hexagon row under the first untouched outer side is moved
    onto the last outer side.  k >= 3: the first added outer row is moved
    onto the outside of the third one.  For s = 0 (only n = 6 qualifies) the
    second minimizer comes from the exhaustive oracle.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if is_uniqueness_number(n):
        return None
    t = skj_decompose(n)
    s, k = t.s, t.k
    if s == 0:
        if oracle is None:
            from .oracle import enumerate_minimizers as oracle
        return _oracle_alternate(n, oracle)
    cells = set(canonical_minimizer(n).cells)
    if k <= 2:
        cells -= set(_hex_side(s, k + 1))
        cells |= {(s + 1, b) for b in range(-s, 1)}
    else:
        ring = outer_ring(s)
        cells -= set(ring[: s + 1])
        cells |= {(-(s + 2), b) for b in range(1, s + 2)}
    return LatticeConfig(cells)


def _oracle_alternate(n, enumerate_minimizers) -> LatticeConfig:
    from .lattice import canonicalize

    report = enumerate_minimizers(n)
    mine = canonicalize(canonical_minimizer(n))
    for rep in report.representatives:
        if canonicalize(rep) != mine:
            return rep
    raise RuntimeError(f"oracle found no second minimizer for n={n}")
