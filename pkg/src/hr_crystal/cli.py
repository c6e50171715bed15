"""hr-crystal command line.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 infeasible configuration, 4 ``alternate`` found the minimizer unique.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import minimizers as mz
from . import oracle
from .geometry import (
    DEFAULT_TOL,
    DegenerateInput,
    HardCoreViolation,
    build_bond_graph,
    energy_decomposed,
    energy_direct,
)
from .io import ConfigParseError, axial_json, load_config
from .lattice import DIRECTIONS, LatticeConfig, canonicalize, to_cartesian
from .render import RenderStyle, render_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_UNIQUE = 4


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _lattice_svg(x: LatticeConfig, highlight=()) -> str:
    cells = x.sorted_cells()
    index = {c: i for i, c in enumerate(cells)}
    bonds = []
    for i, (a, b) in enumerate(cells):
        for da, db in DIRECTIONS[:3]:
            j = index.get((a + da, b + db))
            if j is not None:
                bonds.append((min(i, j), max(i, j)))
    style = RenderStyle(highlight=frozenset(index[c] for c in highlight))
    return render_svg([to_cartesian(c) for c in cells], bonds, style)


def cmd_energy(args) -> int:
    loaded = load_config(args.file)
    try:
        g = build_bond_graph(loaded.points, args.tol)
    except HardCoreViolation as exc:
        i, j = exc.pair
        print(f"infeasible: hard-core violation between points {i} and {j} "
              f"(distance {exc.distance:.12g})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DegenerateInput as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    breakdown = energy_decomposed(g)
    direct = energy_direct(loaded.points, args.tol)
    row = breakdown.as_dict()
    row["energy_direct"] = direct
    row["regular_boundary_edges"] = sum(1 for c in g.edge_face_count.values() if c == 1)
    row["wire_edges"] = len(g.wire_edges())
    if args.json:
        print(json.dumps(row, sort_keys=True))
    else:
        for key in ("n", "perimeter", "defect", "euler", "energy", "energy_direct",
                    "regular_boundary_edges", "wire_edges"):
            print(f"{key:<24}{row[key]}")
    if direct != breakdown.energy:
        print(f"error: direct energy {direct} != decomposed {breakdown.energy}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _write_construction(x: LatticeConfig, fmt: str, out: str | None, highlight=()) -> None:
    if fmt == "json":
        _emit(axial_json(x), out)
    else:
        _emit(_lattice_svg(x, highlight), out)


def cmd_canonical(args) -> int:
    if args.n < 1:
        raise UsageError("N must be >= 1")
    x = mz.canonical_minimizer(args.n)
    _write_construction(x, args.out, args.output, mz.added_cells(args.n))
    return EXIT_OK


def cmd_alternate(args) -> int:
    if args.n < 3:
        raise UsageError("N must be >= 3")
    x = mz.alternate_minimizer(args.n)
    if x is None:
        print("unique")
        return EXIT_UNIQUE
    _write_construction(x, args.out, args.output)
    return EXIT_OK


def cmd_sequence(args) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    seq = mz.uniqueness_sequence(args.max)
    if args.json:
        print(json.dumps(seq))
    else:
        for n in seq:
            print(n)
    if not args.check_diophantine:
        return EXIT_OK
    # perimeters whose a_p lies within the requested range
    bad = []
    p = 3
    while mz.sequence_term(p) <= args.max:
        a = mz.sequence_term(p)
        if not a == mz.diophantine_count(p) == mz.max_n_for_perimeter(p):
            bad.append(p)
        p += 1
    status = "PASS" if not bad else "FAIL"
    print(f"diophantine {status} p=3..{p - 1}" + (f" failing p={bad}" if bad else ""))
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = [
        oracle.verify_theorem(args.n_max, args.workers),
        oracle.verify_min_perimeter(args.n_max, args.workers),
        oracle.verify_max_n(args.p_max, args.workers),
    ]
    if args.json:
        print(json.dumps([c.as_dict() for c in checks], sort_keys=True, indent=1))
    else:
        for c in checks:
            bound = f"p_max={args.p_max}" if c.name == "max_n" else f"n_max={args.n_max}"
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} {c.name} {bound} cases={len(c.rows)} failures={len(c.failures)}")
            for f in c.failures:
                print(f"  {json.dumps(f, sort_keys=True)}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def cmd_enumerate(args) -> int:
    report = oracle.enumerate_minimizers(args.n, args.workers)
    if args.json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        print(f"n={report.n} min_perimeter={report.min_perimeter} "
              f"classes_rot={report.class_count_rot} classes_rot_refl={report.class_count_rot_refl}")
        for rep in report.representatives:
            print("  " + canonicalize(rep).serialize())
    return EXIT_OK


def _match_highlight(loaded, marks) -> frozenset[int]:
    if loaded.cells is not None and marks.cells is not None:
        index = {c: i for i, c in enumerate(loaded.cells.sorted_cells())}
        wanted = marks.cells.sorted_cells()
        missing = [c for c in wanted if c not in index]
        if missing:
            raise ConfigParseError(f"highlight cells not in configuration: {missing}")
        return frozenset(index[c] for c in wanted)
    index = {(round(x, 6), round(y, 6)): i for i, (x, y) in enumerate(loaded.points.points)}
    out = set()
    for x, y in marks.points.points:
        key = (round(x, 6), round(y, 6))
        if key not in index:
            raise ConfigParseError(f"highlight point ({x}, {y}) not in configuration")
        out.add(index[key])
    return frozenset(out)


def cmd_render(args) -> int:
    loaded = load_config(args.file)
    highlight = frozenset()
    if args.highlight:
        text = Path(args.highlight).read_text()
        if text.strip():
            highlight = _match_highlight(loaded, load_config(args.highlight))
    try:
        g = build_bond_graph(loaded.points, args.tol)
    except (HardCoreViolation, DegenerateInput) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(render_svg(loaded.points.points, g.edges, RenderStyle(highlight=highlight)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hr-crystal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="energy breakdown of a configuration file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_energy)

    for name, func in (("canonical", cmd_canonical), ("alternate", cmd_alternate)):
        p = sub.add_parser(name, help=f"{name} minimizer for N particles")
        p.add_argument("n", type=int, metavar="N")
        p.add_argument("--out", choices=("json", "svg"), default="json")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("sequence", help="particle numbers with a unique minimizer")
    p.add_argument("--max", type=int, default=120)
    p.add_argument("--check-diophantine", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="check the closed forms against the oracle")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--p-max", type=int, default=16)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="all minimizers for N particles, up to symmetry")
    p.add_argument("n", type=int, metavar="N")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="SVG drawing of a configuration file")
    p.add_argument("file")
    p.add_argument("--highlight", help="configuration file listing points to accent")
    p.add_argument("--out", help="output .svg path (default stdout)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigParseError, UsageError, oracle.LimitExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
