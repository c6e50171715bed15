import json
import random
import re
import subprocess
import sys

import pytest

from hr_crystal.cli import EXIT_FAIL, EXIT_INFEASIBLE, EXIT_OK, EXIT_UNIQUE, EXIT_USAGE, main
from hr_crystal.io import load_config
from hr_crystal.lattice import LatticeConfig, canonicalize, hexagon
from hr_crystal.minimizers import (
    added_cells,
    canonical_minimizer,
    ground_state_energy,
    min_perimeter,
)

FIRST_35 = "1 2 3 4 5 7 8 10 12 14 16 19 21 24 27 30 33 37 40 44 48 52 56 61 65 70 75 80 85 91 96 102 108 114 120"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_json(path, fmt, points):
    path.write_text(json.dumps({"format": fmt, "points": points}))
    return path


def parse_text_report(out):
    return {k: int(v) for k, v in (line.split() for line in out.strip().splitlines())}


def test_energy_triangle(tmp_path, capsys):
    f = write_json(tmp_path / "tri.json", "axial", [[0, 0], [1, 0], [0, 1]])
    code, out, _ = run(capsys, "energy", f)
    assert code == EXIT_OK
    row = parse_text_report(out)
    assert (row["n"], row["perimeter"], row["defect"], row["euler"], row["energy"]) == (3, 3, 0, 1, -3)
    assert row["energy_direct"] == -3


def test_energy_mixed_fixture_json(tmp_path, capsys):
    from hr_crystal.io import mixed_fixture

    pts = [list(p) for p in mixed_fixture().points]
    f = write_json(tmp_path / "fig.json", "cartesian", pts)
    code, out, _ = run(capsys, "energy", f, "--json")
    assert code == EXIT_OK
    row = json.loads(out)
    assert row == {
        "n": 17, "perimeter": 17, "defect": 3, "euler": 1, "energy": -28,
        "energy_direct": -28, "regular_boundary_edges": 13, "wire_edges": 2,
    }


def test_energy_csv(tmp_path, capsys):
    f = tmp_path / "pair.csv"
    f.write_text("x,y\n0,0\n1,0\n")
    code, out, _ = run(capsys, "energy", f, "--json")
    assert code == EXIT_OK
    assert json.loads(out)["energy"] == -1


def test_energy_hard_core(tmp_path, capsys):
    f = write_json(tmp_path / "bad.json", "cartesian", [[0, 0], [0.5, 0]])
    code, _, err = run(capsys, "energy", f)
    assert code == EXIT_INFEASIBLE
    assert "points 0 and 1" in err


def test_energy_duplicate_cartesian(tmp_path, capsys):
    f = write_json(tmp_path / "dup.json", "cartesian", [[0, 0], [0, 0]])
    assert run(capsys, "energy", f)[0] == EXIT_INFEASIBLE


@pytest.mark.parametrize(
    "text",
    ['{"format": "polar", "points": [[0, 0]]}', "not json {", '{"format": "axial", "points": [[0.5, 1]]}',
     '{"format": "axial", "points": []}'],
)
def test_energy_parse_errors(tmp_path, capsys, text):
    f = tmp_path / "bad.json"
    f.write_text(text)
    code, _, err = run(capsys, "energy", f)
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "energy", tmp_path / "nope.json")[0] == EXIT_USAGE


def test_bad_tolerance(tmp_path, capsys):
    f = write_json(tmp_path / "tri.json", "axial", [[0, 0], [1, 0], [0, 1]])
    assert run(capsys, "energy", f, "--tol", "0.5")[0] == EXIT_USAGE


def test_canonical_json(capsys):
    code, out, _ = run(capsys, "canonical", 7)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["format"] == "axial"
    assert LatticeConfig(map(tuple, doc["points"])) == hexagon(1)


def test_canonical_svg_h1(capsys):
    code, out, _ = run(capsys, "canonical", 7, "--out", "svg")
    assert code == EXIT_OK
    assert out.count("<circle") == 7
    assert out.count("<line") == 12


def test_canonical_svg_highlight(tmp_path, capsys):
    target = tmp_path / "c96.svg"
    code, out, _ = run(capsys, "canonical", 96, "--out", "svg", "-o", target)
    assert code == EXIT_OK and out == ""
    svg = target.read_text()
    assert svg.count("<circle") == 96
    assert svg.count('fill="#d62728"') == len(added_cells(96)) == 5


def test_canonical_bad_n(capsys):
    assert run(capsys, "canonical", 0)[0] == EXIT_USAGE


def test_alternate(capsys):
    code, out, _ = run(capsys, "alternate", 91)
    assert (code, out.strip()) == (EXIT_UNIQUE, "unique")
    code, out, _ = run(capsys, "alternate", 106)
    assert code == EXIT_OK
    y = LatticeConfig(map(tuple, json.loads(out)["points"]))
    assert len(y) == 106
    assert canonicalize(y) != canonicalize(canonical_minimizer(106))
    assert run(capsys, "alternate", 2)[0] == EXIT_USAGE


def test_sequence(capsys):
    code, out, _ = run(capsys, "sequence", "--max", 120)
    assert code == EXIT_OK
    assert " ".join(out.split()) == FIRST_35
    code, out, _ = run(capsys, "sequence", "--max", 20, "--json")
    assert json.loads(out) == [1, 2, 3, 4, 5, 7, 8, 10, 12, 14, 16, 19]
    assert run(capsys, "sequence", "--max", 0)[0] == EXIT_USAGE


def test_sequence_diophantine(capsys):
    code, out, _ = run(capsys, "sequence", "--max", 120, "--check-diophantine")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "diophantine PASS p=3..35"


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", 14, "--p-max", 12)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert [re.match(r"(\w+) (\w+)", ln).groups() for ln in lines] == [
        ("PASS", "theorem"), ("PASS", "min_perimeter"), ("PASS", "max_n"),
    ]


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", 10, "--p-max", 8, "--json")
    assert code == EXIT_OK
    assert [c["status"] for c in json.loads(out)] == ["PASS"] * 3


def test_verify_limit(capsys):
    assert run(capsys, "verify", "--n-max", 500)[0] == EXIT_USAGE


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", 6, "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["min_perimeter"] == 6 and d["classes_rot"] >= 2
    code, out, _ = run(capsys, "enumerate", 7)
    assert out.splitlines()[0] == "n=7 min_perimeter=6 classes_rot=1 classes_rot_refl=1"


def test_render(tmp_path, capsys):
    f = write_json(tmp_path / "h.json", "axial", [list(c) for c in hexagon(1).sorted_cells()])
    mark = write_json(tmp_path / "m.json", "axial", [[0, 0]])
    out_svg = tmp_path / "h.svg"
    code, _, _ = run(capsys, "render", f, "--highlight", mark, "--out", out_svg)
    assert code == EXIT_OK
    svg = out_svg.read_text()
    assert svg.count("<circle") == 7 and svg.count("<line") == 12
    assert svg.count('fill="#d62728"') == 1


def test_render_empty_highlight(tmp_path, capsys):
    f = write_json(tmp_path / "h.json", "axial", [list(c) for c in hexagon(1).sorted_cells()])
    empty = tmp_path / "none.json"
    empty.write_text("")
    code, out, _ = run(capsys, "render", f, "--highlight", empty)
    assert code == EXIT_OK
    assert 'fill="#d62728"' not in out


def test_render_foreign_highlight(tmp_path, capsys):
    f = write_json(tmp_path / "h.json", "axial", [[0, 0], [1, 0]])
    mark = write_json(tmp_path / "m.json", "axial", [[5, 5]])
    assert run(capsys, "render", f, "--highlight", mark)[0] == EXIT_USAGE


def test_render_infeasible(tmp_path, capsys):
    f = write_json(tmp_path / "bad.json", "cartesian", [[0, 0], [0.3, 0]])
    assert run(capsys, "render", f)[0] == EXIT_INFEASIBLE


def test_render_cartesian_bytes_stable(tmp_path, capsys):
    from hr_crystal.io import mixed_fixture

    f = write_json(tmp_path / "fig.json", "cartesian", [list(p) for p in mixed_fixture().points])
    first = run(capsys, "render", f)[1]
    second = run(capsys, "render", f)[1]
    assert first == second
    assert first.count("<line") == 28


def test_round_trip_canonical_to_energy(tmp_path, capsys):
    rng = random.Random(5)
    for n in sorted(rng.sample(range(3, 400), 12)) + [3, 106]:
        target = tmp_path / f"c{n}.json"
        assert run(capsys, "canonical", n, "-o", target)[0] == EXIT_OK
        assert load_config(target).cells == canonical_minimizer(n)
        code, out, _ = run(capsys, "energy", target, "--json")
        row = json.loads(out)
        assert code == EXIT_OK
        assert row["perimeter"] == min_perimeter(n)
        assert row["energy"] == row["energy_direct"] == ground_state_energy(n)


def test_usage_errors_from_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hr_crystal", "alternate", "7"], capture_output=True, text=True
    )
    assert proc.returncode == EXIT_UNIQUE
    assert proc.stdout.strip() == "unique"


def test_exit_fail_constant():
    assert (EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_UNIQUE) == (0, 1, 2, 3, 4)


def test_sequence_short_and_long(capsys):
    assert run(capsys, "sequence", "--max", 5)[1].split() == ["1", "2", "3", "4", "5"]
    code, out, _ = run(capsys, "sequence", "--max", 1000, "--check-diophantine")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1].startswith("diophantine PASS")


def test_verify_smallest(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", 3, "--p-max", 6)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "PASS theorem n_max=3 cases=1 failures=0"


def test_canonical_91_svg(capsys):
    out = run(capsys, "canonical", 91, "--out", "svg")[1]
    assert out.count("<circle") == 91
    assert 'fill="#d62728"' not in out
