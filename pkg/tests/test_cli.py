from __future__ import annotations

import subprocess
import sys
from importlib import resources

import pytest

from ordpack.benchmarks import suite
from ordpack.cli import BenchRow, format_table, main
from ordpack.packfile import parse_instance
from ordpack.realize import Placement, verify_placement

DATA = resources.files("ordpack") / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in out.splitlines() if ": " in line and not line.startswith("item "))


def test_empty_instance_is_feasible_without_coordinates(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "empty.pack"))
    assert code == 0
    assert fields(out)["verdict"] == "Feasible"
    assert not [line for line in out.splitlines() if line.startswith("item ")]


def test_tiny_instance_with_oracle(capsys, tmp_path):
    svg = tmp_path / "tiny.svg"
    code, out, _ = run(capsys, "solve", str(DATA / "tiny4.pack"), "--oracle", "--svg", str(svg), "--ascii")
    assert code == 0
    f = fields(out)
    assert f["verdict"] == f["oracle"] == "Feasible"
    assert f["oracle-agrees"] == "yes"
    assert f["version"].startswith("ordpack ")
    inst = parse_instance((DATA / "tiny4.pack").read_text())
    rows = [line.split()[1:] for line in out.splitlines() if line.startswith("item ")]
    assert [r[0] for r in rows] == list(inst.names)
    pl = Placement(tuple(tuple(map(int, r[1:])) for r in rows))
    assert verify_placement(inst, pl) == []
    assert svg.read_text().startswith("<svg")
    assert "1 char = 1 unit" in out


# cspp: b cannot sit beside a or c in width 4, so it stacks on the a->c chain (3 + 2 + 2).
# bmp: t stays at 7 and b alone needs x = 3, which the same stacking achieves.
@pytest.mark.parametrize("mode,expected", [("cspp", "7"), ("bmp", "3")])
def test_optimisation_modes_agree_with_oracle(capsys, tmp_path, mode, expected):
    path = tmp_path / "p.pack"
    path.write_text("dims 2 x t\ncontainer 4 *\nitem a 2 3\nitem b 3 2\nitem c 2 2\nprec t a c\n")
    code, out, _ = run(capsys, "solve", str(path), "--mode", mode, "--oracle")
    f = fields(out)
    assert code == 0, out
    assert f["verdict"] == "Optimal"
    assert f["objective"] == f["oracle"] == expected
    assert f["oracle-agrees"] == "yes"


def test_parse_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.pack"
    path.write_text("dims 2\ncontainer 3 3\nitem a 1 x\n")
    code, out, err = run(capsys, "solve", str(path))
    assert code == 1 and out == ""
    assert "line 3, column 10" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "none.pack"))
    assert code == 1 and "error" in err


def test_node_limit_gives_unknown(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "okp17-0.pack"), "--mode", "cspp", "--node-limit", "10",
                       "--strategy", "ascending")
    assert code == 2
    f = fields(out)
    assert f["verdict"] == "Unknown"
    assert f["bounds"].startswith("[")


def test_infeasible_cspp(capsys, tmp_path):
    path = tmp_path / "p.pack"
    path.write_text("dims 2 x t\ncontainer 3 *\nitem a 3 4\nitem b 3 1\nitem c 2 2\nprec t a c\nprec x b c\n")
    code, out, _ = run(capsys, "solve", str(path), "--mode", "cspp", "--oracle")
    f = fields(out)
    assert code == 0 and f["verdict"] == "Infeasible" and f["oracle"] == "Infeasible"


def test_bench_with_tiny_time_limit(capsys):
    code, out, _ = run(capsys, "bench", "--time-limit", "0.001", "--only", "okp17-0", "square21-2mat")
    assert code == 2
    lines = out.splitlines()
    assert lines[0].split()[:4] == ["instance", "published", "found", "status"]
    assert "Unknown" in lines[2] and "Unknown" in lines[3]
    assert "[118,120]" in lines[3]


def test_bench_unknown_name(capsys):
    assert run(capsys, "bench", "--only", "nope")[0] == 1


def test_format_table_alignment():
    rows = [BenchRow("a", "1", "1", "ok", 0.5, 1.25, 7), BenchRow("longer", "22", "[1,2]", "Unknown", 10, 0, 12345)]
    lines = format_table(rows).splitlines()
    assert len({len(line) for line in lines}) == 1
    assert lines[2].split() == ["a", "1", "1", "ok", "0.50", "1.25", "7"]


def test_okp17_4_from_file(capsys):
    code, out, _ = run(capsys, "solve", str(DATA / "okp17-4.pack"), "--mode", "cspp")
    assert code == 0
    assert fields(out)["objective"] == "245"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordpack", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ordpack ")


def test_benchmark_table_lists_every_embedded_instance():
    assert [b.name for b in suite("okp17")] == [f"okp17-{k}" for k in range(5)]
    assert [b.name for b in suite("square21")] == ["square21-no", "square21-mat", "square21-tri", "square21-2mat"]
