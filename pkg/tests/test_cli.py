from __future__ import annotations

import json
from pathlib import Path

import pytest

from seminarassign.cli import main
from seminarassign.formats import load_archive, load_instance, load_report, save_instance
from seminarassign.instgen import random_instance

from conftest import make_t1


def _write_t1(tmp_path: Path) -> Path:
    path = tmp_path / "t1.json"
    save_instance(make_t1(), path)
    return path


def test_version_reports_backend(capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "seminarassign" in out and "backend:" in out


def test_generate_random(tmp_path: Path, capsys) -> None:
    out = tmp_path / "inst.json"
    assert main(["generate", "--n", "12", "--m", "4", "--w-max", "50",
                 "--groups", "2", "--seed", "3", "--out", str(out)]) == 0
    inst = load_instance(out)
    assert inst.n == 12 and inst.m == 4 and inst.w_max == 50
    assert inst.num_groups == 2
    assert "wrote instance n=12" in capsys.readouterr().out


def test_generate_derived(tmp_path: Path) -> None:
    base = tmp_path / "base.json"
    assert main(["generate", "--n", "20", "--m", "5", "--out", str(base)]) == 0
    derived = tmp_path / "d.json"
    assert main(["generate", "--base", str(base), "--n-target", "17",
                 "--out", str(derived)]) == 0
    inst = load_instance(derived)
    assert inst.n == 17 and inst.m == 5
    assert main(["generate", "--base", str(base), "--out", str(derived)]) == 2
    assert main(["generate", "--out", str(derived)]) == 2


def test_solve_t1(tmp_path: Path, capsys) -> None:
    inst_path = _write_t1(tmp_path)
    arch_path = tmp_path / "arch.json"
    rep_path = tmp_path / "rep.json"
    code = main(["solve", str(inst_path), "--evals", "5000", "--seed", "0",
                 "--out-archive", str(arch_path),
                 "--out-report", str(rep_path), "--no-timestamp"])
    assert code == 0
    out = capsys.readouterr().out
    assert "utility 40" in out
    assert "excluded shift: a_j = b_j for all j" in out
    archive = load_archive(arch_path, make_t1())
    assert archive.best_utility == 40 and len(archive.solutions) == 1
    report = load_report(rep_path)
    assert report.evaluations == 5000
    assert report.wall_time_s == 0.0
    assert "created_at" not in json.loads(rep_path.read_text())


def test_solve_is_reproducible_byte_for_byte(tmp_path: Path) -> None:
    inst_path = _write_t1(tmp_path)
    outs = []
    for tag in ("one", "two"):
        arch = tmp_path / f"{tag}.arch.json"
        rep = tmp_path / f"{tag}.rep.json"
        assert main(["solve", str(inst_path), "--evals", "3000",
                     "--seed", "7", "--out-archive", str(arch),
                     "--out-report", str(rep), "--no-timestamp"]) == 0
        outs.append((arch.read_bytes(), rep.read_bytes()))
    assert outs[0] == outs[1]


def test_solve_error_paths(tmp_path: Path) -> None:
    inst_path = _write_t1(tmp_path)
    assert main(["solve", str(tmp_path / "missing.json")]) == 2
    assert main(["solve", str(inst_path), "--evals", "0"]) == 2
    assert main(["solve", str(inst_path), "--neighborhoods", "warp"]) == 2
    assert main(["solve", str(inst_path), "--neighborhoods", "shift"]) == 2


def test_solve_matrix_input(tmp_path: Path, capsys) -> None:
    mat = tmp_path / "m.txt"
    mat.write_text("10 0\n10 0\n0 10\n0 10\n")
    assert main(["solve", str(mat), "--matrix", "--evals", "2000"]) == 0
    assert "utility 40" in capsys.readouterr().out


def test_frontier_output(tmp_path: Path, capsys) -> None:
    inst = random_instance(13, 4, w_max=30, k=2, seed=5)
    inst_path = tmp_path / "inst.json"
    save_instance(inst, inst_path)
    assert main(["frontier", str(inst_path), "--evals", "5000",
                 "--seed", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "utility\timbalance\timbalance_value\talternatives\tcap_reached"
    assert len(lines) > 1
    first = lines[1].split("\t")
    assert int(first[0]) > 0 and "/" in first[1]
    utils = [int(line.split("\t")[0]) for line in lines[1:]]
    assert utils == sorted(utils, reverse=True)


def test_frontier_to_files(tmp_path: Path) -> None:
    inst = random_instance(13, 4, w_max=30, k=2, seed=5)
    inst_path = tmp_path / "inst.json"
    save_instance(inst, inst_path)
    table = tmp_path / "front.tsv"
    arch = tmp_path / "front.json"
    assert main(["frontier", str(inst_path), "--evals", "3000",
                 "--out", str(table), "--out-archive", str(arch)]) == 0
    assert table.read_text().startswith("utility\t")
    back = load_archive(arch, inst)
    assert len(back.points) >= 1


def test_oracle_command(tmp_path: Path, capsys) -> None:
    inst_path = _write_t1(tmp_path)
    assert main(["oracle", str(inst_path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "oracle"
    assert data["optimum_utility"] == 40
    assert data["optimal_count"] == 1
    assert data["enumerated"] == 6
    assert data["frontier"][0]["utility"] == 40


def test_oracle_guard_exit_code(tmp_path: Path, capsys) -> None:
    inst = random_instance(40, 10, w_max=30, seed=1)
    inst_path = tmp_path / "big.json"
    save_instance(inst, inst_path)
    assert main(["oracle", str(inst_path)]) == 3
    err = capsys.readouterr().err
    assert "exhaustive-scan guard" in err
    # the flag reaches the oracle: a tight guard trips even on T1
    assert main(["oracle", str(_write_t1(tmp_path)), "--guard", "5"]) == 3


def test_benchmark_small(tmp_path: Path, capsys) -> None:
    base = tmp_path / "base.json"
    save_instance(random_instance(9, 3, w_max=20, k=3, seed=2), base)
    out_json = tmp_path / "bench.json"
    code = main(["benchmark", str(base), "--targets", "8,9", "--runs", "2",
                 "--evals", "300", "--workers", "1", "--quiet",
                 "--out-json", str(out_json)])
    assert code == 0
    out = capsys.readouterr().out
    lines = [line for line in out.strip().splitlines() if line]
    header = lines[0].split("\t")
    assert header[0] == "n"
    assert "vns" in header
    rows = {line.split("\t")[0]: line.split("\t") for line in lines[1:]}
    # 3 divides 9, so the shift columns are structurally n/a there
    shift_col = header.index("shift")
    assert rows["9"][shift_col] == "n/a"
    assert rows["8"][shift_col] != "n/a"
    data = json.loads(out_json.read_text())
    assert data["kind"] == "benchmark"
    assert data["runs"] == 2
    cells = {(row["n"], method): cell["mean"]
             for row in data["rows"]
             for method, cell in row["cells"].items()}
    assert cells[(9, "shift")] is None
    assert cells[(8, "vns")] is not None


def test_benchmark_rejects_empty_targets(tmp_path: Path) -> None:
    base = tmp_path / "base.json"
    save_instance(random_instance(6, 2, w_max=10, seed=0), base)
    assert main(["benchmark", str(base), "--targets", ","]) == 2
