from __future__ import annotations

import json
import random
import subprocess
import sys

import pytest

from helpers import path_graph, random_connected

from vcmetric.cli import main
from vcmetric.graph import read_graph, write_graph
from vcmetric.md import is_resolving
from vcmetric.sat import PartitionedCnf, write_pcnf


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def report(text: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


@pytest.fixture
def p6(tmp_path):
    path = tmp_path / "p6.graph"
    write_graph(path_graph(6), path)
    return path


def test_solve_path(capsys, p6, tmp_path):
    sol = tmp_path / "s.txt"
    code, out = run(capsys, "solve", "--problem", "md", "--graph", str(p6), "--k", "1", "--out", str(sol))
    rep = report(out)
    assert code == 0 and rep["answer"] == "YES" and rep["size"] == "1"
    ids = [int(x) - 1 for x in sol.read_text().split()]
    assert is_resolving(path_graph(6), ids)
    code, out = run(capsys, "solve", "--problem", "gs", "--graph", str(p6), "--k", "1")
    assert code == 0 and report(out)["answer"] == "NO"


def test_solve_json(capsys, p6):
    code, out = run(capsys, "solve", "--problem", "gs", "--graph", str(p6), "--k", "2", "--method", "xp", "--json")
    data = json.loads(out)
    assert code == 0 and data["answer"] == "YES" and data["solution"] == [1, 6]


def test_brute_and_fpt_agree(capsys, tmp_path):
    rng = random.Random(77)
    path = tmp_path / "g.graph"
    for _ in range(100):
        g = random_connected(rng.randint(3, 10), rng.uniform(0.2, 0.6), rng)
        write_graph(g, path)
        problem = rng.choice(("md", "gs"))
        k = str(rng.randint(1, 4))
        answers = set()
        for method in ("brute", "fpt"):
            code, out = run(capsys, "solve", "--problem", problem, "--graph", str(path), "--k", k, "--method", method)
            assert code == 0
            answers.add(report(out)["answer"])
        assert len(answers) == 1


def test_verify(capsys, p6, tmp_path):
    sol = tmp_path / "s.txt"
    sol.write_text("1\n6\n")
    _, out = run(capsys, "verify", "--problem", "gs", "--graph", str(p6), "--solution", str(sol))
    assert report(out)["answer"] == "YES"
    _, out = run(capsys, "verify", "--problem", "gs", "--graph", str(p6), "--solution", str(sol), "--k", "1")
    assert report(out)["answer"] == "NO"
    sol.write_text("9\n")
    code, _ = run(capsys, "verify", "--problem", "gs", "--graph", str(p6), "--solution", str(sol))
    assert code == 2


def test_kernelize_writes_graph(capsys, tmp_path):
    star = tmp_path / "star.graph"
    star.write_text("p edge 5 4\ne 1 2\ne 1 3\ne 1 4\ne 1 5\n")
    out_path = tmp_path / "kernel.graph"
    code, out = run(capsys, "kernelize", "--problem", "md", "--graph", str(star), "--k", "3", "--out", str(out_path))
    rep = report(out)
    assert code == 0 and rep["kernel_n"] == "3" and rep["kernel_k"] == "1"
    assert read_graph(out_path).n == 3


@pytest.mark.parametrize("problem", ["md", "gs"])
def test_reduce_solve_lift_pipeline(capsys, tmp_path, problem):
    cnf = tmp_path / "f.cnf"
    write_pcnf(PartitionedCnf(1, ((1,), (2,), (3,)), ((1, 2), (-1, 3))), cnf)
    graph, sidecar, sol = tmp_path / "g", tmp_path / "map.json", tmp_path / "sol"
    code, out = run(capsys, "reduce", "--problem", problem, "--cnf", str(cnf), "--out", str(graph), "--map", str(sidecar))
    rep = report(out)
    assert code == 0 and int(rep["vertices"]) == read_graph(graph).n
    assert {"n", "m", "k", "explicit_vc"} <= rep.keys()
    code, out = run(capsys, "solve", "--method", "reduction-aware", "--map", str(sidecar), "--out", str(sol))
    assert code == 0 and report(out)["answer"] == "YES"
    code, out = run(capsys, "lift", "--map", str(sidecar), "--solution", str(sol))
    assert code == 0 and report(out)["satisfies"] == "True"
    code, out = run(capsys, "verify", "--problem", problem, "--graph", str(graph), "--solution", str(sol))
    assert report(out)["answer"] == "YES"
    roles = json.loads(sidecar.read_text())["roles"]
    assert len(roles) == read_graph(graph).n


def test_reduce_rejects_bad_formula(capsys, tmp_path):
    cnf = tmp_path / "bad.cnf"
    cnf.write_text("p pcnf 1 1\nc part a 1\nc part b 2\nc part c 3\n1 2\n")
    assert main(["reduce", "--problem", "md", "--cnf", str(cnf)]) == 2
    assert "not terminated" in capsys.readouterr().err


def test_gen_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "gen", "--n", "9", "--p", "0.3", "--seed", "5", "--out", str(a))
    run(capsys, "gen", "--n", "9", "--p", "0.3", "--seed", "5", "--out", str(b))
    assert a.read_text() == b.read_text()
    assert read_graph(a).is_connected()


def test_bench_runs(capsys):
    code, out = run(capsys, "bench", "tiny", "--seed", "1", "--json")
    rows = json.loads(out)["rows"]
    assert code == 0 and rows and all(r["fpt_ok"] for r in rows)


def test_module_entry_point(p6):
    done = subprocess.run(
        [sys.executable, "-m", "vcmetric", "solve", "--graph", str(p6), "--k", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert done.returncode == 0 and "answer: YES" in done.stdout


def test_missing_file_exit_code(capsys, tmp_path):
    code = main(["solve", "--graph", str(tmp_path / "none"), "--k", "1"])
    assert code == 2
