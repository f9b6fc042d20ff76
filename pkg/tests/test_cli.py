"""Tests for the command-line front end: outputs, exit codes, traces."""

import json
from pathlib import Path

from cpmatch.cli import (
    EXIT_INVARIANT,
    EXIT_NO_MATCHING,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    main,
)
from cpmatch.fixtures import dancing_robot

DATA = Path(__file__).resolve().parent.parent / "src" / "cpmatch" / "data"


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def k2_file(tmp_path):
    return write(tmp_path, "k2.g", "p edge 2 1\ne 0 1 7\n")


def triangles_file(tmp_path):
    return write(
        tmp_path,
        "tri.g",
        "p edge 6 6\ne 0 1 1\ne 1 2 1\ne 0 2 1\ne 3 4 1\ne 4 5 1\ne 3 5 1\n",
    )


def test_solve_dancing_robot(capsys):
    code = main(["solve", str(DATA / "dancing_robot.g")])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    matchings = [l for l in lines if l.startswith("matching ")]
    assert len(matchings) == 8
    assert "cost 8" in lines
    assert "iterations 3" in lines
    assert "lp-solves 129" in lines


def test_solve_naive_cycling(capsys):
    code = main(["solve", str(DATA / "cycling.g"), "--algorithm", "naive"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "stop CyclingDetected" in out
    assert "repeat-of 2" in out
    assert "iterations 4" in out


def test_validate_ok(tmp_path, capsys):
    code = main(["solve", k2_file(tmp_path), "--validate"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "cost 7" in captured.out
    assert "validate ok" in captured.err


def test_validate_skips_large_graphs(capsys):
    code = main(["solve", str(DATA / "dancing_robot.g"), "--validate"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "validate skipped (n = 16 > 14)" in captured.err


def test_parse_error_exit(tmp_path, capsys):
    path = write(tmp_path, "bad.g", "p edge 2 1\ne 0 0 1\n")
    code = main(["solve", path])
    captured = capsys.readouterr()
    assert code == EXIT_PARSE
    assert "line 2: loop at vertex 0" in captured.err


def test_missing_file_exit(capsys):
    code = main(["solve", "/no/such/file.g"])
    assert code == EXIT_PARSE
    assert "cannot read" in capsys.readouterr().err


def test_no_perfect_matching_exits_two(tmp_path, capsys):
    path = triangles_file(tmp_path)
    assert main(["solve", path]) == EXIT_NO_MATCHING
    capsys.readouterr()
    assert main(["solve", path, "--algorithm", "perturbed"]) == EXIT_NO_MATCHING
    capsys.readouterr()
    code = main(["solve", path, "--algorithm", "naive"])
    out = capsys.readouterr().out
    assert code == EXIT_NO_MATCHING
    assert "stop NoPerfectMatching" in out


def test_iteration_cap_exits_three(capsys):
    code = main(["solve", str(DATA / "dancing_robot.g"), "--max-iter", "1"])
    captured = capsys.readouterr()
    assert code == EXIT_INVARIANT
    assert "invariant violated: IterationCapExceeded" in captured.err


def test_usage_errors_exit_sixtyfour(capsys):
    assert main([]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["solve"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["solve", "x.g", "--algorithm", "nope"]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["gen", "--vertices", "5", "--edges", "4"]) == EXIT_USAGE


def test_trace_schema(tmp_path, capsys):
    trace = tmp_path / "trace.json"
    code = main(["solve", str(DATA / "dancing_robot.g"), "--trace", str(trace)])
    capsys.readouterr()
    assert code == EXIT_OK
    doc = json.loads(trace.read_text(encoding="utf-8"))
    assert doc["algorithm"] == "unperturbed"
    assert doc["cost"] == 8
    assert doc["totalLpSolves"] == 129
    assert sorted(doc) == ["algorithm", "cost", "iterations", "result", "totalLpSolves"]
    assert len(doc["result"]) == 8
    assert all("-" in e for e in doc["result"])
    assert len(doc["iterations"]) == 3
    g, _, exp = dancing_robot()
    for it in doc["iterations"]:
        assert sorted(it) == ["dualStages", "family", "index", "lpSolves", "x"]
        assert it["lpSolves"] == 2 * g.m + 3
        assert len(it["dualStages"]) == g.m + 1
        assert all(isinstance(v, str) for v in it["x"].values())
        for stage in it["dualStages"]:
            assert all(isinstance(v, str) for v in stage.values())
    second = doc["iterations"][1]
    assert second["family"] == [[5, 13, 15], [10, 11, 14]]
    assert second["x"]["13-15"] == "1/2"
    assert second["x"]["2-6"] == "1"
    # Set potentials key by their sorted vertices joined with plus signs.
    assert "5+13+15" in second["dualStages"][0]


def test_naive_trace_fields(tmp_path, capsys):
    trace = tmp_path / "trace.json"
    code = main(
        ["solve", str(DATA / "cycling.g"), "--algorithm", "naive", "--trace", str(trace)]
    )
    capsys.readouterr()
    assert code == EXIT_OK
    doc = json.loads(trace.read_text(encoding="utf-8"))
    assert doc["algorithm"] == "naive"
    assert doc["result"] == "CyclingDetected"
    assert doc["cost"] is None
    assert doc["repeatOf"] == 2
    assert doc["detail"] == "iteration 4 repeats iteration 2"
    assert len(doc["iterations"]) == 4


def test_gen_to_stdout_parses_and_solves(tmp_path, capsys):
    code = main(["gen", "--vertices", "8", "--edges", "12", "--seed", "42"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    path = write(tmp_path, "gen.g", out)
    assert main(["solve", path, "--validate"]) == EXIT_OK


def test_gen_deterministic_and_to_file(tmp_path, capsys):
    first = tmp_path / "a.g"
    second = tmp_path / "b.g"
    assert main(["gen", "--vertices", "6", "--edges", "9", "--seed", "7",
                 "--output", str(first)]) == EXIT_OK
    assert main(["gen", "--vertices", "6", "--edges", "9", "--seed", "7",
                 "--output", str(second)]) == EXIT_OK
    capsys.readouterr()
    assert first.read_text() == second.read_text()
    assert "p edge 6 9" in first.read_text()
