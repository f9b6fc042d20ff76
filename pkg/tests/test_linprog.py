"""Tests for the exact two-phase simplex."""

import random

import pytest

from helpers import enumerate_minimum, random_bounded_lp

from cpmatch.linprog import (
    EQ,
    GE,
    LE,
    MAX,
    MIN,
    Infeasible,
    LinearProgram,
    LinearProgramError,
    Optimal,
    SolverInvariantError,
    Unbounded,
    solve,
    verify_certificate,
)
from cpmatch.rationals import rat


def test_single_bound_row():
    lp = LinearProgram(MIN, ["x"], {}, [("r", {"x": 1}, GE, 5)])
    out = solve(lp)
    assert isinstance(out, Optimal)
    assert out.objective == 0
    assert out.x["x"] == 5


def test_two_inequality_rows_with_free_variable():
    # min x1 + x2 + 3*x3, x1 + x3 >= 1, x2 + 2*x3 >= 1, x3 free
    lp = LinearProgram(
        MIN,
        [("x1", True), ("x2", True), ("x3", False)],
        {"x1": 1, "x2": 1, "x3": 3},
        [
            ("r1", {"x1": 1, "x3": 1}, GE, 1),
            ("r2", {"x2": 1, "x3": 2}, GE, 1),
        ],
    )
    out = solve(lp)
    assert out.x == {"x1": rat(1), "x2": rat(1), "x3": rat(0)}
    assert out.y == {"r1": rat(1), "r2": rat(1)}
    assert out.objective == 2


def test_equality_rows_force_free_variable_into_basis():
    # Same rows as equalities, costs chosen so the free variable must move.
    lp = LinearProgram(
        MIN,
        [("x1", True), ("x2", True), ("x3", False)],
        {"x1": 4, "x2": 2, "x3": 0},
        [
            ("r1", {"x1": 1, "x3": 1}, EQ, 1),
            ("r2", {"x2": 1, "x3": 2}, EQ, 1),
        ],
    )
    out = solve(lp)
    assert out.x == {"x1": rat(1, 2), "x2": rat(0), "x3": rat(1, 2)}
    assert out.y == {"r1": rat(4), "r2": rat(-2)}
    assert out.objective == 2


def test_square_equality_system_duals():
    # Fully determined system: x1 + x3 = 1, 2*x3 = 1.
    lp = LinearProgram(
        MIN,
        [("x1", True), ("x3", False)],
        {"x1": -2, "x3": 1},
        [
            ("r1", {"x1": 1, "x3": 1}, EQ, 1),
            ("r2", {"x3": 2}, EQ, 1),
        ],
    )
    out = solve(lp)
    assert out.x == {"x1": rat(1, 2), "x3": rat(1, 2)}
    assert out.y == {"r1": rat(-2), "r2": rat(3, 2)}
    assert out.objective == rat(-1, 2)


def test_max_sense_duals_flip_sign():
    lp = LinearProgram(
        MAX,
        ["x", "y"],
        {"x": 1, "y": 2},
        [
            ("cap", {"x": 1, "y": 1}, LE, 4),
            ("ycap", {"y": 1}, LE, 3),
        ],
    )
    out = solve(lp)
    assert out.objective == 7
    assert out.x == {"x": rat(1), "y": rat(3)}
    assert out.y["cap"] >= 0 and out.y["ycap"] >= 0


def test_infeasible():
    lp = LinearProgram(
        MIN,
        ["x"],
        {"x": 1},
        [("lo", {"x": 1}, GE, 2), ("hi", {"x": 1}, LE, 1)],
    )
    assert isinstance(solve(lp), Infeasible)


def test_unbounded():
    lp = LinearProgram(MIN, ["x"], {"x": -1}, [("lo", {"x": 1}, GE, 0)])
    assert isinstance(solve(lp), Unbounded)


def test_unbounded_free_variable_direction():
    lp = LinearProgram(MIN, [("x", False)], {"x": 1}, [])
    assert isinstance(solve(lp), Unbounded)


def test_free_variable_settles_negative():
    lp = LinearProgram(MIN, [("x", False)], {"x": 1}, [("lo", {"x": 1}, GE, -3)])
    out = solve(lp)
    assert out.x["x"] == -3
    assert out.objective == -3


def test_negative_rhs_rows_are_scaled():
    # -x - y <= -2 is x + y >= 2 in disguise.
    lp = LinearProgram(
        MIN,
        ["x", "y"],
        {"x": 3, "y": 5},
        [("r", {"x": -1, "y": -1}, LE, -2)],
    )
    out = solve(lp)
    assert out.objective == 6
    assert out.x == {"x": rat(2), "y": rat(0)}


def test_redundant_equality_rows_get_zero_dual():
    lp = LinearProgram(
        MIN,
        ["x", "y"],
        {"x": 1, "y": 1},
        [
            ("r1", {"x": 1, "y": 1}, EQ, 2),
            ("r2", {"x": 2, "y": 2}, EQ, 4),
        ],
    )
    out = solve(lp)
    assert out.objective == 2
    assert out.y["r1"] * 1 + out.y["r2"] * 2 == 1


def test_determinism_same_model_same_certificate():
    rng = random.Random(7)
    for _ in range(25):
        lp, _, _, _ = random_bounded_lp(rng)
        a = solve(lp)
        b = solve(lp)
        assert type(a) is type(b)
        if isinstance(a, Optimal):
            assert a.x == b.x
            assert a.y == b.y
            assert a.objective == b.objective


def test_validation_rejects_bad_models():
    with pytest.raises(LinearProgramError):
        LinearProgram(MIN, ["x", "x"], {}, [])
    with pytest.raises(LinearProgramError):
        LinearProgram(MIN, ["x"], {"z": 1}, [])
    with pytest.raises(LinearProgramError):
        LinearProgram(MIN, ["x"], {}, [("r", {"z": 1}, GE, 0)])
    with pytest.raises(LinearProgramError):
        LinearProgram(MIN, ["x"], {}, [("r", {"x": 1}, "<", 0)])
    with pytest.raises(LinearProgramError):
        LinearProgram(MIN, ["x"], {}, [("r", {"x": 1}, GE, 0), ("r", {"x": 1}, GE, 1)])
    with pytest.raises(LinearProgramError):
        LinearProgram("argmin", ["x"], {}, [])


def test_verification_rejects_tampered_certificate():
    lp = LinearProgram(MIN, ["x"], {"x": 1}, [("r", {"x": 1}, GE, 1)])
    out = solve(lp)
    bad = Optimal(x={"x": rat(2)}, y=out.y, objective=out.objective)
    with pytest.raises(SolverInvariantError):
        verify_certificate(lp, bad)
    bad = Optimal(x=out.x, y={"r": rat(-1)}, objective=out.objective)
    with pytest.raises(SolverInvariantError):
        verify_certificate(lp, bad)


def test_random_models_match_enumeration():
    rng = random.Random(20260814)
    optimal = infeasible = 0
    for _ in range(150):
        lp, rows, objective, n = random_bounded_lp(rng)
        out = solve(lp)
        expected = enumerate_minimum(n, rows, objective)
        if expected is None:
            assert isinstance(out, Infeasible)
            infeasible += 1
        else:
            assert isinstance(out, Optimal)
            assert out.objective == expected
            optimal += 1
    assert optimal >= 50
    assert infeasible >= 10
