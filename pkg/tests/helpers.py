"""Shared test helpers: random model generators and brute-force oracles.

The oracles here stay independent of the package's own solver paths: plain
fractions.Fraction arithmetic and exhaustive enumeration, nothing reused from
cpmatch.linprog internals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from cpmatch.linprog import EQ, GE, LE, MIN, LinearProgram, Optimal, solve
from cpmatch.perturb import PerturbedPair


def _solve_square(system, n):
    """Solve an n x n rational linear system; None when singular."""
    m = [list(coeffs) + [rhs] for coeffs, rhs in system]
    for col in range(n):
        piv = next((k for k in range(col, n) if m[k][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for k in range(n):
            if k != col and m[k][col]:
                f = m[k][col]
                m[k] = [a - f * b for a, b in zip(m[k], m[col])]
    return [m[i][n] for i in range(n)]


def enumerate_minimum(n, rows, objective):
    """Minimum of a bounded LP over x >= 0 by basic-solution enumeration.

    rows: list of (coeffs, relation, rhs) with relation in {"<=", "=", ">="}.
    Requires a bounded feasible region (the generators below add a box row),
    so every feasible instance attains its optimum at a vertex, and every
    vertex solves some n-subset of active constraints. Returns the exact
    minimum as a Fraction, or None when infeasible.
    """
    pool = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, _, rhs in rows]
    for j in range(n):
        pool.append(([Fraction(int(i == j)) for i in range(n)], Fraction(0)))
    best = None
    for subset in combinations(range(len(pool)), n):
        point = _solve_square([pool[i] for i in subset], n)
        if point is None or any(v < 0 for v in point):
            continue
        feasible = True
        for coeffs, rel, rhs in rows:
            lhs = sum(Fraction(c) * v for c, v in zip(coeffs, point))
            if (rel == "<=" and lhs > rhs) or (rel == ">=" and lhs < rhs) or (
                rel == "=" and lhs != rhs
            ):
                feasible = False
                break
        if not feasible:
            continue
        value = sum(Fraction(c) * v for c, v in zip(objective, point))
        if best is None or value < best:
            best = value
    return best


def random_bounded_lp(rng: random.Random):
    """A small random minimization LP with a box row forcing boundedness.

    Returns (LinearProgram, oracle_rows, objective_list, n). All variables
    nonnegative, so enumerate_minimum is a sound oracle.
    """
    n = rng.randint(2, 4)
    m = rng.randint(1, 4)
    rows = []
    for i in range(m):
        coeffs = [rng.randint(-4, 4) for _ in range(n)]
        rel = rng.choice([LE, LE, GE, GE, EQ])
        rhs = rng.randint(-6, 6)
        rows.append((coeffs, rel, rhs))
    rows.append(([1] * n, LE, rng.randint(3, 10)))
    objective = [rng.randint(-5, 5) for _ in range(n)]

    names = [f"x{j}" for j in range(n)]
    lp = LinearProgram(
        MIN,
        [(name, True) for name in names],
        {name: c for name, c in zip(names, objective)},
        [
            (f"r{i}", {names[j]: c for j, c in enumerate(coeffs) if c}, rel, rhs)
            for i, (coeffs, rel, rhs) in enumerate(rows)
        ],
    )
    return lp, rows, objective, n


def random_perturbed_pair(
    rng: random.Random, max_rows: int = 4, max_cols: int = 5, max_free: int | None = None
) -> PerturbedPair:
    """A random staged-cost pair whose feasible region is a nonempty polytope.

    Feasibility comes from writing b as A applied to a known point minus
    nonnegative slack; boundedness from floor rows on the free columns plus
    one ceiling row on the column sum, so every stage attains its optimum.
    Total row count is max_rows + (number of free columns) + 1; pass max_free
    to bound it.
    """
    ncols = rng.randint(2, max_cols)
    nrows = rng.randint(1, max_rows)
    nonneg = {j for j in range(ncols) if rng.random() < 0.7}
    if max_free is not None:
        while ncols - len(nonneg) > max_free:
            nonneg.add(rng.choice([j for j in range(ncols) if j not in nonneg]))
    a = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(nrows)]
    x0 = [rng.randint(0, 2) if j in nonneg else rng.randint(-1, 2) for j in range(ncols)]
    b = [
        sum(a[i][j] * x0[j] for j in range(ncols)) - rng.randint(0, 2)
        for i in range(nrows)
    ]
    for j in range(ncols):
        if j not in nonneg:
            floor = [0] * ncols
            floor[j] = 1
            a.append(floor)
            b.append(-3)
    a.append([-1] * ncols)
    b.append(-10)
    stages = rng.randint(1, 3) + 1
    costs = [[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(stages)]
    return PerturbedPair.build(a=a, b=b, costs=costs, nonneg=nonneg)


def sequential_stage_minima(pair: PerturbedPair) -> list:
    """Stage optima computed the straightforward way, as an oracle.

    Minimize each stage cost over the intersection of the original rows with
    the equality slices c_q x = z_q of all earlier stages, keeping every
    column throughout. No row or column ever gets dropped, so agreement with
    the drop-based solver is meaningful.
    """
    variables = [(("x", j), j in pair.nonneg) for j in range(pair.ncols)]
    rows = [
        (
            ("row", i),
            {("x", j): pair.a[i][j] for j in range(pair.ncols) if pair.a[i][j]},
            GE,
            pair.b[i],
        )
        for i in range(pair.nrows)
    ]
    minima = []
    for p, cost in enumerate(pair.costs):
        objective = {("x", j): cost[j] for j in range(pair.ncols) if cost[j]}
        out = solve(LinearProgram(MIN, variables, objective, rows))
        assert isinstance(out, Optimal), f"stage {p} oracle came back {out.status}"
        minima.append(out.objective)
        rows = rows + [(("face", p), objective, EQ, out.objective)]
    return minima
