"""Lexicographically minimal optimum of an LP, by repeated exact solves.

Stage 0 finds the optimal value; the objective is then frozen as an equality
row and each variable, visited in the caller's order, is minimized and pinned
in turn. That is one solve per variable plus one, always: later stages are
never skipped even when a value is already forced, so the solve count is a
fixed function of the model size. The result is the unique point of the
optimal face that is lexicographically smallest in the given variable order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

from .linprog import EQ, MIN, LinearProgram, Optimal, Row, solve
from .rationals import R1, Rational


@dataclass(frozen=True)
class LexMinResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: dict | None
    objective: Rational | None
    lp_solves: int


def lex_min_optimal(lp: LinearProgram, order: Sequence[Hashable]) -> LexMinResult:
    """Lexicographic minimum over the optimal face, in `order`.

    `order` must enumerate every variable exactly once. Infeasible or
    unbounded models propagate as a LexMinResult with that status.
    """
    names = [v.name for v in lp.variables]
    if len(order) != len(names) or set(order) != set(names):
        raise ValueError("order must be a permutation of the model's variables")

    first = solve(lp)
    solves = 1
    if not isinstance(first, Optimal):
        return LexMinResult(first.status, None, None, solves)

    rows = list(lp.rows)
    rows.append(Row(("lex", "objective"), dict(lp.objective), EQ, first.objective))
    values: dict = {}
    for name in order:
        stage = LinearProgram(MIN, lp.variables, {name: R1}, rows)
        out = solve(stage)
        solves += 1
        if not isinstance(out, Optimal):
            # The face is nonempty, so only unboundedness can occur here
            # (a free variable with no floor on the optimal face).
            return LexMinResult(out.status, None, None, solves)
        values[name] = out.x[name]
        rows.append(Row(("lex", "fix", name), {name: R1}, EQ, values[name]))
    return LexMinResult("optimal", values, first.objective, solves)
