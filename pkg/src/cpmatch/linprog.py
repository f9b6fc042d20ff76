"""Exact-rational linear programs and a deterministic two-phase simplex.

Models are row-oriented: named variables (nonnegative or free), an objective
with a sense, and relational rows over the variables. solve() returns both a
primal optimum and a matching dual vector, all in exact rationals, and checks
the certificate (feasibility, complementary slackness, strong duality) on
every call before handing it back.

Pivot selection is Bland's rule (lowest eligible index), so runs are
reproducible and cycling is impossible. Free variables participate directly:
a free variable may enter in either direction and never leaves the basis,
which bounds its pivots and preserves termination.

Dual sign conventions, for a minimization problem:
    >= row: y >= 0,  <= row: y <= 0,  = row: y free,
and for every variable, c_j - y.A_j >= 0 (nonnegative) or == 0 (free).
For maximization the signs flip (``<=`` rows carry y >= 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import InvariantViolation
from .rationals import R0, R1, Rational, rat

MIN = "min"
MAX = "max"
LE = "<="
EQ = "="
GE = ">="

_RELATIONS = (LE, EQ, GE)


class LinearProgramError(ValueError):
    """Malformed model: unknown variable, duplicate name or row id, bad sense."""


class SolverInvariantError(InvariantViolation):
    """The solver produced a certificate that fails exact verification."""


@dataclass(frozen=True)
class Variable:
    name: Hashable
    nonnegative: bool = True


@dataclass(frozen=True)
class Row:
    id: Hashable
    coeffs: Mapping[Hashable, Any]
    relation: str
    rhs: Any


class LinearProgram:
    """An immutable exact-rational LP in row form."""

    def __init__(
        self,
        sense: str,
        variables: Iterable[Variable | tuple[Hashable, bool] | Hashable],
        objective: Mapping[Hashable, Any],
        rows: Iterable[Row | tuple],
    ):
        if sense not in (MIN, MAX):
            raise LinearProgramError(f"unknown sense {sense!r}")
        self.sense = sense

        self.variables: list[Variable] = []
        for spec in variables:
            if isinstance(spec, Variable):
                var = spec
            elif isinstance(spec, tuple) and len(spec) == 2 and isinstance(spec[1], bool):
                var = Variable(spec[0], spec[1])
            else:
                var = Variable(spec, True)
            self.variables.append(var)
        names = [v.name for v in self.variables]
        self._index = {name: j for j, name in enumerate(names)}
        if len(self._index) != len(names):
            raise LinearProgramError("duplicate variable name")

        self.objective = {name: rat(c) for name, c in objective.items()}
        for name in self.objective:
            if name not in self._index:
                raise LinearProgramError(f"objective references unknown variable {name!r}")

        self.rows: list[Row] = []
        seen_ids = set()
        for spec in rows:
            row = spec if isinstance(spec, Row) else Row(*spec)
            if row.relation not in _RELATIONS:
                raise LinearProgramError(f"unknown relation {row.relation!r} in row {row.id!r}")
            coeffs = {name: rat(c) for name, c in row.coeffs.items()}
            for name in coeffs:
                if name not in self._index:
                    raise LinearProgramError(
                        f"row {row.id!r} references unknown variable {name!r}"
                    )
            row = Row(row.id, coeffs, row.relation, rat(row.rhs))
            if row.id in seen_ids:
                raise LinearProgramError(f"duplicate row id {row.id!r}")
            seen_ids.add(row.id)
            self.rows.append(row)

    def variable_index(self, name: Hashable) -> int:
        return self._index[name]

    def is_nonnegative(self, name: Hashable) -> bool:
        return self.variables[self._index[name]].nonnegative


@dataclass(frozen=True)
class Optimal:
    status = "optimal"
    x: dict
    y: dict
    objective: Rational


@dataclass(frozen=True)
class Infeasible:
    status = "infeasible"


@dataclass(frozen=True)
class Unbounded:
    status = "unbounded"


LPOutcome = Optimal | Infeasible | Unbounded


def solve(lp: LinearProgram, verify: bool = True) -> LPOutcome:
    """Solve exactly; on Optimal the (x, y, objective) certificate is verified."""
    outcome = _simplex(lp)
    if verify and isinstance(outcome, Optimal):
        verify_certificate(lp, outcome)
    return outcome


def _simplex(lp: LinearProgram) -> LPOutcome:
    nvar = len(lp.variables)
    minimize = lp.sense == MIN
    cost = [R0] * nvar
    for name, c in lp.objective.items():
        cost[lp.variable_index(name)] = c if minimize else -c

    # Standard form: append a slack per inequality, scale rhs nonnegative,
    # then give every row an identity column (reusing the slack when it
    # already is +e_i, otherwise adding an artificial).
    m = len(lp.rows)
    dense_rows: list[list[Rational]] = []
    rhs: list[Rational] = []
    flips: list[bool] = []
    for row in lp.rows:
        vec = [R0] * nvar
        for name, c in row.coeffs.items():
            vec[lp.variable_index(name)] = c
        flip = row.rhs < 0
        if flip:
            vec = [-c for c in vec]
        dense_rows.append(vec)
        rhs.append(-row.rhs if flip else row.rhs)
        flips.append(flip)

    nonneg = [v.nonnegative for v in lp.variables]
    slack_col: list[int | None] = [None] * m
    for i, row in enumerate(lp.rows):
        if row.relation == EQ:
            continue
        sign = R1 if row.relation == LE else -R1
        if flips[i]:
            sign = -sign
        col = len(nonneg)
        slack_col[i] = col
        nonneg.append(True)
        for k in range(m):
            dense_rows[k].append(sign if k == i else R0)

    identity_col: list[int] = [0] * m
    artificial: set[int] = set()
    basis: list[int] = [0] * m
    for i in range(m):
        j = slack_col[i]
        if j is not None and dense_rows[i][j] == R1:
            identity_col[i] = j
        else:
            col = len(nonneg)
            nonneg.append(True)
            artificial.add(col)
            for k in range(m):
                dense_rows[k].append(R1 if k == i else R0)
            identity_col[i] = col
    ncols = len(nonneg)

    tableau = [dense_rows[i] + [rhs[i]] for i in range(m)]
    for i in range(m):
        basis[i] = identity_col[i]
    in_basis = [False] * ncols
    for j in basis:
        in_basis[j] = True

    def pivot(r: int, j: int, zrow: list[Rational]) -> None:
        prow = tableau[r]
        piv = prow[j]
        if piv != R1:
            tableau[r] = prow = [v / piv for v in prow]
        for row in tableau:
            if row is prow:
                continue
            f = row[j]
            if f:
                row[:] = [a - f * b for a, b in zip(row, prow)]
        f = zrow[j]
        if f:
            zrow[:] = [a - f * b for a, b in zip(zrow, prow)]
        in_basis[basis[r]] = False
        in_basis[j] = True
        basis[r] = j

    def reduced_costs(costvec: list[Rational]) -> list[Rational]:
        z = list(costvec) + [R0]
        for i, b in enumerate(basis):
            cb = costvec[b]
            if cb:
                row = tableau[i]
                z[:] = [a - cb * t for a, t in zip(z, row)]
        return z

    def run(zrow: list[Rational], banned: set[int]) -> str:
        while True:
            enter = -1
            direction = R1
            for j in range(ncols):
                if in_basis[j] or j in banned:
                    continue
                rc = zrow[j]
                if nonneg[j]:
                    if rc < R0:
                        enter, direction = j, R1
                        break
                elif rc:
                    enter = j
                    direction = R1 if rc < R0 else -R1
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i in range(m):
                if not nonneg[basis[i]]:
                    continue
                t = direction * tableau[i][enter]
                if t > R0:
                    ratio = tableau[i][-1] / t
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter, zrow)

    # Phase 1: drive the artificial variables to zero.
    if artificial:
        phase1 = [R1 if j in artificial else R0 for j in range(ncols)]
        z = reduced_costs(phase1)
        status = run(z, banned=set())
        if status == "unbounded":
            raise SolverInvariantError("phase-1 objective cannot be unbounded")
        total = sum((tableau[i][-1] for i in range(m) if basis[i] in artificial), R0)
        if total != R0:
            return Infeasible()
        for i in range(m):
            if basis[i] not in artificial:
                continue
            for j in range(ncols):
                if j in artificial or in_basis[j]:
                    continue
                if tableau[i][j]:
                    pivot(i, j, z)
                    break
            # A row with no eligible pivot column is redundant; its
            # artificial stays basic at value zero and never re-enters.

    # Phase 2 on the real objective, artificials banned from entering.
    z = reduced_costs(cost + [R0] * (ncols - nvar))
    status = run(z, banned=artificial)
    if status == "unbounded":
        return Unbounded()

    xvals = [R0] * ncols
    for i, b in enumerate(basis):
        xvals[b] = tableau[i][-1]
    x = {v.name: xvals[j] for j, v in enumerate(lp.variables)}

    y = {}
    for i, row in enumerate(lp.rows):
        yi = -z[identity_col[i]]
        if flips[i]:
            yi = -yi
        if not minimize:
            yi = -yi
        y[row.id] = yi

    objective = sum((lp.objective[name] * x[name] for name in lp.objective), R0)
    return Optimal(x=x, y=y, objective=objective)


def verify_certificate(lp: LinearProgram, opt: Optimal) -> None:
    """Exact optimality check: feasibility both sides, CS, strong duality."""
    x, y = opt.x, opt.y
    minimize = lp.sense == MIN
    for var in lp.variables:
        if var.name not in x:
            raise SolverInvariantError(f"missing primal value for {var.name!r}")
        if var.nonnegative and x[var.name] < R0:
            raise SolverInvariantError(f"negative value for {var.name!r}")

    ydotb = R0
    for row in lp.rows:
        lhs = sum((c * x[name] for name, c in row.coeffs.items()), R0)
        ok = lhs == row.rhs if row.relation == EQ else (
            lhs <= row.rhs if row.relation == LE else lhs >= row.rhs
        )
        if not ok:
            raise SolverInvariantError(f"row {row.id!r} violated: {lhs} {row.relation} {row.rhs}")
        yi = y[row.id]
        if row.relation != EQ:
            upper = (row.relation == LE) == minimize
            if upper and yi > R0:
                raise SolverInvariantError(f"dual sign for row {row.id!r}")
            if not upper and yi < R0:
                raise SolverInvariantError(f"dual sign for row {row.id!r}")
        if yi and lhs != row.rhs:
            raise SolverInvariantError(f"complementary slackness fails on row {row.id!r}")
        ydotb += yi * row.rhs

    slack_by_var = {v.name: lp.objective.get(v.name, R0) for v in lp.variables}
    for row in lp.rows:
        yi = y[row.id]
        if yi:
            for name, c in row.coeffs.items():
                slack_by_var[name] -= yi * c
    for var in lp.variables:
        d = slack_by_var[var.name]
        if not var.nonnegative:
            if d != R0:
                raise SolverInvariantError(f"dual constraint for free {var.name!r}")
        else:
            if (d < R0) if minimize else (d > R0):
                raise SolverInvariantError(f"dual constraint for {var.name!r}")
            if x[var.name] and d:
                raise SolverInvariantError(f"complementary slackness fails on {var.name!r}")

    cost = sum((c * x[name] for name, c in lp.objective.items()), R0)
    if cost != opt.objective:
        raise SolverInvariantError("objective value mismatch")
    if ydotb != cost:
        raise SolverInvariantError(f"strong duality fails: {ydotb} != {cost}")
