"""
LP Solver
Exact two-phase simplex (Bland's rule) and depth-first branch-and-bound over Fractions
"""

import logging
from fractions import Fraction
from math import ceil, floor
from typing import Dict, List, Optional, Sequence, Tuple

from icbound.config import settings
from icbound.core.exceptions import BudgetExceeded, Infeasible, Unbounded
from icbound.models.program import LinearProgram, LPSolution, Relation, Sense

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)

Row = Tuple[Tuple[Tuple[int, Fraction], ...], Fraction]


class _Tableau:
    """
    Dense tableau for min c.x s.t. A x = b, x >= 0, b >= 0

    Columns [0, n_real) are structural or slack, the rest artificial. `z` holds the reduced
    costs of the current objective and `z0` its negated value.
    """

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int], n_real: int):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.n_real = n_real
        self.width = len(rows[0]) if rows else n_real
        self.z: List[Fraction] = [ZERO] * self.width
        self.z0 = ZERO
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        z = list(cost) + [ZERO] * (self.width - len(cost))
        z0 = ZERO
        for i, b in enumerate(self.basis):
            cb = z[b]
            if cb:
                row = self.rows[i]
                for j in range(self.width):
                    if row[j]:
                        z[j] -= cb * row[j]
                z0 -= cb * self.rhs[i]
        self.z, self.z0 = z, z0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = ONE / row[c]
        if inv != ONE:
            row[:] = [a * inv if a else a for a in row]
            self.rhs[r] *= inv
        nonzero = [j for j in range(self.width) if row[j]]
        for i, other in enumerate(self.rows):
            f = other[c]
            if i == r or not f:
                continue
            for j in nonzero:
                other[j] -= f * row[j]
            self.rhs[i] -= f * self.rhs[r]
        f = self.z[c]
        if f:
            for j in nonzero:
                self.z[j] -= f * row[j]
            self.z0 -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def run(self, columns: int) -> bool:
        """Bland's rule on the first `columns` columns; False when unbounded"""
        while True:
            entering = next((j for j in range(columns) if self.z[j] < 0), None)
            if entering is None:
                return True
            best: Optional[Tuple[Fraction, int, int]] = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i], i)
                    if best is None or key < best:
                        best = key
            if best is None:
                return False
            self.pivot(best[2], entering)

    def drop_artificials(self) -> None:
        """Pivot basic artificials out at level zero; rows where that fails are redundant"""
        keep = []
        for i in range(len(self.rows)):
            if self.basis[i] < self.n_real:
                keep.append(i)
                continue
            col = next((j for j in range(self.n_real) if self.rows[i][j]), None)
            if col is not None:
                self.pivot(i, col)
                keep.append(i)
        self.rows = [self.rows[i][: self.n_real] for i in keep]
        self.rhs = [self.rhs[i] for i in keep]
        self.basis = [self.basis[i] for i in keep]
        self.z = self.z[: self.n_real]
        self.width = self.n_real

    def values(self, n: int) -> List[Fraction]:
        x = [ZERO] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[i]
        return x


def _standard_rows(
    program: LinearProgram, extra: Sequence[Row]
) -> List[Tuple[Dict[int, Fraction], Relation, Fraction]]:
    """Constraints plus upper bounds and branching rows, equalities split in two"""
    rows = []
    for con in program.constraints:
        coeffs = dict(con.coefficients)
        if con.relation == Relation.EQ:
            rows.append((coeffs, Relation.LE, con.rhs))
            rows.append((coeffs, Relation.GE, con.rhs))
        else:
            rows.append((coeffs, con.relation, con.rhs))
    for j, u in sorted(program.upper.items()):
        rows.append(({j: ONE}, Relation.LE, u))
    for coefficients, rhs in extra:
        coeffs = dict(coefficients)
        rows.append((coeffs, Relation.LE, rhs))
    return rows


def _build(program: LinearProgram, extra: Sequence[Row]) -> _Tableau:
    n = program.n
    rows = _standard_rows(program, extra)
    normalized = []
    for coeffs, relation, rhs in rows:
        if rhs < 0:
            coeffs = {j: -c for j, c in coeffs.items()}
            rhs = -rhs
            relation = Relation.GE if relation == Relation.LE else Relation.LE
        normalized.append((coeffs, relation, rhs))

    n_slack = len(normalized)
    n_art = sum(1 for _, relation, _ in normalized if relation == Relation.GE)
    n_real = n + n_slack
    width = n_real + n_art
    table, rhs_col, basis = [], [], []
    art = n_real
    for i, (coeffs, relation, rhs) in enumerate(normalized):
        row = [ZERO] * width
        for j, c in coeffs.items():
            row[j] = c
        if relation == Relation.LE:
            row[n + i] = ONE
            basis.append(n + i)
        else:
            row[n + i] = -ONE
            row[art] = ONE
            basis.append(art)
            art += 1
        table.append(row)
        rhs_col.append(rhs)
    return _Tableau(table, rhs_col, basis, n_real)


def _solve_relaxation(program: LinearProgram, extra: Sequence[Row] = ()) -> LPSolution:
    tableau = _build(program, extra)
    if tableau.width > tableau.n_real:
        tableau.set_objective([ZERO] * tableau.n_real + [ONE] * (tableau.width - tableau.n_real))
        tableau.run(tableau.width)
        if tableau.z0 != 0:
            raise Infeasible(f"Phase one ends at {-tableau.z0} > 0")
        tableau.drop_artificials()

    sign = ONE if program.sense == Sense.MIN else -ONE
    tableau.set_objective([sign * c for c in program.objective])
    if not tableau.run(tableau.n_real):
        raise Unbounded("Objective is unbounded on the feasible region")
    x = tableau.values(program.n)
    logger.debug(f"Simplex: {tableau.pivots} pivots, value {program.evaluate(x)}")
    return LPSolution(value=program.evaluate(x), x=tuple(x))


def check_feasible(program: LinearProgram, x: Sequence[Fraction], integral: bool = False) -> bool:
    """
    Exact recheck of an assignment

    Args:
        program: Program
        x: Assignment, one value per variable
        integral: Also require the flagged variables to be integers

    Returns:
        True iff nonnegativity, upper bounds, constraints (and integrality) hold
    """
    if len(x) != program.n:
        return False
    if any(v < 0 for v in x):
        return False
    if any(x[j] > u for j, u in program.upper.items()):
        return False
    if integral and any(Fraction(x[j]).denominator != 1 for j in program.integral):
        return False
    return all(con.satisfied(x) for con in program.constraints)


def lp_solve(program: LinearProgram) -> LPSolution:
    """
    Exact optimum of the relaxation (integrality flags ignored)

    Raises:
        Infeasible: If no assignment satisfies the constraints
        Unbounded: If the objective is unbounded
    """
    solution = _solve_relaxation(program)
    if not check_feasible(program, solution.x):
        raise ArithmeticError("Simplex returned an infeasible assignment")  # pragma: no cover
    logger.debug(f"LP with {program.n} variables: optimum {solution.value}")
    return solution


def _most_fractional(program: LinearProgram, x: Sequence[Fraction]) -> Optional[int]:
    best, best_gap = None, None
    half = Fraction(1, 2)
    for j in sorted(program.integral):
        frac = x[j] - floor(x[j])
        if frac:
            gap = abs(frac - half)
            if best_gap is None or gap < best_gap:
                best, best_gap = j, gap
    return best


def _integral_objective(program: LinearProgram) -> bool:
    return all(c.denominator == 1 and (not c or j in program.integral) for j, c in enumerate(program.objective))


def ilp_solve(program: LinearProgram, budget: Optional[int] = None) -> LPSolution:
    """
    Exact optimum with the flagged variables integral

    Depth-first branch-and-bound on the most fractional variable (ties by lowest index),
    floor branch first; nodes whose relaxation cannot beat the incumbent are pruned.

    Args:
        program: Program
        budget: Node budget (default: ILP_NODE_BUDGET)

    Returns:
        LPSolution with the node count

    Raises:
        Infeasible: If no integral assignment exists
        Unbounded: If the root relaxation is unbounded
        BudgetExceeded: If more than `budget` nodes are explored
    """
    budget = settings.ILP_NODE_BUDGET if budget is None else budget
    sign = ONE if program.sense == Sense.MIN else -ONE
    rounds = _integral_objective(program)

    incumbent: Optional[LPSolution] = None
    nodes = 0
    stack: List[Tuple[Row, ...]] = [()]
    while stack:
        extra = stack.pop()
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"Branch-and-bound passed {budget} nodes")
        try:
            relaxed = _solve_relaxation(program, extra)
        except Infeasible:
            continue
        except Unbounded:
            if nodes == 1:
                raise
            continue
        bound = sign * relaxed.value
        if rounds:
            bound = Fraction(ceil(bound))
        if incumbent is not None and bound >= sign * incumbent.value:
            continue
        j = _most_fractional(program, relaxed.x)
        if j is None:
            incumbent = relaxed
            logger.debug(f"Branch-and-bound incumbent {relaxed.value} at node {nodes}")
            continue
        down = (((j, ONE),), Fraction(floor(relaxed.x[j])))
        up = (((j, -ONE),), -Fraction(ceil(relaxed.x[j])))
        stack.append(extra + (up,))
        stack.append(extra + (down,))

    if incumbent is None:
        raise Infeasible("No integral assignment satisfies the constraints")
    if not check_feasible(program, incumbent.x, integral=True):
        raise ArithmeticError("Branch-and-bound returned an infeasible assignment")  # pragma: no cover
    logger.debug(f"ILP with {program.n} variables: optimum {incumbent.value} after {nodes} nodes")
    return LPSolution(value=incumbent.value, x=incumbent.x, nodes=nodes)
