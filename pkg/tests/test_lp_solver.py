"""
LP Solver Tests
Exact simplex and branch-and-bound over rationals
"""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from icbound.core.exceptions import BudgetExceeded, Infeasible, Unbounded
from icbound.models.program import LinearProgram, Relation, Sense
from icbound.services.lp_solver import check_feasible, ilp_solve, lp_solve


def cycle_cover(n: int, integral: bool = False) -> LinearProgram:
    """Cover the vertices of an n-cycle with its edges"""
    program = LinearProgram()
    for i in range(n):
        program.add_variable(f"e{i}", cost=1, integral=integral)
    for i in range(n):
        program.add_constraint({i: 1, (i - 1) % n: 1}, Relation.GE, 1, name=f"v{i}")
    return program


def random_cover(rng, points: int, sets: int):
    subsets = [{j} for j in range(points)]
    while len(subsets) < sets:
        subsets.append({j for j in range(points) if rng.random() < 0.4} or {0})
    costs = [int(rng.integers(1, 4)) for _ in subsets]
    program = LinearProgram()
    for k, cost in enumerate(costs):
        program.add_variable(f"s{k}", cost=cost, integral=True, upper=1)
    for j in range(points):
        program.add_constraint({k: 1 for k, s in enumerate(subsets) if j in s}, Relation.GE, 1)
    return program, subsets, costs


def brute_force_cover(points: int, subsets, costs) -> int:
    best = None
    for choice in product((0, 1), repeat=len(subsets)):
        covered = set().union(*(s for s, c in zip(subsets, choice) if c))
        if len(covered) == points:
            cost = sum(c for c, chosen in zip(costs, choice) if chosen)
            best = cost if best is None else min(best, cost)
    return best


def random_partition(rng, points: int, extra: int):
    """Exact cover of 0..points-1 by singletons plus random subsets with rational costs"""
    subsets = [frozenset({j}) for j in range(points)]
    extra = min(extra, 2**points - points - 1)
    while len(subsets) < points + extra:
        subset = frozenset(j for j in range(points) if rng.random() < 0.4)
        if len(subset) > 1 and subset not in subsets:
            subsets.append(subset)
    costs = [Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 5))) for _ in subsets]
    program = LinearProgram()
    for k, cost in enumerate(costs):
        program.add_variable(f"s{k}", cost=cost, integral=True, upper=1)
    for j in range(points):
        program.add_constraint({k: 1 for k, s in enumerate(subsets) if j in s}, Relation.EQ, 1, name=f"p{j}")
    return program, subsets, costs


def brute_force_partition(points: int, subsets, costs) -> Fraction:
    """Cheapest partition, enumerating the blocks through the smallest uncovered point"""

    def cheapest(remaining: frozenset) -> Fraction:
        if not remaining:
            return Fraction(0)
        first = min(remaining)
        options = [
            cost + cheapest(remaining - s) for s, cost in zip(subsets, costs) if first in s and s <= remaining
        ]
        return min(options)

    return cheapest(frozenset(range(points)))


class TestSimplex:
    """Test the exact LP relaxation"""

    def test_five_cycle_cover(self):
        """Test the fractional edge cover of C5 is 5/2 at x = 1/2"""
        solution = lp_solve(cycle_cover(5))
        assert solution.value == Fraction(5, 2)
        assert all(v == Fraction(1, 2) for v in solution.x)
        assert solution.nodes == 0

    def test_maximise(self):
        """Test a two-variable maximisation with a fractional vertex"""
        program = LinearProgram(sense=Sense.MAX)
        x = program.add_variable("x", cost=1)
        y = program.add_variable("y", cost=1)
        program.add_constraint({x: 1, y: 2}, Relation.LE, 4)
        program.add_constraint({x: 3, y: 1}, Relation.LE, 6)
        solution = lp_solve(program)
        assert solution.value == Fraction(14, 5)
        assert solution.x == (Fraction(8, 5), Fraction(6, 5))

    def test_equality_and_upper_bound(self):
        """Test equality rows together with variable upper bounds"""
        program = LinearProgram()
        x = program.add_variable("x", cost=1)
        y = program.add_variable("y", cost=0, upper=1)
        program.add_constraint({x: 1, y: 1}, Relation.EQ, Fraction(3, 2))
        solution = lp_solve(program)
        assert solution.value == Fraction(1, 2)
        assert solution.named(program) == {"x": Fraction(1, 2), "y": Fraction(1)}

    def test_infeasible(self):
        """Test contradictory bounds are reported"""
        program = LinearProgram()
        x = program.add_variable("x", cost=1)
        program.add_constraint({x: 1}, Relation.GE, 2)
        program.add_constraint({x: 1}, Relation.LE, 1)
        with pytest.raises(Infeasible):
            lp_solve(program)
        with pytest.raises(Infeasible):
            ilp_solve(program)

    def test_unbounded(self):
        """Test maximising x subject only to x >= 1 is unbounded"""
        program = LinearProgram(sense=Sense.MAX)
        x = program.add_variable("x", cost=1)
        program.add_constraint({x: 1}, Relation.GE, 1)
        with pytest.raises(Unbounded):
            lp_solve(program)
        with pytest.raises(Unbounded):
            ilp_solve(program)

    def test_unknown_variable(self):
        """Test constraints may only use declared variables"""
        program = LinearProgram()
        program.add_variable("x")
        with pytest.raises(IndexError):
            program.add_constraint({3: 1}, Relation.LE, 1)


class TestBranchAndBound:
    """Test integral optima"""

    def test_five_cycle_integral(self):
        """Test the integral edge cover of C5 needs 3 edges"""
        solution = ilp_solve(cycle_cover(5, integral=True))
        assert solution.value == 3
        assert all(v.denominator == 1 for v in solution.x)
        assert solution.nodes >= 1

    def test_integrality_gap(self):
        """Test 2x + 2y >= 3 rounds up to 2"""
        program = LinearProgram()
        x = program.add_variable("x", cost=1, integral=True)
        y = program.add_variable("y", cost=1, integral=True)
        program.add_constraint({x: 2, y: 2}, Relation.GE, 3)
        assert lp_solve(program).value == Fraction(3, 2)
        assert ilp_solve(program).value == 2

    def test_budget(self):
        """Test the node budget stops branching"""
        with pytest.raises(BudgetExceeded):
            ilp_solve(cycle_cover(5, integral=True), budget=1)

    @pytest.mark.parametrize("trial", range(10))
    def test_random_covers_match_brute_force(self, trial):
        """Test branch-and-bound agrees with enumeration on random weighted covers"""
        rng = np.random.default_rng(1000 + trial)
        points = int(rng.integers(3, 6))
        program, subsets, costs = random_cover(rng, points, points + 4)
        solution = ilp_solve(program)
        assert solution.value == brute_force_cover(points, subsets, costs)
        assert check_feasible(program, solution.x, integral=True)

    @pytest.mark.parametrize("trial", range(50))
    def test_random_partitions_match_enumeration(self, trial):
        """Test equality-constrained partition programs against every partition of the ground set"""
        rng = np.random.default_rng(5000 + trial)
        points = int(rng.integers(3, 9))
        program, subsets, costs = random_partition(rng, points, int(rng.integers(2, 9)))
        solution = ilp_solve(program)
        assert solution.value == brute_force_partition(points, subsets, costs)
        assert isinstance(solution.value, Fraction)
        assert check_feasible(program, solution.x, integral=True)
        assert lp_solve(program).value <= solution.value


class TestFeasibilityCheck:
    """Test the exact recheck of assignments"""

    def test_accepts_optimum(self):
        """Test the fractional cover passes and a short vector fails"""
        program = cycle_cover(5)
        assert check_feasible(program, [Fraction(1, 2)] * 5)
        assert not check_feasible(program, [Fraction(1, 2)] * 4)

    def test_rejects_violations(self):
        """Test negative values, uncovered rows, upper bounds and fractional integers"""
        program = cycle_cover(3, integral=True)
        assert not check_feasible(program, [Fraction(-1), Fraction(2), Fraction(2)])
        assert not check_feasible(program, [Fraction(1), Fraction(0), Fraction(0)])
        assert not check_feasible(program, [Fraction(1, 2)] * 3, integral=True)
        bounded = LinearProgram()
        bounded.add_variable("x", upper=1)
        assert not check_feasible(bounded, [Fraction(2)])
