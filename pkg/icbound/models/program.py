"""
Program Models
Linear and integer programs over exact rationals
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Set, Tuple, Union

Number = Union[int, Fraction]


class Sense(str, enum.Enum):
    """Optimisation direction"""
    MIN = "min"
    MAX = "max"


class Relation(str, enum.Enum):
    """Constraint relation"""
    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class Constraint:
    """sum_j coefficients[j] x_j (relation) rhs; variables are indices into the program"""

    coefficients: Tuple[Tuple[int, Fraction], ...]
    relation: Relation
    rhs: Fraction
    name: str = ""

    def lhs(self, x) -> Fraction:
        return sum((c * x[j] for j, c in self.coefficients), Fraction(0))

    def satisfied(self, x) -> bool:
        value = self.lhs(x)
        if self.relation == Relation.LE:
            return value <= self.rhs
        if self.relation == Relation.GE:
            return value >= self.rhs
        return value == self.rhs


@dataclass
class LinearProgram:
    """
    Program over nonnegative variables with optional upper bounds and integrality flags

    Built incrementally with add_variable / add_constraint.
    """

    sense: Sense = Sense.MIN
    names: List[str] = field(default_factory=list)
    objective: List[Fraction] = field(default_factory=list)
    upper: Dict[int, Fraction] = field(default_factory=dict)
    integral: Set[int] = field(default_factory=set)
    constraints: List[Constraint] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.names)

    def add_variable(
        self,
        name: str,
        cost: Number = 0,
        integral: bool = False,
        upper: Optional[Number] = None,
    ) -> int:
        index = len(self.names)
        self.names.append(name)
        self.objective.append(Fraction(cost))
        if integral:
            self.integral.add(index)
        if upper is not None:
            self.upper[index] = Fraction(upper)
        return index

    def add_constraint(
        self,
        coefficients: Mapping[int, Number],
        relation: Relation,
        rhs: Number,
        name: str = "",
    ) -> Constraint:
        for j in coefficients:
            if not 0 <= j < self.n:
                raise IndexError(f"Constraint {name!r} uses unknown variable {j}")
        constraint = Constraint(
            coefficients=tuple(sorted((j, Fraction(c)) for j, c in coefficients.items() if c)),
            relation=Relation(relation),
            rhs=Fraction(rhs),
            name=name,
        )
        self.constraints.append(constraint)
        return constraint

    def evaluate(self, x) -> Fraction:
        return sum((c * x[j] for j, c in enumerate(self.objective)), Fraction(0))

    def relaxed(self) -> "LinearProgram":
        """Copy with every integrality flag dropped"""
        return LinearProgram(
            sense=self.sense,
            names=list(self.names),
            objective=list(self.objective),
            upper=dict(self.upper),
            integral=set(),
            constraints=list(self.constraints),
        )


@dataclass(frozen=True)
class LPSolution:
    """Optimal value and assignment; `nodes` counts branch-and-bound nodes (0 for an LP)"""

    value: Fraction
    x: Tuple[Fraction, ...]
    nodes: int = 0

    def named(self, program: LinearProgram) -> Dict[str, Fraction]:
        """Nonzero variables by name"""
        return {program.names[j]: v for j, v in enumerate(self.x) if v}
