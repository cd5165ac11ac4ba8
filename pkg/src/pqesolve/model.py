"""Atoms, boolean formulas, canonical entailments and systems of entailments."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .poly import Number, Polynomial, Sort, Var, VarKind


class Rel(enum.Enum):
    GE = ">="
    GT = ">"


class Arithmetic(enum.Enum):
    REAL = "real"
    INTEGER = "integer"


@dataclass(frozen=True)
class Atom:
    """``poly >= 0`` or ``poly > 0``."""

    poly: Polynomial
    rel: Rel = Rel.GE

    @property
    def strict(self) -> bool:
        return self.rel is Rel.GT

    def negate(self) -> "Atom":
        # not(p >= 0) <=> -p > 0 ; not(p > 0) <=> -p >= 0
        return Atom(-self.poly, Rel.GE if self.strict else Rel.GT)

    def holds(self, assignment: Mapping[Var, Number]) -> bool:
        value = self.poly.evaluate(assignment)
        return value > 0 if self.strict else value >= 0

    def variables(self) -> set[Var]:
        return self.poly.variables()

    def __str__(self):
        return f"{self.poly} {self.rel.value} 0"


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("And needs at least one child")


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Or needs at least one child")


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


Formula = Union[Atom, And, Or, Not, Implies]


def eval_formula(f: Formula, assignment: Mapping[Var, Number]) -> bool:
    """Evaluate with exact comparisons; raises MissingVariableError on gaps."""
    if isinstance(f, Atom):
        return f.holds(assignment)
    if isinstance(f, And):
        return all(eval_formula(c, assignment) for c in f.children)
    if isinstance(f, Or):
        return any(eval_formula(c, assignment) for c in f.children)
    if isinstance(f, Not):
        return not eval_formula(f.child, assignment)
    if isinstance(f, Implies):
        return (not eval_formula(f.lhs, assignment)) or eval_formula(f.rhs, assignment)
    raise TypeError(f"not a formula: {f!r}")


def formula_atoms(f: Formula) -> list[Atom]:
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, (And, Or)):
        return [a for c in f.children for a in formula_atoms(c)]
    if isinstance(f, Not):
        return formula_atoms(f.child)
    return formula_atoms(f.lhs) + formula_atoms(f.rhs)


def formula_variables(f: Formula) -> set[Var]:
    out: set[Var] = set()
    for a in formula_atoms(f):
        out |= a.variables()
    return out


def map_atoms(f: Formula, fn) -> Formula:
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, And):
        return And(tuple(map_atoms(c, fn) for c in f.children))
    if isinstance(f, Or):
        return Or(tuple(map_atoms(c, fn) for c in f.children))
    if isinstance(f, Not):
        return Not(map_atoms(f.child, fn))
    return Implies(map_atoms(f.lhs, fn), map_atoms(f.rhs, fn))


def nnf(f: Formula, negate: bool = False) -> Formula:
    """Negation normal form with negations absorbed into atoms; no Implies."""
    if isinstance(f, Atom):
        return f.negate() if negate else f
    if isinstance(f, Not):
        return nnf(f.child, not negate)
    if isinstance(f, Implies):
        return nnf(Or((Not(f.lhs), f.rhs)), negate)
    kids = tuple(nnf(c, negate) for c in f.children)
    if isinstance(f, And):
        return Or(kids) if negate else And(kids)
    return And(kids) if negate else Or(kids)


@dataclass(frozen=True)
class CanonicalPQE:
    """forall universal_vars. premises[0] and ... and premises[-1] => conclusion"""

    premises: tuple[Atom, ...]
    conclusion: Atom
    universal_vars: tuple[Var, ...]
    source: int = 0

    def holds_at(self, assignment: Mapping[Var, Number]) -> bool:
        return not all(a.holds(assignment) for a in self.premises) or self.conclusion.holds(assignment)

    def __str__(self):
        lhs = " and ".join(f"({a})" for a in self.premises) or "true"
        xs = ", ".join(v.name for v in self.universal_vars)
        return f"forall {xs}. {lhs} => ({self.conclusion})"


@dataclass(frozen=True)
class Entailment:
    """forall universal_vars. premise => conclusion; ``premise=None`` is true."""

    universal_vars: tuple[Var, ...]
    premise: Optional[Formula]
    conclusion: Formula

    @property
    def matrix(self) -> Formula:
        if self.premise is None:
            return self.conclusion
        return Implies(self.premise, self.conclusion)

    def holds_at(self, assignment: Mapping[Var, Number]) -> bool:
        return eval_formula(self.matrix, assignment)


@dataclass
class PQESystem:
    template_vars: tuple[Var, ...]
    entailments: list[Entailment] = field(default_factory=list)
    arithmetic: Arithmetic = Arithmetic.REAL

    def universal_vars(self) -> list[Var]:
        seen: dict[Var, None] = {}
        for e in self.entailments:
            for v in e.universal_vars:
                seen.setdefault(v, None)
        return list(seen)

    def variable_names(self) -> set[str]:
        return {v.name for v in self.template_vars} | {v.name for v in self.universal_vars()}


def template(name: str, sort: Sort = Sort.REAL) -> Var:
    return Var(name, VarKind.TEMPLATE, sort)


def universal(name: str, sort: Sort = Sort.REAL) -> Var:
    return Var(name, VarKind.UNIVERSAL, sort)


def ge(p, q=0) -> Atom:
    return Atom(Polynomial.const(0) + p - q, Rel.GE)


def gt(p, q=0) -> Atom:
    return Atom(Polynomial.const(0) + p - q, Rel.GT)
