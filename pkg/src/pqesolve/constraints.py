"""Purely existential constraint systems produced by the translators."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Union

from .poly import Monomial, Number, Polynomial, Sort, Var, VarKind


class CRel(enum.Enum):
    GE = ">="
    GT = ">"
    EQ = "="


class AuxOrigin(enum.Enum):
    FARKAS_MULTIPLIER = "FarkasMultiplier"
    HANDELMAN_MULTIPLIER = "HandelmanMultiplier"
    SOS_COEFFICIENT = "SosCoefficient"
    WITNESS_SQUARE_VAR = "WitnessSquareVar"
    UNSAT_MULTIPLIER = "UnsatMultiplier"


@dataclass(frozen=True)
class Constraint:
    poly: Polynomial
    rel: CRel

    def holds(self, assignment: Mapping[Var, Number]) -> bool:
        v = self.poly.evaluate(assignment)
        if self.rel is CRel.GE:
            return v >= 0
        if self.rel is CRel.GT:
            return v > 0
        return v == 0

    def __str__(self):
        return f"{self.poly} {self.rel.value} 0"


@dataclass(frozen=True)
class CAnd:
    children: tuple


@dataclass(frozen=True)
class COr:
    children: tuple


Node = Union[Constraint, CAnd, COr]


def conj(nodes) -> Node:
    nodes = tuple(nodes)
    return nodes[0] if len(nodes) == 1 else CAnd(nodes)


def disj(nodes) -> Node:
    nodes = tuple(nodes)
    return nodes[0] if len(nodes) == 1 else COr(nodes)


def eval_node(node: Node, assignment: Mapping[Var, Number]) -> bool:
    if isinstance(node, Constraint):
        return node.holds(assignment)
    if isinstance(node, CAnd):
        return all(eval_node(c, assignment) for c in node.children)
    return any(eval_node(c, assignment) for c in node.children)


def node_constraints(node: Node) -> list[Constraint]:
    if isinstance(node, Constraint):
        return [node]
    return [c for ch in node.children for c in node_constraints(ch)]


def node_variables(node: Node) -> set[Var]:
    out: set[Var] = set()
    for c in node_constraints(node):
        out |= c.poly.variables()
    return out


def rename_node(node: Node, mapping: Mapping[Var, Var]) -> Node:
    if isinstance(node, Constraint):
        terms = {}
        for m, c in node.poly.terms.items():
            terms[Monomial((mapping.get(v, v), e) for v, e in m.powers)] = c
        return Constraint(Polynomial(terms), node.rel)
    kids = tuple(rename_node(c, mapping) for c in node.children)
    return CAnd(kids) if isinstance(node, CAnd) else COr(kids)


def _first_occurrence(nodes, kinds) -> list[Var]:
    seen: dict[Var, None] = {}

    def walk(n):
        if isinstance(n, Constraint):
            for m, _ in n.poly.items():
                for v, _e in m.powers:
                    if v.kind in kinds:
                        seen.setdefault(v, None)
        else:
            for c in n.children:
                walk(c)

    for n in nodes:
        walk(n)
    return list(seen)


def normalize_names(nodes, prefix: str = "_aux") -> tuple:
    """Rename auxiliary variables to ``_aux0, _aux1, ...`` in order of first use.

    Two translations that differ only in fresh-name allocation normalize to
    equal trees.
    """
    nodes = tuple(nodes)
    order = _first_occurrence(nodes, {VarKind.AUXILIARY})
    mapping = {v: Var(f"{prefix}{i}", VarKind.AUXILIARY, v.sort) for i, v in enumerate(order)}
    return tuple(rename_node(n, mapping) for n in nodes)


class Namer:
    """Deterministic fresh-name allocator avoiding a set of taken names."""

    def __init__(self, taken=()):
        self.taken = set(taken)
        self.counters: dict[str, int] = {}

    def fresh(self, prefix: str, kind: VarKind = VarKind.AUXILIARY, sort: Sort = Sort.REAL) -> Var:
        while True:
            n = self.counters.get(prefix, 0)
            self.counters[prefix] = n + 1
            name = f"{prefix}_{n}"
            if name not in self.taken:
                self.taken.add(name)
                return Var(name, kind, sort)


@dataclass
class AuxVar:
    var: Var
    origin: AuxOrigin
    pqe: int


@dataclass
class ConstraintSystem:
    """Conjunction of top-level nodes over template and auxiliary variables.

    ``handles`` records, per (pqe index, label), the fresh unknowns a
    translation introduced, so certificates can be inspected or injected.
    """

    conjuncts: list = field(default_factory=list)
    conjunct_origin: list = field(default_factory=list)
    aux_vars: list = field(default_factory=list)
    handles: dict = field(default_factory=dict)
    template_vars: tuple = ()
    pqes: list = field(default_factory=list)
    params: object = None

    def add(self, node: Node, pqe: int = -1):
        if isinstance(node, CAnd):
            for c in node.children:
                self.add(c, pqe)
            return
        self.conjuncts.append(node)
        self.conjunct_origin.append(pqe)

    def register(self, var: Var, origin: AuxOrigin, pqe: int):
        self.aux_vars.append(AuxVar(var, origin, pqe))

    def extend(self, other: "ConstraintSystem"):
        self.conjuncts.extend(other.conjuncts)
        self.conjunct_origin.extend(other.conjunct_origin)
        self.aux_vars.extend(other.aux_vars)
        self.handles.update(other.handles)

    @property
    def tree(self) -> CAnd:
        return CAnd(tuple(self.conjuncts))

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for n in self.conjuncts:
            out |= node_variables(n)
        return out

    def declared_vars(self) -> list[Var]:
        """Template vars then auxiliaries, then anything else referenced."""
        seen: dict[Var, None] = {}
        for v in self.template_vars:
            seen.setdefault(v, None)
        for a in self.aux_vars:
            seen.setdefault(a.var, None)
        for v in sorted(self.variables(), key=lambda v: v.key):
            seen.setdefault(v, None)
        return list(seen)

    def origin_of(self, var: Var) -> int:
        for a in self.aux_vars:
            if a.var == var:
                return a.pqe
        raise KeyError(var.name)

    def evaluate(self, assignment: Mapping[Var, Number]) -> list[bool]:
        return [eval_node(n, assignment) for n in self.conjuncts]

    def constraint_count(self) -> int:
        return sum(len(node_constraints(n)) for n in self.conjuncts)

    def prune_aux(self):
        """Drop registered auxiliaries that no constraint mentions."""
        used = self.variables()
        self.aux_vars = [a for a in self.aux_vars if a.var in used]
