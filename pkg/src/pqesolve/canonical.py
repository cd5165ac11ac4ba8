"""Rewrite entailments with arbitrary boolean structure into canonical PQEs.

Each entailment matrix is put in CNF by plain distribution.  A clause
``q_1 or ... or q_r`` then becomes ``not q_1 and ... and not q_{r-1} => q_r``
where ``q_r`` is the chosen pivot literal and negation is absorbed into atoms.
"""

from __future__ import annotations

import itertools

from .model import And, Atom, CanonicalPQE, Entailment, Formula, nnf
from .poly import VarKind

DEFAULT_CLAUSE_CAP = 512

PIVOT_RULES = ("degree", "last")


class CanonicalizationError(Exception):
    pass


def to_cnf(f: Formula, cap: int = DEFAULT_CLAUSE_CAP) -> list[list[Atom]]:
    return _cnf(nnf(f), cap)


def _cnf(f, cap):
    if isinstance(f, Atom):
        return [[f]]
    if isinstance(f, And):
        out = []
        for c in f.children:
            out.extend(_cnf(c, cap))
            if len(out) > cap:
                raise CanonicalizationError(f"CNF exceeds {cap} clauses")
        return out
    # Or: cartesian product of the children's clause sets
    parts = [_cnf(c, cap) for c in f.children]
    total = 1
    for p in parts:
        total *= len(p)
    if total > cap:
        raise CanonicalizationError(f"CNF exceeds {cap} clauses (distribution would give {total})")
    return [[a for clause in combo for a in clause] for combo in itertools.product(*parts)]


def simplify_clause(clause: list[Atom]) -> list[Atom] | None:
    """Dedup literals and fold variable-free ones.

    Returns None for clauses that are trivially true: those containing both
    q and not q, or a constant literal that holds.  Constant literals that
    fail are dropped, except that an all-false clause keeps one of them.
    """
    seen: dict[Atom, None] = {}
    for a in clause:
        if a.poly.is_constant():
            if a.holds({}):
                return None
            continue
        seen.setdefault(a, None)
    if not seen:
        return clause[:1]
    lits = list(seen)
    present = set(lits)
    if any(a.negate() in present for a in lits):
        return None
    return lits


def _pivot_index(clause: list[Atom], universal, rule: str) -> int:
    if rule == "last":
        return len(clause) - 1
    if rule != "degree":
        raise ValueError(f"unknown pivot rule {rule!r}")

    def key(i):
        p = clause[i].poly
        n_templates = sum(1 for v in p.variables() if v.kind is VarKind.TEMPLATE)
        return (p.degree(universal), n_templates, i)

    return max(range(len(clause)), key=key)


def canonicalize(
    entailment: Entailment,
    source: int = 0,
    pivot_rule: str = "degree",
    simplify: bool = True,
    cap: int = DEFAULT_CLAUSE_CAP,
) -> list[CanonicalPQE]:
    universal = tuple(entailment.universal_vars)
    out = []
    for clause in to_cnf(entailment.matrix, cap):
        if simplify:
            clause = simplify_clause(clause)
            if clause is None:
                continue
        k = _pivot_index(clause, universal, pivot_rule)
        premises = tuple(a.negate() for i, a in enumerate(clause) if i != k)
        out.append(CanonicalPQE(premises, clause[k], universal, source))
    return out


def canonicalize_system(system, pivot_rule: str = "degree", simplify: bool = True) -> list[CanonicalPQE]:
    out = []
    for i, e in enumerate(system.entailments):
        out.extend(canonicalize(e, source=i, pivot_rule=pivot_rule, simplify=simplify))
    return out
