"""Theorem selection and translation of a whole system of entailments."""

from __future__ import annotations

import logging

from ..canonical import canonicalize_system
from ..config import Config, Theorem, TheoremParams
from ..constraints import ConstraintSystem, Namer
from ..model import Arithmetic, Atom, CanonicalPQE, Entailment, PQESystem, Rel, map_atoms, nnf
from .farkas import farkas_translate
from .handelman import handelman_translate
from .putinar import putinar_translate

log = logging.getLogger(__name__)


class TranslationError(Exception):
    def __init__(self, index: int, message: str):
        super().__init__(f"PQE {index}: {message}")
        self.index = index


def _degrees(pqe: CanonicalPQE) -> tuple[int, int]:
    X = pqe.universal_vars
    prem = max((a.poly.degree(X) for a in pqe.premises), default=0)
    return prem, pqe.conclusion.poly.degree(X)


def select_theorem(pqe: CanonicalPQE) -> Theorem:
    prem, concl = _degrees(pqe)
    if prem <= 1 and concl <= 1:
        return Theorem.FARKAS
    if prem <= 1:
        return Theorem.HANDELMAN
    return Theorem.PUTINAR


def max_degree(pqes) -> int:
    return max((max(_degrees(p)) for p in pqes), default=0)


def _integerize_atom(a: Atom) -> Atom:
    if a.strict:
        return Atom(a.poly - 1, Rel.GE)
    return a


def integerize(system: PQESystem) -> PQESystem:
    """Replace every strict atom ``p > 0`` by ``p - 1 >= 0``.

    Formulas are first put in negation normal form so that no strict atom can
    reappear through a negation.
    """
    out = []
    for e in system.entailments:
        premise = None if e.premise is None else map_atoms(nnf(e.premise), _integerize_atom)
        conclusion = map_atoms(nnf(e.conclusion), _integerize_atom)
        out.append(Entailment(e.universal_vars, premise, conclusion))
    return PQESystem(system.template_vars, out, Arithmetic.INTEGER)


def integerize_pqe(pqe: CanonicalPQE) -> CanonicalPQE:
    return CanonicalPQE(
        tuple(_integerize_atom(a) for a in pqe.premises),
        _integerize_atom(pqe.conclusion),
        pqe.universal_vars,
        pqe.source,
    )


_TRANSLATORS = {
    Theorem.FARKAS: farkas_translate,
    Theorem.HANDELMAN: handelman_translate,
    Theorem.PUTINAR: putinar_translate,
}


def translate_pqe(pqe: CanonicalPQE, theorem: Theorem, params: TheoremParams, assume_sat: bool,
                  namer: Namer, index: int) -> ConstraintSystem:
    prem, concl = _degrees(pqe)
    if theorem is Theorem.FARKAS and (prem > 1 or concl > 1):
        raise TranslationError(index, "Farkas' lemma needs linear premises and conclusion")
    if theorem is Theorem.HANDELMAN and prem > 1:
        raise TranslationError(index, "Handelman's theorem needs linear premises")
    return _TRANSLATORS[theorem](pqe, params, assume_sat=assume_sat, namer=namer, index=index)


def effective_arithmetic(system: PQESystem, config: Config) -> Arithmetic:
    return config.arithmetic or system.arithmetic


def translate_system(system: PQESystem, config: Config | None = None) -> ConstraintSystem:
    """Canonicalize and eliminate universal quantifiers from every entailment."""
    config = config or Config()
    integer = effective_arithmetic(system, config) is Arithmetic.INTEGER
    if integer:
        system = integerize(system)
    pqes = canonicalize_system(system, pivot_rule=config.pivot_rule)
    if integer:
        pqes = [integerize_pqe(p) for p in pqes]
    params = config.params.resolved(max_degree(pqes))
    namer = Namer(system.variable_names())

    cs = ConstraintSystem(template_vars=tuple(system.template_vars), pqes=pqes)
    for i, pqe in enumerate(pqes):
        theorem = select_theorem(pqe) if config.theorem is Theorem.AUTO else config.theorem
        log.debug("PQE %d (%s): %s", i, theorem.value, pqe)
        cs.extend(translate_pqe(pqe, theorem, params, config.assume_sat, namer, i))
    cs.params = params
    return cs
