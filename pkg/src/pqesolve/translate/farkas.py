"""Farkas' lemma: linear premises, linear conclusion."""

from __future__ import annotations

from ..constraints import AuxOrigin, Constraint, ConstraintSystem, CRel, Namer, conj, disj
from ..model import CanonicalPQE
from ..poly import Polynomial


def match_identity(target: Polynomial, combination: Polynomial, vars) -> list[Constraint]:
    """Equalities forcing ``combination == target`` identically in ``vars``."""
    diff = combination - target
    return [Constraint(q, CRel.EQ) for q in diff.collect_by(vars).values()]


def positive_sum(vs) -> Constraint:
    total = Polynomial()
    for v in vs:
        total = total + Polynomial.var(v)
    return Constraint(total, CRel.GT)


def nonneg_combination(
    target: Polynomial,
    basis,
    vars,
    namer: Namer,
    cs: ConstraintSystem,
    index: int,
    label: str,
    prefix: str = "y",
    origin: AuxOrigin = AuxOrigin.FARKAS_MULTIPLIER,
    strict: str | None = None,
):
    """Certificate ``target = y_0 + sum y_i * b_i`` with all ``y >= 0``.

    ``basis`` holds (polynomial, is_strict) pairs.  ``strict`` selects the
    extra positivity requirement: ``"conclusion"`` asks for ``y_0 > 0`` or a
    positive multiplier on a strict basis element; ``"premise"`` asks for the
    latter only.
    """
    ys = [namer.fresh(prefix) for _ in range(len(basis) + 1)]
    for y in ys:
        cs.register(y, origin, index)
    cs.handles[(index, label)] = ys

    nodes = [Constraint(Polynomial.var(y), CRel.GE) for y in ys]
    combination = Polynomial.var(ys[0])
    for y, (b, _) in zip(ys[1:], basis):
        combination = combination + Polynomial.var(y) * b
    nodes.extend(match_identity(target, combination, vars))

    strict_ys = [y for y, (_, s) in zip(ys[1:], basis) if s]
    if strict == "conclusion":
        options = [Constraint(Polynomial.var(ys[0]), CRel.GT)]
        if strict_ys:
            options.append(positive_sum(strict_ys))
        nodes.append(disj(options))
    elif strict == "premise":
        nodes.append(positive_sum(strict_ys))
    return conj(nodes)


def unsat_branches(pqe: CanonicalPQE, namer: Namer, cs: ConstraintSystem, index: int) -> list:
    """Derivations of ``-1 >= 0`` and, with strict premises, of ``0 > 0``."""
    if not pqe.premises:
        return []
    X = pqe.universal_vars
    basis = [(a.poly, a.strict) for a in pqe.premises]
    out = [
        nonneg_combination(Polynomial.const(-1), basis, X, namer, cs, index, "F2",
                           prefix="u", origin=AuxOrigin.UNSAT_MULTIPLIER)
    ]
    if any(a.strict for a in pqe.premises):
        out.append(
            nonneg_combination(Polynomial(), basis, X, namer, cs, index, "F3",
                               prefix="u", origin=AuxOrigin.UNSAT_MULTIPLIER, strict="premise")
        )
    return out


def farkas_translate(pqe: CanonicalPQE, params=None, assume_sat: bool = False,
                     namer: Namer | None = None, index: int = 0) -> ConstraintSystem:
    namer = namer or Namer()
    cs = ConstraintSystem()
    X = pqe.universal_vars
    basis = [(a.poly, a.strict) for a in pqe.premises]
    sat = nonneg_combination(pqe.conclusion.poly, basis, X, namer, cs, index, "F1",
                             strict="conclusion" if pqe.conclusion.strict else None)
    branches = [sat]
    if not assume_sat:
        branches += unsat_branches(pqe, namer, cs, index)
    cs.add(disj(branches), index)
    return cs
