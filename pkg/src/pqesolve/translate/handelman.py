"""Handelman's theorem: linear premises, polynomial conclusion."""

from __future__ import annotations

from itertools import combinations_with_replacement

from ..constraints import AuxOrigin, ConstraintSystem, Namer, disj
from ..model import Atom, CanonicalPQE
from ..poly import Polynomial
from .farkas import nonneg_combination, unsat_branches


def monoid_exponents(m: int, d: int) -> list[tuple[int, ...]]:
    """Multisets of premise indices of size at most ``d``, smallest first."""
    out = []
    for k in range(d + 1):
        out.extend(combinations_with_replacement(range(m), k))
    return out


def handelman_monoid(premises: list[Atom], d: int) -> list[Polynomial]:
    """All products of premise polynomials with at most ``d`` factors, 1 first."""
    polys = [a.poly for a in premises]
    out = []
    for combo in monoid_exponents(len(polys), d):
        p = Polynomial.const(1)
        for i in combo:
            p = p * polys[i]
        out.append(p)
    return out


def handelman_translate(pqe: CanonicalPQE, params, assume_sat: bool = False,
                        namer: Namer | None = None, index: int = 0) -> ConstraintSystem:
    namer = namer or Namer()
    cs = ConstraintSystem()
    premises = list(pqe.premises)
    polys = handelman_monoid(premises, params.degree_of_sat)
    combos = monoid_exponents(len(premises), params.degree_of_sat)
    # the empty product is covered by the constant multiplier
    basis = [
        (p, all(premises[i].strict for i in combo))
        for p, combo in zip(polys[1:], combos[1:])
    ]
    sat = nonneg_combination(pqe.conclusion.poly, basis, pqe.universal_vars, namer, cs, index, "sat",
                             prefix="m", origin=AuxOrigin.HANDELMAN_MULTIPLIER,
                             strict="conclusion" if pqe.conclusion.strict else None)
    branches = [sat]
    if not assume_sat:
        branches += unsat_branches(pqe, namer, cs, index)
    cs.add(disj(branches), index)
    return cs
