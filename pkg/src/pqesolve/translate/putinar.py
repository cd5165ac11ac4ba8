"""Putinar's theorem with sum-of-squares templates, plus the unsatisfiability encodings."""

from __future__ import annotations

from ..constraints import AuxOrigin, Constraint, ConstraintSystem, CRel, Namer, conj, disj
from ..model import CanonicalPQE
from ..poly import Monomial, Polynomial, VarKind, monomials_up_to
from .farkas import match_identity


def sos_template(degree: int, vars, square_count: int | None = None,
                 namer: Namer | None = None, prefix: str = "s"):
    """Generic sum of squares ``sum_j l_j**2`` with ``deg(l_j) = ceil(degree/2)``.

    Returns the polynomial and its fresh coefficient unknowns, square by
    square, each square listing coefficients in the order of
    :func:`monomials_up_to`.
    """
    namer = namer or Namer()
    half = (degree + 1) // 2
    basis = monomials_up_to(list(vars), half)
    k = len(basis) if square_count is None else square_count
    h = Polynomial()
    unknowns = []
    for _ in range(k):
        ell = Polynomial()
        for mono in basis:
            c = namer.fresh(prefix)
            unknowns.append(c)
            ell = ell + Polynomial.var(c) * Polynomial.monomial(mono)
        h = h + ell * ell
    return h, unknowns


def generic_polynomial(degree: int, vars, namer: Namer, prefix: str = "g"):
    """Polynomial of the given degree with one fresh unknown per monomial."""
    p = Polynomial()
    unknowns = []
    for mono in monomials_up_to(list(vars), degree):
        c = namer.fresh(prefix)
        unknowns.append(c)
        p = p + Polynomial.var(c) * Polynomial.monomial(mono)
    return p, unknowns


def _sos_combination(target, premises, degree, X, square_count, namer, cs, index, label,
                     y0_origin, y0_strict):
    """``target = y_0 + h_0 + sum h_i * f_i`` over ``X`` with SOS templates ``h_i``."""
    y0 = namer.fresh("y")
    cs.register(y0, y0_origin, index)
    cs.handles[(index, f"{label}:y0")] = [y0]
    h0, coeffs = sos_template(degree, X, square_count, namer)
    cs.handles[(index, f"{label}:h0")] = coeffs
    unknowns = list(coeffs)
    combination = Polynomial.var(y0) + h0
    for i, a in enumerate(premises, start=1):
        if a.poly.is_zero():
            continue
        hi, coeffs = sos_template(degree, X, square_count, namer)
        cs.handles[(index, f"{label}:h{i}")] = coeffs
        unknowns.extend(coeffs)
        combination = combination + hi * a.poly
    for u in unknowns:
        cs.register(u, AuxOrigin.SOS_COEFFICIENT, index)
    nodes = [Constraint(Polynomial.var(y0), CRel.GT if y0_strict else CRel.GE)]
    nodes.extend(match_identity(target, combination, X))
    return conj(nodes)


def encode_unsat_u1(premises, X, params, namer: Namer, cs: ConstraintSystem, index: int = 0):
    """``-1 = y_0 + h_0 + sum h_i * f_i`` with ``y_0 > 0`` and SOS ``h_i``."""
    return _sos_combination(Polynomial.const(-1), premises, params.degree_of_nonstrict_unsat, X,
                            params.sos_square_count, namer, cs, index, "U1",
                            AuxOrigin.UNSAT_MULTIPLIER, True)


def encode_unsat_u2(premises, X, params, namer: Namer, cs: ConstraintSystem, index: int = 0):
    """Alternatives ``w_j^(2d) = sum h'_i * (f_i - w_i^2)`` for strict ``j``.

    The ``w_i`` are eliminated like universal variables.  Returns a list of
    alternative nodes, empty when no premise is strict.
    """
    strict = [j for j, a in enumerate(premises) if a.strict]
    if not strict or params.max_d_of_strict < 1:
        return []
    ws = [namer.fresh("w", VarKind.UNIVERSAL) for _ in premises]
    XW = tuple(X) + tuple(ws)
    alternatives = []
    for j in strict:
        for d in range(1, params.max_d_of_strict + 1):
            label = f"U2[j={j + 1},d={d}]"
            rhs = Polynomial()
            for i, (a, w) in enumerate(zip(premises, ws), start=1):
                hp, coeffs = generic_polynomial(params.degree_of_strict_unsat, XW, namer)
                cs.handles[(index, f"{label}:h{i}")] = coeffs
                for c in coeffs:
                    cs.register(c, AuxOrigin.UNSAT_MULTIPLIER, index)
                rhs = rhs + hp * (a.poly - Polynomial.var(w) ** 2)
            target = Polynomial.monomial(Monomial.of(ws[j], 2 * d))
            alternatives.append(conj(match_identity(target, rhs, XW)))
    return alternatives


def putinar_translate(pqe: CanonicalPQE, params, assume_sat: bool = False,
                      namer: Namer | None = None, index: int = 0) -> ConstraintSystem:
    namer = namer or Namer()
    cs = ConstraintSystem()
    X = pqe.universal_vars
    premises = list(pqe.premises)
    sat = _sos_combination(pqe.conclusion.poly, premises, params.degree_of_sat, X,
                           params.sos_square_count, namer, cs, index, "sat",
                           AuxOrigin.FARKAS_MULTIPLIER, pqe.conclusion.strict)
    branches = [sat]
    if not assume_sat and premises:
        branches.append(encode_unsat_u1(premises, X, params, namer, cs, index))
        branches.extend(encode_unsat_u2(premises, X, params, namer, cs, index))
    cs.add(disj(branches), index)
    return cs
