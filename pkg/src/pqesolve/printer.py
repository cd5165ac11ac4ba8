"""SMT-LIB rendering of polynomials, formulas and input systems."""

from __future__ import annotations

from fractions import Fraction

from .model import And, Atom, Entailment, Implies, Not, Or, PQESystem
from .poly import Monomial, Polynomial


def number(c: Fraction) -> str:
    c = Fraction(c)
    if c < 0:
        return f"(- {number(-c)})"
    if c.denominator == 1:
        return str(c.numerator)
    return f"(/ {c.numerator} {c.denominator})"


def _mono(m: Monomial) -> list[str]:
    return [v.name for v, e in m.powers for _ in range(e)]


def _term(m: Monomial, c: Fraction) -> str:
    """Term with a positive coefficient."""
    if not m:
        return number(c)
    factors = _mono(m)
    if c != 1:
        factors = [number(c)] + factors
    if len(factors) == 1:
        return factors[0]
    return "(* " + " ".join(factors) + ")"


def poly_to_smt(p: Polynomial) -> str:
    items = p.items()
    if not items:
        return "0"
    rendered = [(_term(m, abs(c)), c < 0) for m, c in items]
    if len(rendered) == 1:
        body, neg = rendered[0]
        return f"(- {body})" if neg else body
    first, first_neg = rendered[0]
    if not first_neg and all(neg for _, neg in rendered[1:]):
        return "(- " + " ".join(b for b, _ in rendered) + ")"
    parts = [f"(- {b})" if neg else b for b, neg in rendered]
    return "(+ " + " ".join(parts) + ")"


def atom_to_smt(a: Atom) -> str:
    return f"({a.rel.value} {poly_to_smt(a.poly)} 0)"


def formula_to_smt(f) -> str:
    if isinstance(f, Atom):
        return atom_to_smt(f)
    if isinstance(f, And):
        return "(and " + " ".join(formula_to_smt(c) for c in f.children) + ")"
    if isinstance(f, Or):
        return "(or " + " ".join(formula_to_smt(c) for c in f.children) + ")"
    if isinstance(f, Not):
        return f"(not {formula_to_smt(f.child)})"
    if isinstance(f, Implies):
        return f"(=> {formula_to_smt(f.lhs)} {formula_to_smt(f.rhs)})"
    raise TypeError(f"not a formula: {f!r}")


def entailment_to_smt(e: Entailment) -> str:
    body = formula_to_smt(e.conclusion) if e.premise is None else (
        f"(=> {formula_to_smt(e.premise)} {formula_to_smt(e.conclusion)})"
    )
    if not e.universal_vars:
        return body
    binders = " ".join(f"({v.name} {v.sort.value})" for v in e.universal_vars)
    return f"(forall ({binders}) {body})"


def emit_input_smt2(system: PQESystem, logic: str | None = None, get_model: bool = True) -> str:
    """Render a system of entailments back to the accepted input language."""
    lines = []
    if logic:
        lines.append(f"(set-logic {logic})")
    for v in system.template_vars:
        lines.append(f"(declare-const {v.name} {v.sort.value})")
    for e in system.entailments:
        lines.append(f"(assert {entailment_to_smt(e)})")
    lines.append("(check-sat)")
    if get_model:
        lines.append("(get-model)")
    return "\n".join(lines) + "\n"
