"""Search heuristics layered over the solver backend."""

from __future__ import annotations

import logging
import warnings

from .constraints import Constraint, ConstraintSystem, CRel
from .poly import Polynomial
from .solver import (
    CoreError,
    SolveResult,
    Status,
    emit_smt2,
    extract_core,
    run_solver,
    solve_constraints,
)

log = logging.getLogger(__name__)


def pin_name(var) -> str:
    return f"pin_{var.name}"


def unsat_core_loop(cs: ConstraintSystem, solver="z3", timeout: float = 60.0) -> SolveResult:
    """Solve ``cs`` with every auxiliary pinned to 0, releasing pins found in cores.

    Each round drops the pins named in the unsat core, so the number of
    solver calls is at most ``len(aux) + 1``.
    """
    aux = []
    for a in cs.aux_vars:
        if a.var not in aux:
            aux.append(a.var)
    pins = {pin_name(v): Constraint(Polynomial.var(v), CRel.EQ) for v in aux}
    bound = len(aux) + 1
    iterations = 0
    while True:
        iterations += 1
        assert iterations <= bound, "unsat-core loop exceeded its structural bound"
        result = solve_constraints(cs, solver, timeout, pins=list(pins.items()), named=True)
        result.iterations = iterations
        result.stats["pins_left"] = len(pins)
        if result.status is not Status.UNSAT or not pins:
            return result
        try:
            core = extract_core(result.raw)
        except CoreError as exc:
            warnings.warn(f"no unsat core available ({exc}); solving without pins")
            plain = solve_constraints(cs, solver, timeout)
            plain.iterations = iterations + 1
            return plain
        released = core & pins.keys()
        log.debug("round %d: core %s, releasing %d pins", iterations, sorted(core), len(released))
        if not released:
            return result
        for name in released:
            del pins[name]


def core_of(cs: ConstraintSystem, solver="z3", timeout: float = 60.0) -> set[str]:
    """Named-conjunct unsat core of ``cs`` (for diagnostics)."""
    out = run_solver(emit_smt2(cs, named=True), solver, timeout)
    return extract_core(out.stdout)
