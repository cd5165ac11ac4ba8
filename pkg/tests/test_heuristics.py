import random

import pytest

from pqesolve.config import Config
from pqesolve.constraints import AuxOrigin, Constraint, ConstraintSystem, CRel
from pqesolve.heuristics import unsat_core_loop
from pqesolve.poly import Polynomial, Var, VarKind
from pqesolve.solver import Status, check_witness
from pqesolve.translate import translate_system

from conftest import FIXTURE_NAMES, as_assignment, load_fixture, requires_z3
from gen import planted_linear_system

y = Var("y", VarKind.AUXILIARY)
Y = Polynomial.var(y)


def aux_system(*nodes):
    cs = ConstraintSystem()
    for n in nodes:
        cs.add(n)
    cs.register(y, AuxOrigin.FARKAS_MULTIPLIER, 0)
    return cs


@requires_z3
def test_zero_is_a_model():
    cs = aux_system(Constraint(Y, CRel.GE))
    res = unsat_core_loop(cs, "z3", 10)
    assert res.status is Status.SAT and res.iterations == 1
    assert res.model["y"] == 0


@requires_z3
def test_pin_released_after_core():
    cs = aux_system(Constraint(Y - 1, CRel.GE))
    res = unsat_core_loop(cs, "z3", 10)
    assert res.status is Status.SAT and res.iterations == 2
    assert all(cs.evaluate(as_assignment(cs, res.model)))


@requires_z3
def test_genuinely_unsat():
    cs = aux_system(Constraint(Y - 1, CRel.GE), Constraint(-Y, CRel.GE))
    res = unsat_core_loop(cs, "z3", 10)
    assert res.status is Status.UNSAT and res.iterations <= 2


def test_unavailable_solver_propagates(monkeypatch):
    monkeypatch.setenv("PQESOLVE_Z3", "definitely-not-a-solver-binary")
    res = unsat_core_loop(aux_system(Constraint(Y, CRel.GE)), "z3", 10)
    assert res.status is Status.SOLVER_UNAVAILABLE


def test_degrades_without_cores(monkeypatch):
    import pqesolve.heuristics as h
    from pqesolve.solver import SolveResult

    calls = []

    def fake(cs, solver, timeout, pins=(), smt2=None, named=False):
        calls.append(len(pins))
        if pins:
            return SolveResult(Status.UNSAT, raw="unsat\n(error \"cores disabled\")\n")
        return SolveResult(Status.SAT, model={"y": 1})

    monkeypatch.setattr(h, "solve_constraints", fake)
    with pytest.warns(UserWarning, match="unsat core"):
        res = h.unsat_core_loop(aux_system(Constraint(Y - 1, CRel.GE)), "z3", 10)
    assert res.status is Status.SAT and calls == [1, 0]


@requires_z3
@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_loop_on_fixtures(name):
    system = load_fixture(name)
    cs = translate_system(system, Config(assume_sat=False))
    res = unsat_core_loop(cs, "z3", 30)
    assert res.iterations <= len({a.var for a in cs.aux_vars}) + 1
    if res.status is Status.SAT:
        assert check_witness(system, cs, res.model, samples=200).ok


@requires_z3
def test_loop_bound_random():
    rng = random.Random(11)
    for _ in range(10):
        system, _ = planted_linear_system(rng)
        cs = translate_system(system)
        res = unsat_core_loop(cs, "z3", 30)
        assert res.iterations <= len({a.var for a in cs.aux_vars}) + 1
        assert res.status is Status.SAT
        assert check_witness(system, cs, res.model, samples=200).ok
