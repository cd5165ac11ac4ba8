from fractions import Fraction
from pathlib import Path

import pytest

from pqesolve.frontend import parse_smt2
from pqesolve.solver import solver_available

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURES.glob("*.smt2"))

HAVE_Z3 = solver_available("z3")
requires_z3 = pytest.mark.skipif(not HAVE_Z3, reason="SKIPPED: z3 not installed")


def load_fixture(name):
    return parse_smt2((FIXTURES / f"{name}.smt2").read_text())


def zero_model(cs):
    return {v.name: Fraction(0) for v in cs.declared_vars()}


def inject(cs, model, handle, values):
    """Assign ``values`` to the unknowns recorded under ``handle``."""
    vars = cs.handles[handle]
    assert len(vars) == len(values), (handle, len(vars), len(values))
    for v, val in zip(vars, values):
        model[v.name] = Fraction(val)
    return model


def as_assignment(cs, model):
    return {v: Fraction(model[v.name]) for v in cs.declared_vars()}


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines():
            terminalreporter.write_line(line)
