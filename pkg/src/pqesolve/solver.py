"""SMT-LIB emission of constraint systems and external solver driving."""

from __future__ import annotations

import enum
import logging
import os
import random
import shutil
import subprocess
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional

from .constraints import CAnd, Constraint, ConstraintSystem, COr, CRel, Node, eval_node, node_variables
from .frontend import SmtParseError, parse_number, term_to_poly
from .model import PQESystem
from .poly import MissingVariableError, Sort, Var, VarKind
from .printer import poly_to_smt
from .sexpr import SexprError, parse_sexprs, to_text

log = logging.getLogger(__name__)


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    SOLVER_UNAVAILABLE = "solver-unavailable"
    TIMEOUT = "timeout"


class SolverError(RuntimeError):
    pass


class SolverUnavailableError(SolverError):
    pass


class SolverTimeoutError(SolverError):
    pass


class ModelParseError(ValueError):
    pass


class IrrationalValueError(ModelParseError):
    """The solver reported an algebraic number the exact checker cannot use."""


class CoreError(ValueError):
    pass


# -- emission -------------------------------------------------------------

def node_to_smt(node: Node) -> str:
    if isinstance(node, Constraint):
        return f"({node.rel.value} {poly_to_smt(node.poly)} 0)"
    if not node.children:
        return "true" if isinstance(node, CAnd) else "false"
    op = "and" if isinstance(node, CAnd) else "or"
    return f"({op} " + " ".join(node_to_smt(c) for c in node.children) + ")"


def logic_for(vars) -> str:
    sorts = {v.sort for v in vars}
    if sorts == {Sort.INT}:
        return "QF_NIA"
    if Sort.INT in sorts:
        return "QF_NIRA"
    return "QF_NRA"


def conjunct_name(i: int) -> str:
    return f"c{i}"


def emit_smt2(cs: ConstraintSystem, named: bool = False, pins=()) -> str:
    """Render ``cs`` as an SMT-LIB script.

    ``pins`` is a sequence of (name, node) pairs asserted after the system,
    always with ``:named`` labels; they are used by the unsat-core loop.
    """
    vars = cs.declared_vars()
    pin_vars = set()
    for _, node in pins:
        pin_vars |= node_variables(node)
    for v in sorted(pin_vars - set(vars), key=lambda v: v.key):
        vars.append(v)
    named = named or bool(pins)
    lines = ["(set-option :produce-models true)"]
    if named:
        lines.append("(set-option :produce-unsat-cores true)")
    lines.append(f"(set-logic {logic_for(vars)})")
    for v in vars:
        lines.append(f"(declare-const {v.name} {v.sort.value})")
    for i, node in enumerate(cs.conjuncts):
        body = node_to_smt(node)
        if named:
            body = f"(! {body} :named {conjunct_name(i)})"
        lines.append(f"(assert {body})")
    for name, node in pins:
        lines.append(f"(assert (! {node_to_smt(node)} :named {name}))")
    lines.append("(check-sat)")
    lines.append("(get-model)")
    if named:
        lines.append("(get-unsat-core)")
    return "\n".join(lines) + "\n"


def read_smt2_constraints(text: str):
    """Parse an emitted script back into (declared vars, conjunct nodes)."""
    env: dict[str, Var] = {}
    nodes = []
    for cmd in parse_sexprs(text):
        head = cmd[0] if isinstance(cmd, list) and cmd else None
        if head == "declare-const":
            sort = Sort(str(cmd[2]))
            env[str(cmd[1])] = Var(str(cmd[1]), VarKind.AUXILIARY, sort)
        elif head == "assert":
            body = cmd[1]
            if isinstance(body, list) and body and body[0] == "!":
                body = body[1]
            nodes.append(_read_node(body, env))
    return list(env.values()), nodes


def _read_node(t, env) -> Node:
    if isinstance(t, str):
        if t == "true":
            return CAnd(())
        if t == "false":
            return COr(())
        raise SmtParseError(f"unexpected atom {t!r}", t)
    op = str(t[0])
    if op in ("and", "or"):
        kids = tuple(_read_node(c, env) for c in t[1:])
        return CAnd(kids) if op == "and" else COr(kids)
    rel = {">=": CRel.GE, ">": CRel.GT, "=": CRel.EQ}.get(op)
    if rel is None or len(t) != 3:
        raise SmtParseError(f"unexpected constraint {to_text(t)}", t)
    return Constraint(term_to_poly(t[1], env) - term_to_poly(t[2], env), rel)


# -- running -------------------------------------------------------------

_COMMANDS = {
    "z3": ("PQESOLVE_Z3", "z3", ["-in"]),
    "mathsat": ("PQESOLVE_MATHSAT", "mathsat", []),
    "cvc5": ("PQESOLVE_CVC5", "cvc5", ["--produce-models", "--lang=smt2"]),
}


def solver_command(solver) -> list[str]:
    name = getattr(solver, "value", solver)
    if name not in _COMMANDS:
        raise SolverUnavailableError(f"no command known for solver {name!r}")
    env_var, default, args = _COMMANDS[name]
    binary = os.environ.get(env_var, default)
    path = shutil.which(binary)
    if path is None:
        raise SolverUnavailableError(f"solver binary {binary!r} not found")
    return [path] + args


def solver_available(solver) -> bool:
    try:
        solver_command(solver)
    except SolverUnavailableError:
        return False
    return True


@dataclass
class RawOutput:
    stdout: str
    stderr: str
    returncode: int
    wall_time: float


def run_solver(smt2: str, solver="z3", timeout: float = 60.0) -> RawOutput:
    cmd = solver_command(solver)
    start = time.perf_counter()
    try:
        proc = subprocess.run(cmd, input=smt2, capture_output=True, text=True, timeout=timeout)
    except subprocess.TimeoutExpired:
        raise SolverTimeoutError(f"{cmd[0]} exceeded {timeout}s") from None
    return RawOutput(proc.stdout, proc.stderr, proc.returncode, time.perf_counter() - start)


def parse_status(raw: str) -> Optional[Status]:
    for line in raw.splitlines():
        s = line.strip()
        if s in ("sat", "unsat", "unknown"):
            return Status(s)
        if s == "timeout":
            return Status.TIMEOUT
    return None


def solver_errors(raw: str) -> list[str]:
    return [line.strip() for line in raw.splitlines() if line.strip().startswith("(error")]


# -- models and cores ---------------------------------------------------

def parse_value(t) -> Fraction:
    if isinstance(t, str):
        v = parse_number(t)
        if v is None:
            raise ModelParseError(f"cannot read value {t!r}")
        return v
    if not t:
        raise ModelParseError("empty value")
    op = t[0]
    if op == "root-obj" or op == "_":
        raise IrrationalValueError(f"algebraic value {to_text(t)}")
    args = [parse_value(a) for a in t[1:]]
    if op == "-":
        if len(args) == 1:
            return -args[0]
        return args[0] - sum(args[1:])
    if op == "+":
        return sum(args, Fraction(0))
    if op == "*":
        out = Fraction(1)
        for a in args:
            out *= a
        return out
    if op == "/":
        out = args[0]
        for a in args[1:]:
            out /= a
        return out
    raise ModelParseError(f"cannot read value {to_text(t)}")


def _model_entries(t):
    if not isinstance(t, list) or not t:
        return
    if t[0] == "define-fun":
        if len(t) != 5 or t[2] != []:
            raise ModelParseError(f"unexpected definition {to_text(t)}")
        # named assertions come back as Bool definitions
        if t[3] in ("Real", "Int"):
            yield str(t[1]), t[4]
        return
    if t[0] == "error":
        return
    for item in t[1:] if t[0] == "model" else t:
        if isinstance(item, list) and item and item[0] == "define-fun":
            yield from _model_entries(item)
        elif isinstance(item, list) and len(item) == 2 and isinstance(item[0], str):
            yield str(item[0]), item[1]
        else:
            raise ModelParseError(f"unexpected model fragment {to_text(item)}")


def parse_model(raw: str, declared=()) -> dict[str, Fraction]:
    """Exact values from ``get-model``/``get-value`` output.

    Declared names the output does not mention default to 0.
    """
    try:
        exprs = parse_sexprs(raw)
    except SexprError as exc:
        raise ModelParseError(str(exc)) from exc
    model = {getattr(v, "name", v): Fraction(0) for v in declared}
    for e in exprs:
        for name, value in _model_entries(e):
            try:
                model[name] = parse_value(value)
            except IrrationalValueError:
                raise
            except ModelParseError as exc:
                raise ModelParseError(f"{name}: {exc}") from None
    return model


def extract_core(raw: str) -> set[str]:
    if parse_status(raw) is not Status.UNSAT:
        raise CoreError("unsat core requested but the solver did not answer unsat")
    text = raw[raw.index("unsat") + len("unsat"):]
    try:
        exprs = parse_sexprs(text)
    except SexprError as exc:
        raise CoreError(str(exc)) from exc
    for e in exprs:
        if isinstance(e, list) and (not e or e[0] != "error") and all(isinstance(x, str) for x in e):
            return {str(x) for x in e}
    raise CoreError("no unsat core in solver output")


# -- results -----------------------------------------------------------

@dataclass
class SampleResult:
    index: int
    passed: int
    total: int
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.total


@dataclass
class WitnessReport:
    exact: dict = field(default_factory=dict)
    sampled: list = field(default_factory=list)

    @property
    def exact_ok(self) -> bool:
        return all(self.exact.values())

    @property
    def sampled_ok(self) -> bool:
        return all(s.ok for s in self.sampled)

    @property
    def ok(self) -> bool:
        return self.exact_ok and self.sampled_ok

    def failures(self) -> list[str]:
        return [k for k, v in self.exact.items() if not v]


@dataclass
class SolveResult:
    status: Status
    model: Optional[dict] = None
    stats: dict = field(default_factory=dict)
    raw: str = ""
    reason: str = ""
    iterations: int = 0
    witness: Optional[WitnessReport] = None

    def template_values(self, template_vars) -> dict:
        if self.model is None:
            return {}
        return {v.name: self.model.get(v.name, Fraction(0)) for v in template_vars}


def solve_constraints(cs: ConstraintSystem, solver="z3", timeout: float = 60.0, pins=(),
                      smt2: str | None = None, named: bool = False) -> SolveResult:
    """One solver call on ``cs`` (plus optional named pins)."""
    smt2 = smt2 if smt2 is not None else emit_smt2(cs, named=named, pins=pins)
    name = getattr(solver, "value", solver)
    stats = {"solver_name": name, "constraint_count": cs.constraint_count(),
             "aux_var_count": len(cs.aux_vars)}
    try:
        out = run_solver(smt2, solver, timeout)
    except SolverUnavailableError as exc:
        return SolveResult(Status.SOLVER_UNAVAILABLE, stats=stats, reason=str(exc))
    except SolverTimeoutError as exc:
        stats["wall_time"] = timeout
        return SolveResult(Status.TIMEOUT, stats=stats, reason=str(exc))
    stats["wall_time"] = out.wall_time
    raw = out.stdout
    status = parse_status(raw)
    if status is None:
        raise SolverError(f"{name} gave no answer:\n{raw}{out.stderr}")
    result = SolveResult(status, stats=stats, raw=raw)
    if status is Status.SAT:
        try:
            result.model = parse_model(raw[raw.index("sat") + 3:], cs.declared_vars())
        except IrrationalValueError as exc:
            result.status = Status.UNKNOWN
            result.reason = f"model has an irrational value ({exc}); raw output kept"
    return result


# -- witness checking -------------------------------------------------------

def _sample_points(vars, n, box, rng):
    if not vars:
        return [{}]
    ends = [-box, Fraction(0), box]
    pts = []
    if len(ends) ** len(vars) <= n // 2:
        pts = [dict(zip(vars, combo)) for combo in product(ends, repeat=len(vars))]
    while len(pts) < n:
        pt = {}
        for v in vars:
            if v.sort is Sort.INT:
                pt[v] = Fraction(rng.randint(-int(box), int(box)))
            else:
                pt[v] = Fraction(rng.randint(-int(box) * 1000, int(box) * 1000), 1000)
        pts.append(pt)
    return pts


def check_witness(system: PQESystem, cs: ConstraintSystem, model: Mapping[str, Fraction],
                  samples: int = 1000, box: int = 1024, points=None, seed: int = 0) -> WitnessReport:
    """Exact check of ``cs`` under ``model`` plus sampled check of the entailments.

    ``points`` optionally maps entailment index to an explicit list of
    assignments (dicts keyed by variable) that replaces random sampling.
    """
    report = WitnessReport()
    assignment = {}
    for v in cs.declared_vars():
        if v.name not in model:
            raise MissingVariableError(v)
        assignment[v] = Fraction(model[v.name])
    for i, node in enumerate(cs.conjuncts):
        report.exact[conjunct_name(i)] = eval_node(node, assignment)

    tvals = {}
    for v in system.template_vars:
        if v.name not in model:
            raise MissingVariableError(v)
        tvals[v] = Fraction(model[v.name])
    rng = random.Random(seed)
    for k, e in enumerate(system.entailments):
        pts = points.get(k) if points is not None and k in points else \
            _sample_points(list(e.universal_vars), samples, box, rng)
        passed, cex = 0, None
        for pt in pts:
            full = dict(tvals)
            full.update(pt)
            if e.holds_at(full):
                passed += 1
            elif cex is None:
                cex = {v.name: val for v, val in pt.items()}
        report.sampled.append(SampleResult(k, passed, len(pts), cex))
    return report
