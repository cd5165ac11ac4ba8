"""Command-line driver: parse, translate, solve, check, report."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .canonical import CanonicalizationError
from .config import Config, SolverName, Theorem
from .constraints import ConstraintSystem
from .frontend import ConfigError, SmtParseError, parse_config, parse_smt2
from .heuristics import unsat_core_loop
from .model import PQESystem
from .printer import emit_input_smt2
from .sexpr import SexprError
from .solver import (
    SolveResult,
    SolverError,
    SolverTimeoutError,
    SolverUnavailableError,
    Status,
    check_witness,
    emit_smt2,
    parse_status,
    run_solver,
    solve_constraints,
)
from .translate import TranslationError, translate_system

log = logging.getLogger("pqesolve")

EXIT_CODES = {
    Status.SAT: 0,
    Status.UNSAT: 1,
    Status.UNKNOWN: 2,
    Status.TIMEOUT: 2,
    Status.SOLVER_UNAVAILABLE: 2,
}
EXIT_ERROR = 3


@dataclass
class PipelineResult:
    result: SolveResult
    cs: ConstraintSystem
    smt2: str
    timings: dict = field(default_factory=dict)

    @property
    def status(self) -> Status:
        return self.result.status

    @property
    def token(self) -> str:
        return "sat" if self.status is Status.SAT else "unsat" if self.status is Status.UNSAT else "unknown"


def run_pipeline(system: PQESystem, config: Optional[Config] = None, samples: int = 200) -> PipelineResult:
    config = config or Config()
    timings = {}
    t0 = time.perf_counter()
    cs = translate_system(system, config)
    timings["translate"] = time.perf_counter() - t0
    smt2 = emit_smt2(cs)
    if config.output_smt2_path:
        Path(config.output_smt2_path).write_text(smt2)

    t0 = time.perf_counter()
    if config.solver is SolverName.NONE:
        result = SolveResult(Status.SOLVER_UNAVAILABLE, reason="no solver configured; constraints emitted only")
    elif config.unsat_core:
        result = unsat_core_loop(cs, config.solver, config.timeout_seconds)
    else:
        result = solve_constraints(cs, config.solver, config.timeout_seconds, smt2=smt2)
        result.iterations = 1
    timings["solve"] = time.perf_counter() - t0

    if result.status is Status.SAT:
        t0 = time.perf_counter()
        result.witness = check_witness(system, cs, result.model, samples=samples)
        timings["check"] = time.perf_counter() - t0
        if not result.witness.exact_ok:
            bad = ", ".join(result.witness.failures()[:5])
            result.status = Status.UNKNOWN
            result.reason = f"solver model fails exact check on {bad}"
        elif not result.witness.sampled_ok:
            log.warning("model passes the constraints but a sampled entailment check failed")
    return PipelineResult(result, cs, smt2, timings)


def load(input_path, config_path=None) -> tuple[PQESystem, Config]:
    text = Path(input_path).read_text()
    config = parse_config(Path(config_path).read_text()) if config_path else Config()
    return parse_smt2(text), config


def solve_file(input_path, config_path=None, config: Optional[Config] = None) -> PipelineResult:
    system, file_config = load(input_path, config_path)
    return run_pipeline(system, config or file_config)


def direct_route(system: PQESystem, solver="z3", timeout: float = 60.0) -> dict:
    """Hand the quantified formula to the solver untouched."""
    smt2 = emit_input_smt2(system, get_model=False)
    try:
        out = run_solver(smt2, solver, timeout)
    except SolverUnavailableError as exc:
        return {"route": "direct", "status": Status.SOLVER_UNAVAILABLE.value, "time": None, "reason": str(exc)}
    except SolverTimeoutError:
        return {"route": "direct", "status": Status.TIMEOUT.value, "time": timeout}
    status = parse_status(out.stdout)
    return {"route": "direct", "status": status.value if status else Status.UNKNOWN.value,
            "time": out.wall_time}


def _definite(status: str) -> bool:
    return status in ("sat", "unsat")


def compare_direct(input_path, solver="z3", timeout: float = 60.0, config: Optional[Config] = None) -> dict:
    system, file_config = load(input_path)
    config = dataclasses.replace(config or file_config, solver=SolverName(getattr(solver, "value", solver)),
                                 timeout_seconds=timeout)
    t0 = time.perf_counter()
    if config.solver is SolverName.NONE:
        translated = {"route": "translated", "status": Status.SOLVER_UNAVAILABLE.value, "time": None}
    else:
        pr = run_pipeline(system, config)
        translated = {"route": "translated", "status": pr.status.value, "time": time.perf_counter() - t0}
    if config.solver is SolverName.NONE:
        direct = {"route": "direct", "status": Status.SOLVER_UNAVAILABLE.value, "time": None}
    else:
        direct = direct_route(system, config.solver, timeout)
    a, b = translated["status"], direct["status"]
    return {
        "input": str(input_path),
        "solver": config.solver.value,
        "rows": [translated, direct],
        "contradiction": _definite(a) and _definite(b) and a != b,
    }


def _report(pr: PipelineResult, system: PQESystem, verbose: bool) -> dict:
    res = pr.result
    out = {
        "status": pr.token,
        "detail": res.status.value,
        "reason": res.reason,
        "iterations": res.iterations,
        "stats": res.stats,
        "timings": pr.timings,
    }
    if res.model is not None and res.status is Status.SAT:
        out["model"] = {k: str(v) for k, v in res.template_values(system.template_vars).items()}
        if verbose:
            out["aux"] = {a.var.name: str(res.model.get(a.var.name, 0)) for a in pr.cs.aux_vars}
    if res.witness is not None:
        out["witness"] = {
            "exact_ok": res.witness.exact_ok,
            "sampled": [{"entailment": s.index, "passed": s.passed, "total": s.total} for s in res.witness.sampled],
        }
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pqesolve", description="Solve systems of polynomial quantified entailments.")
    p.add_argument("input", help="SMT-LIB input file")
    p.add_argument("--config", metavar="PATH", help="JSON config file")
    p.add_argument("--theorem", choices=[t.value for t in Theorem])
    p.add_argument("--solver", choices=[s.value for s in SolverName])
    p.add_argument("--timeout", type=float, metavar="SECS")
    p.add_argument("--emit", metavar="PATH", help="write the generated SMT-LIB constraints here")
    p.add_argument("--unsat-core", action="store_true", default=None, help="use the unsat-core pinning loop")
    p.add_argument("--no-assume-sat", action="store_true", help="also encode the unsatisfiability branches")
    p.add_argument("--verbose", "-v", action="store_true")
    p.add_argument("--compare-direct", action="store_true", help="also run the solver on the quantified input")
    p.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")
    return p


def _apply_flags(config: Config, args) -> Config:
    changes = {}
    if args.theorem:
        changes["theorem"] = Theorem(args.theorem)
    if args.solver:
        changes["solver"] = SolverName(args.solver)
    if args.timeout is not None:
        changes["timeout_seconds"] = args.timeout
    if args.emit:
        changes["output_smt2_path"] = args.emit
    if args.unsat_core:
        changes["unsat_core"] = True
    if args.no_assume_sat:
        changes["assume_sat"] = False
    return dataclasses.replace(config, **changes)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        system, config = load(args.input, args.config)
        config = _apply_flags(config, args)
        pr = run_pipeline(system, config)
        report = _report(pr, system, args.verbose)
        if args.compare_direct:
            report["compare_direct"] = compare_direct(args.input, config.solver, config.timeout_seconds, config)
    except (OSError, SmtParseError, SexprError, ConfigError, CanonicalizationError,
            TranslationError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    print(pr.token)
    if pr.status is Status.SAT:
        for name, value in report["model"].items():
            print(f"{name} = {value}")
        if args.verbose:
            for name, value in report.get("aux", {}).items():
                print(f"{name} = {value}")
    elif pr.result.reason:
        print(f"; {pr.result.reason}", file=sys.stderr)
    if args.verbose:
        print(f"; stats {json.dumps(pr.result.stats, default=str)}", file=sys.stderr)
    if args.compare_direct:
        cmp = report["compare_direct"]
        for row in cmp["rows"]:
            t = "-" if row["time"] is None else f"{row['time']:.3f}s"
            print(f"; {row['route']:<10} {row['status']:<18} {t}", file=sys.stderr)
        if cmp["contradiction"]:
            print("; warning: routes disagree", file=sys.stderr)
    if args.json:
        text = json.dumps(report, indent=2, default=str)
        if args.json == "-":
            print(text)
        else:
            Path(args.json).write_text(text + "\n")
    return EXIT_CODES[pr.status]
