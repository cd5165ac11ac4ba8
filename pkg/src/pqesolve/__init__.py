"""Solving systems of polynomial quantified entailments by quantifier elimination."""

from .canonical import canonicalize, canonicalize_system
from .cli import compare_direct, run_pipeline, solve_file
from .config import Config, SolverName, Theorem, TheoremParams
from .constraints import ConstraintSystem
from .frontend import parse_config, parse_smt2
from .heuristics import unsat_core_loop
from .model import Arithmetic, CanonicalPQE, Entailment, PQESystem
from .poly import Monomial, Polynomial, Sort, Var, VarKind
from .solver import SolveResult, Status, check_witness, emit_smt2, solve_constraints
from .translate import translate_system

__version__ = "0.1.0"

__all__ = [
    "Arithmetic",
    "CanonicalPQE",
    "Config",
    "ConstraintSystem",
    "Entailment",
    "Monomial",
    "PQESystem",
    "Polynomial",
    "SolveResult",
    "SolverName",
    "Sort",
    "Status",
    "Theorem",
    "TheoremParams",
    "Var",
    "VarKind",
    "canonicalize",
    "canonicalize_system",
    "check_witness",
    "compare_direct",
    "emit_smt2",
    "parse_config",
    "parse_smt2",
    "run_pipeline",
    "solve_constraints",
    "solve_file",
    "translate_system",
    "unsat_core_loop",
]
