"""Run configuration and theorem parameters."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

from .model import Arithmetic


class Theorem(enum.Enum):
    AUTO = "auto"
    FARKAS = "farkas"
    HANDELMAN = "handelman"
    PUTINAR = "putinar"


class SolverName(enum.Enum):
    Z3 = "z3"
    MATHSAT = "mathsat"
    CVC5 = "cvc5"
    NONE = "none"


@dataclass(frozen=True)
class TheoremParams:
    """Degree parameters; ``None`` means the maximal degree found in the system."""

    degree_of_sat: Optional[int] = None
    degree_of_nonstrict_unsat: Optional[int] = None
    degree_of_strict_unsat: Optional[int] = None
    max_d_of_strict: Optional[int] = None
    sos_square_count: Optional[int] = None  # None: size of the monomial basis

    def resolved(self, max_degree: int) -> "TheoremParams":
        def pick(v):
            return max_degree if v is None else v

        return replace(
            self,
            degree_of_sat=pick(self.degree_of_sat),
            degree_of_nonstrict_unsat=pick(self.degree_of_nonstrict_unsat),
            degree_of_strict_unsat=pick(self.degree_of_strict_unsat),
            max_d_of_strict=pick(self.max_d_of_strict),
        )


@dataclass
class Config:
    theorem: Theorem = Theorem.AUTO
    params: TheoremParams = field(default_factory=TheoremParams)
    assume_sat: bool = True
    unsat_core: bool = False
    solver: SolverName = SolverName.Z3
    arithmetic: Optional[Arithmetic] = None  # None: take it from the input
    output_smt2_path: Optional[str] = None
    timeout_seconds: float = 60.0
    pivot_rule: str = "degree"
