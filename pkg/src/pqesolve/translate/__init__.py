from .farkas import farkas_translate, match_identity
from .handelman import handelman_monoid, handelman_translate, monoid_exponents
from .putinar import encode_unsat_u1, encode_unsat_u2, generic_polynomial, putinar_translate, sos_template
from .system import (
    TranslationError,
    integerize,
    integerize_pqe,
    max_degree,
    select_theorem,
    translate_pqe,
    translate_system,
)

__all__ = [
    "TranslationError",
    "encode_unsat_u1",
    "encode_unsat_u2",
    "farkas_translate",
    "generic_polynomial",
    "handelman_monoid",
    "handelman_translate",
    "integerize",
    "integerize_pqe",
    "match_identity",
    "max_degree",
    "monoid_exponents",
    "putinar_translate",
    "select_theorem",
    "sos_template",
    "translate_pqe",
    "translate_system",
]
