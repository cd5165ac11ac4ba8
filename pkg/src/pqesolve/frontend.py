"""Input parsing: the SMT-LIB subset for systems of entailments and the JSON config.

Accepted SMT-LIB commands are ``set-logic``, ``set-info``, ``set-option``
(ignored), ``declare-const``, ``assert``, ``check-sat``, ``get-model`` and
``exit``.  Each ``declare-const`` introduces a template variable; each
``assert`` is one entailment, optionally under a single top-level ``forall``.
"""

from __future__ import annotations

import json
import re
import warnings
from fractions import Fraction

from .config import Config, SolverName, Theorem, TheoremParams
from .canonical import PIVOT_RULES
from .model import And, Arithmetic, Atom, Entailment, Implies, Not, Or, PQESystem, Rel
from .poly import Polynomial, Sort, Var, VarKind
from .sexpr import SexprError, parse_sexprs, to_text

_NUMERAL = re.compile(r"^(0|[1-9][0-9]*)$")
_DECIMAL = re.compile(r"^(0|[1-9][0-9]*)\.[0-9]+$")
_SYMBOL = re.compile(r"^[A-Za-z~!@$%^&*_+=<>.?/\-][A-Za-z0-9~!@$%^&*_+=<>.?/\-]*$")

_IGNORED = {"set-logic", "set-info", "set-option", "check-sat", "get-model"}
_SORTS = {"Real": Sort.REAL, "Int": Sort.INT}
_BOOL_OPS = {"and", "or", "not", "=>", "<=", "<", ">=", ">", "=", "forall", "exists"}


class SmtParseError(ValueError):
    def __init__(self, message: str, where=None):
        line = getattr(where, "line", 0)
        col = getattr(where, "col", 0)
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


class ConfigError(ValueError):
    pass


class ConfigWarning(UserWarning):
    pass


def parse_number(tok: str) -> Fraction | None:
    if _NUMERAL.match(tok) or _DECIMAL.match(tok):
        return Fraction(tok)
    return None


def _head(x):
    if isinstance(x, list) and x and isinstance(x[0], str):
        return str(x[0])
    return None


def term_to_poly(t, env: dict) -> Polynomial:
    """Convert an arithmetic term; ``env`` maps symbol names to variables."""
    if not isinstance(t, list):
        num = parse_number(t)
        if num is not None:
            return Polynomial.const(num)
        if t and (t[0].isdigit() or t[0] == "."):
            raise SmtParseError(f"unsupported numeral {t!r}", t)
        if t in env:
            return Polynomial.var(env[t])
        if t in ("true", "false"):
            raise SmtParseError(f"sort mismatch: boolean {t!r} where a number is expected", t)
        raise SmtParseError(f"unknown symbol {t!r}", t)
    op = _head(t)
    if op is None:
        raise SmtParseError(f"malformed term {to_text(t)}", t)
    args = [term_to_poly(a, env) for a in t[1:]] if op not in _BOOL_OPS else None
    if op == "+":
        _arity(t, 1)
        out = Polynomial()
        for a in args:
            out = out + a
        return out
    if op == "-":
        _arity(t, 1)
        if len(args) == 1:
            return -args[0]
        out = args[0]
        for a in args[1:]:
            out = out - a
        return out
    if op == "*":
        _arity(t, 1)
        out = Polynomial.const(1)
        for a in args:
            out = out * a
        return out
    if op == "/":
        _arity(t, 2)
        out = args[0]
        for a, raw in zip(args[1:], t[2:]):
            if not a.is_constant():
                raise SmtParseError(f"non-polynomial term: division by {to_text(raw)}", t)
            c = a.constant_term()
            if c == 0:
                raise SmtParseError("division by zero", t)
            out = out.scale(1 / c)
        return out
    if op in _BOOL_OPS:
        raise SmtParseError(f"sort mismatch: boolean term {to_text(t)} where a number is expected", t)
    raise SmtParseError(f"unsupported function {op!r}", t)


def _arity(t, n):
    if len(t) - 1 < n:
        raise SmtParseError(f"{t[0]} needs at least {n} argument(s)", t)


def _comparison(op, a: Polynomial, b: Polynomial):
    if op == ">=":
        return Atom(a - b, Rel.GE)
    if op == ">":
        return Atom(a - b, Rel.GT)
    if op == "<=":
        return Atom(b - a, Rel.GE)
    if op == "<":
        return Atom(b - a, Rel.GT)
    # equality is split into two non-strict atoms
    return And((Atom(a - b, Rel.GE), Atom(b - a, Rel.GE)))


def term_to_formula(t, env: dict):
    op = _head(t)
    if op is None:
        if isinstance(t, str) and t in env:
            raise SmtParseError(f"sort mismatch: numeric {t!r} where a formula is expected", t)
        raise SmtParseError(f"expected a formula, got {to_text(t)}", t)
    if op in ("and", "or"):
        _arity(t, 1)
        kids = tuple(term_to_formula(a, env) for a in t[1:])
        if len(kids) == 1:
            return kids[0]
        return And(kids) if op == "and" else Or(kids)
    if op == "not":
        if len(t) != 2:
            raise SmtParseError("not takes one argument", t)
        return Not(term_to_formula(t[1], env))
    if op == "=>":
        _arity(t, 2)
        kids = [term_to_formula(a, env) for a in t[1:]]
        out = kids[-1]
        for k in reversed(kids[:-1]):
            out = Implies(k, out)
        return out
    if op in (">=", ">", "<=", "<", "="):
        _arity(t, 2)
        terms = [term_to_poly(a, env) for a in t[1:]]
        parts = [_comparison(op, a, b) for a, b in zip(terms, terms[1:])]
        return parts[0] if len(parts) == 1 else And(tuple(parts))
    if op in ("forall", "exists"):
        raise SmtParseError(f"nested quantifier {op!r} is not supported", t)
    raise SmtParseError(f"expected a formula, got {to_text(t)}", t)


def _symbol(tok, what):
    if isinstance(tok, list) or not _SYMBOL.match(tok) or parse_number(tok) is not None:
        raise SmtParseError(f"bad {what} name {to_text(tok)}", tok)
    return str(tok)


def _sort(tok):
    if isinstance(tok, list) or tok not in _SORTS:
        raise SmtParseError(f"unsupported sort {to_text(tok)}", tok)
    return _SORTS[tok]


def _entailment(body, env, templates) -> Entailment:
    universal: list[Var] = []
    if _head(body) == "forall":
        if len(body) != 3 or not isinstance(body[1], list) or not body[1]:
            raise SmtParseError("malformed forall", body)
        local = dict(env)
        for b in body[1]:
            if not isinstance(b, list) or len(b) != 2:
                raise SmtParseError("malformed forall binder", b if isinstance(b, list) else body)
            name = _symbol(b[0], "variable")
            if name in templates:
                raise SmtParseError(f"bound variable {name!r} shadows a declared constant", b)
            v = Var(name, VarKind.UNIVERSAL, _sort(b[1]))
            universal.append(v)
            local[name] = v
        if len({v.sort for v in universal}) > 1:
            raise SmtParseError("sort mismatch: mixed Int/Real universal variables in one entailment", body)
        env, body = local, body[2]
    if _head(body) == "=>":
        _arity(body, 2)
        parts = [term_to_formula(a, env) for a in body[1:]]
        premise = parts[0] if len(parts) == 2 else And(tuple(parts[:-1]))
        return Entailment(tuple(universal), premise, parts[-1])
    return Entailment(tuple(universal), None, term_to_formula(body, env))


def parse_smt2(text: str) -> PQESystem:
    try:
        commands = parse_sexprs(text)
    except SexprError as exc:
        raise SmtParseError(str(exc)) from exc
    env: dict[str, Var] = {}
    templates: list[Var] = []
    entailments: list[Entailment] = []
    for cmd in commands:
        op = _head(cmd)
        if op is None:
            raise SmtParseError(f"expected a command, got {to_text(cmd)}", cmd)
        if op in _IGNORED:
            continue
        if op == "exit":
            break
        if op == "declare-const":
            if len(cmd) != 3:
                raise SmtParseError("declare-const takes a name and a sort", cmd)
            name = _symbol(cmd[1], "constant")
            if name in env:
                raise SmtParseError(f"{name!r} declared twice", cmd)
            v = Var(name, VarKind.TEMPLATE, _sort(cmd[2]))
            env[name] = v
            templates.append(v)
        elif op == "assert":
            if len(cmd) != 2:
                raise SmtParseError("assert takes one term", cmd)
            entailments.append(_entailment(cmd[1], env, env))
        else:
            raise SmtParseError(f"unsupported command {op!r}", cmd)
    universal_sorts = {v.sort for e in entailments for v in e.universal_vars}
    arithmetic = Arithmetic.INTEGER if universal_sorts == {Sort.INT} else Arithmetic.REAL
    return PQESystem(tuple(templates), entailments, arithmetic)


# -- config --------------------------------------------------------------

_PARAM_KEYS = ("degree_of_sat", "degree_of_nonstrict_unsat", "degree_of_strict_unsat",
               "max_d_of_strict", "sos_square_count")
_HEURISTICS = ("assume_sat", "unsat_core")


def _enum(cls, value, key):
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a string, got {value!r}")
    try:
        return cls(value.lower())
    except ValueError:
        choices = ", ".join(m.value for m in cls)
        raise ConfigError(f"{key}: {value!r} is not one of {choices}") from None


def _nat(value, key):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(f"{key}: expected a non-negative integer, got {value!r}")
    return value


def _bool(value, key):
    if not isinstance(value, bool):
        raise ConfigError(f"{key}: expected true/false, got {value!r}")
    return value


def parse_config(text: str | None = None) -> Config:
    """Build a Config from JSON text; missing keys keep their defaults."""
    if text is None or not text.strip():
        return Config()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return config_from_dict(data)


def config_from_dict(data: dict) -> Config:
    cfg = Config()
    params = {}
    for key, value in data.items():
        if key == "theorem":
            cfg.theorem = _enum(Theorem, value, key)
        elif key in _PARAM_KEYS:
            params[key] = None if value is None else _nat(value, key)
        elif key == "heuristics":
            if isinstance(value, list):
                unknown = [h for h in value if h not in _HEURISTICS]
                if unknown:
                    raise ConfigError(f"heuristics: unknown heuristic(s) {unknown}")
                cfg.assume_sat = "assume_sat" in value
                cfg.unsat_core = "unsat_core" in value
            elif isinstance(value, dict):
                for h, flag in value.items():
                    if h not in _HEURISTICS:
                        raise ConfigError(f"heuristics: unknown heuristic {h!r}")
                    setattr(cfg, h, _bool(flag, f"heuristics.{h}"))
            else:
                raise ConfigError("heuristics: expected an object or a list")
        elif key in _HEURISTICS:
            setattr(cfg, key, _bool(value, key))
        elif key == "solver":
            cfg.solver = _enum(SolverName, value, key)
        elif key == "arithmetic":
            cfg.arithmetic = _enum(Arithmetic, value, key)
        elif key == "output_smt2_path":
            if value is not None and not isinstance(value, str):
                raise ConfigError(f"{key}: expected a path string")
            cfg.output_smt2_path = value
        elif key == "timeout_seconds":
            if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
                raise ConfigError(f"{key}: expected a positive number, got {value!r}")
            cfg.timeout_seconds = float(value)
        elif key == "pivot_rule":
            if value not in PIVOT_RULES:
                raise ConfigError(f"{key}: expected one of {', '.join(PIVOT_RULES)}")
            cfg.pivot_rule = value
        else:
            warnings.warn(f"unknown config key {key!r} ignored", ConfigWarning, stacklevel=2)
    cfg.params = TheoremParams(**params)
    return cfg

