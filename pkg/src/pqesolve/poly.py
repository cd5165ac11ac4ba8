"""Sparse multivariate polynomials with exact rational coefficients.

Polynomials are immutable.  A polynomial is a map from :class:`Monomial` to a
nonzero :class:`~fractions.Fraction`; the zero polynomial is the empty map.
Terms are iterated in graded lexicographic order over a natural ordering of
variable names, so printing is reproducible.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class VarKind(enum.Enum):
    UNIVERSAL = "universal"
    TEMPLATE = "template"
    AUXILIARY = "auxiliary"


class Sort(enum.Enum):
    REAL = "Real"
    INT = "Int"


_DIGITS = re.compile(r"(\d+)")


def _natural_key(name: str) -> tuple:
    parts = _DIGITS.split(name)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


class Var:
    """A named variable.

    Names are unique within a system, so equality and hashing use the name
    alone; kind and sort are metadata.
    """

    __slots__ = ("name", "kind", "sort", "_key")

    def __init__(self, name: str, kind: VarKind = VarKind.UNIVERSAL, sort: Sort = Sort.REAL):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "sort", sort)
        object.__setattr__(self, "_key", _natural_key(name))

    def __setattr__(self, key, value):
        raise AttributeError("Var is immutable")

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __lt__(self, other: "Var"):
        return self._key < other._key

    @property
    def key(self) -> tuple:
        return self._key

    def __repr__(self):
        return f"Var({self.name!r}, {self.kind.name}, {self.sort.name})"

    def __str__(self):
        return self.name


class Monomial:
    """Product of variables with positive exponents; ``Monomial()`` is 1."""

    __slots__ = ("powers", "_hash")

    def __init__(self, powers: Iterable[tuple[Var, int]] = ()):
        merged: dict[Var, int] = {}
        for v, e in powers:
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[v] = merged.get(v, 0) + e
        self.powers: tuple[tuple[Var, int], ...] = tuple(sorted(merged.items(), key=lambda p: p[0].key))
        self._hash = hash(self.powers)

    @classmethod
    def of(cls, var: Var, exp: int = 1) -> "Monomial":
        return cls([(var, exp)])

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.powers + other.powers)

    def __bool__(self):
        # the constant monomial is falsy
        return bool(self.powers)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def degree_in(self, vars: Iterable[Var]) -> int:
        vs = set(vars)
        return sum(e for v, e in self.powers if v in vs)

    def variables(self) -> set[Var]:
        return {v for v, _ in self.powers}

    def split(self, vars) -> tuple["Monomial", "Monomial"]:
        """Split into (part over ``vars``, remaining part)."""
        inside = [(v, e) for v, e in self.powers if v in vars]
        outside = [(v, e) for v, e in self.powers if v not in vars]
        return Monomial(inside), Monomial(outside)

    def sort_key(self) -> tuple:
        return (-self.degree, tuple((v.key, -e) for v, e in self.powers))

    def __repr__(self):
        return str(self)

    def __str__(self):
        if not self.powers:
            return "1"
        return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in self.powers)


ONE = Monomial()


def _coerce(value) -> "Polynomial":
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Var):
        return Polynomial.var(value)
    if isinstance(value, (int, Fraction)):
        return Polynomial.const(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Polynomial")


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = c
        self._terms: dict[Monomial, Fraction] = clean
        self._hash = None

    @classmethod
    def const(cls, c: Number) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls({Monomial.of(v): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: Number = 1) -> "Polynomial":
        return cls({m: c})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda mc: mc[0].sort_key())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for m in self._terms:
            out |= m.variables()
        return out

    def degree(self, vars: Iterable[Var] | None = None) -> int:
        if not self._terms:
            return 0
        if vars is None:
            return max(m.degree for m in self._terms)
        vs = set(vars)
        return max(m.degree_in(vs) for m in self._terms)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Number) -> "Polynomial":
        c = Fraction(c)
        return Polynomial({m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def substitute(self, assignment: Mapping[Var, Number]) -> "Polynomial":
        """Exact partial evaluation."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            coeff = c
            rest = []
            for v, e in m.powers:
                if v in assignment:
                    coeff *= Fraction(assignment[v]) ** e
                else:
                    rest.append((v, e))
            if coeff:
                key = Monomial(rest)
                out[key] = out.get(key, 0) + coeff
        return Polynomial(out)

    def evaluate(self, assignment: Mapping[Var, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in m.powers:
                try:
                    term *= Fraction(assignment[v]) ** e
                except KeyError:
                    raise MissingVariableError(v) from None
            total += term
        return total

    def collect_by(self, vars: Iterable[Var]) -> dict[Monomial, "Polynomial"]:
        """Decompose as ``sum(mu * q_mu)`` with ``mu`` over ``vars`` only."""
        vs = set(vars)
        groups: dict[Monomial, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            inside, outside = m.split(vs)
            groups.setdefault(inside, {})[outside] = c
        ordered = sorted(groups, key=Monomial.sort_key)
        return {mu: Polynomial(groups[mu]) for mu in ordered}

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


class MissingVariableError(KeyError):
    """Raised when an evaluation meets a variable with no assigned value."""

    def __init__(self, var: Var):
        super().__init__(var.name)
        self.var = var

    def __str__(self):
        return f"no value for variable {self.var.name!r}"


ZERO = Polynomial()


# Functional aliases.

def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def substitute(p: Polynomial, assignment: Mapping[Var, Number]) -> Polynomial:
    return p.substitute(assignment)


def collect_by(p: Polynomial, vars: Iterable[Var]) -> dict[Monomial, Polynomial]:
    return p.collect_by(vars)


def degree(p: Polynomial, vars: Iterable[Var] | None = None) -> int:
    return p.degree(vars)


def monomials_up_to(vars: list[Var], deg: int) -> list[Monomial]:
    """All monomials over ``vars`` of total degree at most ``deg``, lowest degree first."""
    out = []
    for k in range(deg + 1):
        for combo in combinations_with_replacement(vars, k):
            out.append(Monomial((v, 1) for v in combo))
    return out
