import random
from fractions import Fraction

import pytest

from pqesolve.model import (
    And,
    Atom,
    Entailment,
    Implies,
    Not,
    Or,
    PQESystem,
    Rel,
    eval_formula,
    ge,
    gt,
    nnf,
    template,
    universal,
)
from pqesolve.frontend import parse_smt2
from pqesolve.poly import MissingVariableError, Polynomial

from gen import UNIV, rand_atom, rand_fraction

x = universal("x")
X = Polynomial.var(x)


def test_eval_examples():
    assert eval_formula(ge(X), {x: 0})
    assert not eval_formula(gt(X), {x: 0})
    assert eval_formula(And((ge(X), Not(gt(X - 1)))), {x: 1})


def test_eval_missing_variable():
    with pytest.raises(MissingVariableError):
        eval_formula(ge(X), {})


def test_and_or_need_children():
    with pytest.raises(ValueError):
        And(())
    with pytest.raises(ValueError):
        Or(())


def test_negation_rules():
    p = X - 3
    assert ge(p).negate() == Atom(-p, Rel.GT)
    assert gt(p).negate() == Atom(-p, Rel.GE)


def test_nnf_eliminates_not_and_implies():
    f = Not(Implies(ge(X), Or((gt(X), Not(ge(X - 1))))))
    g = nnf(f)
    stack = [g]
    while stack:
        n = stack.pop()
        assert not isinstance(n, (Not, Implies))
        if isinstance(n, (And, Or)):
            stack.extend(n.children)
    for v in range(-4, 5):
        assert eval_formula(f, {x: Fraction(v, 2)}) == eval_formula(g, {x: Fraction(v, 2)})


def test_entailment_matrix():
    e = Entailment((x,), ge(X), gt(X + 1))
    assert isinstance(e.matrix, Implies)
    assert Entailment((x,), None, gt(X)).matrix == gt(X)


@pytest.mark.parametrize("seed", range(20))
def test_negation_is_exact(seed):
    rng = random.Random(seed)
    a = rand_atom(rng, UNIV)
    for _ in range(50):
        pt = {v: rand_fraction(rng) for v in UNIV}
        assert a.negate().holds(pt) == (not a.holds(pt))


@pytest.mark.parametrize("seed", range(20))
def test_equality_desugaring(seed):
    rng = random.Random(seed)
    sys_ = parse_smt2("(assert (forall ((x Real) (z Real)) (= (* x z) (- x 1))))")
    f = sys_.entailments[0].matrix
    p = X * Polynomial.var(universal("z")) - X + 1
    for _ in range(50):
        pt = {v: rand_fraction(rng, den=2) for v in UNIV}
        expected = p.evaluate(pt) == 0
        assert eval_formula(f, pt) == expected
        assert eval_formula(And((ge(p), ge(-p))), pt) == expected
    # exact roots are hit too
    assert eval_formula(f, {x: Fraction(1), UNIV[1]: Fraction(0)})


def test_system_collects_universals():
    t = template("t")
    s = PQESystem((t,), [Entailment((x,), None, ge(X + Polynomial.var(t)))])
    assert s.universal_vars() == [x]
    assert s.variable_names() >= {"x", "t"}
