import random
from fractions import Fraction
from math import comb

import pytest

from pqesolve.config import Config, Theorem, TheoremParams
from pqesolve.constraints import (
    CRel,
    Namer,
    node_constraints,
    node_variables,
    normalize_names,
)
from pqesolve.model import Arithmetic, CanonicalPQE, Entailment, PQESystem, ge, gt, template, universal
from pqesolve.poly import Polynomial, VarKind
from pqesolve.translate import (
    TranslationError,
    encode_unsat_u1,
    encode_unsat_u2,
    farkas_translate,
    handelman_monoid,
    handelman_translate,
    integerize,
    putinar_translate,
    select_theorem,
    sos_template,
    translate_system,
)

from conftest import FIXTURE_NAMES, as_assignment, inject, load_fixture, zero_model

x = universal("x")
X = Polynomial.var(x)


def P(v):
    return Polynomial.var(v)


def params(d, **kw):
    return TheoremParams(d, d, d, d, **kw).resolved(d)


def pqe(premises, conclusion):
    return CanonicalPQE(tuple(premises), conclusion, (x,))


def holds(cs, model):
    return all(cs.evaluate(as_assignment(cs, model)))


# -- theorem selection -----------------------------------------------------

def test_select_theorem():
    assert select_theorem(pqe([ge(X)], ge(X + 1))) is Theorem.FARKAS
    assert select_theorem(pqe([ge(X), ge(1 - X)], ge(X - X * X))) is Theorem.HANDELMAN
    assert select_theorem(pqe([ge(1 - X * X)], gt(X + 2))) is Theorem.PUTINAR


# -- Farkas ------------------------------------------------------------------

def test_farkas_example_constraints():
    cs = farkas_translate(pqe([ge(X), ge(1 - X)], ge(X + 1)), assume_sat=True)
    y0, y1, y2 = cs.handles[(0, "F1")]
    eqs = {c.poly for c in node_constraints(cs.tree) if c.rel is CRel.EQ}
    assert eqs == {P(y1) - P(y2) - 1, P(y0) + P(y2) - 1}
    ges = {c.poly for c in node_constraints(cs.tree) if c.rel is CRel.GE}
    assert ges == {P(y0), P(y1), P(y2)}
    m = inject(cs, zero_model(cs), (0, "F1"), [1, 1, 0])
    assert holds(cs, m)
    m = inject(cs, zero_model(cs), (0, "F1"), [0, 1, 0])
    assert not holds(cs, m)


def test_farkas_unsat_f2_branch():
    cs = farkas_translate(pqe([ge(X), ge(-X - 1)], ge(X * 0 + Polynomial.const(-7))))
    m = inject(cs, zero_model(cs), (0, "F2"), [0, 1, 1])
    assert holds(cs, m)
    assert (0, "F3") not in cs.handles


def test_farkas_f3_needs_strict_premise():
    cs = farkas_translate(pqe([gt(X), ge(-X)], ge(Polynomial.const(-1))))
    m = inject(cs, zero_model(cs), (0, "F3"), [0, 1, 1])
    assert holds(cs, m)
    m = inject(cs, zero_model(cs), (0, "F3"), [0, 0, 0])
    assert not holds(cs, m)


def test_farkas_empty_premises():
    cs = farkas_translate(pqe([], ge(Polynomial.const(3))))
    (y0,) = cs.handles[(0, "F1")]
    eqs = [c.poly for c in node_constraints(cs.tree) if c.rel is CRel.EQ]
    assert eqs == [P(y0) - 3]
    assert len(cs.conjuncts) == 2  # y0 >= 0, y0 - 3 = 0; no unsat branches
    t = template("t")
    cs = farkas_translate(CanonicalPQE((), ge(P(t) * X + 1), (x,)))
    eqs = {c.poly for c in node_constraints(cs.tree) if c.rel is CRel.EQ}
    assert -P(t) in eqs or P(t) in eqs


def test_farkas_strict_conclusion_uses_slack():
    cs = farkas_translate(pqe([], gt(Polynomial.const(1))), assume_sat=True)
    m = inject(cs, zero_model(cs), (0, "F1"), [1])
    assert holds(cs, m)
    cs = farkas_translate(pqe([ge(X)], gt(X)), assume_sat=True)
    m = inject(cs, zero_model(cs), (0, "F1"), [0, 1])
    assert not holds(cs, m)  # x >= 0 does not give x > 0


# -- Handelman -----------------------------------------------------------------

def test_monoid_example():
    f1, f2 = X, 1 - X
    got = handelman_monoid([ge(f1), ge(f2)], 2)
    assert got == [Polynomial.const(1), f1, f2, f1 * f1, f1 * f2, f2 * f2]
    assert handelman_monoid([ge(f1), ge(f2)], 0) == [Polynomial.const(1)]
    assert len(handelman_monoid([ge(X), ge(X + 1), ge(X + 2)], 2)) == 10


@pytest.mark.parametrize("m", range(5))
@pytest.mark.parametrize("d", range(5))
def test_monoid_count(m, d):
    premises = [ge(X + i) for i in range(m)]
    assert len(handelman_monoid(premises, d)) == comb(m + d, d)


def test_handelman_example():
    p = pqe([ge(X), ge(1 - X)], ge(X - X * X))
    cs = handelman_translate(p, params(2), assume_sat=True)
    mons = handelman_monoid(list(p.premises), 2)
    values = [1 if mono == X * (1 - X) else 0 for mono in mons]
    m = inject(cs, zero_model(cs), (0, "sat"), values)
    assert holds(cs, m)


def test_handelman_degree_one_equals_farkas():
    p = pqe([ge(X), ge(1 - X)], ge(X + 1))
    h = handelman_translate(p, params(1), assume_sat=True)
    f = farkas_translate(p, assume_sat=True)
    assert normalize_names(h.conjuncts) == normalize_names(f.conjuncts)


def test_handelman_degree_zero_ignores_premises():
    p = pqe([ge(X), ge(1 - X)], ge(X + 1))
    h = handelman_translate(p, params(0), assume_sat=True)
    f = farkas_translate(pqe([], ge(X + 1)), assume_sat=True)
    assert normalize_names(h.conjuncts) == normalize_names(f.conjuncts)


# -- SOS and Putinar --------------------------------------------------------------

def test_sos_template_shape():
    h, unknowns = sos_template(2, [x], square_count=2)
    assert len(unknowns) == 4
    c0, c1, d0, d1 = (P(u) for u in unknowns)
    assert h == (c0 + c1 * X) ** 2 + (d0 + d1 * X) ** 2
    h, unknowns = sos_template(0, [x])
    assert len(unknowns) == 1 and h == P(unknowns[0]) ** 2


def test_sos_template_nonnegative():
    z = universal("z")
    h, unknowns = sos_template(3, [x, z])
    rng = random.Random(3)
    for _ in range(1000):
        pt = {v: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for v in unknowns + [x, z]}
        assert h.evaluate(pt) >= 0


def _putinar_witness():
    p = pqe([ge(1 - X * X)], gt(X + 2))
    cs = putinar_translate(p, params(2), assume_sat=True)
    m = zero_model(cs)
    inject(cs, m, (0, "sat:y0"), [1])
    half = Fraction(1, 2)
    inject(cs, m, (0, "sat:h0"), [half, half, half, half])  # 2 * ((1 + x)/2)^2
    inject(cs, m, (0, "sat:h1"), [half, 0, half, 0])  # 2 * (1/2)^2
    return cs, m


def test_putinar_example_identity():
    lhs = 1 + (X + 1) ** 2 * Fraction(1, 2) + Fraction(1, 2) * (1 - X * X)
    assert lhs == X + 2
    cs, m = _putinar_witness()
    assert holds(cs, m)
    m[cs.handles[(0, "sat:y0")][0].name] = Fraction(0)
    assert not holds(cs, m)  # strict conclusion needs y0 > 0


def test_putinar_trivial_conclusion():
    p = pqe([ge(1 - X * X)], ge(Polynomial.const(1)))
    cs = putinar_translate(p, params(2), assume_sat=True)
    m = inject(cs, zero_model(cs), (0, "sat:y0"), [1])
    assert holds(cs, m)


def test_putinar_identity_case():
    p = pqe([ge(X * X)], ge(X * X))
    cs = putinar_translate(p, params(2), assume_sat=True)
    m = inject(cs, zero_model(cs), (0, "sat:h1"), [1, 0, 0, 0])
    assert holds(cs, m)


def test_u1_constant_premise():
    cs_ = _cs()
    node = encode_unsat_u1([ge(Polynomial.const(-1))], (x,), params(0, sos_square_count=2), Namer(), cs_)
    cs_.add(node)
    m = zero_model(cs_)
    inject(cs_, m, (0, "U1:y0"), [1])
    inject(cs_, m, (0, "U1:h1"), [1, 1])
    assert holds(cs_, m)


def test_u1_linear_contradiction():
    cs_ = _cs()
    node = encode_unsat_u1([ge(X), ge(-X - 1)], (x,), params(0, sos_square_count=2), Namer(), cs_)
    cs_.add(node)
    m = zero_model(cs_)
    inject(cs_, m, (0, "U1:y0"), [1])
    inject(cs_, m, (0, "U1:h1"), [1, 1])
    inject(cs_, m, (0, "U1:h2"), [1, 1])
    assert holds(cs_, m)


def test_u1_satisfiable_premise_sign_argument():
    cs_ = _cs()
    node = encode_unsat_u1([ge(X)], (x,), params(2), Namer(), cs_)
    # at x = 1 the right-hand side is y0 + h0(1) + h1(1) > 0; the constant
    # coefficient equation alone forces y0 + (sum of squares) = -1
    eqs = [c for c in node_constraints(node) if c.rel is CRel.EQ]
    assert eqs and all(not (node_variables(c) & {x}) for c in eqs)


def _cs():
    from pqesolve.constraints import ConstraintSystem
    return ConstraintSystem()


def test_u2_forced_contradiction():
    cs_ = _cs()
    alts = encode_unsat_u2([gt(X)], (x,), TheoremParams(0, 0, 0, 1), Namer(), cs_)
    assert len(alts) == 1
    eqs = [c for c in node_constraints(alts[0]) if c.rel is CRel.EQ]
    (g,) = cs_.handles[(0, "U2[j=1,d=1]:h1")]
    roots = set()
    for c in eqs:
        k = c.poly.coefficient(next(iter(P(g).terms)))
        roots.add(-c.poly.constant_term() / k if k else None)
    assert len(roots) > 1  # a = -1 and a = 0 cannot both hold


def test_u2_skipped_without_strict_premise():
    assert encode_unsat_u2([ge(X)], (x,), params(1), Namer(), _cs()) == []


def test_u2_well_formed():
    cs_ = _cs()
    alts = encode_unsat_u2([gt(X), ge(-X)], (x,), TheoremParams(2, 2, 2, 2), Namer(), cs_)
    assert len(alts) == 2
    for node in alts:
        for v in node_variables(node):
            assert v.kind is VarKind.AUXILIARY


# -- integerize ------------------------------------------------------------------

def test_integerize_atoms():
    n = universal("n")
    t1 = template("t1")
    N = P(n)
    s = PQESystem((t1,), [Entailment((n,), gt(N), ge(N)), Entailment((n,), None, gt(P(t1) * N))],
                  Arithmetic.INTEGER)
    out = integerize(s)
    assert out.entailments[0].premise == ge(N - 1)
    assert out.entailments[0].conclusion == ge(N)
    assert out.entailments[1].conclusion == ge(P(t1) * N - 1)


# -- whole systems -------------------------------------------------------------

def test_empty_system():
    cs = translate_system(PQESystem((), []))
    assert cs.conjuncts == [] and cs.aux_vars == []


def test_forcing_wrong_theorem_reports_index():
    s = load_fixture("putinar")
    with pytest.raises(TranslationError) as info:
        translate_system(s, Config(theorem=Theorem.FARKAS))
    assert info.value.index == 0


def ranking_hand_model(cs):
    """(t1, t2, t3, t4) = (1, 1025, 0, 0) with hand-derived multipliers.

    Uses the full encoding: the second conclusion of entailment 2 is constant
    in x, so the pivot rule moves it into the premises as ``1 - t1 > 0`` and
    that PQE is certified by F3 with the multiplier on that premise.
    """
    m = zero_model(cs)
    m.update({"t1": 1, "t2": 1025, "t3": 0, "t4": 0})
    inject(cs, m, (0, "F1"), [1, 1, 0])  # x + 1025 = 1 + (x + 1024)
    inject(cs, m, (1, "F1"), [0, 1, 0, 0])  # x + 1024 = x + 1024
    inject(cs, m, (2, "F3"), [0, 0, 0, 1])  # 0 = 1 * (1 - t1)
    inject(cs, m, (3, "F1"), [0, 0, 0, 0])  # 0 = 0
    inject(cs, m, (4, "F1"), [0, 1, 0, 0])  # x + 1024 = x + 1024
    return {k: Fraction(v) for k, v in m.items()}


def test_ranking_pqe_shapes():
    cs = translate_system(load_fixture("ranking"), Config(theorem=Theorem.FARKAS, assume_sat=False))
    p = cs.pqes[2]
    assert p.conclusion == gt(1 - X)
    assert p.premises[-1] == gt(1 - P(template("t1")))


def test_ranking_hand_witness():
    cs = translate_system(load_fixture("ranking"), Config(theorem=Theorem.FARKAS, assume_sat=False))
    m = ranking_hand_model(cs)
    assert holds(cs, m)
    bad = dict(m, t1=Fraction(0))
    assert not holds(cs, bad)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_no_universal_vars_survive(name):
    for assume_sat in (True, False):
        cs = translate_system(load_fixture(name), Config(assume_sat=assume_sat))
        for v in cs.variables():
            assert v.kind in (VarKind.TEMPLATE, VarKind.AUXILIARY), v
        registered = {a.var for a in cs.aux_vars}
        assert {v for v in cs.variables() if v.kind is VarKind.AUXILIARY} <= registered


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_translation_is_deterministic(name):
    a = translate_system(load_fixture(name), Config(assume_sat=False))
    b = translate_system(load_fixture(name), Config(assume_sat=False))
    assert a.conjuncts == b.conjuncts
    assert [v.var.name for v in a.aux_vars] == [v.var.name for v in b.aux_vars]


def test_assume_sat_model_extends_to_full_system():
    for name in FIXTURE_NAMES:
        on = translate_system(load_fixture(name), Config(assume_sat=True))
        off = translate_system(load_fixture(name), Config(assume_sat=False))
        rng = random.Random(name)
        # random values on the sat-branch unknowns; if they satisfy the
        # assume-sat system, the same values (renamed) satisfy the full one
        for _ in range(20):
            m_on = {v.name: Fraction(rng.randint(-2, 2)) for v in on.declared_vars()}
            m_off = zero_model(off)
            for key, vars in on.handles.items():
                for v, w in zip(vars, off.handles[key]):
                    m_off[w.name] = m_on[v.name]
            for t in on.template_vars:
                m_off[t.name] = m_on[t.name]
            if all(on.evaluate(as_assignment(on, m_on))):
                assert holds(off, m_off)
