import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmr import (
    CapExceededError,
    Clause,
    CnfFormula,
    FALSE,
    InputError,
    Literal,
    ModelSet,
    Not,
    TRUE,
    Universe,
    Var,
    clause,
    classically_redundant_clause,
    classically_redundant_formula,
    cnf,
    conj,
    consistent,
    disj,
    entails,
    enumerate_models,
    equivalent,
    minimal_elements,
    negate_clause,
    restrict,
)
from helpers import all_cnfs, oracle_circ, oracle_models, proper_subsets_of, random_cnf

U3 = Universe.of("x1", "x2", "x3")


def models_as_sets(ms):
    return {frozenset(m) for m in ms}


def test_enumerate_models_example():
    f = cnf(clause("x1", "x3"), clause("x2", "x3"))
    got = enumerate_models(f, U3)
    # hand oracle over all 8 assignments
    expected = {
        frozenset({"x3"}),
        frozenset({"x2", "x3"}),
        frozenset({"x1", "x3"}),
        frozenset({"x1", "x2"}),
        frozenset({"x1", "x2", "x3"}),
    }
    assert models_as_sets(got) == expected
    assert len(got) == 5


def test_enumerate_models_full_cube_and_contradiction():
    u = Universe.of("x")
    assert models_as_sets(enumerate_models(TRUE, u)) == {frozenset(), frozenset({"x"})}
    assert len(enumerate_models(cnf(clause("x"), clause("~x")), u)) == 0


def test_enumerate_models_matches_oracle_randomly():
    rng = random.Random(1)
    for _ in range(60):
        f = random_cnf(rng, ["x1", "x2", "x3"], 4)
        assert models_as_sets(enumerate_models(f, U3)) == set(oracle_models(f, U3))


def test_enumeration_cap_and_unknown_variable():
    big = Universe(tuple(f"v{i}" for i in range(6)))
    with pytest.raises(CapExceededError):
        enumerate_models(TRUE, big, max_vars=5)
    with pytest.raises(InputError):
        enumerate_models(Var("zz"), U3)


def test_entails_examples():
    assert entails(conj([Var("x"), Var("y")]), Var("x"))
    assert entails(FALSE, Var("anything"))
    f = cnf(clause("x1", "x3"), clause("x2", "x3"))
    assert not entails(f, Var("x3"), U3)  # {x1,x2} is a countermodel


def test_consistent_examples():
    assert not consistent(Var("x"), Not(Var("x")))
    assert consistent(Var("x"), Var("y"))
    # justification clash pattern: b & c inconsistent with ~b
    assert not consistent(conj([Var("b"), Var("c")]), Not(Var("b")))


def test_equivalent_examples():
    lhs = conj([disj([Var("a"), Var("c")]), disj([Var("a"), Not(Var("c"))])])
    assert equivalent(lhs, Var("a"))
    assert equivalent(Var("x"), conj([Var("x"), Var("x")]))
    assert not equivalent(Var("x"), disj([Var("x"), Var("y")]))


def test_mutual_consistency_of_core_predicates():
    rng = random.Random(2)
    for _ in range(100):
        a = random_cnf(rng, ["x1", "x2", "x3"], 3)
        b = random_cnf(rng, ["x1", "x2", "x3"], 3)
        assert equivalent(a, b, U3) == (entails(a, b, U3) and entails(b, a, U3))
        assert consistent(a, b, U3) == (not entails(a, negate_conj(b), U3))


def negate_conj(f):
    from nmr import neg

    return neg(f.to_formula())


def test_minimal_elements_examples():
    ms = ModelSet.from_models(
        [{"x1", "x2"}, {"x3"}, {"x1", "x2", "x3"}], U3
    )
    got = minimal_elements(ms)
    assert models_as_sets(got) == {frozenset({"x1", "x2"}), frozenset({"x3"})}
    assert len(minimal_elements(ModelSet.from_models([], U3))) == 0
    f = cnf(clause("x1", "x3"), clause("x2", "x3"))
    got = minimal_elements(enumerate_models(f, U3))
    assert models_as_sets(got) == {frozenset({"x1", "x2"}), frozenset({"x3"})}


@st.composite
def model_sets(draw):
    universe = ("a", "b", "c", "d")
    n = draw(st.integers(0, 10))
    models = [
        frozenset(v for v in universe if draw(st.booleans())) for _ in range(n)
    ]
    return ModelSet.from_models(models, Universe(universe))


@settings(max_examples=120, deadline=None)
@given(model_sets())
def test_minimal_elements_idempotent_subset(ms):
    minimal = minimal_elements(ms)
    assert models_as_sets(minimal) <= models_as_sets(ms)
    assert minimal_elements(minimal) == minimal
    # brute-force definition
    expected = {
        m for m in models_as_sets(ms) if not any(o < m for o in models_as_sets(ms))
    }
    assert models_as_sets(minimal) == expected


@settings(max_examples=100, deadline=None)
@given(model_sets(), model_sets())
def test_quasi_order_growth_lemma(a, b):
    # if A is a subset of B and their minimal sets differ, B has a minimal
    # element outside A
    universe = a.universe
    merged = ModelSet.from_models(list(a) + list(b), universe)  # ensures A <= merged
    min_a = minimal_elements(a)
    min_b = minimal_elements(merged)
    if models_as_sets(min_a) != models_as_sets(min_b):
        assert models_as_sets(min_b) - models_as_sets(a)


@settings(max_examples=100, deadline=None)
@given(model_sets(), model_sets())
def test_quasi_order_restriction_lemma(a, b):
    # a minimal element of A that lies in B, B subset of A, is minimal in B
    universe = a.universe
    big = ModelSet.from_models(list(a) + list(b), universe)
    small = a
    for m in minimal_elements(big):
        if frozenset(m) in models_as_sets(small):
            assert frozenset(m) in models_as_sets(minimal_elements(small))


def test_negate_clause():
    assert negate_clause(clause("x", "~y")) == cnf(clause("~x"), clause("y"))
    assert negate_clause(clause("x")) == cnf(clause("~x"))
    assert negate_clause(clause("~a", "~y1", "~y2")) == cnf(
        clause("a"), clause("y1"), clause("y2")
    )


def test_restrict_folding():
    assert restrict(disj([Var("x"), Var("y")]), {"x": False}) == Var("y")
    assert restrict(conj([Var("x"), Not(Var("x"))]), {"x": True}) == FALSE


def test_restrict_consistency_property():
    # F restricted at w=true agrees with F & w for consistency with w-free R
    rng = random.Random(3)
    from nmr import Formula, neg

    from helpers import random_formula

    for _ in range(80):
        f = random_formula(rng, ["w", "x", "y"], 2)
        r = random_formula(rng, ["x", "y"], 2)
        u = Universe.of("w", "x", "y")
        assert consistent(restrict(f, {"w": True}), r, u) == consistent(
            conj([f, Var("w")]), r, u
        )
        assert consistent(restrict(f, {"w": False}), r, u) == consistent(
            conj([f, Not(Var("w"))]), r, u
        )


def test_tautological_clause_rejected():
    with pytest.raises(InputError):
        Clause([Literal("x"), Literal("x", False)])


def test_classical_redundancy_examples():
    assert classically_redundant_clause(cnf(clause("x"), clause("x", "y")), clause("x", "y"))
    assert not classically_redundant_clause(cnf(clause("x", "y")), clause("x", "y"))
    pi = cnf(clause("~x1", "~x2"), clause("x1", "x3"), clause("x2", "x3"))
    assert not classically_redundant_clause(pi, clause("~x1", "~x2"), U3)
    with pytest.raises(InputError):
        classically_redundant_clause(cnf(clause("x")), clause("y"))


def test_classical_redundancy_formula_examples():
    assert classically_redundant_formula(cnf(clause("x"), clause("x", "y")))
    assert classically_redundant_formula(
        cnf(clause("x", "y"), clause("~x", "y"), clause("y"))
    )
    assert not classically_redundant_formula(cnf(clause("x")))


def test_classical_redundancy_equals_subset_oracle():
    # formula redundant iff some proper subset has the same model set
    names = ["x1", "x2"]
    u = Universe(tuple(names))
    count = 0
    for pi in all_cnfs(names, 3):
        got = classically_redundant_formula(pi, u)
        expected = any(
            equivalent(CnfFormula(sub), pi, u)
            for sub in proper_subsets_of(pi.sorted_clauses())
        )
        assert got == expected
        count += 1
    assert count > 50
