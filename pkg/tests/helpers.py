"""Shared test utilities: random generators and slow reference oracles.

The oracles deliberately avoid the library's mask machinery and search
pruning: they spell out the textbook definitions with plain formula
evaluation so that agreement with the engine is a real cross-check.
"""

from __future__ import annotations

import itertools
import random

from nmr import (
    And,
    Clause,
    CnfFormula,
    Default,
    DefaultTheory,
    EquivKind,
    FALSE,
    Implies,
    Literal,
    Not,
    Or,
    Semantics,
    TRUE,
    Universe,
    Var,
    conj,
    consistent,
    disj,
    entails,
    equivalent,
    neg,
)


def all_clauses(names, max_len=None):
    """Every nonempty non-tautological clause over the given variables."""
    out = []
    lits = [Literal(v, pol) for v in names for pol in (True, False)]
    top = len(names) if max_len is None else max_len
    for r in range(1, top + 1):
        for combo in itertools.combinations(lits, r):
            if len({l.var for l in combo}) == r:
                out.append(Clause(combo))
    return out


def all_cnfs(names, max_clauses):
    """Every CNF formula with at most `max_clauses` clauses over `names`."""
    pool = all_clauses(names)
    for r in range(max_clauses + 1):
        for combo in itertools.combinations(pool, r):
            yield CnfFormula(combo)


def table_formula(bits, names):
    """The canonical DNF of a truth table (bit i = i-th assignment is a model)."""
    terms = []
    n = len(names)
    for i, b in enumerate(bits):
        if b:
            terms.append(
                conj(
                    [
                        Var(v) if (i >> (n - 1 - k)) & 1 else Not(Var(v))
                        for k, v in enumerate(names)
                    ]
                )
            )
    return disj(terms)


def random_formula(rng: random.Random, names, depth):
    if depth == 0 or rng.random() < 0.3:
        v = Var(rng.choice(names))
        return v if rng.random() < 0.7 else Not(v)
    op = rng.choice(["and", "or", "imp", "not"])
    if op == "not":
        return neg(random_formula(rng, names, depth - 1))
    a = random_formula(rng, names, depth - 1)
    b = random_formula(rng, names, depth - 1)
    if op == "and":
        return conj([a, b])
    if op == "or":
        return disj([a, b])
    return Implies(a, b)


def random_clause(rng: random.Random, names, max_len=3):
    size = rng.randint(1, min(max_len, len(names)))
    vs = rng.sample(names, size)
    return Clause(Literal(v, rng.random() < 0.6) for v in vs)


def random_cnf(rng: random.Random, names, max_clauses=3):
    return CnfFormula(random_clause(rng, names) for _ in range(rng.randint(0, max_clauses)))


def random_theory(
    rng: random.Random,
    names,
    max_defaults=3,
    max_clauses=2,
    normal=False,
    categorical=False,
    consistent_w=False,
):
    universe = Universe(tuple(names))
    while True:
        background = random_cnf(rng, names, max_clauses)
        if not consistent_w or any(
            background.evaluate(m) for m in _all_models(names)
        ):
            break
    defaults = []
    for i in range(rng.randint(0, max_defaults)):
        prec = TRUE if categorical or rng.random() < 0.4 else random_formula(rng, names, 1)
        cons = random_formula(rng, names, 1)
        just = cons if normal else (TRUE if rng.random() < 0.2 else random_formula(rng, names, 1))
        defaults.append(Default(f"d{i + 1}", prec, just, cons))
    return DefaultTheory(tuple(defaults), background, universe)


def _all_models(names):
    for bits in itertools.product((False, True), repeat=len(names)):
        yield frozenset(v for v, b in zip(names, bits) if b)


# -- reference oracles -------------------------------------------------------


def oracle_models(f, universe):
    """Model enumeration by direct evaluation of every assignment."""
    return [m for m in _all_models(universe.vars) if f.evaluate(m)]


def oracle_minimal(models):
    models = [frozenset(m) for m in models]
    return {m for m in models if not any(o < m for o in models)}


def oracle_circ(pi, universe):
    return oracle_minimal(oracle_models(pi, universe))


def _cons_formula(seq):
    return conj([d.cons for d in seq])


def _just_formula(seq):
    return conj([d.just for d in seq])


def oracle_is_process(theory, seq):
    for i, d in enumerate(seq):
        before = conj([theory.background_formula(), _cons_formula(seq[:i])])
        if not entails(before, d.prec, theory.universe):
            return False
    return True


def oracle_selected_processes(theory, semantics, rational_joint_success=True):
    """Every duplicate-free sequence passing the textbook predicate, brute force."""
    u = theory.universe
    w = theory.background_formula()
    out = []
    for r in range(len(theory.defaults) + 1):
        for seq in itertools.permutations(theory.defaults, r):
            if not oracle_is_process(theory, seq):
                continue
            state = conj([w, _cons_formula(seq)])
            rest = [d for d in theory.defaults if d not in seq]
            if semantics in (Semantics.REITER, Semantics.JUSTIFIED):
                if not all(consistent(state, d.just, u) for d in seq):
                    continue
            if semantics in (Semantics.CONSTRAINED, Semantics.RATIONAL):
                if semantics is Semantics.CONSTRAINED or rational_joint_success:
                    if not consistent(state, _just_formula(seq), u):
                        continue
            if semantics is Semantics.REITER:
                closed = not any(
                    entails(state, d.prec, u) and consistent(state, d.just, u) for d in rest
                )
            elif semantics is Semantics.JUSTIFIED:
                closed = True
                for d in rest:
                    if not entails(state, d.prec, u):
                        continue
                    bigger = conj([state, d.cons])
                    if all(consistent(bigger, e.just, u) for e in list(seq) + [d]):
                        closed = False
                        break
            elif semantics is Semantics.CONSTRAINED:
                closed = True
                for d in rest:
                    if not entails(state, d.prec, u):
                        continue
                    if consistent(
                        conj([state, d.cons]), conj([_just_formula(seq), d.just]), u
                    ):
                        closed = False
                        break
            else:
                closed = True
                for d in rest:
                    if not entails(state, d.prec, u):
                        continue
                    if consistent(state, d.just, u) and consistent(
                        state, conj([_just_formula(seq), d.just]), u
                    ):
                        closed = False
                        break
            if closed:
                out.append(seq)
    return out


def oracle_extension_formulas(theory, semantics):
    """Deduplicated extension formulas from the brute-force process search."""
    found = []
    for seq in oracle_selected_processes(theory, semantics):
        formula = conj([theory.background_formula(), _cons_formula(seq)])
        if not any(equivalent(formula, other, theory.universe) for other in found):
            found.append(formula)
    return found


def subsets_of(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def proper_subsets_of(items):
    items = list(items)
    for r in range(len(items)):
        yield from itertools.combinations(items, r)
