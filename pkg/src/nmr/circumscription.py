"""Minimal-model inference and its redundancy notions.

Clause redundancy under minimal-model equivalence admits three equivalent
formulations (compare minimal-model sets directly, or check that every model
gained by dropping the clause strictly contains a model of the original or of
the reduced formula); all are implemented as selectable strategies plus a
shortcut for positive clauses, which are redundant here exactly when they are
classically redundant.  Gadget constructors extend a formula so that chosen
clauses become irredundant, or so that classical redundancy of a clause turns
into minimal-model redundancy.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .logic import (
    DEFAULT_VAR_CAP,
    Clause,
    CnfFormula,
    CapExceededError,
    FormulaLike,
    InputError,
    Literal,
    Model,
    ModelSet,
    NameCollisionError,
    RESERVED_PREFIX,
    Universe,
    _indices_of_mask,
    _model_of_index,
    classically_redundant_clause,
    negate_clause,
    truth_mask,
)


class RedundancyStrategy(Enum):
    DEFINITIONAL = "definitional"
    CONTAINMENT_FULL = "containment-in-pi"
    CONTAINMENT_REMOVED = "containment-in-pi-minus-gamma"
    POSITIVE_SHORTCUT = "positive-shortcut"


@dataclass(frozen=True)
class CircVerdict:
    redundant: bool
    witness_model: Model | None = None  # irredundant clause: gained minimal model
    witness_clause: Clause | None = None  # redundant formula: first redundant clause


# Internally a model over an n-variable universe is the n-bit integer whose
# bit (n-1-k) is the value of variable k; this is exactly the assignment index,
# so ascending integers are the canonical model order and subset testing is a
# single AND.


def _varint_models(f: FormulaLike, universe: Universe, max_vars: int) -> list[int]:
    return list(_indices_of_mask(truth_mask(f, universe, max_vars)))


def _minimal_varints(models: list[int]) -> list[int]:
    kept: list[int] = []
    for m in sorted(models, key=lambda m: (m.bit_count(), m)):
        if not any(mm & m == mm for mm in kept if mm != m):
            kept.append(m)
    return sorted(kept)


def _minimal_of(f: FormulaLike, universe: Universe, max_vars: int) -> list[int]:
    return _minimal_varints(_varint_models(f, universe, max_vars))


def _contains_strictly_smaller(m: int, pool: list[int]) -> bool:
    return any(p != m and p & m == p for p in pool)


def circ(pi: FormulaLike, universe: Universe, max_vars: int = DEFAULT_VAR_CAP) -> ModelSet:
    """The set of subset-minimal models of `pi`."""
    minimal = _minimal_of(pi, universe, max_vars)
    return ModelSet(universe, tuple(_model_of_index(i, universe) for i in minimal))


def circ_entails(
    pi: FormulaLike,
    gamma: FormulaLike,
    universe: Universe,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    """True iff every minimal model of `pi` satisfies `gamma`."""
    gmask = truth_mask(gamma, universe, max_vars)
    return all((gmask >> i) & 1 for i in _minimal_of(pi, universe, max_vars))


def circ_equivalent(
    pi: FormulaLike,
    gamma: FormulaLike,
    universe: Universe,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    return _minimal_of(pi, universe, max_vars) == _minimal_of(gamma, universe, max_vars)


def _irredundancy_witness(
    pi: CnfFormula, gamma: Clause, universe: Universe, max_vars: int
) -> Model | None:
    """First minimal model of pi\\{gamma} + ~gamma containing no model of pi."""
    gained = pi.removing(gamma).union(negate_clause(gamma))
    min_gained = _minimal_of(gained, universe, max_vars)
    min_pi = _minimal_of(pi, universe, max_vars)
    for m in min_gained:
        if not _contains_strictly_smaller(m, min_pi):
            return _model_of_index(m, universe)
    return None


def circ_redundant_clause(
    pi: CnfFormula,
    gamma: Clause,
    universe: Universe,
    strategy: RedundancyStrategy = RedundancyStrategy.CONTAINMENT_REMOVED,
    max_vars: int = DEFAULT_VAR_CAP,
) -> CircVerdict:
    """Is dropping `gamma` from `pi` invisible to minimal-model inference?

    Every model a clause removal gains satisfies the negation of the removed
    clause, so it suffices to look at the minimal models of
    pi\\{gamma} + ~gamma and ask whether each strictly contains a model of
    `pi` (equivalently, of pi\\{gamma}).  The witness reported for an
    irredundant clause is the first such minimal model containing none.
    """
    if gamma not in pi:
        raise InputError(f"clause {gamma} not in formula")
    if strategy is RedundancyStrategy.POSITIVE_SHORTCUT and not gamma.is_positive:
        raise InputError("positive-shortcut strategy requires a positive clause")

    if strategy is RedundancyStrategy.POSITIVE_SHORTCUT:
        redundant = classically_redundant_clause(pi, gamma, universe, max_vars)
    elif strategy is RedundancyStrategy.DEFINITIONAL:
        redundant = circ_equivalent(pi.removing(gamma), pi, universe, max_vars)
    else:
        gained = pi.removing(gamma).union(negate_clause(gamma))
        min_gained = _minimal_of(gained, universe, max_vars)
        ref = pi if strategy is RedundancyStrategy.CONTAINMENT_FULL else pi.removing(gamma)
        min_ref = _minimal_of(ref, universe, max_vars)
        redundant = all(_contains_strictly_smaller(m, min_ref) for m in min_gained)

    if redundant:
        return CircVerdict(True)
    return CircVerdict(False, witness_model=_irredundancy_witness(pi, gamma, universe, max_vars))


def circ_redundant_formula(
    pi: CnfFormula,
    universe: Universe,
    strategy: RedundancyStrategy = RedundancyStrategy.CONTAINMENT_REMOVED,
    max_vars: int = DEFAULT_VAR_CAP,
) -> CircVerdict:
    """Local redundancy holds here, so a per-clause scan decides the formula.

    The witness is the first redundant clause in canonical clause order.
    """
    for gamma in pi:
        verdict = circ_redundant_clause(pi, gamma, universe, strategy, max_vars)
        if verdict.redundant:
            return CircVerdict(True, witness_clause=gamma)
    return CircVerdict(False)


def primed(name: str) -> str:
    return name + "__p"


def lift_negative_clause(
    pi: CnfFormula, gamma: Clause, universe: Universe
) -> tuple[CnfFormula, Universe]:
    """Add {x | x' } companions for the negative literals of `gamma`.

    In the output, `gamma` is minimal-model-redundant exactly when it is
    classically redundant in `pi`.  Positive clauses come back unchanged.
    """
    if gamma not in pi:
        raise InputError(f"clause {gamma} not in formula")
    neg_vars = [v for v in universe.vars if Literal(v, False) in gamma.literals]
    if not neg_vars:
        return pi, universe
    fresh = [primed(v) for v in neg_vars]
    out_universe = universe.extended(fresh)
    companions = [Clause([Literal(v), Literal(primed(v))]) for v in neg_vars]
    return pi.adding(*companions), out_universe


def _check_reserved_free(universe: Universe) -> None:
    bad = sorted(v for v in universe.vars if v.startswith(RESERVED_PREFIX))
    if bad:
        raise NameCollisionError(
            f"input universe uses reserved names: {', '.join(bad)}"
        )


def make_irredundant_circ(
    pi: CnfFormula,
    protected: CnfFormula,
    universe: Universe,
    max_vars: int = DEFAULT_VAR_CAP,
) -> tuple[CnfFormula, Universe]:
    """Rebuild `pi` so only guarded copies of protected clauses can be redundant.

    The output splits into seven clause families driven by two selector
    variables s and t; in the result, the only clauses that can be
    minimal-model-redundant are the guarded copies ~s | ~t | gamma of
    protected clauses gamma, and such a copy is redundant exactly when gamma
    is redundant in `pi`.  Requires `pi` consistent.
    """
    _check_reserved_free(universe)
    for c in protected:
        if c not in pi:
            raise InputError(f"protected clause {c} not in formula")
    if truth_mask(pi, universe, max_vars) == 0:
        raise InputError("formula must be consistent")

    order = pi.sorted_clauses()
    m = len(order)
    s, t, a, b = "__g_s", "__g_t", "__g_a", "__g_b"
    cs = [f"__g_c{i}" for i in range(1, m + 1)]
    ds = [f"__g_d{i}" for i in range(1, m + 1)]
    pi_vars = [v for v in universe.vars if v in pi.variables()]
    primes = [primed(v) for v in pi_vars]
    out_universe = universe.extended([s, t, a, b] + cs + ds + primes)

    out: list[Clause] = [Clause([Literal(s), Literal(t)])]
    out += [Clause([Literal(s), Literal(a)]), Clause([Literal(t), Literal(b)])]
    for i in range(m):
        out.append(Clause([Literal(s, False), Literal(t), Literal(cs[i]), Literal(ds[i])]))
        out.append(Clause([Literal(s, False), Literal(cs[i], False)]))
    for i, gamma in enumerate(order):
        if gamma not in protected:
            out.append(gamma.disjoined([Literal(t, False), Literal(cs[i])]))
    for v in pi_vars:
        out.append(Clause([Literal(s), Literal(t, False), Literal(v), Literal(primed(v))]))
    for i, gamma in enumerate(order):
        if gamma in protected:
            out.append(gamma.disjoined([Literal(s, False), Literal(t, False)]))
    return CnfFormula(out), out_universe


def guarded_protected_clause(gamma: Clause) -> Clause:
    """The ~s | ~t | gamma copy a protected clause gets in the construction."""
    return gamma.disjoined([Literal("__g_s", False), Literal("__g_t", False)])
