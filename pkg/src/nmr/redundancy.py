"""Redundancy decision procedures for default theories.

A clause (or default) is redundant when removing it preserves the chosen
equivalence; a background formula (or default set) is redundant when some
proper subset is equivalent.  Subset searches run by increasing size then
lexicographic order, so witnesses are minimum-cardinality equivalent subsets.

Unlike classical logic, these notions are not local in general: the built-in
fixture theories show backgrounds whose clauses are all irredundant while the
background itself is redundant, and default sets with the same behaviour
under reiter, rational and constrained semantics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .logic import (
    DEFAULT_VAR_CAP,
    CapExceededError,
    Clause,
    CnfFormula,
    Formula,
    InputError,
    Model,
    _model_of_index,
    truth_mask,
)
from .defaults import (
    DEFAULT_PROCESS_CAP,
    Default,
    DefaultTheory,
    EquivKind,
    Semantics,
    _extension_masks_and_processes,
    dl_entails_theory,
    dl_equivalent,
    extensions,
)

DEFAULT_SUBSET_CAP = 12


@dataclass(frozen=True)
class CounterEvidence:
    """Why an equivalence check failed: which kind, plus a distinguisher."""

    kind: EquivKind
    extension: Formula | None = None  # faithful: present on exactly one side
    model: Model | None = None  # consequence: model of one disjunction only
    clause: Clause | None = None  # mutual: background clause not entailed


@dataclass(frozen=True)
class DlVerdict:
    redundant: bool
    witness_subset: tuple | None = None
    counter_evidence: CounterEvidence | None = None


def _equivalence_evidence(
    t1: DefaultTheory,
    t2: DefaultTheory,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int,
    max_vars: int,
) -> CounterEvidence | None:
    """Evidence for non-equivalence of t1 and t2, or None when equivalent."""
    groups1 = _extension_masks_and_processes(t1, semantics, max_defaults, max_vars, True)
    groups2 = _extension_masks_and_processes(t2, semantics, max_defaults, max_vars, True)
    masks1 = [m for m, _ in groups1]
    masks2 = [m for m, _ in groups2]
    or1 = 0
    for m in masks1:
        or1 |= m
    or2 = 0
    for m in masks2:
        or2 |= m

    if kind is EquivKind.MUTUAL:
        for theory, or_mask in ((t2, or1), (t1, or2)):
            for c in theory.background:
                if or_mask & ~truth_mask(c, theory.universe, max_vars) != 0:
                    return CounterEvidence(kind, clause=c)
        return None

    if kind is EquivKind.CONSEQUENCE:
        diff = or1 ^ or2
        if diff == 0:
            return None
        index = (diff & -diff).bit_length() - 1
        return CounterEvidence(kind, model=_model_of_index(index, t1.universe))

    if set(masks1) == set(masks2):
        return None
    # rebuild the distinguishing extension's formula from whichever side has it
    for theory, own, other in ((t1, masks1, set(masks2)), (t2, masks2, set(masks1))):
        for m in own:
            if m not in other:
                for e in extensions(theory, semantics, max_defaults, max_vars):
                    if truth_mask(e.formula, theory.universe, max_vars) == m:
                        return CounterEvidence(kind, extension=e.formula)
    raise AssertionError("unreachable: extension sets differ without a distinguisher")


def redundant_clause_dl(
    theory: DefaultTheory,
    gamma: Clause,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
) -> DlVerdict:
    """Is `gamma` removable from the background under the chosen equivalence?

    Reduced-vs-full comparisons are done in two steps: first the reduced
    theory must skeptically entail the full background (for subsets all three
    entailment directions coincide, so this settles the mutual kind), then
    the remaining direction is checked per kind.
    """
    if gamma not in theory.background:
        raise InputError(f"clause {gamma} not in background")
    reduced = theory.without_clause(gamma)
    if not dl_entails_theory(reduced, theory, semantics, EquivKind.MUTUAL, max_defaults, max_vars):
        evidence = _equivalence_evidence(
            reduced, theory, semantics, EquivKind.MUTUAL, max_defaults, max_vars
        )
        return DlVerdict(False, counter_evidence=evidence)
    if kind is EquivKind.MUTUAL:
        return DlVerdict(True, witness_subset=reduced.background.sorted_clauses())
    evidence = _equivalence_evidence(reduced, theory, semantics, kind, max_defaults, max_vars)
    if evidence is None:
        return DlVerdict(True, witness_subset=reduced.background.sorted_clauses())
    return DlVerdict(False, counter_evidence=evidence)


def redundant_formula_dl(
    theory: DefaultTheory,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    max_subset: int = DEFAULT_SUBSET_CAP,
) -> DlVerdict:
    """Does some proper subset of the background preserve the equivalence?"""
    clauses = theory.background.sorted_clauses()
    if len(clauses) > max_subset:
        raise CapExceededError(
            f"background has {len(clauses)} clauses, exceeding the subset-search cap"
            f" of {max_subset}"
        )
    for size in range(len(clauses)):
        for subset in itertools.combinations(clauses, size):
            candidate = theory.with_background(CnfFormula(subset))
            if dl_equivalent(candidate, theory, semantics, kind, max_defaults, max_vars):
                return DlVerdict(True, witness_subset=subset)
    return DlVerdict(False)


def redundant_default(
    theory: DefaultTheory,
    d: Default,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
) -> DlVerdict:
    """Is removing the default invisible under the chosen equivalence?"""
    reduced = theory.without_default(d)
    evidence = _equivalence_evidence(reduced, theory, semantics, kind, max_defaults, max_vars)
    if evidence is None:
        return DlVerdict(True, witness_subset=reduced.defaults)
    return DlVerdict(False, counter_evidence=evidence)


def redundant_default_set(
    theory: DefaultTheory,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    max_subset: int = DEFAULT_PROCESS_CAP,
) -> DlVerdict:
    """Does some proper subset of the defaults preserve the equivalence?"""
    if len(theory.defaults) > max_subset:
        raise CapExceededError(
            f"theory has {len(theory.defaults)} defaults, exceeding the subset-search cap"
            f" of {max_subset}"
        )
    for size in range(len(theory.defaults)):
        for subset in itertools.combinations(theory.defaults, size):
            candidate = theory.with_defaults(subset)
            if dl_equivalent(candidate, theory, semantics, kind, max_defaults, max_vars):
                return DlVerdict(True, witness_subset=subset)
    return DlVerdict(False)
