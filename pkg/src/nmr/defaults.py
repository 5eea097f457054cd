"""Operational semantics of default logic.

A default theory is explored through its processes: duplicate-free default
sequences in which each precondition follows from the background plus the
consequences applied so far.  Four selection disciplines (reiter, justified,
constrained, rational) pick out the selected processes; each one generates
the extension background & consequences.

The search walks the process tree depth-first in default-index order, which
makes the output order lexicographic.  Consequence and justification sets
only shrink along a branch, so a branch whose success condition already
failed can never recover and is pruned; this is what keeps the enumeration
tractable for the reduction-sized theories (a dozen defaults) used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .logic import (
    DEFAULT_VAR_CAP,
    CapExceededError,
    CnfFormula,
    Formula,
    FormulaLike,
    InputError,
    TRUE,
    Universe,
    as_formula,
    conj,
    truth_mask,
)

DEFAULT_PROCESS_CAP = 8


class Semantics(Enum):
    REITER = "reiter"
    JUSTIFIED = "justified"
    CONSTRAINED = "constrained"
    RATIONAL = "rational"


class EquivKind(Enum):
    MUTUAL = "mutual"
    CONSEQUENCE = "consequence"
    FAITHFUL = "faithful"


@dataclass(frozen=True)
class Default:
    """A rule prec : just / cons with a single justification."""

    name: str
    prec: Formula
    just: Formula
    cons: Formula

    @property
    def is_categorical(self) -> bool:
        return self.prec == TRUE

    @property
    def is_normal(self) -> bool:
        return self.just == self.cons

    def __str__(self) -> str:
        from .formats import print_formula

        return (
            f"{self.name}: {print_formula(self.prec)} : "
            f"{print_formula(self.just)} / {print_formula(self.cons)}"
        )


@dataclass(frozen=True)
class DefaultTheory:
    defaults: tuple[Default, ...]
    background: CnfFormula
    universe: Universe

    def __post_init__(self) -> None:
        names = [d.name for d in self.defaults]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate default names: {names}")
        used = self.background.variables()
        for d in self.defaults:
            used |= d.prec.variables() | d.just.variables() | d.cons.variables()
        self.universe.require(used)

    def default_named(self, name: str) -> Default:
        for d in self.defaults:
            if d.name == name:
                return d
        raise InputError(f"no default named {name!r}")

    def with_background(self, background: CnfFormula) -> "DefaultTheory":
        return DefaultTheory(self.defaults, background, self.universe)

    def with_defaults(self, defaults: Iterable[Default]) -> "DefaultTheory":
        return DefaultTheory(tuple(defaults), self.background, self.universe)

    def without_default(self, d: Default) -> "DefaultTheory":
        if d not in self.defaults:
            raise InputError(f"default {d.name!r} not in theory")
        return self.with_defaults(e for e in self.defaults if e != d)

    def without_clause(self, gamma) -> "DefaultTheory":
        if gamma not in self.background:
            raise InputError(f"clause {gamma} not in background")
        return self.with_background(self.background.removing(gamma))

    def background_formula(self) -> Formula:
        return self.background.to_formula()


@dataclass(frozen=True)
class Extension:
    """background & cons(process), with every process that generates it."""

    formula: Formula
    generating_processes: tuple[tuple[Default, ...], ...]


ProcessSeq = Sequence[Default]


def _resolve_indices(theory: DefaultTheory, seq: ProcessSeq) -> list[int]:
    indices = []
    for d in seq:
        if d not in theory.defaults:
            raise InputError(f"default {d.name!r} not in theory")
        indices.append(theory.defaults.index(d))
    if len(set(indices)) != len(indices):
        raise InputError("process contains a duplicate default")
    return indices


class _Engine:
    """Mask-compiled view of a theory plus the per-semantics predicates."""

    def __init__(
        self,
        theory: DefaultTheory,
        semantics: Semantics,
        max_vars: int,
        rational_joint_success: bool,
    ):
        self.theory = theory
        self.semantics = semantics
        self.rational_joint_success = rational_joint_success
        u = theory.universe
        self.full = (1 << (1 << len(u))) - 1
        self.w_mask = truth_mask(theory.background, u, max_vars)
        self.not_prec = [self.full ^ truth_mask(d.prec, u, max_vars) for d in theory.defaults]
        self.just = [truth_mask(d.just, u, max_vars) for d in theory.defaults]
        self.cons = [truth_mask(d.cons, u, max_vars) for d in theory.defaults]
        self.n = len(theory.defaults)

    def entailed_prec(self, cons_mask: int, i: int) -> bool:
        return cons_mask & self.not_prec[i] == 0

    def successful(self, seq: tuple[int, ...], cons_mask: int, just_all: int) -> bool:
        if self.semantics in (Semantics.REITER, Semantics.JUSTIFIED):
            return all(cons_mask & self.just[i] != 0 for i in seq)
        if self.semantics is Semantics.CONSTRAINED:
            return cons_mask & just_all != 0
        if self.rational_joint_success:
            return cons_mask & just_all != 0
        return True

    def closed(self, used: int, seq: tuple[int, ...], cons_mask: int, just_all: int) -> bool:
        for i in range(self.n):
            if used >> i & 1:
                continue
            if not self.entailed_prec(cons_mask, i):
                continue
            if self.semantics is Semantics.REITER:
                if cons_mask & self.just[i] != 0:  # locally applicable outsider
                    return False
            elif self.semantics is Semantics.JUSTIFIED:
                new_cons = cons_mask & self.cons[i]
                if new_cons & self.just[i] != 0 and all(
                    new_cons & self.just[j] != 0 for j in seq
                ):
                    return False
            elif self.semantics is Semantics.CONSTRAINED:
                if cons_mask & self.cons[i] & just_all & self.just[i] != 0:
                    return False
            else:  # rational: globally applicable outsider
                if cons_mask & just_all & self.just[i] != 0:
                    return False
        return True

    def selected(self, seq: tuple[int, ...]) -> bool:
        cons_mask = self.w_mask
        just_all = self.full
        used = 0
        for i in seq:
            if not self.entailed_prec(cons_mask, i):
                return False  # not a process
            cons_mask &= self.cons[i]
            just_all &= self.just[i]
            used |= 1 << i
        return self.successful(seq, cons_mask, just_all) and self.closed(
            used, seq, cons_mask, just_all
        )

    def search(self) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        prune = self.semantics is not Semantics.RATIONAL or self.rational_joint_success

        def visit(seq: tuple[int, ...], used: int, cons_mask: int, just_all: int) -> None:
            ok = self.successful(seq, cons_mask, just_all)
            if prune and not ok:
                return
            if ok and self.closed(used, seq, cons_mask, just_all):
                out.append(seq)
            for i in range(self.n):
                if used >> i & 1:
                    continue
                if self.entailed_prec(cons_mask, i):
                    visit(
                        seq + (i,),
                        used | 1 << i,
                        cons_mask & self.cons[i],
                        just_all & self.just[i],
                    )

        visit((), 0, self.w_mask, self.full)
        return out


def _engine(
    theory: DefaultTheory,
    semantics: Semantics,
    max_vars: int,
    max_defaults: int,
    rational_joint_success: bool,
) -> _Engine:
    if len(theory.defaults) > max_defaults:
        raise CapExceededError(
            f"theory has {len(theory.defaults)} defaults, exceeding the process-search cap"
            f" of {max_defaults}"
        )
    return _Engine(theory, semantics, max_vars, rational_joint_success)


def is_process(theory: DefaultTheory, seq: ProcessSeq, max_vars: int = DEFAULT_VAR_CAP) -> bool:
    """Each default's precondition follows from W plus earlier consequences."""
    indices = _resolve_indices(theory, seq)
    eng = _Engine(theory, Semantics.REITER, max_vars, True)
    cons_mask = eng.w_mask
    for i in indices:
        if not eng.entailed_prec(cons_mask, i):
            return False
        cons_mask &= eng.cons[i]
    return True


def locally_applicable(
    theory: DefaultTheory, seq: ProcessSeq, d: Default, max_vars: int = DEFAULT_VAR_CAP
) -> bool:
    """prec(d) entailed and just(d) consistent, both against W + cons(seq)."""
    if d in seq:
        raise InputError(f"default {d.name!r} already in the sequence")
    indices = _resolve_indices(theory, seq)
    i = theory.defaults.index(d) if d in theory.defaults else None
    if i is None:
        raise InputError(f"default {d.name!r} not in theory")
    eng = _Engine(theory, Semantics.REITER, max_vars, True)
    cons_mask = eng.w_mask
    for j in indices:
        cons_mask &= eng.cons[j]
    return eng.entailed_prec(cons_mask, i) and cons_mask & eng.just[i] != 0


def globally_applicable(
    theory: DefaultTheory, seq: ProcessSeq, d: Default, max_vars: int = DEFAULT_VAR_CAP
) -> bool:
    """Locally applicable, and W + cons(seq) consistent with just(seq . [d])."""
    if not locally_applicable(theory, seq, d, max_vars):
        return False
    indices = _resolve_indices(theory, seq)
    i = theory.defaults.index(d)
    eng = _Engine(theory, Semantics.REITER, max_vars, True)
    cons_mask = eng.w_mask
    just_all = eng.full
    for j in indices:
        cons_mask &= eng.cons[j]
        just_all &= eng.just[j]
    return cons_mask & just_all & eng.just[i] != 0


def selected_processes(
    theory: DefaultTheory,
    semantics: Semantics,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> list[tuple[Default, ...]]:
    """All selected processes, in lexicographic order of default indices.

    Success/closure per semantics: reiter wants every applied justification
    individually consistent with the outcome and no locally applicable
    outsider; justified wants the same success but non-extendability by any
    single default keeping it successful; constrained wants the justifications
    jointly consistent with the outcome and non-extendability under that joint
    reading; rational wants joint success (see `rational_joint_success`) and
    no globally applicable outsider.
    """
    eng = _engine(theory, semantics, max_vars, max_defaults, rational_joint_success)
    return [tuple(theory.defaults[i] for i in seq) for seq in eng.search()]


def _extension_masks_and_processes(
    theory: DefaultTheory,
    semantics: Semantics,
    max_defaults: int,
    max_vars: int,
    rational_joint_success: bool,
) -> list[tuple[int, list[tuple[int, ...]]]]:
    """(mask, generating index-sequences) per extension, in first-seen order."""
    eng = _engine(theory, semantics, max_vars, max_defaults, rational_joint_success)
    by_mask: dict[int, list[tuple[int, ...]]] = {}
    order: list[int] = []
    for seq in eng.search():
        mask = eng.w_mask
        for i in seq:
            mask &= eng.cons[i]
        if mask not in by_mask:
            by_mask[mask] = []
            order.append(mask)
        by_mask[mask].append(seq)
    return [(m, by_mask[m]) for m in order]


def _extension_masks(
    theory: DefaultTheory,
    semantics: Semantics,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> list[int]:
    return [
        m
        for m, _ in _extension_masks_and_processes(
            theory, semantics, max_defaults, max_vars, rational_joint_success
        )
    ]


def extensions(
    theory: DefaultTheory,
    semantics: Semantics,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> list[Extension]:
    """Extensions deduplicated up to logical equivalence.

    The representative formula comes from the lexicographically first
    generating process; the output is ordered by that process as well.
    """
    groups = _extension_masks_and_processes(
        theory, semantics, max_defaults, max_vars, rational_joint_success
    )
    result = []
    for _, seqs in groups:
        first = seqs[0]
        formula = conj(
            [theory.background_formula()] + [theory.defaults[i].cons for i in first]
        )
        processes = tuple(tuple(theory.defaults[i] for i in seq) for seq in seqs)
        result.append(Extension(formula, processes))
    return result


def dl_entails(
    theory: DefaultTheory,
    semantics: Semantics,
    phi: FormulaLike,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> bool:
    """Skeptical entailment: every extension entails phi (vacuous if none)."""
    phi_mask = truth_mask(phi, theory.universe, max_vars)
    return all(
        m & ~phi_mask == 0
        for m in _extension_masks(
            theory, semantics, max_defaults, max_vars, rational_joint_success
        )
    )


def _check_shared_universe(t1: DefaultTheory, t2: DefaultTheory) -> None:
    if t1.universe != t2.universe:
        raise InputError("theories must share a universe")


def dl_entails_theory(
    t1: DefaultTheory,
    t2: DefaultTheory,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> bool:
    """One-directional entailment from t1 to t2, per equivalence kind.

    mutual: the disjunction of t1's extensions entails t2's background;
    consequence: it entails the disjunction of t2's extensions;
    faithful: every extension of t1 is an extension of t2.
    """
    _check_shared_universe(t1, t2)
    masks1 = _extension_masks(t1, semantics, max_defaults, max_vars, rational_joint_success)
    if kind is EquivKind.MUTUAL:
        w2 = truth_mask(t2.background, t2.universe, max_vars)
        return all(m & ~w2 == 0 for m in masks1)
    masks2 = _extension_masks(t2, semantics, max_defaults, max_vars, rational_joint_success)
    if kind is EquivKind.CONSEQUENCE:
        or1 = 0
        for m in masks1:
            or1 |= m
        or2 = 0
        for m in masks2:
            or2 |= m
        return or1 & ~or2 == 0
    return set(masks1) <= set(masks2)


def dl_equivalent(
    t1: DefaultTheory,
    t2: DefaultTheory,
    semantics: Semantics,
    kind: EquivKind,
    max_defaults: int = DEFAULT_PROCESS_CAP,
    max_vars: int = DEFAULT_VAR_CAP,
    rational_joint_success: bool = True,
) -> bool:
    """Equivalence of two theories over a shared universe, per kind."""
    _check_shared_universe(t1, t2)
    masks1 = _extension_masks(t1, semantics, max_defaults, max_vars, rational_joint_success)
    masks2 = _extension_masks(t2, semantics, max_defaults, max_vars, rational_joint_success)
    if kind is EquivKind.FAITHFUL:
        return set(masks1) == set(masks2)
    or1 = 0
    for m in masks1:
        or1 |= m
    or2 = 0
    for m in masks2:
        or2 |= m
    if kind is EquivKind.CONSEQUENCE:
        return or1 == or2
    w1 = truth_mask(t1.background, t1.universe, max_vars)
    w2 = truth_mask(t2.background, t2.universe, max_vars)
    return or1 & ~w2 == 0 and or2 & ~w1 == 0


def gen_set(
    E: FormulaLike,
    theory: DefaultTheory,
    max_vars: int = DEFAULT_VAR_CAP,
) -> tuple[Default, ...]:
    """Defaults whose precondition E entails and whose just & cons E tolerates.

    Under justified semantics every selected process generating the extension
    E consists of exactly these defaults.
    """
    u = theory.universe
    e_mask = truth_mask(E, u, max_vars)
    full = (1 << (1 << len(u))) - 1
    picked = []
    for d in theory.defaults:
        prec_ok = e_mask & (full ^ truth_mask(d.prec, u, max_vars)) == 0
        tol_ok = e_mask & truth_mask(d.just, u, max_vars) & truth_mask(d.cons, u, max_vars) != 0
        if prec_ok and tol_ok:
            picked.append(d)
    return tuple(picked)
