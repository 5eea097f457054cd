"""Theory surgery: clause/default embeddings and irredundancy-forcing gadgets.

These constructors rewrite a default theory while controlling exactly which
parts can remain redundant: moving background clauses into always-applicable
defaults, protecting chosen clauses or defaults behind selector variables,
moving a literal between a justification and the background, and the
two-in-one gadget that merges the `w` and `~w` variants of a theory into one
whose redundancy decides their disjunction.  Folding two-in-one over a list
of variables raises a QBF reduction by one existential quantifier per
variable.

Fresh variables use the reserved "__g" namespace (plus the __pos/__neg/__p
suffix conventions); constructors reject inputs that would collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .logic import (
    And,
    DEFAULT_VAR_CAP,
    Clause,
    CnfFormula,
    Formula,
    InputError,
    Literal,
    NameCollisionError,
    Not,
    RESERVED_PREFIX,
    TRUE,
    Universe,
    Var,
    classically_redundant_formula,
    conj,
    disj,
    neg,
    truth_mask,
)
from .defaults import Default, DefaultTheory


@dataclass(frozen=True)
class ReductionHost:
    """A theory whose single designated default carries a QBF matrix.

    The matrix appears only inside the justification of `f_default` (as the
    conjunct alongside `beta`), and the background is classically
    irredundant; both properties are what the raising construction needs and
    both are preserved by it.
    """

    theory: DefaultTheory
    f_default: str  # name of the matrix-carrying default
    matrix: Formula
    beta: Formula = TRUE

    def __post_init__(self) -> None:
        d = self.theory.default_named(self.f_default)
        if d.just != host_justification(self.matrix, self.beta):
            raise InputError(
                f"justification of {self.f_default!r} is not matrix & beta as declared"
            )

    def carrier(self) -> Default:
        return self.theory.default_named(self.f_default)


def host_justification(matrix: Formula, beta: Formula) -> Formula:
    return conj([matrix, beta])


class FreshNamer:
    """Deterministic fresh-name source for gadget variables."""

    def __init__(self, universe: Universe):
        self.taken = set(universe.vars)

    def exact(self, name: str) -> str:
        if name in self.taken:
            raise NameCollisionError(f"gadget variable {name!r} already in universe")
        self.taken.add(name)
        return name

    def numbered(self, base: str) -> str:
        """`base`, or the first of base2, base3, ... that is free."""
        if base not in self.taken:
            self.taken.add(base)
            return base
        i = 2
        while f"{base}{i}" in self.taken:
            i += 1
        name = f"{base}{i}"
        self.taken.add(name)
        return name


def clause_to_default(gamma: Clause, name: str = "d_gamma") -> Default:
    """The always-applicable default : true / gamma.

    Moving a background clause into such a default preserves reiter and
    rational extension sets (not asserted for justified or constrained).
    """
    return Default(name, TRUE, TRUE, gamma.to_formula())


def embed_clauses_as_defaults(theory: DefaultTheory) -> DefaultTheory:
    """Replace the whole background with always-applicable defaults."""
    taken = {d.name for d in theory.defaults}
    new_defaults = list(theory.defaults)
    i = 0
    for gamma in theory.background:
        i += 1
        name = f"w{i}"
        while name in taken:
            name = f"w{i}_"
        taken.add(name)
        new_defaults.append(clause_to_default(gamma, name))
    return DefaultTheory(tuple(new_defaults), CnfFormula(), theory.universe)


def _check_consistent_background(theory: DefaultTheory, max_vars: int) -> None:
    if truth_mask(theory.background, theory.universe, max_vars) == 0:
        raise InputError("background must be consistent")


def _check_reserved_free(universe: Universe) -> None:
    bad = sorted(v for v in universe.vars if v.startswith(RESERVED_PREFIX))
    if bad:
        raise NameCollisionError(f"input universe uses reserved names: {', '.join(bad)}")


def protected_clause(gamma: Clause, index: int) -> Clause:
    """The c_i | gamma form a background clause takes in the construction."""
    return gamma.disjoined([Literal(f"__g_c{index}")])


def make_clauses_irredundant(
    theory: DefaultTheory,
    protected: CnfFormula,
    max_vars: int = DEFAULT_VAR_CAP,
) -> DefaultTheory:
    """Guard each background clause behind a fresh selector c_i.

    Output background: {c_i | gamma_i}.  One selector-off default restores
    the original behaviour; each protected clause gains a default that only
    fires while its guarded copy is present, pinning it inside every
    equivalent subset; the original defaults are gated on all selectors off.
    Requires a consistent background.
    """
    _check_reserved_free(theory.universe)
    for c in protected:
        if c not in theory.background:
            raise InputError(f"protected clause {c} not in background")
    _check_consistent_background(theory, max_vars)

    order = theory.background.sorted_clauses()
    m = len(order)
    namer = FreshNamer(theory.universe)
    cs = [namer.exact(f"__g_c{i}") for i in range(1, m + 1)]
    universe = theory.universe.extended(cs)
    all_off = conj([Not(Var(c)) for c in cs])

    background = CnfFormula(protected_clause(g, i + 1) for i, g in enumerate(order))
    defaults: list[Default] = [Default("all_c_off", TRUE, all_off, all_off)]
    for i, gamma in enumerate(order):
        if gamma in protected:
            pick = conj(
                [Var(cs[i])] + [Not(Var(cs[j])) for j in range(m) if j != i]
            )
            defaults.append(
                Default(f"protect_{i + 1}", protected_clause(gamma, i + 1).to_formula(), pick, pick)
            )
    for d in theory.defaults:
        defaults.append(Default(d.name, conj([all_off, d.prec]), d.just, d.cons))
    return DefaultTheory(tuple(defaults), background, universe)


def make_defaults_irredundant(
    theory: DefaultTheory,
    protected: Iterable[Default],
    max_vars: int = DEFAULT_VAR_CAP,
) -> DefaultTheory:
    """Protect chosen defaults against removal via a p/q selector pair.

    The output keeps the original behaviour on the p-branch (every original
    extension reappears conjoined with p & q) and adds a single ~p-branch
    extension ~p & q & v_1 & ... & v_k that needs every protected default to
    fire; any equivalent default subset must therefore keep d+, d- and all
    protected defaults.  Requires a consistent background.
    """
    _check_reserved_free(theory.universe)
    protected = tuple(protected)
    for d in protected:
        if d not in theory.defaults:
            raise InputError(f"protected default {d.name!r} not in theory")
    _check_consistent_background(theory, max_vars)

    namer = FreshNamer(theory.universe)
    p = namer.exact("__g_p")
    q = namer.exact("__g_q")
    vs = {d: namer.exact(f"__g_v{i + 1}") for i, d in enumerate(protected)}
    universe = theory.universe.extended([p, q] + [vs[d] for d in protected])

    pq = conj([Var(p), Var(q)])
    npq = conj([Not(Var(p)), Var(q)])
    defaults: list[Default] = [
        Default("d_plus", TRUE, pq, pq),
        Default("d_minus", TRUE, npq, npq),
    ]
    for d in theory.defaults:
        if d in vs:
            defaults.append(
                Default(
                    d.name,
                    conj([Var(q), disj([Not(Var(p)), d.prec])]),
                    disj([Not(Var(p)), d.just]),
                    conj([disj([Var(p), Var(vs[d])]), disj([Not(Var(p)), d.cons])]),
                )
            )
        else:
            defaults.append(Default(d.name, conj([Var(q), Var(p), d.prec]), d.just, d.cons))
    return DefaultTheory(tuple(defaults), theory.background, universe)


def move_just_literal(
    theory: DefaultTheory,
    d: Default,
    literal: Literal,
    direction: str,
) -> DefaultTheory:
    """Move `literal` between just(d) and the background (a unit clause).

    Legal only when the literal's variable occurs nowhere else in the theory
    (background, other defaults, prec(d), cons(d)); then the two theories
    have the same processes modulo the rewritten default.  `direction` is
    "to-background" (strip the literal, which must be the last conjunct of
    the justification, and add the unit clause) or "to-justification".
    """
    if d not in theory.defaults:
        raise InputError(f"default {d.name!r} not in theory")
    v = literal.var
    lit_formula = literal.to_formula()
    unit = Clause([literal])
    mentioned = set(d.prec.variables()) | set(d.cons.variables())
    for other in theory.defaults:
        if other != d:
            mentioned |= (
                other.prec.variables() | other.just.variables() | other.cons.variables()
            )
    background_rest = (
        theory.background.removing(unit)
        if direction == "to-justification"
        else theory.background
    )
    mentioned |= background_rest.variables()
    if v in mentioned:
        raise InputError(f"variable {v!r} of the moved literal occurs elsewhere in the theory")
    if direction == "to-background":
        just = d.just
        if just == lit_formula:
            beta: Formula = TRUE
        elif isinstance(just, And) and just.parts[-1] == lit_formula:
            beta = conj(just.parts[:-1])
        else:
            raise InputError("justification is not of the shape beta & literal")
        new_d = Default(d.name, d.prec, beta, d.cons)
        background = theory.background.adding(unit)
    elif direction == "to-justification":
        if unit not in theory.background:
            raise InputError(f"unit clause {unit} not in background")
        new_d = Default(d.name, d.prec, conj([d.just, lit_formula]), d.cons)
        background = theory.background.removing(unit)
    else:
        raise InputError(f"unknown direction {direction!r}")
    defaults = tuple(new_d if e == d else e for e in theory.defaults)
    return DefaultTheory(defaults, background, theory.universe)


def two_in_one(
    host: ReductionHost,
    w: str,
    max_vars: int = DEFAULT_VAR_CAP,
) -> ReductionHost:
    """Merge the `w`-pinned and `~w`-pinned variants of the host theory.

    The output theory is redundant exactly when some proper background
    subset works for at least one pinned variant: a subset keeps exactly one
    of the fresh units w+ / w- to choose the polarity, its test branch then
    runs the original theory over the kept background clauses, and a mirror
    branch (keyed on the kept unit) regenerates the other polarity's
    extensions over the full background, so only the chosen polarity is
    actually probed.  The twin unit is restored only once the full
    background has been re-derived, which is exactly where every default
    keyed on that unit is a no-op.  Blocker defaults derive ~p (underivable
    from the full background) for every subset that keeps both units, drops
    both, or drops a unit without touching the rest, so no other subset can
    be equivalent.  Requires a classically irredundant background and `w`
    confined to the matrix slot.
    """
    theory = host.theory
    if classically_redundant_formula(theory.background, theory.universe, max_vars):
        raise InputError("host background must be classically irredundant")
    outside = set(theory.background.variables())
    for d in theory.defaults:
        outside |= d.prec.variables() | d.cons.variables()
        if d.name != host.f_default:
            outside |= d.just.variables()
    outside |= host.beta.variables()
    if w in outside:
        raise InputError(f"variable {w!r} must occur only in the matrix slot")

    namer = FreshNamer(theory.universe)
    wpos = namer.exact(f"{w}__pos")
    wneg = namer.exact(f"{w}__neg")
    p = namer.numbered("__g_p")
    added = ([w] if w not in theory.universe else []) + [wpos, wneg, p]
    universe = theory.universe.extended(added)

    all_w = theory.background.to_formula()
    np = Not(Var(p))
    wp = conj([Var(w), Var(p)])
    nwp = conj([Not(Var(w)), Var(p)])
    defaults: list[Default] = [
        Default(f"{w}_both", conj([Var(wpos), Var(wneg)]), conj([neg(all_w), np]), np),
        Default(f"{w}_neither", TRUE, conj([Not(Var(wpos)), Not(Var(wneg))]), np),
        Default(f"{w}_true", Var(wpos), wp, wp),
        Default(f"{w}_false", Var(wneg), nwp, nwp),
        Default(f"{w}_true_mirror", Var(wneg), wp, conj([wp, Var(wpos), all_w])),
        Default(f"{w}_false_mirror", Var(wpos), nwp, conj([nwp, Var(wneg), all_w])),
        Default(f"{w}_restore_neg", conj([wp, all_w]), TRUE, Var(wneg)),
        Default(f"{w}_restore_pos", conj([nwp, all_w]), TRUE, Var(wpos)),
        Default(f"{w}_lost_neg", conj([all_w, Var(wpos)]), Not(Var(wneg)), np),
        Default(f"{w}_lost_pos", conj([all_w, Var(wneg)]), Not(Var(wpos)), np),
    ]
    for d in theory.defaults:
        defaults.append(Default(d.name, conj([Var(p), d.prec]), d.just, d.cons))
    background = theory.background.adding(Clause([Literal(wpos)]), Clause([Literal(wneg)]))
    out = DefaultTheory(tuple(defaults), background, universe)
    return ReductionHost(out, host.f_default, host.matrix, host.beta)


def raise_existential(
    host: ReductionHost,
    ws: Iterable[str],
    max_vars: int = DEFAULT_VAR_CAP,
) -> ReductionHost:
    """Fold two_in_one left-to-right over the variables of an exists-block."""
    out = host
    for w in ws:
        out = two_in_one(out, w, max_vars)
    return out
