"""Prenex QBF evaluation and the hardness reductions as instance generators.

`eval_qbf` is a brute-force game-semantics evaluator and serves as the
independent oracle.  The four `reduce_*` generators emit concrete instances
(a CNF with a distinguished clause, or default theories) whose redundancy or
non-equivalence decides the source QBF; their correctness is checked
extensionally against the oracle on small sweeps rather than proved.

Gadget variables mirror the usual roles (a, p_i, h_i, b, c, d, l_i, s_i,
r_i) but live in the reserved "__g" namespace so they cannot collide with
QBF variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .logic import (
    CapExceededError,
    Clause,
    CnfFormula,
    Formula,
    InputError,
    Literal,
    Not,
    TRUE,
    Universe,
    Var,
    conj,
    disj,
)
from .defaults import Default, DefaultTheory
from .transforms import ReductionHost, host_justification

DEFAULT_QBF_CAP = 16


class Quantifier(Enum):
    FORALL = "forall"
    EXISTS = "exists"


Matrix = Union[Formula, CnfFormula]


@dataclass(frozen=True)
class Qbf:
    """Closed prenex QBF: quantifier blocks plus a matrix.

    `free_vars` lists variables the matrix may mention beyond the prefix;
    they stay unquantified and exist so that a reduction built from this
    object can later have them raised into a leading exists-block.
    """

    prefix: tuple[tuple[Quantifier, tuple[str, ...]], ...]
    matrix: Matrix
    free_vars: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set(self.free_vars)
        if len(self.free_vars) != len(seen):
            raise InputError("duplicate free variables")
        for _, block in self.prefix:
            for v in block:
                if v in seen:
                    raise InputError(f"variable {v!r} bound twice")
                seen.add(v)
        extra = sorted(self.matrix.variables() - seen)
        if extra:
            raise InputError(f"matrix variables not quantified: {', '.join(extra)}")

    def all_vars(self) -> tuple[str, ...]:
        out = list(self.free_vars)
        for _, block in self.prefix:
            out.extend(block)
        return tuple(out)

    def matrix_formula(self) -> Formula:
        return self.matrix if isinstance(self.matrix, Formula) else self.matrix.to_formula()


def eval_qbf(q: Qbf, max_vars: int = DEFAULT_QBF_CAP) -> bool:
    """Game semantics by full expansion; free variables act as universal."""
    total = len(q.all_vars())
    if total > max_vars:
        raise CapExceededError(
            f"QBF has {total} variables, exceeding the evaluation cap of {max_vars}"
        )
    matrix = q.matrix

    def play(level: int, model: frozenset) -> bool:
        if level == len(q.prefix):
            return matrix.evaluate(model)
        quant, block = q.prefix[level]
        combine = all if quant is Quantifier.FORALL else any
        return combine(
            play(level + 1, model | {v for v, bit in zip(block, bits) if bit})
            for bits in itertools.product((False, True), repeat=len(block))
        )

    if not q.free_vars:
        return play(0, frozenset())
    return all(
        play(0, frozenset(v for v, bit in zip(q.free_vars, bits) if bit))
        for bits in itertools.product((False, True), repeat=len(q.free_vars))
    )


@dataclass(frozen=True)
class ReductionOutput:
    """A generated instance plus a note mapping gadget variables to roles."""

    kind: str
    provenance: tuple[tuple[str, str], ...]
    cnf: CnfFormula | None = None
    clause: Clause | None = None
    universe: Universe | None = None
    theory: DefaultTheory | None = None
    theory_pair: tuple[DefaultTheory, DefaultTheory] | None = None
    host: ReductionHost | None = None


def _expect_shape(q: Qbf, shape: tuple[Quantifier, ...]) -> tuple[tuple[str, ...], ...]:
    kinds = tuple(k for k, _ in q.prefix)
    if kinds != shape:
        want = " ".join(s.value for s in shape)
        raise InputError(f"QBF must have prefix shape {want}")
    return tuple(block for _, block in q.prefix)


def reduce_qbf2_to_circ_clause(q: Qbf) -> ReductionOutput:
    """forall X exists Y over a CNF matrix -> (Pi, gamma).

    The QBF is valid iff gamma = ~a | ~y_1 | ... | ~y_n is redundant in Pi
    under minimal-model equivalence.
    """
    xs, ys = _expect_shape(q, (Quantifier.FORALL, Quantifier.EXISTS))
    if q.free_vars:
        raise InputError("circumscription reduction takes a closed QBF")
    if not isinstance(q.matrix, CnfFormula):
        raise InputError("circumscription reduction needs a CNF matrix")
    a = "__g_a"
    ps = [f"__g_p{i}" for i in range(1, len(xs) + 1)]
    universe = Universe(tuple(xs) + tuple(ys)).extended([a] + ps)

    gamma = Clause([Literal(a, False)] + [Literal(y, False) for y in ys])
    clauses = [Clause([Literal(x), Literal(p)]) for x, p in zip(xs, ps)]
    clauses += [Clause([Literal(a, False), Literal(y)]) for y in ys]
    clauses += [delta.disjoined([Literal(a)]) for delta in q.matrix]
    clauses.append(gamma)
    provenance = (("__g_a", "branch selector a"),) + tuple(
        (p, f"companion of {x}") for x, p in zip(xs, ps)
    )
    return ReductionOutput(
        "circ-clause", provenance, cnf=CnfFormula(clauses), clause=gamma, universe=universe
    )


def reduce_qbf2_to_dl_clause(q: Qbf) -> ReductionOutput:
    """forall X exists Y -> default theory where clause `a` probes validity.

    The QBF is valid iff the unit clause a is redundant in the background
    {a} under reiter semantics and faithful equivalence.  The output is a
    valid ReductionHost (the matrix occurs only in one justification and the
    background is classically irredundant), so exists-variables listed as
    `free_vars` can be raised afterwards.
    """
    xs, ys = _expect_shape(q, (Quantifier.FORALL, Quantifier.EXISTS))
    a = "__g_a"
    universe = Universe(q.free_vars + tuple(xs) + tuple(ys)).extended([a])
    matrix = q.matrix_formula()
    defaults: list[Default] = []
    for x in xs:
        defaults.append(Default(f"{x}_true", TRUE, Var(x), Var(x)))
        defaults.append(Default(f"{x}_false", TRUE, Not(Var(x)), Not(Var(x))))
    carrier = Default("matrix", TRUE, host_justification(matrix, Var(a)), Var(a))
    defaults.append(carrier)
    unit_a = Clause([Literal(a)])
    theory = DefaultTheory(tuple(defaults), CnfFormula([unit_a]), universe)
    host = ReductionHost(theory, "matrix", matrix, Var(a))
    return ReductionOutput(
        "dl-clause",
        (("__g_a", "probed background clause"),),
        theory=theory,
        clause=unit_a,
        universe=universe,
        host=host,
    )


def reduce_qbf3_to_dl_cons(q: Qbf) -> ReductionOutput:
    """exists X forall Y exists Z -> theory pair probing consequence-equivalence.

    The QBF is valid iff the two theories (backgrounds {a} and empty, same
    defaults) are NOT consequence-equivalent under reiter semantics.
    """
    xs, ys, zs = _expect_shape(
        q, (Quantifier.EXISTS, Quantifier.FORALL, Quantifier.EXISTS)
    )
    if q.free_vars:
        raise InputError("consequence reduction takes a closed QBF")
    hs = [f"__g_h{i}" for i in range(1, len(xs) + 1)]
    ls = [f"__g_l{i}" for i in range(1, len(ys) + 1)]
    a, b, c, d = "__g_a", "__g_b", "__g_c", "__g_d"
    universe = Universe(tuple(xs) + tuple(ys) + tuple(zs)).extended(
        hs + ls + [a, b, c, d]
    )
    matrix = q.matrix_formula()
    all_h = conj([Var(h) for h in hs])

    defaults: list[Default] = []
    for x, h in zip(xs, hs):
        defaults.append(Default(f"{x}_true", TRUE, Var(x), conj([Var(x), Var(h)])))
        defaults.append(Default(f"{x}_false", TRUE, Not(Var(x)), conj([Not(Var(x)), Var(h)])))
    defaults.append(
        Default("pick_c", all_h, conj([Not(Var(b)), Var(c)]), conj([Var(a), Var(c)]))
    )
    defaults.append(
        Default("pick_nc", all_h, conj([Not(Var(b)), Not(Var(c))]), conj([Var(a), Not(Var(c))]))
    )
    defaults.append(
        Default("open_b", conj([all_h, Var(a)]), conj([Var(b), Var(c)]), disj([Var(b), Var(c)]))
    )
    defaults.append(
        Default(
            "close_b",
            conj([all_h, Var(a), disj([Var(b), Var(c)])]),
            conj([Var(b), Not(Var(c))]),
            Var(b),
        )
    )
    defaults.append(
        Default(
            "freeze_y",
            Var(b),
            TRUE,
            conj([Var(d)] + [Not(Var(y)) for y in ys]),
        )
    )
    for prec, tag in ((Not(Var(c)), "nc"), (Var(c), "c")):
        for y, l in zip(ys, ls):
            defaults.append(
                Default(
                    f"{tag}_{y}_true",
                    prec,
                    conj([Not(Var(d)), Var(y)]),
                    disj([Var(d), conj([Var(y), Var(l)])]),
                )
            )
            defaults.append(
                Default(
                    f"{tag}_{y}_false",
                    prec,
                    conj([Not(Var(d)), Not(Var(y))]),
                    disj([Var(d), conj([Not(Var(y)), Var(l)])]),
                )
            )
    defaults.append(
        Default(
            "matrix",
            disj([Var(d), conj([Var(l) for l in ls])]),
            conj([Not(Var(d)), matrix]),
            Not(Var(d)),
        )
    )
    with_a = DefaultTheory(tuple(defaults), CnfFormula([Clause([Literal(a)])]), universe)
    without = with_a.with_background(CnfFormula())
    provenance = (
        ("__g_a", "probed background clause"),
        ("__g_b", "extra-extension branch"),
        ("__g_c", "extension splitter"),
        ("__g_d", "frozen-Y marker"),
    ) + tuple((h, f"guess marker for {x}") for x, h in zip(xs, hs)) + tuple(
        (l, f"value marker for {y}") for y, l in zip(ys, ls)
    )
    return ReductionOutput(
        "dl-cons", provenance, theory_pair=(without, with_a), universe=universe
    )


def reduce_qbf3_to_dl_formula(q: Qbf) -> ReductionOutput:
    """exists X forall Y exists Z -> theory probing background redundancy.

    The QBF is valid iff the background {s_i, r_i} is redundant under reiter
    semantics and faithful equivalence; the relevant proper subsets keep
    exactly one of s_i, r_i per index, encoding the outer exists-assignment.
    """
    xs, ys, zs = _expect_shape(
        q, (Quantifier.EXISTS, Quantifier.FORALL, Quantifier.EXISTS)
    )
    if q.free_vars:
        raise InputError("formula-redundancy reduction takes a closed QBF")
    n = len(xs)
    ss = [f"__g_s{i}" for i in range(1, n + 1)]
    rs = [f"__g_r{i}" for i in range(1, n + 1)]
    hs = [f"__g_h{j}" for j in range(1, len(ys) + 1)]
    ps = [f"__g_p{i}" for i in range(1, n + 1)]
    a = "__g_a"
    universe = Universe(tuple(xs) + tuple(ys) + tuple(zs)).extended(
        ss + rs + hs + ps + [a]
    )
    background = CnfFormula(
        [Clause([Literal(s)]) for s in ss] + [Clause([Literal(r)]) for r in rs]
    )
    all_w = background.to_formula()
    matrix = q.matrix_formula()

    defaults: list[Default] = []
    for i in range(n):
        both = conj([Var(ss[i]), Var(rs[i])])
        for j in range(n):
            defaults.append(Default(f"both{i + 1}_s{j + 1}", both, Not(Var(ss[j])), Var(a)))
            defaults.append(Default(f"both{i + 1}_r{j + 1}", both, Not(Var(rs[j])), Var(a)))
    for i in range(n):
        defaults.append(
            Default(
                f"neither{i + 1}",
                TRUE,
                conj([Not(Var(ss[i])), Not(Var(rs[i]))]),
                Var(a),
            )
        )
    for y, h in zip(ys, hs):
        defaults.append(Default(f"{y}_true", TRUE, Var(y), conj([Var(y), Var(h)])))
        defaults.append(Default(f"{y}_false", TRUE, Not(Var(y)), conj([Not(Var(y)), Var(h)])))
    for x, p in zip(xs, ps):
        defaults.append(Default(f"{x}_true", TRUE, Var(x), conj([Var(p), Var(x)])))
        defaults.append(Default(f"{x}_false", TRUE, Not(Var(x)), conj([Var(p), Not(Var(x))])))
    for i, x in enumerate(xs):
        defaults.append(
            Default(f"mismatch{i + 1}_r", conj([Var(x), Var(rs[i])]), TRUE, all_w)
        )
        defaults.append(
            Default(f"mismatch{i + 1}_s", conj([Not(Var(x)), Var(ss[i])]), TRUE, all_w)
        )
    defaults.append(
        Default(
            "matrix",
            conj([Var(p) for p in ps] + [Var(h) for h in hs]),
            matrix,
            all_w,
        )
    )
    theory = DefaultTheory(tuple(defaults), background, universe)
    provenance = (
        ("__g_a", "marker derived only from broken subsets"),
    ) + tuple(
        (name, role)
        for names, role_fmt, src in (
            (ss, "keep-true selector for {}", xs),
            (rs, "keep-false selector for {}", xs),
            (ps, "guess marker for {}", xs),
            (hs, "guess marker for {}", ys),
        )
        for name, v in zip(names, src)
        for role in (role_fmt.format(v),)
    )
    return ReductionOutput("dl-formula", provenance, theory=theory, universe=universe)
