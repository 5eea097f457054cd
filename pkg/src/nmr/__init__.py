"""Minimal-model and default-logic reasoning over finite alphabets.

Brute-force model enumeration is the decision procedure throughout, which
keeps every verdict small enough to re-check independently: minimal-model
(circumscriptive) inference and redundancy, four process-based default-logic
semantics with three equivalence notions, redundancy checkers with subset
witnesses, irredundancy-forcing theory transformations, and QBF-driven
instance generators cross-checked against a brute-force QBF evaluator.
"""

from .logic import (
    And,
    CapExceededError,
    Clause,
    CnfFormula,
    Const,
    FALSE,
    Formula,
    Implies,
    InputError,
    Literal,
    Model,
    ModelSet,
    NameCollisionError,
    Not,
    Or,
    ParseError,
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
    lit,
    minimal_elements,
    model_to_formula,
    neg,
    negate_clause,
    restrict,
    truth_mask,
)
from .circumscription import (
    CircVerdict,
    RedundancyStrategy,
    circ,
    circ_entails,
    circ_equivalent,
    circ_redundant_clause,
    circ_redundant_formula,
    lift_negative_clause,
    make_irredundant_circ,
)
from .defaults import (
    Default,
    DefaultTheory,
    EquivKind,
    Extension,
    Semantics,
    dl_entails,
    dl_entails_theory,
    dl_equivalent,
    extensions,
    gen_set,
    globally_applicable,
    is_process,
    locally_applicable,
    selected_processes,
)
from .redundancy import (
    CounterEvidence,
    DlVerdict,
    redundant_clause_dl,
    redundant_default,
    redundant_default_set,
    redundant_formula_dl,
)
from .transforms import (
    FreshNamer,
    ReductionHost,
    clause_to_default,
    embed_clauses_as_defaults,
    make_clauses_irredundant,
    make_defaults_irredundant,
    move_just_literal,
    raise_existential,
    two_in_one,
)
from .qbf import (
    Qbf,
    Quantifier,
    ReductionOutput,
    eval_qbf,
    reduce_qbf2_to_circ_clause,
    reduce_qbf2_to_dl_clause,
    reduce_qbf3_to_dl_cons,
    reduce_qbf3_to_dl_formula,
)
from .formats import (
    parse_clause,
    parse_cnf,
    parse_formula,
    parse_qbf,
    parse_theory,
    print_clause,
    print_cnf,
    print_formula,
    print_qbf,
    print_theory,
)
