"""Built-in fixture theories and their recorded expectation table.

Each fixture file is a small default theory exercising one separating
behaviour (an equivalence kind that holds while a stronger one fails, a
non-local redundancy verdict, a semantics split).  The expectations sidecar
records the verdicts the engine must reproduce; `run_checks` is the
regression runner behind the `fixtures run` CLI command.
"""

from __future__ import annotations

import json
from importlib import resources

from ..defaults import DefaultTheory, EquivKind, Semantics, dl_equivalent, extensions
from ..formats import parse_clause, parse_formula, parse_theory
from ..logic import CnfFormula, equivalent
from ..redundancy import (
    redundant_clause_dl,
    redundant_default,
    redundant_default_set,
    redundant_formula_dl,
)

FIXTURE_NAMES = (
    "mutual_not_consequence.thy",
    "consequence_not_faithful.thy",
    "consequence_not_faithful_global.thy",
    "clause_vs_theory.thy",
    "entailment_two_step.thy",
    "reiter_rational_nonlocal.thy",
    "reiter_rational_nonlocal_split.thy",
    "constrained_nonlocal.thy",
    "reiter_vs_rational.thy",
)


def fixture_text(name: str) -> str:
    return resources.files("nmr.fixtures").joinpath(name).read_text(encoding="utf-8")


def load_fixture(name: str) -> DefaultTheory:
    return parse_theory(fixture_text(name))


def expectations() -> list[dict]:
    text = resources.files("nmr.fixtures").joinpath("expectations.json").read_text(
        encoding="utf-8"
    )
    return json.loads(text)


def _extensions_match(theory: DefaultTheory, semantics: Semantics, expected: list[str]) -> bool:
    got = [e.formula for e in extensions(theory, semantics)]
    want = [parse_formula(t) for t in expected]
    if len(got) != len(want):
        return False
    used = set()
    for g in got:
        hit = next(
            (i for i, w in enumerate(want) if i not in used and equivalent(g, w, theory.universe)),
            None,
        )
        if hit is None:
            return False
        used.add(hit)
    return True


def run_check(entry: dict) -> dict:
    """Evaluate one expectation entry; returns the entry plus ok/got fields."""
    theory = load_fixture(entry["fixture"])
    sem = Semantics(entry["semantics"])
    kind = EquivKind(entry["kind"]) if "kind" in entry else None
    check = entry["check"]
    got: object
    if check == "extensions":
        ok = _extensions_match(theory, sem, entry["expect"])
        got = [str(len(extensions(theory, sem))) + " extensions"]
    elif check == "extensions_drop":
        dropped = theory
        for text in entry["drop"]:
            dropped = dropped.without_clause(parse_clause(text))
        ok = _extensions_match(dropped, sem, entry["expect"])
        got = [str(len(extensions(dropped, sem))) + " extensions"]
    elif check == "equiv_drop":
        dropped = theory
        for text in entry["drop"]:
            dropped = dropped.without_clause(parse_clause(text))
        got = dl_equivalent(dropped, theory, sem, kind)
        ok = got == entry["expect"]
    elif check == "redundant_clause":
        verdict = redundant_clause_dl(theory, parse_clause(entry["clause"]), sem, kind)
        got = verdict.redundant
        ok = got == entry["expect"]
    elif check == "redundant_formula":
        verdict = redundant_formula_dl(theory, sem, kind)
        got = verdict.redundant
        ok = got == entry["expect"]
        if ok and "witness" in entry:
            want = {str(parse_clause(t)) for t in entry["witness"]}
            ok = verdict.witness_subset is not None and {
                str(c) for c in verdict.witness_subset
            } == want
    elif check == "redundant_default":
        verdict = redundant_default(theory, theory.default_named(entry["default"]), sem, kind)
        got = verdict.redundant
        ok = got == entry["expect"]
    elif check == "redundant_defaults":
        verdict = redundant_default_set(theory, sem, kind)
        got = verdict.redundant
        ok = got == entry["expect"]
        if ok and "witness" in entry:
            ok = verdict.witness_subset is not None and [
                d.name for d in verdict.witness_subset
            ] == entry["witness"]
    else:
        raise ValueError(f"unknown check kind {check!r}")
    out = dict(entry)
    out["ok"] = bool(ok)
    out["got"] = got
    return out


def run_checks() -> list[dict]:
    return [run_check(entry) for entry in expectations()]
