"""Command-line surface.

Subcommands mirror the library: `circ` for minimal-model inference, `dl`
for default-logic queries, `transform` for the theory-surgery gadgets,
`reduce` for QBF-driven instance generators, `qbf eval`, and `fixtures run`
for the built-in regression corpus.

Reports use stable keys (command, result, witness, evidence, semantics,
equivalence, caps); `--json` output is byte-identical across runs on the
same inputs, so timing is only shown in the human-readable form.  Exit
codes: 0 computed, 1 negative verdict under `--strict`, 2 input error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from . import fixtures as fixture_corpus
from .circumscription import (
    RedundancyStrategy,
    circ,
    circ_entails,
    circ_redundant_clause,
    circ_redundant_formula,
    make_irredundant_circ,
)
from .defaults import (
    DEFAULT_PROCESS_CAP,
    DefaultTheory,
    EquivKind,
    Semantics,
    dl_entails,
    dl_equivalent,
    extensions,
    selected_processes,
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
    print_theory,
)
from .logic import (
    DEFAULT_VAR_CAP,
    CapExceededError,
    CnfFormula,
    InputError,
    Universe,
)
from .qbf import (
    eval_qbf,
    reduce_qbf2_to_circ_clause,
    reduce_qbf2_to_dl_clause,
    reduce_qbf3_to_dl_cons,
    reduce_qbf3_to_dl_formula,
)
from .redundancy import (
    DlVerdict,
    redundant_clause_dl,
    redundant_default,
    redundant_default_set,
    redundant_formula_dl,
)
from .transforms import (
    ReductionHost,
    clause_to_default,
    embed_clauses_as_defaults,
    make_clauses_irredundant,
    make_defaults_irredundant,
    raise_existential,
)

_STRATEGIES = {s.value: s for s in RedundancyStrategy}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="suppress witnesses")
    common.add_argument("--strict", action="store_true", help="exit 1 on a negative verdict")
    common.add_argument(
        "--semantics", choices=[s.value for s in Semantics], default="reiter"
    )
    common.add_argument(
        "--equivalence", choices=[k.value for k in EquivKind], default="faithful"
    )
    common.add_argument("--max-vars", type=int, default=None)
    common.add_argument("--max-defaults", type=int, default=None)

    parser = argparse.ArgumentParser(prog="nmr")
    sub = parser.add_subparsers(dest="group", required=True)
    parents = {"parents": [common]}

    circ_p = sub.add_parser("circ").add_subparsers(dest="command", required=True)
    p = circ_p.add_parser("models", **parents)
    p.add_argument("file")
    p = circ_p.add_parser("entails", **parents)
    p.add_argument("file")
    p.add_argument("formula")
    p = circ_p.add_parser("redundant-clause", **parents)
    p.add_argument("file")
    p.add_argument("clause")
    p.add_argument("--strategy", choices=sorted(_STRATEGIES), default=None)
    p = circ_p.add_parser("redundant", **parents)
    p.add_argument("file")
    p = circ_p.add_parser("make-irredundant", **parents)
    p.add_argument("file")
    p.add_argument("--protect", action="append", default=None, help="clause to protect")

    dl_p = sub.add_parser("dl").add_subparsers(dest="command", required=True)
    for name in ("extensions", "processes", "redundant-formula", "redundant-defaults"):
        p = dl_p.add_parser(name, **parents)
        p.add_argument("file")
    p = dl_p.add_parser("entails", **parents)
    p.add_argument("file")
    p.add_argument("formula")
    p = dl_p.add_parser("equiv", **parents)
    p.add_argument("file")
    p.add_argument("other")
    p = dl_p.add_parser("redundant-clause", **parents)
    p.add_argument("file")
    p.add_argument("clause")
    p = dl_p.add_parser("redundant-default", **parents)
    p.add_argument("file")
    p.add_argument("name")

    tr_p = sub.add_parser("transform").add_subparsers(dest="command", required=True)
    p = tr_p.add_parser("clause-to-default", **parents)
    p.add_argument("file")
    p.add_argument("--clause", default=None, help="move one clause (default: all)")
    p = tr_p.add_parser("protect-clauses", **parents)
    p.add_argument("file")
    p.add_argument("--protect", action="append", default=None)
    p = tr_p.add_parser("protect-defaults", **parents)
    p.add_argument("file")
    p.add_argument("--protect", action="append", default=None)
    p = tr_p.add_parser("raise", **parents)
    p.add_argument("file")
    p.add_argument("f_default", help="name of the matrix-carrying default")
    p.add_argument("vars", nargs="+", help="variables to raise, in order")

    red_p = sub.add_parser("reduce").add_subparsers(dest="command", required=True)
    for name in ("circ2", "dl2", "dl3-cons", "dl3-formula"):
        p = red_p.add_parser(name, **parents)
        p.add_argument("file")

    qbf_p = sub.add_parser("qbf").add_subparsers(dest="command", required=True)
    p = qbf_p.add_parser("eval", **parents)
    p.add_argument("file")

    fx_p = sub.add_parser("fixtures").add_subparsers(dest="command", required=True)
    fx_p.add_parser("run", **parents)
    return parser


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _clause_in(theory_or_cnf, text: str):
    clause = parse_clause(text)
    return clause


def _serialize_witness(value):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [_serialize_witness(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(value)
    from .defaults import Default
    from .logic import Clause, Formula

    if isinstance(value, Default):
        return value.name
    if isinstance(value, Clause):
        return print_clause(value)
    if isinstance(value, Formula):
        return print_formula(value)
    return value


def _serialize_evidence(verdict: DlVerdict):
    ev = verdict.counter_evidence
    if ev is None:
        return None
    out = {"kind": ev.kind.value}
    if ev.extension is not None:
        out["extension"] = print_formula(ev.extension)
    if ev.model is not None:
        out["model"] = sorted(ev.model)
    if ev.clause is not None:
        out["clause"] = print_clause(ev.clause)
    return out


class _Report:
    def __init__(self, args: argparse.Namespace):
        self.data = {
            "command": f"{args.group} {args.command}",
            "semantics": None,
            "equivalence": None,
            "result": None,
            "witness": None,
            "evidence": None,
            "caps": {
                "max_vars": args.max_vars if args.max_vars is not None else DEFAULT_VAR_CAP,
                "max_defaults": (
                    args.max_defaults if args.max_defaults is not None else DEFAULT_PROCESS_CAP
                ),
            },
        }
        self.text_lines: list[str] = []
        self.verdict: bool | None = None

    def set(self, key: str, value) -> None:
        self.data[key] = value

    def line(self, text: str) -> None:
        self.text_lines.append(text)


def _caps(args) -> tuple[int, int]:
    max_vars = args.max_vars
    if max_vars is None:
        max_vars = int(os.environ.get("NMR_MAX_VARS", DEFAULT_VAR_CAP))
    max_defaults = args.max_defaults
    if max_defaults is None:
        max_defaults = int(os.environ.get("NMR_MAX_DEFAULTS", DEFAULT_PROCESS_CAP))
    return max_vars, max_defaults


def _run_circ(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    pi, universe = parse_cnf(_read(args.file))
    if args.command == "models":
        models = circ(pi, universe, max_vars)
        report.set("result", [sorted(m) for m in models])
        report.line(f"{len(models)} minimal models")
        for m in models:
            report.line("  {" + ", ".join(sorted(m)) + "}")
    elif args.command == "entails":
        goal = parse_formula(args.formula)
        universe.require(goal.variables())
        verdict = circ_entails(pi, goal, universe, max_vars)
        report.set("result", verdict)
        report.verdict = verdict
        report.line(f"result: {'entailed' if verdict else 'not entailed'}")
    elif args.command == "redundant-clause":
        gamma = _clause_in(pi, args.clause)
        strategy = (
            _STRATEGIES[args.strategy]
            if args.strategy
            else RedundancyStrategy.CONTAINMENT_REMOVED
        )
        verdict = circ_redundant_clause(pi, gamma, universe, strategy, max_vars)
        report.set("result", verdict.redundant)
        report.set("witness", _serialize_witness(verdict.witness_model))
        report.verdict = verdict.redundant
        report.line(f"result: {'redundant' if verdict.redundant else 'irredundant'}")
        if verdict.witness_model is not None and not args.quiet:
            report.line("witness model: {" + ", ".join(sorted(verdict.witness_model)) + "}")
    elif args.command == "redundant":
        verdict = circ_redundant_formula(pi, universe, max_vars=max_vars)
        report.set("result", verdict.redundant)
        report.set("witness", _serialize_witness(verdict.witness_clause))
        report.verdict = verdict.redundant
        report.line(f"result: {'redundant' if verdict.redundant else 'irredundant'}")
        if verdict.witness_clause is not None and not args.quiet:
            report.line("witness clause: " + print_clause(verdict.witness_clause))
    else:  # make-irredundant
        if args.protect is None:
            protected = pi
        else:
            protected = CnfFormula([parse_clause(t) for t in args.protect])
        out, out_universe = make_irredundant_circ(pi, protected, universe, max_vars)
        text = print_cnf(out, out_universe)
        report.set("result", text)
        report.line(text.rstrip("\n"))


def _theory(args, path: str) -> DefaultTheory:
    return parse_theory(_read(path))


def _run_dl(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    sem = Semantics(args.semantics)
    kind = EquivKind(args.equivalence)
    theory = _theory(args, args.file)
    report.set("semantics", sem.value)
    if args.command == "extensions":
        exts = extensions(theory, sem, max_defaults, max_vars)
        report.set(
            "result",
            [
                {
                    "formula": print_formula(e.formula),
                    "processes": [[d.name for d in p] for p in e.generating_processes],
                }
                for e in exts
            ],
        )
        report.line(f"{len(exts)} extensions")
        for e in exts:
            procs = ", ".join(
                "[" + " ".join(d.name for d in p) + "]" for p in e.generating_processes
            )
            report.line(f"  {print_formula(e.formula)}   via {procs}")
    elif args.command == "processes":
        procs = selected_processes(theory, sem, max_defaults, max_vars)
        report.set("result", [[d.name for d in p] for p in procs])
        report.line(f"{len(procs)} selected processes")
        for p in procs:
            report.line("  [" + " ".join(d.name for d in p) + "]")
    elif args.command == "entails":
        goal = parse_formula(args.formula)
        theory.universe.require(goal.variables())
        verdict = dl_entails(theory, sem, goal, max_defaults, max_vars)
        report.set("result", verdict)
        report.verdict = verdict
        report.line(f"result: {'entailed' if verdict else 'not entailed'}")
    elif args.command == "equiv":
        other = _theory(args, args.other)
        report.set("equivalence", kind.value)
        verdict = dl_equivalent(theory, other, sem, kind, max_defaults, max_vars)
        report.set("result", verdict)
        report.verdict = verdict
        report.line(f"result: {'equivalent' if verdict else 'not equivalent'}")
    else:
        report.set("equivalence", kind.value)
        if args.command == "redundant-clause":
            verdict = redundant_clause_dl(
                theory, _clause_in(theory, args.clause), sem, kind, max_defaults, max_vars
            )
        elif args.command == "redundant-formula":
            verdict = redundant_formula_dl(theory, sem, kind, max_defaults, max_vars)
        elif args.command == "redundant-default":
            verdict = redundant_default(
                theory, theory.default_named(args.name), sem, kind, max_defaults, max_vars
            )
        else:  # redundant-defaults
            verdict = redundant_default_set(theory, sem, kind, max_defaults, max_vars)
        report.set("result", verdict.redundant)
        report.set("witness", _serialize_witness(verdict.witness_subset))
        report.set("evidence", _serialize_evidence(verdict))
        report.verdict = verdict.redundant
        report.line(f"result: {'redundant' if verdict.redundant else 'irredundant'}")
        if not args.quiet:
            if verdict.witness_subset is not None:
                names = _serialize_witness(verdict.witness_subset)
                report.line("witness subset: {" + ", ".join(names) + "}")
            ev = _serialize_evidence(verdict)
            if ev is not None:
                report.line("counter-evidence: " + json.dumps(ev, sort_keys=True))


def _run_transform(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    theory = _theory(args, args.file)
    if args.command == "clause-to-default":
        if args.clause is None:
            out = embed_clauses_as_defaults(theory)
        else:
            gamma = parse_clause(args.clause)
            if gamma not in theory.background:
                raise InputError(f"clause {gamma} not in background")
            taken = {d.name for d in theory.defaults}
            name = "d_gamma"
            while name in taken:
                name += "_"
            out = DefaultTheory(
                theory.defaults + (clause_to_default(gamma, name),),
                theory.background.removing(gamma),
                theory.universe,
            )
    elif args.command == "protect-clauses":
        if args.protect is None:
            protected = theory.background
        else:
            protected = CnfFormula([parse_clause(t) for t in args.protect])
        out = make_clauses_irredundant(theory, protected, max_vars)
    elif args.command == "protect-defaults":
        if args.protect is None:
            picked = theory.defaults
        else:
            picked = tuple(theory.default_named(n) for n in args.protect)
        out = make_defaults_irredundant(theory, picked, max_vars)
    else:  # raise
        carrier = theory.default_named(args.f_default)
        host = ReductionHost(theory, args.f_default, carrier.just)
        out = raise_existential(host, args.vars, max_vars).theory
    text = print_theory(out)
    report.set("result", text)
    report.line(text.rstrip("\n"))


def _run_reduce(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    q = parse_qbf(_read(args.file))
    if args.command == "circ2":
        out = reduce_qbf2_to_circ_clause(q)
        text = print_cnf(out.cnf, out.universe)
        report.set("result", {"cnf": text, "clause": print_clause(out.clause)})
        report.line(text.rstrip("\n"))
        report.line("# distinguished clause: " + print_clause(out.clause))
    elif args.command == "dl2":
        out = reduce_qbf2_to_dl_clause(q)
        text = print_theory(out.theory)
        report.set("result", {"theory": text, "clause": print_clause(out.clause)})
        report.line(text.rstrip("\n"))
        report.line("# distinguished clause: " + print_clause(out.clause))
    elif args.command == "dl3-cons":
        out = reduce_qbf3_to_dl_cons(q)
        without, with_a = out.theory_pair
        report.set(
            "result",
            {"theory_with_clause": print_theory(with_a), "theory_empty": print_theory(without)},
        )
        report.line("# theory with the probed clause:")
        report.line(print_theory(with_a).rstrip("\n"))
        report.line("# theory with empty background:")
        report.line(print_theory(without).rstrip("\n"))
    else:  # dl3-formula
        out = reduce_qbf3_to_dl_formula(q)
        text = print_theory(out.theory)
        report.set("result", {"theory": text})
        report.line(text.rstrip("\n"))
    if not args.quiet:
        prov = dict(_provenance(args, q))
        if prov:
            report.set("witness", prov)


def _provenance(args, q) -> tuple[tuple[str, str], ...]:
    builders = {
        "circ2": reduce_qbf2_to_circ_clause,
        "dl2": reduce_qbf2_to_dl_clause,
        "dl3-cons": reduce_qbf3_to_dl_cons,
        "dl3-formula": reduce_qbf3_to_dl_formula,
    }
    return builders[args.command](q).provenance


def _run_qbf(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    q = parse_qbf(_read(args.file))
    verdict = eval_qbf(q, max_vars)
    report.set("result", verdict)
    report.verdict = verdict
    report.line(f"result: {str(verdict).lower()}")


def _run_fixtures(args, report: _Report, max_vars: int, max_defaults: int) -> None:
    results = fixture_corpus.run_checks()
    ok = all(r["ok"] for r in results)
    report.set("result", [{k: v for k, v in r.items() if k != "got"} for r in results])
    report.verdict = ok
    for r in results:
        tag = "PASS" if r["ok"] else "FAIL"
        detail = r.get("clause") or r.get("default") or ""
        report.line(
            f"{tag} {r['fixture']} {r['check']} {detail} "
            f"[{r.get('semantics', '')}/{r.get('kind', '-')}]".rstrip()
        )
    report.line(("all checks passed" if ok else "some checks FAILED"))


_RUNNERS = {
    "circ": _run_circ,
    "dl": _run_dl,
    "transform": _run_transform,
    "reduce": _run_reduce,
    "qbf": _run_qbf,
    "fixtures": _run_fixtures,
}


def run(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    report = _Report(args)
    max_vars, max_defaults = _caps(args)
    report.data["caps"] = {"max_vars": max_vars, "max_defaults": max_defaults}
    started = time.perf_counter()
    try:
        _RUNNERS[args.group](args, report, max_vars, max_defaults)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - started
    if args.json:
        print(json.dumps(report.data, sort_keys=True, separators=(",", ":")))
    else:
        for line in report.text_lines:
            print(line)
        print(f"time: {elapsed:.3f}s")
    if args.strict and report.verdict is False:
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(run())
