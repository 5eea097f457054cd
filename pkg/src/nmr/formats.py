"""Text formats: formulas, clauses, CNF files, theory files, QBF files.

Printing and parsing are exact inverses up to whitespace: every printer
emits text that parses back to a structurally equal object.  `#` starts a
comment anywhere; variables are identifiers.  Variables in the reserved
"__g" gadget namespace are only accepted when an explicit `universe` line
declares them, which is how generated instances survive a round trip while
hand-written files cannot collide with gadget names by accident.

Formula grammar: `~  &  |  ->  ( )  true  false` with precedence
~ > & > | > -> and right-associative ->.  Clause syntax: `lit ('|' lit)*`
with `lit = '~'? ident`; the single token `false` denotes the empty clause.
"""

from __future__ import annotations

import re
from typing import Iterable

from .logic import (
    And,
    Clause,
    CnfFormula,
    Const,
    FALSE,
    Formula,
    Implies,
    InputError,
    Literal,
    Not,
    Or,
    ParseError,
    RESERVED_PREFIX,
    TRUE,
    Universe,
    Var,
)
from .defaults import Default, DefaultTheory
from .qbf import Matrix, Qbf, Quantifier

_TOKEN = re.compile(r"\s*(->|[()&|~]|[A-Za-z_][A-Za-z0-9_]*)")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class _Tokens:
    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.items: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:].lstrip()
                if not rest:
                    break
                raise ParseError(f"unexpected character {rest[0]!r}", line, column + pos)
            self.items.append((m.group(1), column + m.start(1)))
            pos = m.end()
        self.line = line
        self.index = 0

    def peek(self) -> str | None:
        if self.index < len(self.items):
            return self.items[self.index][0]
        return None

    def next(self) -> tuple[str, int]:
        if self.index >= len(self.items):
            raise ParseError("unexpected end of input", self.line)
        item = self.items[self.index]
        self.index += 1
        return item

    def expect(self, token: str) -> None:
        got, col = self.next()
        if got != token:
            raise ParseError(f"expected {token!r}, found {got!r}", self.line, col)

    def done(self) -> None:
        if self.index < len(self.items):
            got, col = self.items[self.index]
            raise ParseError(f"trailing input starting at {got!r}", self.line, col)


def _parse_implies(tokens: _Tokens) -> Formula:
    left = _parse_or(tokens)
    if tokens.peek() == "->":
        tokens.next()
        return Implies(left, _parse_implies(tokens))
    return left


def _parse_or(tokens: _Tokens) -> Formula:
    parts = [_parse_and(tokens)]
    while tokens.peek() == "|":
        tokens.next()
        parts.append(_parse_and(tokens))
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def _parse_and(tokens: _Tokens) -> Formula:
    parts = [_parse_unary(tokens)]
    while tokens.peek() == "&":
        tokens.next()
        parts.append(_parse_unary(tokens))
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def _parse_unary(tokens: _Tokens) -> Formula:
    token, col = tokens.next()
    if token == "~":
        return Not(_parse_unary(tokens))
    if token == "(":
        inner = _parse_implies(tokens)
        tokens.expect(")")
        return inner
    if token == "true":
        return TRUE
    if token == "false":
        return FALSE
    if _IDENT.match(token):
        return Var(token)
    raise ParseError(f"expected a formula, found {token!r}", tokens.line, col)


def parse_formula(text: str, line: int = 1) -> Formula:
    tokens = _Tokens(text, line)
    f = _parse_implies(tokens)
    tokens.done()
    return f


def parse_clause(text: str, line: int = 1) -> Clause:
    tokens = _Tokens(text, line)
    if tokens.peek() == "false":
        tokens.next()
        tokens.done()
        return Clause(())
    lits = []
    while True:
        token, col = tokens.next()
        positive = True
        if token == "~":
            token, col = tokens.next()
            positive = False
        if not _IDENT.match(token) or token in ("true", "false"):
            raise ParseError(f"expected a literal, found {token!r}", line, col)
        lits.append(Literal(token, positive))
        if tokens.peek() != "|":
            tokens.done()
            return Clause(lits)
        tokens.next()


# -- printers ---------------------------------------------------------------

_LEVEL_IMPLIES, _LEVEL_OR, _LEVEL_AND, _LEVEL_ATOM = 0, 1, 2, 3


def _print_formula(f: Formula, level: int) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        return "~" + _print_formula(f.child, _LEVEL_ATOM)
    if isinstance(f, And):
        text = " & ".join(_print_formula(p, _LEVEL_ATOM) for p in f.parts)
        return f"({text})" if level > _LEVEL_AND else text
    if isinstance(f, Or):
        text = " | ".join(_print_formula(p, _LEVEL_AND) for p in f.parts)
        return f"({text})" if level > _LEVEL_OR else text
    if isinstance(f, Implies):
        text = (
            _print_formula(f.left, _LEVEL_OR)
            + " -> "
            + _print_formula(f.right, _LEVEL_IMPLIES)
        )
        return f"({text})" if level > _LEVEL_IMPLIES else text
    raise InputError(f"not a formula: {f!r}")


def print_formula(f: Formula) -> str:
    return _print_formula(f, _LEVEL_IMPLIES)


def print_clause(c: Clause) -> str:
    return str(c)


# -- line-based documents ---------------------------------------------------


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _check_universe(universe: Universe, declared: bool, line: int | None = None) -> None:
    if declared:
        return
    bad = sorted(v for v in universe.vars if v.startswith(RESERVED_PREFIX))
    if bad:
        raise ParseError(
            f"reserved-prefix variable {bad[0]!r} needs an explicit universe line", line
        )


def _ordered_unique(names: Iterable[str]) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for n in names:
        seen.setdefault(n)
    return tuple(seen)


def parse_cnf(text: str) -> tuple[CnfFormula, Universe]:
    """CNF file: optional `universe ...` line, then one clause per line."""
    declared: Universe | None = None
    clauses: list[Clause] = []
    order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("universe"):
            if declared is not None:
                raise ParseError("duplicate universe line", lineno)
            if clauses:
                raise ParseError("universe line must come first", lineno)
            declared = Universe(tuple(line.split()[1:]))
            continue
        clause = parse_clause(line, lineno)
        clauses.append(clause)
        order.extend(lit.var for lit in clause.sorted_literals())
    if declared is not None:
        universe = declared
        universe.require(order)
    else:
        universe = Universe(_ordered_unique(order))
        _check_universe(universe, declared=False)
    return CnfFormula(clauses), universe


def print_cnf(f: CnfFormula, universe: Universe) -> str:
    lines = ["universe " + " ".join(universe.vars)]
    lines += [print_clause(c) for c in f.sorted_clauses()]
    return "\n".join(lines) + "\n"


def parse_theory(text: str) -> DefaultTheory:
    """Theory file: optional universe line, `w:` clauses, `default .. end`."""
    declared: Universe | None = None
    clauses: list[Clause] = []
    defaults: list[Default] = []
    order: list[str] = []
    current: dict[str, object] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if current is None:
            if line.startswith("universe"):
                if declared is not None:
                    raise ParseError("duplicate universe line", lineno)
                if clauses or defaults:
                    raise ParseError("universe line must come first", lineno)
                declared = Universe(tuple(line.split()[1:]))
            elif line.startswith("w:"):
                clause = parse_clause(line[2:], lineno)
                clauses.append(clause)
                order.extend(lit.var for lit in clause.sorted_literals())
            elif line.startswith("default"):
                parts = line.split()
                if len(parts) != 2 or not _IDENT.match(parts[1]):
                    raise ParseError("expected `default <name>`", lineno)
                current = {"name": parts[1], "line": lineno}
            else:
                raise ParseError(f"unexpected line {line!r}", lineno)
            continue
        if line == "end":
            name = current["name"]
            if any(d.name == name for d in defaults):
                raise ParseError(f"duplicate default name {name!r}", lineno)
            if "cons" not in current:
                raise ParseError(f"default {name!r} has no cons line", lineno)
            d = Default(
                name,  # type: ignore[arg-type]
                current.get("prec", TRUE),  # type: ignore[arg-type]
                current.get("just", TRUE),  # type: ignore[arg-type]
                current["cons"],  # type: ignore[arg-type]
            )
            defaults.append(d)
            order.extend(sorted(d.prec.variables() | d.just.variables() | d.cons.variables()))
            current = None
            continue
        matched = False
        for key in ("prec", "just", "cons"):
            if line.startswith(key + ":"):
                if key in current:
                    raise ParseError(f"duplicate {key} line", lineno)
                current[key] = parse_formula(line[len(key) + 1 :], lineno)
                matched = True
                break
        if not matched:
            raise ParseError(f"unexpected line {line!r} inside default block", lineno)
    if current is not None:
        raise ParseError(f"default {current['name']!r} not closed with `end`")
    if declared is not None:
        universe = declared
    else:
        universe = Universe(_ordered_unique(order))
        _check_universe(universe, declared=False)
    return DefaultTheory(tuple(defaults), CnfFormula(clauses), universe)


def print_theory(theory: DefaultTheory) -> str:
    lines = ["universe " + " ".join(theory.universe.vars)]
    lines += ["w: " + print_clause(c) for c in theory.background.sorted_clauses()]
    for d in theory.defaults:
        lines.append(f"default {d.name}")
        if d.prec != TRUE:
            lines.append("  prec: " + print_formula(d.prec))
        if d.just != TRUE:
            lines.append("  just: " + print_formula(d.just))
        lines.append("  cons: " + print_formula(d.cons))
        lines.append("end")
    return "\n".join(lines) + "\n"


def parse_qbf(text: str) -> Qbf:
    """QBF file: `forall`/`exists` block lines, then `matrix:` or `clause:` lines."""
    prefix: list[tuple[Quantifier, tuple[str, ...]]] = []
    free: tuple[str, ...] = ()
    matrix: Formula | None = None
    clauses: list[Clause] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        head = line.split()[0]
        if head in ("forall", "exists", "free"):
            if matrix is not None or clauses is not None:
                raise ParseError("quantifier blocks must precede the matrix", lineno)
            block = tuple(line.split()[1:])
            if head == "free":
                free += block
            else:
                prefix.append((Quantifier(head), block))
        elif line.startswith("matrix:"):
            if matrix is not None or clauses is not None:
                raise ParseError("duplicate matrix", lineno)
            matrix = parse_formula(line[len("matrix:") :], lineno)
        elif line.startswith("clause:"):
            if matrix is not None:
                raise ParseError("cannot mix matrix: and clause: lines", lineno)
            clauses = clauses or []
            clauses.append(parse_clause(line[len("clause:") :], lineno))
        else:
            raise ParseError(f"unexpected line {line!r}", lineno)
    body: Matrix
    if matrix is not None:
        body = matrix
    elif clauses is not None:
        body = CnfFormula(clauses)
    else:
        raise ParseError("missing matrix")
    return Qbf(tuple(prefix), body, free)


def print_qbf(q: Qbf) -> str:
    lines = []
    if q.free_vars:
        lines.append("free " + " ".join(q.free_vars))
    for quant, block in q.prefix:
        lines.append(quant.value + " " + " ".join(block))
    if isinstance(q.matrix, CnfFormula):
        lines += ["clause: " + print_clause(c) for c in q.matrix.sorted_clauses()]
    else:
        lines.append("matrix: " + print_formula(q.matrix))
    return "\n".join(lines) + "\n"
