"""Propositional substrate: variables, clauses, formulas, models.

All values are immutable and all operations are pure.  Satisfiability,
entailment and model enumeration are decided by brute force over an explicit
finite variable universe; the same enumeration doubles as the oracle for
everything built on top of it.  The enumeration is guarded by a configurable
variable cap (default 22, about four million assignments).

Internally a formula over a universe of n variables is compiled to a truth
mask: an integer whose bit i is set iff the i-th assignment (in lexicographic
order, false < true, first universe variable most significant) satisfies the
formula.  Entailment, consistency and equivalence are then single big-int
operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import AbstractSet, Iterable, Iterator, Mapping, Union

DEFAULT_VAR_CAP = 22

RESERVED_PREFIX = "__g"


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class NameCollisionError(InputError):
    """A generated gadget name already exists in the universe."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(message + where)
        self.line = line
        self.column = column


class CapExceededError(RuntimeError):
    """An enumeration or search bound was exceeded."""


# ---------------------------------------------------------------------------
# Universe and models


@dataclass(frozen=True)
class Universe:
    """Ordered, duplicate-free list of variable names.

    The order is canonical: it fixes model enumeration order and every
    deterministic witness reported by this library.
    """

    vars: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.vars)) != len(self.vars):
            raise InputError(f"duplicate variable in universe: {self.vars!r}")

    @classmethod
    def of(cls, *names: str) -> "Universe":
        return cls(tuple(names))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vars)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.vars)

    def __iter__(self) -> Iterator[str]:
        return iter(self.vars)

    def require(self, names: Iterable[str]) -> None:
        missing = sorted(n for n in names if n not in self._index)
        if missing:
            raise InputError(f"variables not in universe: {', '.join(missing)}")

    def extended(self, names: Iterable[str]) -> "Universe":
        """New universe with `names` appended, rejecting collisions."""
        added = tuple(names)
        for n in added:
            if n in self._index:
                raise NameCollisionError(f"variable {n!r} already in universe")
        return Universe(self.vars + added)


Model = frozenset  # a model is the frozenset of variables assigned true


def model_key(model: AbstractSet[str], universe: Universe) -> tuple[bool, ...]:
    """Sort key realizing the canonical model order (false < true)."""
    return tuple(v in model for v in universe.vars)


@dataclass(frozen=True)
class ModelSet:
    """Duplicate-free models in canonical order; equality is set equality."""

    universe: Universe
    models: tuple[Model, ...]

    @classmethod
    def from_models(cls, models: Iterable[AbstractSet[str]], universe: Universe) -> "ModelSet":
        uniq = {frozenset(m) for m in models}
        for m in uniq:
            universe.require(m)
        return cls(universe, tuple(sorted(uniq, key=lambda m: model_key(m, universe))))

    def __len__(self) -> int:
        return len(self.models)

    def __iter__(self) -> Iterator[Model]:
        return iter(self.models)

    def __contains__(self, model: object) -> bool:
        return frozenset(model) in set(self.models)  # type: ignore[arg-type]

    def as_set(self) -> frozenset:
        return frozenset(self.models)


# ---------------------------------------------------------------------------
# Formula expression trees


class Formula:
    __slots__ = ()

    def evaluate(self, model: AbstractSet[str]) -> bool:
        raise NotImplementedError

    def variables(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return self.name in model

    def variables(self) -> frozenset:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return self.value

    def variables(self) -> frozenset:
        return frozenset()


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    child: Formula

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return not self.child.evaluate(model)

    def variables(self) -> frozenset:
        return self.child.variables()


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return all(p.evaluate(model) for p in self.parts)

    def variables(self) -> frozenset:
        return frozenset().union(*(p.variables() for p in self.parts))


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return any(p.evaluate(model) for p in self.parts)

    def variables(self) -> frozenset:
        return frozenset().union(*(p.variables() for p in self.parts))


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return (not self.left.evaluate(model)) or self.right.evaluate(model)

    def variables(self) -> frozenset:
        return self.left.variables() | self.right.variables()


def conj(parts: Iterable[Formula]) -> Formula:
    """N-ary conjunction with constant folding and one-level flattening."""
    flat: list[Formula] = []
    for p in parts:
        if p == TRUE:
            continue
        if p == FALSE:
            return FALSE
        if isinstance(p, And):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(parts: Iterable[Formula]) -> Formula:
    flat: list[Formula] = []
    for p in parts:
        if p == FALSE:
            continue
        if p == TRUE:
            return TRUE
        if isinstance(p, Or):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def neg(f: Formula) -> Formula:
    if isinstance(f, Const):
        return FALSE if f.value else TRUE
    return Not(f)


def model_to_formula(model: AbstractSet[str], universe: Universe) -> Formula:
    """A model used as a formula: the conjunction fixing every variable."""
    return conj(
        [Var(v) if v in model else Not(Var(v)) for v in universe.vars]
    )


# ---------------------------------------------------------------------------
# Clauses and CNF formulas


@dataclass(frozen=True)
class Literal:
    var: str
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def to_formula(self) -> Formula:
        return Var(self.var) if self.positive else Not(Var(self.var))

    def key(self) -> tuple[str, int]:
        return (self.var, 0 if self.positive else 1)

    def __str__(self) -> str:
        return self.var if self.positive else "~" + self.var


@dataclass(frozen=True, init=False)
class Clause:
    """Set of literals; tautological clauses are rejected at construction."""

    literals: frozenset

    def __init__(self, literals: Iterable[Literal]):
        lits = frozenset(literals)
        polarities: dict[str, set[bool]] = {}
        for lit in lits:
            polarities.setdefault(lit.var, set()).add(lit.positive)
        taut = sorted(v for v, pols in polarities.items() if len(pols) == 2)
        if taut:
            raise InputError(f"tautological clause on {', '.join(taut)}")
        object.__setattr__(self, "literals", lits)

    def sorted_literals(self) -> tuple[Literal, ...]:
        return tuple(sorted(self.literals, key=Literal.key))

    def key(self) -> tuple:
        return tuple(lit.key() for lit in self.sorted_literals())

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_positive(self) -> bool:
        return all(lit.positive for lit in self.literals)

    def variables(self) -> frozenset:
        return frozenset(lit.var for lit in self.literals)

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return any((lit.var in model) == lit.positive for lit in self.literals)

    def to_formula(self) -> Formula:
        return disj([lit.to_formula() for lit in self.sorted_literals()])

    def disjoined(self, extra: Iterable[Literal]) -> "Clause":
        return Clause(self.literals | frozenset(extra))

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if self.is_empty:
            return "false"
        return " | ".join(str(lit) for lit in self.sorted_literals())


@dataclass(frozen=True, init=False)
class CnfFormula:
    """Set of clauses (set semantics; the empty formula is true).

    Iteration is always in the canonical clause order, so every operation
    that scans a formula is deterministic.
    """

    clauses: frozenset

    def __init__(self, clauses: Iterable[Clause] = ()):
        object.__setattr__(self, "clauses", frozenset(clauses))

    def sorted_clauses(self) -> tuple[Clause, ...]:
        return tuple(sorted(self.clauses, key=Clause.key))

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.sorted_clauses())

    def __len__(self) -> int:
        return len(self.clauses)

    def __contains__(self, clause: object) -> bool:
        return clause in self.clauses

    def adding(self, *extra: Clause) -> "CnfFormula":
        return CnfFormula(self.clauses | frozenset(extra))

    def removing(self, clause: Clause) -> "CnfFormula":
        return CnfFormula(self.clauses - {clause})

    def union(self, other: "CnfFormula") -> "CnfFormula":
        return CnfFormula(self.clauses | other.clauses)

    def variables(self) -> frozenset:
        return frozenset().union(frozenset(), *(c.variables() for c in self.clauses))

    def evaluate(self, model: AbstractSet[str]) -> bool:
        return all(c.evaluate(model) for c in self.clauses)

    def to_formula(self) -> Formula:
        return conj([c.to_formula() for c in self.sorted_clauses()])

    def __str__(self) -> str:
        return "{" + "; ".join(str(c) for c in self.sorted_clauses()) + "}"


FormulaLike = Union[Formula, Clause, CnfFormula]


def as_formula(f: FormulaLike) -> Formula:
    if isinstance(f, Formula):
        return f
    return f.to_formula()


def lit(text: str) -> Literal:
    text = text.strip()
    if text.startswith("~"):
        return Literal(text[1:].strip(), False)
    return Literal(text)


def clause(*lits: str) -> Clause:
    """Convenience constructor: clause("a", "~b")."""
    return Clause(lit(t) for t in lits)


def cnf(*clauses_: Clause) -> CnfFormula:
    return CnfFormula(clauses_)


# ---------------------------------------------------------------------------
# Truth masks

_MASK_CACHE_SIZE = 4096


@lru_cache(maxsize=None)
def _var_mask(universe: Universe, name: str) -> int:
    n = len(universe)
    k = universe.index(name)
    half = 1 << (n - 1 - k)
    period = half << 1
    chunk = ((1 << half) - 1) << half
    reps = 1 << k
    comb = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
    return chunk * comb


def _full_mask(universe: Universe) -> int:
    return (1 << (1 << len(universe))) - 1


@lru_cache(maxsize=_MASK_CACHE_SIZE)
def _clause_mask(universe: Universe, c: Clause) -> int:
    m = 0
    for l in c.literals:
        vm = _var_mask(universe, l.var)
        m |= vm if l.positive else _full_mask(universe) ^ vm
    return m


@lru_cache(maxsize=_MASK_CACHE_SIZE)
def _formula_mask(universe: Universe, f: Formula) -> int:
    full = _full_mask(universe)
    if isinstance(f, Var):
        return _var_mask(universe, f.name)
    if isinstance(f, Const):
        return full if f.value else 0
    if isinstance(f, Not):
        return full ^ _formula_mask(universe, f.child)
    if isinstance(f, And):
        return reduce(lambda a, b: a & b, (_formula_mask(universe, p) for p in f.parts), full)
    if isinstance(f, Or):
        return reduce(lambda a, b: a | b, (_formula_mask(universe, p) for p in f.parts), 0)
    if isinstance(f, Implies):
        return (full ^ _formula_mask(universe, f.left)) | _formula_mask(universe, f.right)
    raise InputError(f"not a formula: {f!r}")


def truth_mask(f: FormulaLike, universe: Universe, max_vars: int = DEFAULT_VAR_CAP) -> int:
    """Truth mask of `f` over `universe` (bit i = i-th assignment satisfies f)."""
    if len(universe) > max_vars:
        raise CapExceededError(
            f"universe has {len(universe)} variables, exceeding the enumeration cap of {max_vars}"
        )
    universe.require(variables_of(f))
    if isinstance(f, Clause):
        return _clause_mask(universe, f)
    if isinstance(f, CnfFormula):
        return reduce(
            lambda a, b: a & b,
            (_clause_mask(universe, c) for c in f.sorted_clauses()),
            _full_mask(universe),
        )
    return _formula_mask(universe, f)


def variables_of(f: FormulaLike) -> frozenset:
    return f.variables()


def _model_of_index(i: int, universe: Universe) -> Model:
    n = len(universe)
    return frozenset(universe.vars[k] for k in range(n) if (i >> (n - 1 - k)) & 1)


def _indices_of_mask(mask: int) -> Iterator[int]:
    """Ascending assignment indices of the set bits, scanned 64 bits at a time."""
    if mask == 0:
        return
    nbytes = (mask.bit_length() + 7) // 8
    data = mask.to_bytes(nbytes, "little")
    for w in range(0, nbytes, 8):
        word = int.from_bytes(data[w : w + 8], "little")
        base = w * 8
        while word:
            low = word & -word
            yield base + low.bit_length() - 1
            word ^= low


# ---------------------------------------------------------------------------
# Core operations


def enumerate_models(
    f: FormulaLike, universe: Universe, max_vars: int = DEFAULT_VAR_CAP
) -> ModelSet:
    """All assignments over `universe` satisfying `f`, canonically ordered."""
    mask = truth_mask(f, universe, max_vars)
    models = tuple(_model_of_index(i, universe) for i in _indices_of_mask(mask))
    return ModelSet(universe, models)


def _auto_universe(*fs: FormulaLike) -> Universe:
    names: set[str] = set()
    for f in fs:
        names |= variables_of(f)
    return Universe(tuple(sorted(names)))


def entails(
    a: FormulaLike,
    b: FormulaLike,
    universe: Universe | None = None,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    """True iff every model of `a` satisfies `b`."""
    u = universe if universe is not None else _auto_universe(a, b)
    return truth_mask(a, u, max_vars) & ~truth_mask(b, u, max_vars) == 0


def consistent(
    a: FormulaLike,
    b: FormulaLike,
    universe: Universe | None = None,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    """True iff the conjunction of `a` and `b` has a model."""
    u = universe if universe is not None else _auto_universe(a, b)
    return truth_mask(a, u, max_vars) & truth_mask(b, u, max_vars) != 0


def equivalent(
    a: FormulaLike,
    b: FormulaLike,
    universe: Universe | None = None,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    u = universe if universe is not None else _auto_universe(a, b)
    return truth_mask(a, u, max_vars) == truth_mask(b, u, max_vars)


def minimal_elements(s: ModelSet) -> ModelSet:
    """Models of `s` with no strict subset (as sets of true variables) in `s`.

    A model containing any smaller model also contains a minimal one, so
    candidates only need to be compared against the minimal models found so
    far when scanned in order of increasing size.
    """
    kept: list[Model] = []
    for m in sorted(s.models, key=lambda m: (len(m), model_key(m, s.universe))):
        if not any(mm < m for mm in kept):
            kept.append(m)
    return ModelSet.from_models(kept, s.universe)


def negate_clause(gamma: Clause) -> CnfFormula:
    """The formula {~l | l in gamma}: one negated unit clause per literal."""
    return CnfFormula(Clause([l.negated()]) for l in gamma.literals)


def restrict(f: FormulaLike, assignment: Mapping[str, bool]) -> Formula:
    """Substitute variables by constants and fold true/false leaves."""
    g = as_formula(f)
    if isinstance(g, Var):
        if g.name in assignment:
            return TRUE if assignment[g.name] else FALSE
        return g
    if isinstance(g, Const):
        return g
    if isinstance(g, Not):
        return neg(restrict(g.child, assignment))
    if isinstance(g, And):
        return conj([restrict(p, assignment) for p in g.parts])
    if isinstance(g, Or):
        return disj([restrict(p, assignment) for p in g.parts])
    if isinstance(g, Implies):
        left = restrict(g.left, assignment)
        right = restrict(g.right, assignment)
        if left == FALSE or right == TRUE:
            return TRUE
        if left == TRUE:
            return right
        if right == FALSE:
            return neg(left)
        return Implies(left, right)
    raise InputError(f"not a formula: {g!r}")


def classically_redundant_clause(
    pi: CnfFormula,
    gamma: Clause,
    universe: Universe | None = None,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    """True iff removing `gamma` from `pi` leaves it entailed."""
    if gamma not in pi:
        raise InputError(f"clause {gamma} not in formula")
    u = universe if universe is not None else _auto_universe(pi)
    return entails(pi.removing(gamma), gamma, u, max_vars)


def classically_redundant_formula(
    pi: CnfFormula,
    universe: Universe | None = None,
    max_vars: int = DEFAULT_VAR_CAP,
) -> bool:
    """Classical logic is local: a formula is redundant iff some clause is."""
    u = universe if universe is not None else _auto_universe(pi)
    return any(classically_redundant_clause(pi, c, u, max_vars) for c in pi)
