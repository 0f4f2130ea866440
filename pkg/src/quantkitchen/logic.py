"""Abstract syntax and structural algebra for FOL extended with cardinality terms.

Values are immutable (frozen dataclasses) and hashable, so they can be shared
freely between threads and used as dict keys. Surface syntax lives in
:mod:`quantkitchen.textio`; evaluation lives in :mod:`quantkitchen.reasoner`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import CaptureError

# Action predicates the simulator understands; command consequents must use one.
ACTIONS = frozenset({"fetch", "cut", "mix", "transfer", "bake", "line", "sprinkle", "shape"})

COMPARISONS = (">=", "<=", "==", ">", "<")

_VAR_RE = re.compile(r"[a-z][A-Za-z0-9]*\Z")
_CONST_RE = re.compile(r"[A-Z][A-Za-z0-9]*\Z")


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not _VAR_RE.match(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True)
class Const:
    name: str

    def __post_init__(self) -> None:
        if not _CONST_RE.match(self.name):
            raise ValueError(f"invalid constant name: {self.name!r}")


Term = Union[Var, Const]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Forall, Exists]


@dataclass(frozen=True)
class IntLit:
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("cardinality literals are non-negative")


@dataclass(frozen=True)
class Card:
    """The vertical-bar construct |exists var (body).| counting witnesses."""

    var: str
    body: Formula

    def __post_init__(self) -> None:
        if free_vars(self.body) != {self.var}:
            raise ValueError(
                f"cardinality body must have exactly {self.var!r} free, "
                f"got {sorted(free_vars(self.body))}"
            )


@dataclass(frozen=True)
class ScaledCard:
    factor: int
    inner: Card

    def __post_init__(self) -> None:
        if self.factor < 1:
            raise ValueError("scaling factor must be >= 1")


CardTerm = Union[IntLit, Card, ScaledCard]


@dataclass(frozen=True)
class CardConstraint:
    lhs: CardTerm
    cmp: str
    rhs: CardTerm

    def __post_init__(self) -> None:
        if self.cmp not in COMPARISONS:
            raise ValueError(f"unknown comparison: {self.cmp!r}")
        # int cmp int cannot arise from any quantifier template; reject as degenerate.
        if isinstance(self.lhs, IntLit) and isinstance(self.rhs, IntLit):
            raise ValueError("degenerate constraint: both sides are integer literals")


@dataclass(frozen=True)
class BoolFormula:
    """A closed formula used as a query (true/false answer)."""

    formula: Formula

    def __post_init__(self) -> None:
        if free_vars(self.formula):
            raise ValueError(
                f"query formula must be closed, free: {sorted(free_vars(self.formula))}"
            )


@dataclass(frozen=True)
class CountQuery:
    """A bare cardinality term: 'How many X are there?' (integer answer)."""

    card: Card


QueryExpr = Union[BoolFormula, CardConstraint, CountQuery]

KINDS = ("command", "query", "invalid")


@dataclass(frozen=True)
class SentenceIR:
    """The JSON-object sentence representation: type + expressions + commands.

    kind=command: expressions is one inner tuple of CardConstraint (the
    preconditions), commands is one Implies whose consequent is an action atom.
    kind=query: expressions is a flat tuple of QueryExpr (usually one; range
    quantifiers like 'between 3 and 7' contribute two, answered conjunctively).
    kind=invalid: both empty.
    """

    kind: str
    expressions: tuple = ()
    commands: tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown IR kind: {self.kind!r}")
        if self.kind == "invalid":
            if self.expressions or self.commands:
                raise ValueError("invalid IR carries no expressions or commands")
        elif self.kind == "command":
            if len(self.commands) != 1:
                raise ValueError("command IR has exactly one command formula")
            if len(self.expressions) != 1 or not isinstance(self.expressions[0], tuple):
                raise ValueError("command IR has exactly one inner constraint list")
            for c in self.expressions[0]:
                if not isinstance(c, CardConstraint):
                    raise ValueError(f"command constraints must be CardConstraint, got {c!r}")
            for f in self.commands:
                if not (isinstance(f, Implies) and isinstance(f.right, Atom)):
                    raise ValueError("command formula must be an implication with atom consequent")
                if f.right.pred not in ACTIONS:
                    raise ValueError(f"consequent predicate {f.right.pred!r} is not an action")
        else:  # query
            if self.commands:
                raise ValueError("query IR carries no commands")
            if not self.expressions:
                raise ValueError("query IR needs at least one expression")
            for e in self.expressions:
                if not isinstance(e, (BoolFormula, CardConstraint, CountQuery)):
                    raise ValueError(f"query expression of unexpected type: {e!r}")


def free_vars(f: Formula) -> frozenset[str]:
    """Variables occurring in `f` outside any binding quantifier."""
    if isinstance(f, Atom):
        return frozenset(t.name for t in f.args if isinstance(t, Var))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> frozenset[str]:
    """Variables bound by some quantifier inside `f`."""
    if isinstance(f, Atom):
        return frozenset()
    if isinstance(f, Not):
        return bound_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return bound_vars(f.left) | bound_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        return bound_vars(f.body) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def predicates(f: Formula) -> frozenset[str]:
    """All predicate names occurring in `f`."""
    if isinstance(f, Atom):
        return frozenset({f.pred})
    if isinstance(f, Not):
        return predicates(f.body)
    if isinstance(f, (And, Or, Implies)):
        return predicates(f.left) | predicates(f.right)
    if isinstance(f, (Forall, Exists)):
        return predicates(f.body)
    raise TypeError(f"not a formula: {f!r}")


def constants(f: Formula) -> frozenset[str]:
    """All constant names occurring in `f`."""
    if isinstance(f, Atom):
        return frozenset(t.name for t in f.args if isinstance(t, Const))
    if isinstance(f, Not):
        return constants(f.body)
    if isinstance(f, (And, Or, Implies)):
        return constants(f.left) | constants(f.right)
    if isinstance(f, (Forall, Exists)):
        return constants(f.body)
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, v: str, c: Const) -> Formula:
    """Replace every free occurrence of variable `v` in `f` with constant `c`.

    Bound occurrences are untouched. Raises CaptureError when `v` occurs both
    free and bound: such a formula is one renaming away from changing meaning
    under substitution, so we refuse rather than guess.
    """
    if v in free_vars(f) and v in bound_vars(f):
        raise CaptureError(f"{v!r} occurs both free and bound")
    return _subst(f, v, c)


def _subst(f: Formula, v: str, c: Const) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(c if isinstance(t, Var) and t.name == v else t for t in f.args))
    if isinstance(f, Not):
        return Not(_subst(f.body, v, c))
    if isinstance(f, And):
        return And(_subst(f.left, v, c), _subst(f.right, v, c))
    if isinstance(f, Or):
        return Or(_subst(f.left, v, c), _subst(f.right, v, c))
    if isinstance(f, Implies):
        return Implies(_subst(f.left, v, c), _subst(f.right, v, c))
    if isinstance(f, (Forall, Exists)):
        if f.var == v:
            return f
        return type(f)(f.var, _subst(f.body, v, c))
    raise TypeError(f"not a formula: {f!r}")


def _formula_var_occurrences(f: Formula) -> Iterator[str]:
    """Variable names in left-to-right textual order, binders included."""
    if isinstance(f, Atom):
        for t in f.args:
            if isinstance(t, Var):
                yield t.name
    elif isinstance(f, Not):
        yield from _formula_var_occurrences(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from _formula_var_occurrences(f.left)
        yield from _formula_var_occurrences(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield f.var
        yield from _formula_var_occurrences(f.body)
    else:
        raise TypeError(f"not a formula: {f!r}")


def _card_term_var_occurrences(t: CardTerm) -> Iterator[str]:
    if isinstance(t, IntLit):
        return
    if isinstance(t, ScaledCard):
        t = t.inner
    yield t.var
    yield from _formula_var_occurrences(t.body)


def _query_expr_var_occurrences(e: QueryExpr) -> Iterator[str]:
    if isinstance(e, BoolFormula):
        yield from _formula_var_occurrences(e.formula)
    elif isinstance(e, CardConstraint):
        yield from _card_term_var_occurrences(e.lhs)
        yield from _card_term_var_occurrences(e.rhs)
    elif isinstance(e, CountQuery):
        yield from _card_term_var_occurrences(e.card)
    else:
        raise TypeError(f"not a query expression: {e!r}")


def _rename_formula(f: Formula, m: dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(
            f.pred,
            tuple(Var(m[t.name]) if isinstance(t, Var) else t for t in f.args),
        )
    if isinstance(f, Not):
        return Not(_rename_formula(f.body, m))
    if isinstance(f, And):
        return And(_rename_formula(f.left, m), _rename_formula(f.right, m))
    if isinstance(f, Or):
        return Or(_rename_formula(f.left, m), _rename_formula(f.right, m))
    if isinstance(f, Implies):
        return Implies(_rename_formula(f.left, m), _rename_formula(f.right, m))
    if isinstance(f, (Forall, Exists)):
        return type(f)(m[f.var], _rename_formula(f.body, m))
    raise TypeError(f"not a formula: {f!r}")


def _rename_card_term(t: CardTerm, m: dict[str, str]) -> CardTerm:
    if isinstance(t, IntLit):
        return t
    if isinstance(t, ScaledCard):
        return ScaledCard(t.factor, _rename_card_term(t.inner, m))
    return Card(m[t.var], _rename_formula(t.body, m))


def _rename_query_expr(e: QueryExpr, m: dict[str, str]) -> QueryExpr:
    if isinstance(e, BoolFormula):
        return BoolFormula(_rename_formula(e.formula, m))
    if isinstance(e, CardConstraint):
        return CardConstraint(_rename_card_term(e.lhs, m), e.cmp, _rename_card_term(e.rhs, m))
    return CountQuery(_rename_card_term(e.card, m))


def _ir_expressions(x: SentenceIR) -> Iterator[QueryExpr]:
    if x.kind == "command":
        for inner in x.expressions:
            yield from inner
    else:
        yield from x.expressions


def canonical_rename(x: SentenceIR) -> SentenceIR:
    """Rename variables to x0, x1, ... in first-occurrence order.

    The walk covers commands before expressions, matching the wire layout's
    semantics (commands introduce the role variables the constraints refer to).
    One global injective map is built first and then applied in a single pass,
    so swaps like {x1 -> x0, x0 -> x1} cannot collide. Constants are never
    renamed. Idempotent: a canonical IR maps every variable to itself.
    """
    mapping: dict[str, str] = {}

    def visit(name: str) -> None:
        if name not in mapping:
            mapping[name] = f"x{len(mapping)}"

    for cmd in x.commands:
        for name in _formula_var_occurrences(cmd):
            visit(name)
    for expr in _ir_expressions(x):
        for name in _query_expr_var_occurrences(expr):
            visit(name)

    if x.kind == "command":
        expressions = tuple(
            tuple(_rename_query_expr(e, mapping) for e in inner) for inner in x.expressions
        )
    else:
        expressions = tuple(_rename_query_expr(e, mapping) for e in x.expressions)
    commands = tuple(_rename_formula(c, mapping) for c in x.commands)
    return SentenceIR(x.kind, expressions, commands)


def alpha_equivalent(a: SentenceIR, b: SentenceIR) -> bool:
    """True iff a and b are identical after canonical renaming of all variables."""
    return canonical_rename(a) == canonical_rename(b)
