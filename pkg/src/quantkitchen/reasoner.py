"""Finite-model evaluation: saturation, Tarskian truth, and witness counting.

The closed-world construction replaces an external model finder: sensor facts
fix every object's type, classification rules are unary Horn, so the intended
model is unique and "number of models" for an existential equals the witness
count. :func:`enumerate_models` keeps the model-enumeration view as an
independent oracle — it deliberately reimplements closure and evaluation with
its own quantifier-free evaluator so the two routes cannot share a bug.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import InconsistentWorld, ScaleError, UnknownConstant, UnknownPredicate
from .logic import (
    And,
    Atom,
    BoolFormula,
    Card,
    CardConstraint,
    CardTerm,
    Const,
    CountQuery,
    Exists,
    Forall,
    Formula,
    Implies,
    IntLit,
    Not,
    Or,
    QueryExpr,
    ScaledCard,
    free_vars,
)
from .textio import KnowledgeDoc, SensorsDoc, collect_arities

_CMP = {">=": operator.ge, "<=": operator.le, "==": operator.eq, ">": operator.gt, "<": operator.lt}

Element = Union[int, str, Const]


@dataclass(frozen=True, eq=False)
class Interpretation:
    """Finite domain (index = element) with saturated predicate extensions."""

    domain: tuple[Const, ...]
    extensions: dict[str, frozenset[tuple[int, ...]]]
    index: dict[str, int] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {c.name: i for i, c in enumerate(self.domain)})

    def element(self, name: str) -> int:
        if name not in self.index:
            raise UnknownConstant(f"constant {name!r} is not in the domain")
        return self.index[name]

    def size(self) -> int:
        return len(self.domain)


def build_interpretation(sensors: SensorsDoc, kb: KnowledgeDoc) -> Interpretation:
    """Forward-chain the classification rules over the sensor facts to a fixpoint.

    Closed world: atoms not derivable are false. Distinction rules are
    integrity constraints only; command rules register predicates but derive
    nothing. Raises InconsistentWorld when a distinction rule is violated.
    """
    collect_arities(kb.all_rules(), seed=collect_arities(sensors.facts))

    extensions: dict[str, set[tuple[int, ...]]] = {}
    for f in sensors.facts + kb.all_rules():
        for atom in _atoms(f):
            extensions.setdefault(atom.pred, set())

    index = {c.name: i for i, c in enumerate(sensors.distinct)}
    for fact in sensors.facts:
        extensions[fact.pred].add(tuple(index[t.name] for t in fact.args))

    # Least fixpoint; unary Horn rules make rule order irrelevant.
    changed = True
    while changed:
        changed = False
        for rule in kb.classification:
            assert isinstance(rule, Implies) and isinstance(rule.left, Atom)
            assert isinstance(rule.right, Atom)
            derived = extensions[rule.left.pred] - extensions[rule.right.pred]
            if derived:
                extensions[rule.right.pred] |= derived
                changed = True

    interp = Interpretation(
        sensors.distinct, {p: frozenset(rows) for p, rows in extensions.items()}
    )

    for rule in kb.distinction:
        for env in _assignments(sorted(free_vars(rule)), interp.size()):
            if not eval_formula(interp, rule, env):
                witnesses = ", ".join(interp.domain[env[v]].name for v in sorted(env))
                raise InconsistentWorld(rule, witnesses)
    return interp


def _assignments(variables: list[str], size: int):
    for combo in itertools.product(range(size), repeat=len(variables)):
        yield dict(zip(variables, combo))


def _atoms(f: Formula):
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from _atoms(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from _atoms(f.left)
        yield from _atoms(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from _atoms(f.body)


def _element_index(interp: Interpretation, value: Element) -> int:
    if isinstance(value, int):
        return value
    if isinstance(value, Const):
        return interp.element(value.name)
    return interp.element(value)


def eval_formula(interp: Interpretation, f: Formula, env: Mapping[str, Element]) -> bool:
    """Tarskian truth over the finite domain; quantifiers range over all elements."""
    bound = {v: _element_index(interp, e) for v, e in env.items()}
    return _eval(interp, f, bound)


def _eval(interp: Interpretation, f: Formula, env: dict[str, int]) -> bool:
    if isinstance(f, Atom):
        if f.pred not in interp.extensions:
            raise UnknownPredicate(f"predicate {f.pred!r} appears in no facts or rules")
        row = []
        for t in f.args:
            if isinstance(t, Const):
                row.append(interp.element(t.name))
            else:
                if t.name not in env:
                    raise ValueError(f"unbound variable {t.name!r}")
                row.append(env[t.name])
        return tuple(row) in interp.extensions[f.pred]
    if isinstance(f, Not):
        return not _eval(interp, f.body, env)
    if isinstance(f, And):
        return _eval(interp, f.left, env) and _eval(interp, f.right, env)
    if isinstance(f, Or):
        return _eval(interp, f.left, env) or _eval(interp, f.right, env)
    if isinstance(f, Implies):
        return (not _eval(interp, f.left, env)) or _eval(interp, f.right, env)
    if isinstance(f, Forall):
        return all(_eval(interp, f.body, {**env, f.var: d}) for d in range(interp.size()))
    if isinstance(f, Exists):
        return any(_eval(interp, f.body, {**env, f.var: d}) for d in range(interp.size()))
    raise TypeError(f"not a formula: {f!r}")


def count_witnesses(interp: Interpretation, card: Card) -> int:
    """|{d in domain : body holds of d}| — the model count of `exists var (body)`."""
    return sum(
        1 for d in range(interp.size()) if _eval_with_env(interp, card.body, card.var, d)
    )


def _eval_with_env(interp: Interpretation, body: Formula, var: str, d: int) -> bool:
    return _eval(interp, body, {var: d})


def _card_value(interp: Interpretation, t: CardTerm) -> int:
    if isinstance(t, IntLit):
        return t.value
    if isinstance(t, ScaledCard):
        return t.factor * count_witnesses(interp, t.inner)
    return count_witnesses(interp, t)


def eval_query(interp: Interpretation, q: QueryExpr) -> bool | int:
    """Boolean for formulas and constraints; integer for count queries."""
    if isinstance(q, BoolFormula):
        return eval_formula(interp, q.formula, {})
    if isinstance(q, CardConstraint):
        return _CMP[q.cmp](_card_value(interp, q.lhs), _card_value(interp, q.rhs))
    if isinstance(q, CountQuery):
        return count_witnesses(interp, q.card)
    raise TypeError(f"not a query expression: {q!r}")


# ---------------------------------------------------------------------------
# Independent enumeration oracle

_ORACLE_DOMAIN_CAP = 12


def enumerate_models(
    sensors: SensorsDoc, kb: KnowledgeDoc, goal: Formula
) -> list[dict[str, Const]]:
    """All assignments of `goal`'s existential prefix that satisfy its body.

    The goal must be an existential prefix over a quantifier-free body. The
    result is ordered lexicographically by domain index. This path shares no
    code with build_interpretation/eval_formula on purpose: it is the oracle
    the witness-counting route is tested against.
    """
    if sensors.domain_size > _ORACLE_DOMAIN_CAP:
        raise ScaleError(
            f"domain size {sensors.domain_size} exceeds the enumeration cap "
            f"{_ORACLE_DOMAIN_CAP}"
        )
    prefix: list[str] = []
    body: Formula = goal
    while isinstance(body, Exists):
        prefix.append(body.var)
        body = body.body
    if _has_quantifier(body):
        raise ValueError("goal must be an existential prefix over a quantifier-free body")

    # Private closure over constant names, independent of Interpretation.
    facts: dict[str, set[tuple[str, ...]]] = {}
    for fact in sensors.facts:
        facts.setdefault(fact.pred, set()).add(tuple(t.name for t in fact.args))
    changed = True
    while changed:
        changed = False
        for rule in kb.classification:
            assert isinstance(rule, Implies) and isinstance(rule.left, Atom)
            assert isinstance(rule.right, Atom)
            have = facts.get(rule.left.pred, set())
            target = facts.setdefault(rule.right.pred, set())
            new = have - target
            if new:
                target |= new
                changed = True

    names = [c.name for c in sensors.distinct]
    models: list[dict[str, Const]] = []
    for combo in itertools.product(names, repeat=len(prefix)):
        binding = dict(zip(prefix, combo))
        if _eval_qf(facts, body, binding):
            models.append({v: Const(n) for v, n in binding.items()})
    return models


def _has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Forall, Exists)):
        return True
    if isinstance(f, Atom):
        return False
    if isinstance(f, Not):
        return _has_quantifier(f.body)
    return _has_quantifier(f.left) or _has_quantifier(f.right)


def _eval_qf(
    facts: dict[str, set[tuple[str, ...]]], f: Formula, binding: dict[str, str]
) -> bool:
    if isinstance(f, Atom):
        row = tuple(t.name if isinstance(t, Const) else binding[t.name] for t in f.args)
        return row in facts.get(f.pred, set())
    if isinstance(f, Not):
        return not _eval_qf(facts, f.body, binding)
    if isinstance(f, And):
        return _eval_qf(facts, f.left, binding) and _eval_qf(facts, f.right, binding)
    if isinstance(f, Or):
        return _eval_qf(facts, f.left, binding) or _eval_qf(facts, f.right, binding)
    if isinstance(f, Implies):
        return (not _eval_qf(facts, f.left, binding)) or _eval_qf(facts, f.right, binding)
    raise TypeError(f"quantifier-free formula expected: {f!r}")
