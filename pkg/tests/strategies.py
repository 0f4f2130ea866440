"""Hypothesis strategies for formula/query ASTs.

Quantifier variables are drawn from a pool disjoint per nesting depth so the
generated formulas never shadow (the surface syntax forbids it).
"""

from __future__ import annotations

from hypothesis import strategies as st

from quantkitchen.logic import (
    And,
    Atom,
    BoolFormula,
    Card,
    CardConstraint,
    Const,
    CountQuery,
    Exists,
    Forall,
    Implies,
    IntLit,
    Not,
    Or,
    ScaledCard,
    Var,
)

PREDS = ["onion", "box", "robot", "vegetable", "whisk"]
CONSTS = ["Onion1", "Box1", "Robot1", "Tomato2"]
COMPARES = [">=", "<=", "==", ">", "<"]


def _terms(bound: tuple[str, ...]):
    options = [st.sampled_from(CONSTS).map(Const)]
    if bound:
        options.append(st.sampled_from(list(bound)).map(Var))
    return st.one_of(*options)


def atoms(bound: tuple[str, ...] = ()):
    return st.builds(
        Atom,
        st.sampled_from(PREDS),
        st.tuples(_terms(bound)),
    )


def formulas(bound: tuple[str, ...] = (), depth: int = 3):
    """Formulas without shadowing; free variables only from `bound`."""
    if depth == 0:
        return atoms(bound)
    sub = formulas(bound, depth - 1)
    fresh = f"v{depth}"
    quantified = st.one_of(
        st.builds(Forall, st.just(fresh), formulas(bound + (fresh,), depth - 1)),
        st.builds(Exists, st.just(fresh), formulas(bound + (fresh,), depth - 1)),
    )
    return st.one_of(
        atoms(bound),
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
        quantified,
    )


def closed_formulas(depth: int = 3):
    return formulas((), depth)


def _card_bodies(var: str, depth: int = 2):
    """Quantifier-free bodies whose only variable is `var` (Card invariant)."""
    base = st.builds(Atom, st.sampled_from(PREDS), st.tuples(st.just(Var(var))))
    if depth == 0:
        return base
    sub = _card_bodies(var, depth - 1)
    return st.one_of(
        base,
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
    )


def cards():
    return st.builds(Card, st.just("x"), _card_bodies("x"))


def card_terms():
    return st.one_of(
        cards(),
        st.builds(ScaledCard, st.integers(1, 9), cards()),
        st.builds(IntLit, st.integers(0, 20)),
    )


def card_constraints():
    # At least one side must be a cardinality; build then filter the int/int case.
    return (
        st.tuples(card_terms(), st.sampled_from(COMPARES), card_terms())
        .filter(lambda t: not (isinstance(t[0], IntLit) and isinstance(t[2], IntLit)))
        .map(lambda t: CardConstraint(*t))
    )


def query_exprs():
    return st.one_of(
        closed_formulas(depth=2).map(BoolFormula),
        card_constraints(),
        cards().map(CountQuery),
    )
