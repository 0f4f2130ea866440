"""Corpus evaluation: grade parser output against golden translations.

Each produced IR is classified against its golden completion as identical
(byte-equal wire form), equivalent (alpha-equivalent, or semantically equal
on every small world), or wrong. The semantic check is an independent oracle:
it enumerates ALL interpretations of the mentioned unary predicates up to
domain size 5 and demands agreement on each, so renamings, reordered
conjuncts, and recast comparisons all land in "equivalent" without any
special-casing.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from .errors import FormatError, OracleScaleError, ParseError
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
    SentenceIR,
    Var,
    alpha_equivalent,
    free_vars,
)
from .nlu import Lexicon, translate
from .textio import KnowledgeDoc, parse_ir, serialize_ir

_MAX_WORLD_SIZE = 5
_WORK_CAP = 250_000  # world evaluations per comparison before giving up


@dataclass(frozen=True)
class CorpusPair:
    prompt: str
    completion: str  # golden IR, wire format
    category: str  # command | query | invalid
    tag: str  # quantifier or action name, for distribution reporting
    produced: Optional[str] = None  # pre-recorded output; None = run the translator

    def __post_init__(self) -> None:
        if self.category not in ("command", "query", "invalid"):
            raise ValueError(f"bad category {self.category!r}")


def load_corpus(text: str) -> list[CorpusPair]:
    """Parse line-delimited JSON records {prompt, completion, category, tag}."""
    pairs: list[CorpusPair] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
            pairs.append(
                CorpusPair(
                    prompt=record["prompt"],
                    completion=record["completion"],
                    category=record["category"],
                    tag=record["tag"],
                    produced=record.get("produced"),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise FormatError(f"corpus line {lineno}: {e}") from e
    return pairs


# ---------------------------------------------------------------------------
# Classification


def classify(golden: SentenceIR, produced: SentenceIR, kb: KnowledgeDoc) -> str:
    """Grade produced against golden: identical, equivalent, or wrong."""
    if serialize_ir(golden) == serialize_ir(produced):
        return "identical"
    if golden.kind != produced.kind:
        return "wrong"
    if alpha_equivalent(golden, produced):
        return "equivalent"
    try:
        if _semantically_equal(golden, produced):
            return "equivalent"
    except OracleScaleError as e:
        warnings.warn(f"semantic oracle out of budget, alpha check only: {e}")
        return "wrong"
    return "wrong"


def _semantically_equal(a: SentenceIR, b: SentenceIR) -> bool:
    if a.kind == "invalid":
        return True  # kinds already match; two invalids carry nothing else
    if a.kind == "query":
        return _expr_lists_equal(a.expressions, b.expressions)
    sigma = _align_consequents(a.commands[0], b.commands[0])
    if sigma is None:
        return False
    b_antecedent = _rename_free(b.commands[0].left, sigma)
    if not _formulas_equal(a.commands[0].left, b_antecedent):
        return False
    return _expr_lists_equal(a.expressions[0], b.expressions[0])


def _align_consequents(a: Implies, b: Implies) -> Optional[dict[str, str]]:
    """Variable bijection mapping b's action arguments onto a's, if one exists."""
    ca, cb = a.right, b.right
    assert isinstance(ca, Atom) and isinstance(cb, Atom)
    if ca.pred != cb.pred or len(ca.args) != len(cb.args):
        return None
    fwd: dict[str, str] = {}
    rev: dict[str, str] = {}
    for ta, tb in zip(ca.args, cb.args):
        if isinstance(ta, Const) or isinstance(tb, Const):
            if ta != tb:
                return None
            continue
        assert isinstance(ta, Var) and isinstance(tb, Var)
        if fwd.get(tb.name, ta.name) != ta.name or rev.get(ta.name, tb.name) != tb.name:
            return None
        fwd[tb.name] = ta.name
        rev[ta.name] = tb.name
    return fwd


def _rename_free(f: Formula, mapping: Mapping[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(
            f.pred,
            tuple(
                Var(mapping.get(t.name, t.name)) if isinstance(t, Var) else t
                for t in f.args
            ),
        )
    if isinstance(f, Not):
        return Not(_rename_free(f.body, mapping))
    if isinstance(f, And):
        return And(_rename_free(f.left, mapping), _rename_free(f.right, mapping))
    if isinstance(f, Or):
        return Or(_rename_free(f.left, mapping), _rename_free(f.right, mapping))
    if isinstance(f, Implies):
        return Implies(_rename_free(f.left, mapping), _rename_free(f.right, mapping))
    if isinstance(f, (Forall, Exists)):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        body = _rename_free(f.body, inner)
        return type(f)(f.var, body)
    raise TypeError(f"unexpected formula {f!r}")


# ---------------------------------------------------------------------------
# Bounded world oracle (private evaluator: must not share code with reasoner)

_WorldExt = dict[str, frozenset[int]]


def _mentioned(objs: Iterable[Union[Formula, QueryExpr]]) -> tuple[list[str], list[str]]:
    preds: set[str] = set()
    consts: set[str] = set()
    for o in objs:
        for atom in _iter_atoms(o):
            preds.add(atom.pred)
            consts |= {t.name for t in atom.args if isinstance(t, Const)}
    return sorted(preds), sorted(consts)


def _check_unary(objs: Iterable[Union[Formula, QueryExpr]]) -> None:
    for o in objs:
        for atom in _iter_atoms(o):
            if len(atom.args) != 1:
                raise OracleScaleError(
                    f"oracle handles unary predicates only, got {atom.pred}/{len(atom.args)}"
                )


def _iter_atoms(o: Any):
    if isinstance(o, Atom):
        yield o
    elif isinstance(o, Not):
        yield from _iter_atoms(o.body)
    elif isinstance(o, (And, Or, Implies)):
        yield from _iter_atoms(o.left)
        yield from _iter_atoms(o.right)
    elif isinstance(o, (Forall, Exists)):
        yield from _iter_atoms(o.body)
    elif isinstance(o, BoolFormula):
        yield from _iter_atoms(o.formula)
    elif isinstance(o, CountQuery):
        yield from _iter_atoms(o.card.body)
    elif isinstance(o, CardConstraint):
        yield from _iter_atoms(o.lhs)
        yield from _iter_atoms(o.rhs)
    elif isinstance(o, Card):
        yield from _iter_atoms(o.body)
    elif isinstance(o, ScaledCard):
        yield from _iter_atoms(o.inner)
    elif isinstance(o, IntLit):
        return
    else:
        raise TypeError(f"unexpected node {o!r}")


def _worlds(preds: Sequence[str], consts: Sequence[str]):
    """Yield (size, extensions, constant denotation) for every small world."""
    total = 0
    for n in range(_MAX_WORLD_SIZE + 1):
        if n == 0 and consts:
            continue  # constants need a denotation
        denotations = max(n, 1) ** len(consts)
        total += (2 ** (len(preds) * n)) * denotations
    if total > _WORK_CAP:
        raise OracleScaleError(
            f"{total} candidate worlds over predicates {list(preds)} exceeds {_WORK_CAP}"
        )
    for n in range(_MAX_WORLD_SIZE + 1):
        if n == 0 and consts:
            continue
        cells = [(p, e) for p in preds for e in range(n)]
        for bits in itertools.product((False, True), repeat=len(cells)):
            chosen: dict[str, set[int]] = {p: set() for p in preds}
            for (p, e), on in zip(cells, bits):
                if on:
                    chosen[p].add(e)
            ext: _WorldExt = {p: frozenset(s) for p, s in chosen.items()}
            for denot in itertools.product(range(n), repeat=len(consts)):
                yield n, ext, dict(zip(consts, denot))


def _ev(f: Formula, n: int, ext: _WorldExt, cmap: dict[str, int], env: dict[str, int]) -> bool:
    if isinstance(f, Atom):
        t = f.args[0]
        e = env[t.name] if isinstance(t, Var) else cmap[t.name]
        return e in ext[f.pred]
    if isinstance(f, Not):
        return not _ev(f.body, n, ext, cmap, env)
    if isinstance(f, And):
        return _ev(f.left, n, ext, cmap, env) and _ev(f.right, n, ext, cmap, env)
    if isinstance(f, Or):
        return _ev(f.left, n, ext, cmap, env) or _ev(f.right, n, ext, cmap, env)
    if isinstance(f, Implies):
        return (not _ev(f.left, n, ext, cmap, env)) or _ev(f.right, n, ext, cmap, env)
    if isinstance(f, Forall):
        return all(_ev(f.body, n, ext, cmap, {**env, f.var: e}) for e in range(n))
    if isinstance(f, Exists):
        return any(_ev(f.body, n, ext, cmap, {**env, f.var: e}) for e in range(n))
    raise TypeError(f"unexpected formula {f!r}")


def _term_value(t: CardTerm, n: int, ext: _WorldExt, cmap: dict[str, int]) -> int:
    if isinstance(t, IntLit):
        return t.value
    if isinstance(t, ScaledCard):
        return t.factor * _term_value(t.inner, n, ext, cmap)
    assert isinstance(t, Card)
    return sum(1 for e in range(n) if _ev(t.body, n, ext, cmap, {t.var: e}))


_CMP_FN = {
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    ">": lambda a, b: a > b,
    "<": lambda a, b: a < b,
}


def _expr_value(
    e: QueryExpr, n: int, ext: _WorldExt, cmap: dict[str, int]
) -> Union[bool, int]:
    if isinstance(e, BoolFormula):
        return _ev(e.formula, n, ext, cmap, {})
    if isinstance(e, CardConstraint):
        return _CMP_FN[e.cmp](
            _term_value(e.lhs, n, ext, cmap), _term_value(e.rhs, n, ext, cmap)
        )
    assert isinstance(e, CountQuery)
    return _term_value(e.card, n, ext, cmap)


def _exprs_equal(a: QueryExpr, b: QueryExpr) -> bool:
    if isinstance(a, CountQuery) != isinstance(b, CountQuery):
        return False  # an integer answer can never equal a boolean one
    _check_unary([a, b])
    preds, consts = _mentioned([a, b])
    for n, ext, cmap in _worlds(preds, consts):
        if _expr_value(a, n, ext, cmap) != _expr_value(b, n, ext, cmap):
            return False
    return True


def _expr_lists_equal(xs: Sequence[QueryExpr], ys: Sequence[QueryExpr]) -> bool:
    """Multiset comparison: every expression must find an equivalent partner."""
    if len(xs) != len(ys):
        return False
    remaining = list(ys)
    for x in xs:
        for i, y in enumerate(remaining):
            if _exprs_equal(x, y):
                del remaining[i]
                break
        else:
            return False
    return True


def _formulas_equal(f: Formula, g: Formula) -> bool:
    """Equality of the universal closures, world by world."""
    _check_unary([f, g])
    if _quantifier_free(f) and _quantifier_free(g):
        return _qf_formulas_equal(f, g)
    preds, consts = _mentioned([f, g])
    fv = sorted(free_vars(f) | free_vars(g))
    for n, ext, cmap in _worlds(preds, consts):
        for assignment in itertools.product(range(n), repeat=len(fv)):
            env = dict(zip(fv, assignment))
            if _ev(f, n, ext, cmap, env) != _ev(g, n, ext, cmap, env):
                return False
    return True


def _quantifier_free(f: Formula) -> bool:
    if isinstance(f, Atom):
        return True
    if isinstance(f, Not):
        return _quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _quantifier_free(f.left) and _quantifier_free(f.right)
    return False


def _qf_formulas_equal(f: Formula, g: Formula) -> bool:
    """Quantifier-free case: truth depends only on which predicates hold of
    each term, so enumerate truth assignments per term instead of worlds."""
    preds, consts = _mentioned([f, g])
    terms = sorted(free_vars(f) | free_vars(g)) + consts
    cells = [(t, p) for t in terms for p in preds]
    if 2 ** len(cells) > _WORK_CAP:
        raise OracleScaleError(f"{2 ** len(cells)} term typings exceeds {_WORK_CAP}")

    def evl(h: Formula, holds: dict[tuple[str, str], bool]) -> bool:
        if isinstance(h, Atom):
            return holds[(h.args[0].name, h.pred)]
        if isinstance(h, Not):
            return not evl(h.body, holds)
        if isinstance(h, And):
            return evl(h.left, holds) and evl(h.right, holds)
        if isinstance(h, Or):
            return evl(h.left, holds) or evl(h.right, holds)
        assert isinstance(h, Implies)
        return (not evl(h.left, holds)) or evl(h.right, holds)

    for bits in itertools.product((False, True), repeat=len(cells)):
        holds = dict(zip(cells, bits))
        if evl(f, holds) != evl(g, holds):
            return False
    return True


# ---------------------------------------------------------------------------
# Corpus run


def run_corpus(
    pairs: Iterable[CorpusPair], lexicon: Lexicon, kb: KnowledgeDoc
) -> dict[str, Any]:
    """Classify every pair and assemble the metrics report."""
    counts = {"identical": 0, "equivalent": 0, "wrong": 0}
    per_category: dict[str, dict[str, int]] = {}
    per_tag: dict[str, dict[str, int]] = {}
    rows: list[dict[str, Any]] = []
    review: list[str] = []

    for pair in pairs:
        reason = ""
        try:
            golden = parse_ir(pair.completion)
            produced = (
                parse_ir(pair.produced)
                if pair.produced is not None
                else translate(pair.prompt, lexicon)
            )
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                label = classify(golden, produced, kb)
            if caught:
                review.append(pair.prompt)
        except (FormatError, ParseError, ValueError) as e:
            label, reason = "wrong", f"unparseable: {e}"

        counts[label] += 1
        per_category.setdefault(pair.category, {"identical": 0, "equivalent": 0, "wrong": 0})[
            label
        ] += 1
        per_tag.setdefault(pair.tag, {"identical": 0, "equivalent": 0, "wrong": 0})[label] += 1
        row = {"prompt": pair.prompt, "tag": pair.tag, "category": pair.category, "label": label}
        if reason:
            row["reason"] = reason
        rows.append(row)

    total = sum(counts.values())
    accuracy = (
        round(100.0 * (counts["identical"] + counts["equivalent"]) / total, 2) if total else 0.0
    )
    return {
        "total": total,
        "identical": counts["identical"],
        "equivalent": counts["equivalent"],
        "wrong": counts["wrong"],
        "practical_accuracy": accuracy,
        "per_category": per_category,
        "per_tag": per_tag,
        "needs_review": review,
        "rows": rows,
    }


def format_report(report: dict[str, Any]) -> str:
    """Human-readable summary table."""
    lines = [
        f"pairs:     {report['total']}",
        f"identical: {report['identical']}",
        f"equivalent:{report['equivalent']:>2}",
        f"wrong:     {report['wrong']}",
        f"practical accuracy: {report['practical_accuracy']:.2f}%",
        "",
        f"{'tag':<18}{'identical':>10}{'equivalent':>11}{'wrong':>6}",
    ]
    for tag in sorted(report["per_tag"]):
        c = report["per_tag"][tag]
        lines.append(f"{tag:<18}{c['identical']:>10}{c['equivalent']:>11}{c['wrong']:>6}")
    if report["needs_review"]:
        lines.append("")
        lines.append("needs manual review (oracle out of budget):")
        lines.extend(f"  {p}" for p in report["needs_review"])
    return "\n".join(lines)
