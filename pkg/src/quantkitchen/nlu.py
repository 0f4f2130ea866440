"""Deterministic grammar-based translation from English sentences to SentenceIR.

Sentences opening with a known verb become commands; declaratives and
questions built from known nouns and quantifiers become queries; everything
else becomes the invalid IR. translate is a pure function and never raises:
an untranslatable sentence is a value (kind=invalid), not an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import MissingScope, ParseError, UnknownQuantifier
from .logic import (
    And,
    Atom,
    BoolFormula,
    Card,
    CardConstraint,
    Const,
    CountQuery,
    Exists,
    Forall,
    Formula,
    Implies,
    IntLit,
    Not,
    QueryExpr,
    ScaledCard,
    SentenceIR,
    Var,
)

TokenT = Union[str, int]

_NUMBER_WORDS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11,
    "twelve": 12, "thirteen": 13, "fourteen": 14, "fifteen": 15, "sixteen": 16,
    "seventeen": 17, "eighteen": 18, "nineteen": 19, "twenty": 20,
}

_CONSTANT_RE = re.compile(r"[A-Z][A-Za-z0-9]*[0-9]\Z")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*|\d+")

# Leading words that carry no content; "robot" is stripped only as a vocative.
_LEADING_FILLERS = {"please", "now", "next", "then", "first"}


def tokenize(text: str) -> list[TokenT]:
    """Lowercased word tokens; named constants keep case; numerals become ints."""
    out: list[TokenT] = []
    for raw in _WORD_RE.findall(text):
        if raw.isdigit():
            out.append(int(raw))
        elif _CONSTANT_RE.match(raw):
            out.append(raw)
        elif raw.lower() in _NUMBER_WORDS:
            out.append(_NUMBER_WORDS[raw.lower()])
        else:
            out.append(raw.lower())
    return out


# ---------------------------------------------------------------------------
# Lexicon


@dataclass(frozen=True)
class Role:
    name: str
    type_pred: str
    source: str  # "explicit": must be said; "implicit": auto-added when unsaid

    def __post_init__(self) -> None:
        if self.source not in ("explicit", "implicit"):
            raise ValueError(f"role source must be explicit|implicit: {self.source!r}")


@dataclass(frozen=True)
class ActionTemplate:
    action: str
    roles: tuple[Role, ...]  # roles[0] is always the robot

    def __post_init__(self) -> None:
        if not self.roles or self.roles[0].type_pred != "robot":
            raise ValueError(f"first role of {self.action!r} must be the robot")


@dataclass(frozen=True)
class QuantTemplate:
    kind: str
    value: Union[int, tuple[int, int], None] = None  # between carries (low, high)
    variant: Optional[str] = None  # half_of carries its comparison here


@dataclass(frozen=True)
class Lexicon:
    nouns: dict[tuple[str, ...], tuple[str, bool]]  # surface words -> (pred, plural?)
    verbs: dict[str, ActionTemplate]
    quants: dict[tuple[str, ...], QuantTemplate]

    def match_noun(self, toks: Sequence[TokenT], i: int) -> Optional[tuple[str, bool, int]]:
        """Longest noun surface starting at i -> (predicate, plural?, next index)."""
        best: Optional[tuple[str, bool, int]] = None
        for surface, (pred, plural) in self.nouns.items():
            j = i + len(surface)
            if tuple(toks[i:j]) == surface and (best is None or j > best[2]):
                best = (pred, plural, j)
        return best

    def match_quant(self, toks: Sequence[TokenT], i: int) -> Optional[tuple[QuantTemplate, int]]:
        best: Optional[tuple[QuantTemplate, int]] = None
        for surface, template in self.quants.items():
            j = i + len(surface)
            if tuple(toks[i:j]) == surface and (best is None or j > best[1]):
                best = (template, j)
        return best


_LEX_LINE_RE = re.compile(
    r"(?P<kind>noun|verb|quant)\s+(?P<surface>[^-]+?)\s*->\s*(?P<body>.+)"
)
_ROLE_RE = re.compile(r"(?P<name>\w+):(?P<type>\w+):(?P<source>\w+)")


def load_lexicon(text: str, known_predicates: Optional[set[str]] = None) -> Lexicon:
    """Parse the line-oriented lexicon format.

    When `known_predicates` is given (from the knowledge document), every noun
    predicate must be in it — catches lexicon/ontology drift at load time.
    """
    nouns: dict[tuple[str, ...], tuple[str, bool]] = {}
    verbs: dict[str, ActionTemplate] = {}
    quants: dict[tuple[str, ...], QuantTemplate] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = _LEX_LINE_RE.fullmatch(line)
        if m is None:
            raise ValueError(f"lexicon line {lineno} is malformed: {line!r}")
        kind, surface, body = m.group("kind"), m.group("surface").strip(), m.group("body").strip()
        if kind == "noun":
            singular, _, plural = surface.partition("|")
            pred = body
            if known_predicates is not None and pred not in known_predicates:
                raise ValueError(f"noun predicate {pred!r} is not in the knowledge document")
            nouns[tuple(singular.split())] = (pred, False)
            nouns[tuple(plural.split())] = (pred, True)
        elif kind == "verb":
            action, _, role_text = body.partition("(")
            roles = tuple(
                Role(r.group("name"), r.group("type"), r.group("source"))
                for r in _ROLE_RE.finditer(role_text)
            )
            verbs[surface] = ActionTemplate(action.strip(), roles)
        else:
            kind_name, _, payload = body.partition(":")
            value: Optional[int] = None
            variant: Optional[str] = None
            if payload:
                if payload.isdigit():
                    value = int(payload)
                else:
                    variant = payload
            quants[tuple(surface.split())] = QuantTemplate(kind_name, value, variant)
    return Lexicon(nouns, verbs, quants)


# ---------------------------------------------------------------------------
# Constraint templates


def _v(i: int) -> Var:
    return Var(f"x{i}")


def _atom(pred: str, var: Var) -> Atom:
    return Atom(pred, (var,))


def _and_chain(parts: Sequence[Formula]) -> Formula:
    # Right-nested, matching how the surface parser associates `&`.
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = And(p, result)
    return result


def build_constraint(
    q: QuantTemplate, restrictor: str, scope: Optional[str] = None, other: bool = False
) -> list[QueryExpr]:
    """Instantiate a quantifier template over restrictor/scope predicates.

    Returns the query expressions the quantifier contributes (two for
    `between`, one otherwise). `other` marks a "… than other Bs" scope, which
    negates the restrictor inside the second cardinality term.
    """
    x0, x1 = _v(0), _v(1)

    def need_scope() -> str:
        if scope is None:
            raise MissingScope(f"quantifier kind {q.kind!r} needs a scope predicate")
        return scope

    if q.kind == "forall":
        s = need_scope()
        return [BoolFormula(Forall(x0.name, Implies(_atom(restrictor, x0), _atom(s, x0))))]
    if q.kind == "none":
        s = need_scope()
        return [
            BoolFormula(Not(Exists(x0.name, And(_atom(restrictor, x0), _atom(s, x0)))))
        ]
    if q.kind == "most":
        s = need_scope()
        lhs = Card(x0.name, And(_atom(restrictor, x0), _atom(s, x0)))
        rhs = Card(x0.name, And(_atom(restrictor, x0), Not(_atom(s, x0))))
        return [CardConstraint(lhs, ">", rhs)]
    if q.kind == "times":
        s = need_scope()
        lhs = Card(x0.name, _atom(restrictor, x0))
        if other:
            body = And(Not(_atom(restrictor, x1)), _atom(s, x1))
        else:
            body = _atom(s, x1)
        if q.value is None:
            raise UnknownQuantifier("times quantifier needs a factor")
        return [CardConstraint(lhs, "==", ScaledCard(q.value, Card(x1.name, body)))]
    if q.kind == "more_than_pred":
        s = need_scope()
        return [
            CardConstraint(
                Card(x0.name, _atom(restrictor, x0)), ">", Card(x1.name, _atom(s, x1))
            )
        ]
    if q.kind == "less_than_pred":
        s = need_scope()
        return [
            CardConstraint(
                Card(x0.name, _atom(restrictor, x0)), "<", Card(x1.name, _atom(s, x1))
            )
        ]
    if q.kind == "half_of":
        s = need_scope()
        cmp = {"eq": "==", "gt": ">", "lt": "<"}[q.variant or "eq"]
        doubled = ScaledCard(2, Card(x0.name, And(_atom(restrictor, x0), _atom(s, x0))))
        return [CardConstraint(doubled, cmp, Card(x1.name, _atom(restrictor, x1)))]
    if q.kind == "count_query":
        return [CountQuery(_restricted_card(x0, restrictor, scope))]
    if q.kind == "between":
        if not isinstance(q.value, tuple) or len(q.value) != 2:
            raise UnknownQuantifier("between quantifier needs two bounds")
        low, high = q.value
        card = _restricted_card(x0, restrictor, scope)
        return [
            CardConstraint(card, ">=", IntLit(low)),
            CardConstraint(_restricted_card(x0, restrictor, scope), "<=", IntLit(high)),
        ]

    cmp_by_kind = {
        "at_least": ">=",
        "at_most": "<=",
        "exactly": "==",
        "dozen": "==",
        "fixed_value": ">=",
        "many_threshold": ">=",
        "more_than": ">",
        "less_than": "<",
    }
    if q.kind not in cmp_by_kind:
        raise UnknownQuantifier(f"unknown quantifier kind {q.kind!r}")
    if q.value is None:
        raise UnknownQuantifier(f"quantifier kind {q.kind!r} needs a numeric value")
    card = _restricted_card(x0, restrictor, scope)
    return [CardConstraint(card, cmp_by_kind[q.kind], IntLit(q.value))]


def _restricted_card(var: Var, restrictor: str, scope: Optional[str]) -> Card:
    if scope is None:
        return Card(var.name, _atom(restrictor, var))
    return Card(var.name, And(_atom(restrictor, var), _atom(scope, var)))


# ---------------------------------------------------------------------------
# Sentence-level translation

INVALID = SentenceIR("invalid")


class _Untranslatable(Exception):
    """Internal signal: the sentence does not fit any supported pattern."""


@dataclass(frozen=True)
class _QuantifiedArg:
    pred: str
    constraint_bound: Optional[int]  # n for a `>= n` constraint, None for no constraint
    select_all: bool


@dataclass(frozen=True)
class _ConstArg:
    const: str
    type_pred: Optional[str]


_ArgPhrase = Union[_QuantifiedArg, _ConstArg]

_PHRASE_SEPARATORS = {"using", "with", "to", "into", "onto", "on", "from"}
_SWAP_SEPARATORS = {"on", "onto"}  # "sprinkle sugar on X": X is the target


def translate(text: str, lex: Lexicon) -> SentenceIR:
    """Translate one sentence; untranslatable input yields the invalid IR."""
    try:
        toks = tokenize(text)
        toks = _strip_fillers(toks, lex)
        if not toks:
            return INVALID
        head = toks[0]
        if isinstance(head, str) and head in lex.verbs:
            return _translate_command(toks, lex)
        return _translate_query(toks, lex)
    except (_Untranslatable, MissingScope, UnknownQuantifier, ParseError, ValueError, KeyError):
        return INVALID


def _strip_fillers(toks: list[TokenT], lex: Lexicon) -> list[TokenT]:
    while toks and isinstance(toks[0], str) and toks[0] in _LEADING_FILLERS:
        toks = toks[1:]
    # Vocative "Robot, fetch ..." — drop the address, keep the verb sentence.
    if len(toks) > 1 and toks[0] == "robot" and isinstance(toks[1], str) and toks[1] in lex.verbs:
        toks = toks[1:]
    if toks[-3:] == ["in", "the", "kitchen"]:
        toks = toks[:-3]
    return toks


# -- commands ---------------------------------------------------------------


def _translate_command(toks: list[TokenT], lex: Lexicon) -> SentenceIR:
    template = lex.verbs[toks[0]]
    rest = toks[1:]
    for i, t in enumerate(rest):
        # Conjoined second command => out of scope, a single sentence carries one command.
        if t == "and" and i + 1 < len(rest) and rest[i + 1] in lex.verbs:
            raise _Untranslatable("multi-command sentence")

    phrases = _split_phrases(rest, lex)
    if not phrases:
        raise _Untranslatable("command without an object")

    explicit_roles = [r for r in template.roles[1:]]
    if len(phrases) > len(explicit_roles):
        raise _Untranslatable("more object phrases than the action takes")

    args: list[_ArgPhrase] = []
    for i, role in enumerate(explicit_roles):
        if i < len(phrases):
            args.append(_parse_np(phrases[i], lex))
        elif role.source == "implicit":
            args.append(_QuantifiedArg(role.type_pred, None, False))
        else:
            raise _Untranslatable(f"missing {role.name} phrase")

    robot_var = _v(0)
    antecedent_parts: list[Formula] = [_atom("robot", robot_var)]
    action_args: list = [robot_var]
    constraints: list[CardConstraint] = []
    for position, arg in enumerate(args, start=1):
        var = _v(position)
        if isinstance(arg, _ConstArg):
            const = Const(arg.const)
            if arg.type_pred is not None:
                antecedent_parts.append(Atom(arg.type_pred, (const,)))
            action_args.append(const)
        else:
            antecedent_parts.append(_atom(arg.pred, var))
            action_args.append(var)
            if arg.constraint_bound is not None:
                constraints.append(
                    CardConstraint(
                        Card(var.name, _atom(arg.pred, var)), ">=", IntLit(arg.constraint_bound)
                    )
                )

    command = Implies(_and_chain(antecedent_parts), Atom(template.action, tuple(action_args)))
    return SentenceIR("command", (tuple(constraints),), (command,))


def _split_phrases(rest: list[TokenT], lex: Lexicon) -> list[list[TokenT]]:
    """Split the post-verb tokens into object phrases at role separators."""
    phrases: list[list[TokenT]] = []
    current: list[TokenT] = []
    swap = False
    for t in rest:
        if isinstance(t, str) and t in _PHRASE_SEPARATORS:
            if t in _SWAP_SEPARATORS:
                swap = True
            if current:
                phrases.append(current)
            current = []
            continue
        current.append(t)
    if current:
        phrases.append(current)
    phrases = [_strip_phrase_fillers(p) for p in phrases if p]
    if swap and len(phrases) == 2:
        phrases.reverse()
    return phrases


def _strip_phrase_fillers(phrase: list[TokenT]) -> list[TokenT]:
    # "the contents of Bowl1" refers to Bowl1 as far as the simulator cares.
    if phrase[:1] == ["the"]:
        rest = phrase[1:]
    else:
        rest = phrase
    if rest[:2] == ["contents", "of"]:
        rest = rest[2:]
        if rest[:1] == ["the"]:
            rest = rest[1:]
    return rest if rest else phrase


def _parse_np(phrase: list[TokenT], lex: Lexicon) -> _ArgPhrase:
    """Parse one object phrase into a quantified or constant argument."""
    if not phrase:
        raise _Untranslatable("empty object phrase")

    # Named constant, optionally typed: "bowl LargeBowl1", "cooking knife Knife1".
    if len(phrase) == 1 and isinstance(phrase[0], str) and _CONSTANT_RE.match(phrase[0]):
        return _ConstArg(phrase[0], None)
    last = phrase[-1]
    if isinstance(last, str) and _CONSTANT_RE.match(last):
        head = phrase[:-1]
        if head[:1] == ["the"]:
            head = head[1:]
        noun = lex.match_noun(head, 0)
        if noun is None or noun[2] != len(head):
            raise _Untranslatable(f"cannot type constant {last!r}")
        return _ConstArg(last, noun[0])

    definite = False
    i = 0
    if phrase[0] == "the":
        definite = True
        i = 1

    quant = lex.match_quant(phrase, i)
    if quant is not None:
        template, j = quant
        bound_maybe = phrase[j] if j < len(phrase) and isinstance(phrase[j], int) else None
        if template.kind == "forall":
            pred = _expect_noun(phrase, j, lex)
            return _QuantifiedArg(pred, None, True)
        if template.kind in ("fixed_value", "many_threshold", "dozen"):
            pred = _expect_noun(phrase, j, lex)
            assert template.value is not None
            return _QuantifiedArg(pred, template.value, False)
        if template.kind in ("at_least", "exactly"):
            if bound_maybe is None:
                raise _Untranslatable(f"{template.kind} needs a number")
            pred = _expect_noun(phrase, j + 1, lex)
            return _QuantifiedArg(pred, bound_maybe, False)
        raise _Untranslatable(f"quantifier kind {template.kind!r} unsupported in commands")

    if isinstance(phrase[i], int):
        n = phrase[i]
        if n < 1:
            raise _Untranslatable("cannot act on zero objects")
        pred = _expect_noun(phrase, i + 1, lex)
        return _QuantifiedArg(pred, n, False)

    noun = lex.match_noun(phrase, i)
    if noun is not None and noun[2] == len(phrase):
        pred, plural, _ = noun
        if plural:
            # "the tomatoes" / bare "tomatoes": act on every match.
            return _QuantifiedArg(pred, None, True)
        return _QuantifiedArg(pred, 1, False)

    if phrase[i] in ("a", "an") :
        pred = _expect_noun(phrase, i + 1, lex)
        return _QuantifiedArg(pred, 1, False)

    raise _Untranslatable(f"cannot parse object phrase {phrase!r}")


def _expect_noun(phrase: list[TokenT], i: int, lex: Lexicon) -> str:
    if i < len(phrase) and phrase[i] == "of":
        i += 1
        if i < len(phrase) and phrase[i] == "the":
            i += 1
    if i < len(phrase) and phrase[i] == "the":
        i += 1
    noun = lex.match_noun(phrase, i)
    if noun is None or noun[2] != len(phrase):
        raise _Untranslatable(f"expected a noun at {phrase[i:]!r}")
    return noun[0]


# -- queries ------------------------------------------------------------------


def _translate_query(toks: list[TokenT], lex: Lexicon) -> SentenceIR:
    toks = _normalize_question(toks)
    for builder in (_q_how_many, _q_there_are, _q_copular):
        exprs = builder(toks, lex)
        if exprs is not None:
            return SentenceIR("query", tuple(exprs))
    raise _Untranslatable("no query pattern matched")


def _normalize_question(toks: list[TokenT]) -> list[TokenT]:
    if toks[:2] == ["are", "there"] or toks[:2] == ["is", "there"]:
        return ["there", toks[0]] + toks[2:]
    return toks


def _q_how_many(toks: list[TokenT], lex: Lexicon) -> Optional[list[QueryExpr]]:
    if toks[:2] != ["how", "many"]:
        return None
    noun = lex.match_noun(toks, 2)
    if noun is None:
        raise _Untranslatable("how many needs a noun")
    pred, _, j = noun
    if toks[j:] not in ([], ["are", "there"], ["do", "we", "have"]):
        raise _Untranslatable("unexpected trailing words in count question")
    return build_constraint(QuantTemplate("count_query"), pred)


def _q_there_are(toks: list[TokenT], lex: Lexicon) -> Optional[list[QueryExpr]]:
    if toks[:2] not in (["there", "are"], ["there", "is"]):
        return None
    body = toks[2:]
    if not body:
        raise _Untranslatable("bare existential")

    # "a dozen" / "a few" / "a couple" must win over the indefinite article.
    if body[0] in ("a", "an") and lex.match_quant(body, 0) is None:
        pred = _expect_noun(body, 1, lex)
        x0 = _v(0)
        return [
            BoolFormula(Exists(x0.name, And(_atom("object", x0), _atom(pred, x0))))
        ]

    if body[0] == "no":
        pred = _expect_noun(body, 1, lex)
        return build_constraint(QuantTemplate("none"), "object", pred)

    # "There are twice as many As as/than (other) Bs" and "n times more/as many".
    times = _match_times(body, lex)
    if times is not None:
        return times

    # "There are more/fewer As than Bs" (predicate comparison) vs
    # "There are more than n As" (numeric bound).
    if body[0] in ("more", "less", "fewer") and body[1:2] != ["than"]:
        kind = "more_than_pred" if body[0] == "more" else "less_than_pred"
        noun = lex.match_noun(body, 1)
        if noun is None:
            raise _Untranslatable("comparison needs a noun")
        pred_a, _, j = noun
        if body[j : j + 1] != ["than"]:
            raise _Untranslatable("comparison needs 'than'")
        pred_b = _expect_noun(body, j + 1, lex)
        return build_constraint(QuantTemplate(kind), pred_a, pred_b)

    if body[0] == "between":
        if not (
            len(body) >= 4
            and isinstance(body[1], int)
            and body[2] == "and"
            and isinstance(body[3], int)
        ):
            raise _Untranslatable("between needs two numbers")
        pred = _expect_noun(body, 4, lex)
        low, high = body[1], body[3]
        card = _restricted_card(_v(0), pred, None)
        return [
            CardConstraint(card, ">=", IntLit(low)),
            CardConstraint(_restricted_card(_v(0), pred, None), "<=", IntLit(high)),
        ]

    quant = lex.match_quant(body, 0)
    if quant is not None:
        template, j = quant
        if template.kind in ("at_least", "at_most", "more_than", "less_than"):
            if j >= len(body) or not isinstance(body[j], int):
                raise _Untranslatable(f"{template.kind} needs a number")
            n = body[j]
            pred = _expect_noun(body, j + 1, lex)
            return build_constraint(QuantTemplate(template.kind, n), pred)
        if template.kind == "exactly":
            if j >= len(body) or not isinstance(body[j], int):
                raise _Untranslatable("exactly needs a number")
            pred = _expect_noun(body, j + 1, lex)
            return build_constraint(QuantTemplate("exactly", body[j]), pred)
        if template.kind in ("fixed_value", "many_threshold", "dozen"):
            pred = _expect_noun(body, j, lex)
            return build_constraint(template, pred)
        raise _Untranslatable(f"quantifier {template.kind!r} not usable after 'there are'")

    if isinstance(body[0], int):
        pred = _expect_noun(body, 1, lex)
        return build_constraint(QuantTemplate("exactly", body[0]), pred)

    raise _Untranslatable("unrecognized existential form")


def _match_times(body: list[TokenT], lex: Lexicon) -> Optional[list[QueryExpr]]:
    factor: Optional[int] = None
    rest: list[TokenT] = []
    if body[:3] == ["twice", "as", "many"]:
        factor, rest = 2, body[3:]
    elif (
        len(body) >= 3
        and isinstance(body[0], int)
        and body[1] == "times"
        and (body[2] in ("more", "as"))
    ):
        factor = body[0]
        rest = body[3:] if body[2] == "more" else body[4:]  # skip "as many"
        if body[2] == "as" and body[3:4] != ["many"]:
            raise _Untranslatable("expected 'times as many'")
    if factor is None:
        return None
    noun = lex.match_noun(rest, 0)
    if noun is None:
        raise _Untranslatable("times comparison needs a noun")
    pred_a, _, j = noun
    if rest[j : j + 1] not in (["as"], ["than"]):
        raise _Untranslatable("times comparison needs 'as' or 'than'")
    k = j + 1
    other = rest[k : k + 1] == ["other"]
    if other:
        k += 1
    pred_b = _expect_noun(rest, k, lex)
    return build_constraint(QuantTemplate("times", factor), pred_a, pred_b, other=other)


def _q_copular(toks: list[TokenT], lex: Lexicon) -> Optional[list[QueryExpr]]:
    """Quantified subject + copula: 'Most vegetables are red onions'."""
    quant = lex.match_quant(toks, 0)
    if quant is None:
        return None
    template, j = quant
    if toks[j : j + 1] == ["the"]:
        j += 1
    noun = lex.match_noun(toks, j)
    if noun is None:
        raise _Untranslatable("quantified subject needs a noun")
    restrictor, _, k = noun
    if toks[k : k + 1] not in (["are"], ["is"]):
        raise _Untranslatable("expected a copula")
    k += 1
    negated = toks[k : k + 1] == ["not"]
    if negated:
        k += 1
    if toks[k : k + 1] in (["a"], ["an"]):
        k += 1
    scope = _expect_noun(toks, k, lex)

    if template.kind == "forall":
        x0 = _v(0)
        consequent: Formula = _atom(scope, x0)
        if negated:
            # Negated copula puts the negation in the consequent.
            consequent = Not(consequent)
        return [BoolFormula(Forall(x0.name, Implies(_atom(restrictor, x0), consequent)))]
    if negated:
        raise _Untranslatable("negated copula only supported under 'all'")
    if template.kind in ("none", "most", "half_of"):
        return build_constraint(template, restrictor, scope)
    raise _Untranslatable(f"quantifier {template.kind!r} not usable as a subject")
