"""Bidirectional text layer for the Mace4-style surface syntax and the IR wire format.

Covers four grammars: single formulas, query expressions (cardinality
comparisons, bare counts, closed formulas), sensors/knowledge/expression
files, and the JSON SentenceIR wire object. Parsing is whitespace-insensitive;
serializers emit single spaces and `.` sentence terminators.
"""

from __future__ import annotations

import ast
import json
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ArityError,
    DomainMismatch,
    FormatError,
    FreeVariableError,
    ParseError,
    ShadowingError,
    UnknownConstant,
    UnknownSection,
)
from .logic import (
    ACTIONS,
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
    Term,
    Var,
    free_vars,
)

# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | CONST | INT | SYM | EOF
    value: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<sym>->|>=|<=|==|[()\[\],.&|\-*><])
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def tokenize_logic(text: str) -> list[Token]:
    """Split surface syntax into tokens, dropping whitespace and % comments."""
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i)
        if m.lastgroup == "sym":
            tokens.append(Token("SYM", m.group(), i))
        elif m.lastgroup == "int":
            tokens.append(Token("INT", m.group(), i))
        elif m.lastgroup == "ident":
            kind = "CONST" if m.group()[0].isupper() else "IDENT"
            tokens.append(Token(kind, m.group(), i))
        i = m.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser over a token stream.

    Precedence, loosest first: quantifiers (body extends maximally right),
    `->` (right-assoc), `|`, `&` (both right-assoc), `-` (negation), atoms.
    """

    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.i = 0
        self.bound: list[str] = []  # quantifier scope stack

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def at_sym(self, value: str) -> bool:
        tok = self.peek()
        return tok.kind == "SYM" and tok.value == value

    def expect_sym(self, value: str) -> Token:
        tok = self.peek()
        if tok.kind != "SYM" or tok.value != value:
            raise ParseError(f"expected {value!r}, found {tok.value or 'end of input'!r}", tok.pos)
        return self.next()

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"trailing input {tok.value!r}", tok.pos)

    # -- formulas ---------------------------------------------------------

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at_sym("->"):
            self.next()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        if self.at_sym("|"):
            self.next()
            return Or(left, self.disjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        if self.at_sym("&"):
            self.next()
            return And(left, self.conjunction())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == "-":
            self.next()
            return Not(self.unary())
        if tok.kind == "IDENT" and tok.value in ("all", "exists"):
            return self.quantified()
        return self.primary()

    def quantified(self) -> Formula:
        kw = self.next()
        var_tok = self.peek()
        if var_tok.kind != "IDENT":
            raise ParseError(f"expected variable after {kw.value!r}", var_tok.pos)
        self.next()
        if var_tok.value in self.bound:
            raise ShadowingError(f"variable {var_tok.value!r} already bound", var_tok.pos)
        self.bound.append(var_tok.value)
        body = self.formula()  # quantifier scope extends maximally right
        self.bound.pop()
        cls = Forall if kw.value == "all" else Exists
        return cls(var_tok.value, body)

    def primary(self) -> Formula:
        tok = self.peek()
        if self.at_sym("("):
            self.next()
            inner = self.formula()
            self.expect_sym(")")
            return inner
        if tok.kind == "IDENT":
            return self.atom()
        raise ParseError(f"expected a formula, found {tok.value or 'end of input'!r}", tok.pos)

    def atom(self) -> Atom:
        name = self.next()
        if not self.at_sym("("):
            return Atom(name.value)
        self.next()
        args = [self.term()]
        while self.at_sym(","):
            self.next()
            args.append(self.term())
        self.expect_sym(")")
        return Atom(name.value, tuple(args))

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind in ("IDENT", "CONST"):
            self.next()
            try:
                return Var(tok.value) if tok.kind == "IDENT" else Const(tok.value)
            except ValueError as exc:  # names with underscores fail the Mace4 pattern
                raise ParseError(str(exc), tok.pos) from exc
        raise ParseError(f"expected a term, found {tok.value or 'end of input'!r}", tok.pos)

    def sentence(self) -> Formula:
        f = self.formula()
        self.expect_sym(".")
        return f

    # -- cardinality expressions ------------------------------------------

    def card_atom(self) -> Card:
        self.expect_sym("|")
        kw = self.peek()
        if kw.kind != "IDENT" or kw.value != "exists":
            raise ParseError("cardinality term must open with 'exists'", kw.pos)
        self.next()
        var_tok = self.peek()
        if var_tok.kind != "IDENT":
            raise ParseError("expected variable after 'exists'", var_tok.pos)
        self.next()
        self.expect_sym("(")
        self.bound.append(var_tok.value)
        body = self.formula()
        self.bound.pop()
        self.expect_sym(")")
        if self.at_sym("."):  # the paper writes a sentence dot inside the bars
            self.next()
        self.expect_sym("|")
        try:
            return Card(var_tok.value, body)
        except ValueError as exc:
            raise ArityError(str(exc)) from exc

    def card_term(self) -> CardTerm:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            if self.at_sym("*"):
                self.next()
                return ScaledCard(int(tok.value), self.card_atom())
            return IntLit(int(tok.value))
        return self.card_atom()

    def query_expr(self) -> QueryExpr:
        tok = self.peek()
        if tok.kind == "INT" or self.at_sym("|"):
            lhs = self.card_term()
            op = self.peek()
            if op.kind == "SYM" and op.value in (">=", "<=", "==", ">", "<"):
                self.next()
                rhs = self.card_term()
                try:
                    return CardConstraint(lhs, op.value, rhs)
                except ValueError as exc:
                    raise ParseError(str(exc), op.pos) from exc
            if isinstance(lhs, Card):
                return CountQuery(lhs)
            raise ParseError("expected a comparison operator", op.pos)
        f = self.sentence()
        if free_vars(f):
            raise FreeVariableError(
                f"query formula must be closed, free: {sorted(free_vars(f))}", tok.pos
            )
        return BoolFormula(f)


def parse_formula(text: str) -> Formula:
    """Parse one `.`-terminated sentence.

    Free lowercase identifiers are allowed (rule files read them as implicitly
    universally quantified); closedness is the caller's concern.
    """
    p = _Parser(tokenize_logic(text))
    f = p.sentence()
    p.expect_end()
    return f


def parse_query_expr(text: str) -> QueryExpr:
    """Parse a cardinality comparison, a bare count term, or a closed formula."""
    p = _Parser(tokenize_logic(text))
    e = p.query_expr()
    p.expect_end()
    return e


# ---------------------------------------------------------------------------
# Serialization
#
# Levels, loosest first: quantifier=0, ->=1, |=2, &=3, -=4, atom=5. A child is
# parenthesized when its level is below the slot minimum; right slots of the
# right-associative connectives admit their own level, left slots do not, so
# non-default nesting round-trips exactly. Quantifier bodies are always
# parenthesized (the paper's style) and quantifiers anywhere but top level are
# wrapped, since their scope would otherwise swallow the rest of the sentence.

_LEVEL_ATOM = 5


def _level(f: Formula) -> int:
    if isinstance(f, (Forall, Exists)):
        return 0
    if isinstance(f, Implies):
        return 1
    if isinstance(f, Or):
        return 2
    if isinstance(f, And):
        return 3
    if isinstance(f, Not):
        return 4
    return _LEVEL_ATOM


def _ser(f: Formula, slot_min: int) -> str:
    text = _ser_bare(f)
    if _level(f) < slot_min:
        return f"({text})"
    return text


def _ser_bare(f: Formula) -> str:
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(t.name for t in f.args)})"
    if isinstance(f, Not):
        return f"-{_ser(f.body, _LEVEL_ATOM)}"
    if isinstance(f, And):
        return f"{_ser(f.left, 4)} & {_ser(f.right, 3)}"
    if isinstance(f, Or):
        return f"{_ser(f.left, 3)} | {_ser(f.right, 2)}"
    if isinstance(f, Implies):
        return f"{_ser(f.left, 2)} -> {_ser(f.right, 1)}"
    if isinstance(f, Forall):
        return f"all {f.var} ({_ser_bare(f.body)})"
    if isinstance(f, Exists):
        return f"exists {f.var} ({_ser_bare(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def serialize_formula(f: Formula) -> str:
    """Render a formula without the trailing sentence dot."""
    return _ser(f, 0)


def _ser_card(c: Card) -> str:
    return f"|exists {c.var} ({_ser_bare(c.body)}).|"


def _ser_card_term(t: CardTerm) -> str:
    if isinstance(t, IntLit):
        return str(t.value)
    if isinstance(t, ScaledCard):
        return f"{t.factor} * {_ser_card(t.inner)}"
    return _ser_card(t)


def serialize_query_expr(e: QueryExpr) -> str:
    if isinstance(e, BoolFormula):
        return f"{serialize_formula(e.formula)}."
    if isinstance(e, CardConstraint):
        return f"{_ser_card_term(e.lhs)} {e.cmp} {_ser_card_term(e.rhs)}"
    if isinstance(e, CountQuery):
        return _ser_card(e.card)
    raise TypeError(f"not a query expression: {e!r}")


# ---------------------------------------------------------------------------
# Sensors / knowledge / expressions files


@dataclass(frozen=True)
class SensorsDoc:
    """Parsed sensors file: domain size, distinct constants, ground type facts."""

    domain_size: int
    distinct: tuple[Const, ...]
    facts: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if len(self.distinct) != self.domain_size:
            raise DomainMismatch(
                f"domain_size is {self.domain_size} but {len(self.distinct)} constants are distinct"
            )
        if len(set(self.distinct)) != len(self.distinct):
            raise DomainMismatch("distinct list repeats a constant")
        names = {c.name for c in self.distinct}
        for fact in self.facts:
            for t in fact.args:
                if isinstance(t, Var):
                    raise ValueError(f"sensor fact must be ground: {fact}")
                if t.name not in names:
                    raise UnknownConstant(f"fact argument {t.name!r} is not a distinct constant")
        collect_arities(self.facts)


@dataclass(frozen=True)
class KnowledgeDoc:
    """Parsed background knowledge: classification, distinction and command rules.

    Rules are stored as written (open formulas); free variables read as
    implicitly universally quantified, the Mace4 convention.
    """

    classification: tuple[Formula, ...]
    distinction: tuple[Formula, ...]
    commands: tuple[Formula, ...]

    def __post_init__(self) -> None:
        for rule in self.classification:
            if not (
                isinstance(rule, Implies)
                and isinstance(rule.left, Atom)
                and isinstance(rule.right, Atom)
                and len(rule.left.args) == 1
                and rule.left.args == rule.right.args
                and isinstance(rule.left.args[0], Var)
            ):
                raise ValueError(f"classification rule must be unary atom -> atom: {rule}")
        for rule in self.distinction:
            if not (
                isinstance(rule, Implies)
                and isinstance(rule.right, Not)
                and isinstance(rule.right.body, Atom)
            ):
                raise ValueError(f"distinction rule must have a negated-atom consequent: {rule}")
        for rule in self.commands:
            head = rule.right if isinstance(rule, Implies) else None
            if isinstance(head, Not):
                head = head.body
            if not (isinstance(head, Atom) and head.pred in ACTIONS):
                raise ValueError(f"command rule consequent must be an action atom: {rule}")
        collect_arities(self.all_rules())

    def all_rules(self) -> tuple[Formula, ...]:
        return self.classification + self.distinction + self.commands


def _atoms_of(f: Formula):
    if isinstance(f, Atom):
        yield f
    elif isinstance(f, Not):
        yield from _atoms_of(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from _atoms_of(f.left)
        yield from _atoms_of(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from _atoms_of(f.body)


def collect_arities(formulas: Iterable[Formula], seed: dict[str, int] | None = None) -> dict[str, int]:
    """Record each predicate's arity; raise ArityError on any disagreement."""
    arities: dict[str, int] = dict(seed or {})
    for f in formulas:
        for atom in _atoms_of(f):
            seen = arities.setdefault(atom.pred, len(atom.args))
            if seen != len(atom.args):
                raise ArityError(
                    f"predicate {atom.pred!r} used with arity {len(atom.args)} and {seen}"
                )
    return arities


KNOWLEDGE_SECTIONS = (
    "background_knowledge_classification",
    "background_knowledge_distinction",
    "background_knowledge_commands",
)


class _FileParser(_Parser):
    def ident(self, expected: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != "IDENT" or (expected is not None and tok.value != expected):
            want = expected or "an identifier"
            raise ParseError(f"expected {want!r}, found {tok.value or 'end of input'!r}", tok.pos)
        return self.next()

    def sentences_until_end_of_list(self) -> list[Formula]:
        out: list[Formula] = []
        while not (self.peek().kind == "IDENT" and self.peek().value == "end_of_list"):
            if self.peek().kind == "EOF":
                raise ParseError("missing end_of_list", self.peek().pos)
            out.append(self.sentence())
        self.ident("end_of_list")
        self.expect_sym(".")
        return out


def parse_sensors(text: str) -> SensorsDoc:
    """Parse `assign(domain_size, N).`, the distinct list, and the sensor facts."""
    p = _FileParser(tokenize_logic(text))
    p.ident("assign")
    p.expect_sym("(")
    p.ident("domain_size")
    p.expect_sym(",")
    size_tok = p.peek()
    if size_tok.kind != "INT":
        raise ParseError("domain_size must be an integer", size_tok.pos)
    p.next()
    p.expect_sym(")")
    p.expect_sym(".")

    p.ident("list")
    p.expect_sym("(")
    p.ident("distinct")
    p.expect_sym(")")
    p.expect_sym(".")
    p.expect_sym("[")
    distinct: list[Const] = []
    while True:
        tok = p.peek()
        if tok.kind != "CONST":
            raise ParseError(f"expected a constant, found {tok.value or 'end of input'!r}", tok.pos)
        p.next()
        distinct.append(Const(tok.value))
        if p.at_sym(","):
            p.next()
            continue
        break
    p.expect_sym("]")
    p.expect_sym(".")
    p.ident("end_of_list")
    p.expect_sym(".")

    p.ident("formulas")
    p.expect_sym("(")
    section = p.ident()
    if section.value != "sensors":
        raise UnknownSection(f"expected formulas(sensors), found {section.value!r}")
    p.expect_sym(")")
    p.expect_sym(".")
    sentences = p.sentences_until_end_of_list()
    p.expect_end()

    facts: list[Atom] = []
    for s in sentences:
        if not isinstance(s, Atom):
            raise ValueError(f"sensor facts must be plain atoms: {s}")
        facts.append(s)
    return SensorsDoc(int(size_tok.value), tuple(distinct), tuple(facts))


def parse_knowledge(text: str) -> KnowledgeDoc:
    """Parse the three background_knowledge_* sections, any order, each optional."""
    p = _FileParser(tokenize_logic(text))
    sections: dict[str, list[Formula]] = {name: [] for name in KNOWLEDGE_SECTIONS}
    seen: set[str] = set()
    while p.peek().kind != "EOF":
        p.ident("formulas")
        p.expect_sym("(")
        name_tok = p.ident()
        if name_tok.value not in KNOWLEDGE_SECTIONS:
            raise UnknownSection(f"unknown knowledge section {name_tok.value!r}")
        if name_tok.value in seen:
            raise UnknownSection(f"duplicate knowledge section {name_tok.value!r}")
        seen.add(name_tok.value)
        p.expect_sym(")")
        p.expect_sym(".")
        sections[name_tok.value] = p.sentences_until_end_of_list()
    return KnowledgeDoc(
        tuple(sections["background_knowledge_classification"]),
        tuple(sections["background_knowledge_distinction"]),
        tuple(sections["background_knowledge_commands"]),
    )


def parse_expressions(text: str) -> tuple[QueryExpr, ...]:
    """Parse a `formulas(expressions).` block of closed formula sentences."""
    p = _FileParser(tokenize_logic(text))
    p.ident("formulas")
    p.expect_sym("(")
    name_tok = p.ident()
    if name_tok.value != "expressions":
        raise UnknownSection(f"expected formulas(expressions), found {name_tok.value!r}")
    p.expect_sym(")")
    p.expect_sym(".")
    sentences = p.sentences_until_end_of_list()
    p.expect_end()
    out: list[QueryExpr] = []
    for s in sentences:
        if free_vars(s):
            raise FreeVariableError(f"expression must be closed: {serialize_formula(s)}", 0)
        out.append(BoolFormula(s))
    return tuple(out)


def serialize_sensors(doc: SensorsDoc) -> str:
    lines = [f"assign(domain_size, {doc.domain_size}).", ""]
    lines.append("list(distinct).")
    lines.append(f"    [{', '.join(c.name for c in doc.distinct)}].")
    lines.append("end_of_list.")
    lines.append("")
    lines.append("formulas(sensors).")
    for fact in doc.facts:
        lines.append(f"    {serialize_formula(fact)}.")
    lines.append("end_of_list.")
    return "\n".join(lines) + "\n"


def serialize_knowledge(doc: KnowledgeDoc) -> str:
    lines: list[str] = []
    for name, rules in zip(
        KNOWLEDGE_SECTIONS, (doc.classification, doc.distinction, doc.commands)
    ):
        lines.append(f"formulas({name}).")
        for rule in rules:
            lines.append(f"    {serialize_formula(rule)}.")
        lines.append("end_of_list.")
        lines.append("")
    return "\n".join(lines)


def serialize_expressions(exprs: Iterable[QueryExpr]) -> str:
    lines = ["formulas(expressions)."]
    for e in exprs:
        if not isinstance(e, BoolFormula):
            raise ValueError("expression files hold closed formulas only")
        lines.append(f"    {serialize_query_expr(e)}")
    lines.append("end_of_list.")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SentenceIR wire format


def serialize_ir(x: SentenceIR) -> str:
    """Render the JSON wire object; key order is type, expressions, commands."""
    obj: dict = {"type": x.kind}
    if x.kind == "command":
        obj["expressions"] = [
            [serialize_query_expr(e) for e in inner] for inner in x.expressions
        ]
        obj["commands"] = [f"{serialize_formula(c)}." for c in x.commands]
    elif x.kind == "query":
        obj["expressions"] = [serialize_query_expr(e) for e in x.expressions]
    return json.dumps(obj)


def _load_wire(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        # The paper also prints IRs as Python dict literals with single quotes.
        try:
            obj = ast.literal_eval(text.strip())
        except (ValueError, SyntaxError) as exc:
            raise FormatError(f"not a JSON or literal-dict IR: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("IR wire form must be an object")
    return obj


def parse_ir(text: str) -> SentenceIR:
    obj = _load_wire(text)
    kind = obj.get("type")
    if kind not in ("command", "query", "invalid"):
        raise FormatError(f"unknown type value: {kind!r}")
    extra = set(obj) - {"type", "expressions", "commands"}
    if extra:
        raise FormatError(f"unexpected keys: {sorted(extra)}")
    if kind == "invalid":
        if "expressions" in obj or "commands" in obj:
            raise FormatError("invalid IR carries no expressions or commands")
        return SentenceIR("invalid")
    try:
        if kind == "command":
            raw_expr = obj.get("expressions")
            raw_cmds = obj.get("commands")
            if (
                not isinstance(raw_expr, list)
                or not all(isinstance(inner, list) for inner in raw_expr)
                or not isinstance(raw_cmds, list)
            ):
                raise FormatError("command IR needs expressions: [[...]] and commands: [...]")
            expressions = tuple(
                tuple(_parse_wire_constraint(s) for s in inner) for inner in raw_expr
            )
            commands = tuple(parse_formula(s) for s in raw_cmds)
            return SentenceIR("command", expressions, commands)
        raw_expr = obj.get("expressions")
        if not isinstance(raw_expr, list) or any(isinstance(e, list) for e in raw_expr):
            raise FormatError("query IR needs a flat expressions list")
        return SentenceIR("query", tuple(parse_query_expr(s) for s in raw_expr))
    except (ParseError, ValueError) as exc:
        raise FormatError(f"bad IR payload: {exc}") from exc


def _parse_wire_constraint(s: object) -> CardConstraint:
    if not isinstance(s, str):
        raise FormatError(f"constraint must be a string: {s!r}")
    e = parse_query_expr(s)
    if not isinstance(e, CardConstraint):
        raise FormatError(f"command expressions must be cardinality constraints: {s!r}")
    return e
