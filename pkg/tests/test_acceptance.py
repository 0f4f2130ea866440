"""End-to-end checks pinning the externally fixed behaviors of the system.

Each test here freezes one observable contract: reference translations,
witness counts on reference worlds, ambiguous-quantifier values, command
gating, grading arithmetic, and the property suites with their time budgets.
Expected values are stated inline; a failure is a behavioral regression.
"""

from __future__ import annotations

import random
import time
from importlib import resources

from conftest import FIXTURES

from quantkitchen.executor import run_command
from quantkitchen.harness import classify, load_corpus, run_corpus
from quantkitchen.kitchen import (
    Simulator,
    default_knowledge,
    load_scenario,
    minimal_world,
    to_sensors,
)
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
    SentenceIR,
    Var,
    alpha_equivalent,
)
from quantkitchen.nlu import translate
from quantkitchen.reasoner import (
    build_interpretation,
    count_witnesses,
    enumerate_models,
    eval_query,
)
from quantkitchen.textio import (
    KnowledgeDoc,
    SensorsDoc,
    parse_formula,
    parse_ir,
    parse_query_expr,
    serialize_formula,
    serialize_ir,
    serialize_query_expr,
)


def test_five_object_world_counts_two_ingredient_witnesses(kb):
    started = time.perf_counter()
    world = minimal_world()
    sensors = to_sensors(world)
    interp = build_interpretation(sensors, kb)

    card = Card("x", Atom("ingredient", (Var("x"),)))
    assert count_witnesses(interp, card) == 2

    witnesses = enumerate_models(sensors, kb, Exists("x", Atom("ingredient", (Var("x"),))))
    assert {m["x"].name for m in witnesses} == {"Tomato1", "Tomato2"}
    assert time.perf_counter() - started < 1.0


def _pepper_world(n_peppers: int, kb: KnowledgeDoc):
    lines = ["Robot1 : robot @ Kitchen"]
    lines += [f"Pepper{i} : pepper @ Fridge" for i in range(1, n_peppers + 1)]
    lines += [f"Carrot{i} : carrot @ Fridge" for i in range(1, 6)]
    return load_scenario("\n".join(lines) + "\n", kb)


def test_twice_as_many_peppers_query_flow(kb, lex):
    sentence = "There are twice as many peppers than other vegetables in the kitchen"
    ir = translate(sentence, lex)
    assert serialize_ir(ir) == (
        '{"type": "query", "expressions": ["|exists x0 (pepper(x0)).| == '
        '2 * |exists x1 (-pepper(x1) & vegetable(x1)).|"]}'
    )

    ten = build_interpretation(to_sensors(_pepper_world(10, kb)), kb)
    assert eval_query(ten, ir.expressions[0]) is True

    nine = build_interpretation(to_sensors(_pepper_world(9, kb)), kb)
    assert eval_query(nine, ir.expressions[0]) is False


REFERENCE_TRANSLATIONS = [
    (
        "Cut 5 onions using a knife",
        '{"type": "command", "expressions": [["|exists x1 (onion(x1)).| >= 5", '
        '"|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & '
        'onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
    ),
    (
        "Mix bowl LargeBowl1",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & '
        'bowl(LargeBowl1) & whisk(x2) -> mix(x0, LargeBowl1, x2)."]}',
    ),
    (
        "Most vegetables are red onions",
        '{"type": "query", "expressions": ["|exists x0 (vegetable(x0) & '
        'redOnion(x0)).| > |exists x0 (vegetable(x0) & -redOnion(x0)).|"]}',
    ),
    ("I like swimming", '{"type": "invalid"}'),
]

# English row, its set-theoretic truth value as a function of the three
# extension sets, computed without touching the evaluator under test.
CARDINALITY_TABLE = [
    ("All objects are boxes", lambda b, t, o: o <= b),
    ("No object is a box", lambda b, t, o: not (o & b)),
    ("There is a box", lambda b, t, o: bool(o & b)),
    ("There are at least two boxes", lambda b, t, o: len(b) >= 2),
    ("There are exactly two boxes", lambda b, t, o: len(b) == 2),
    ("There are more boxes than tools", lambda b, t, o: len(b) > len(t)),
    ("Most objects are boxes", lambda b, t, o: len(o & b) > len(o - b)),
    (
        "There are twice as many boxes as other objects",
        lambda b, t, o: len(b) == 2 * len(o - b),
    ),
    ("There are many boxes", lambda b, t, o: len(b) >= 10),
    ("How many boxes are there?", lambda b, t, o: len(b)),
]

_WORLD_TYPES = ["box", "box", "box", "tray", "whisk", "cookingKnife", "tomato", "robot"]


def _random_typed_world(rng: random.Random):
    n = rng.randint(1, 8)
    names = [f"Item{i}" for i in range(1, n + 1)]
    assign = {name: rng.choice(_WORLD_TYPES) for name in names}
    sensors = SensorsDoc(
        n,
        tuple(Const(name) for name in names),
        tuple(Atom(t, (Const(name),)) for name, t in assign.items()),
    )
    boxes = {x for x, t in assign.items() if t == "box"}
    tools = {x for x, t in assign.items() if t in ("whisk", "cookingKnife")}
    objects = {x for x, t in assign.items() if t != "robot"}
    return sensors, boxes, tools, objects


def test_reference_translations_and_counting_table(kb, lex):
    started = time.perf_counter()
    for sentence, wire in REFERENCE_TRANSLATIONS:
        assert serialize_ir(translate(sentence, lex)) == wire, sentence

    table_irs = []
    for sentence, _ in CARDINALITY_TABLE:
        ir = translate(sentence, lex)
        assert ir.kind == "query", sentence
        assert len(ir.expressions) == 1
        table_irs.append(ir.expressions[0])

    rng = random.Random(31)
    for _ in range(200):
        sensors, boxes, tools, objects = _random_typed_world(rng)
        interp = build_interpretation(sensors, kb)
        for (sentence, oracle), expr in zip(CARDINALITY_TABLE, table_irs):
            expected = oracle(boxes, tools, objects)
            assert eval_query(interp, expr) == expected, (sentence, sensors.facts)
    assert time.perf_counter() - started < 10.0


AMBIGUOUS_VALUES = [
    ("Fetch a couple of eggs", 2),
    ("Cut few tomatoes", 2),
    ("Cut a few tomatoes", 3),
    ("Fetch some carrots", 4),
    ("Cut several tomatoes", 5),
    ("Fetch many onions", 10),
]


def _tomato_world(n: int, kb: KnowledgeDoc):
    lines = ["Robot1 : robot @ Kitchen", "CookingKnife1 : cookingKnife @ Drawer"]
    lines += [f"Tomato{i} : tomato @ Fridge" for i in range(1, n + 1)]
    return load_scenario("\n".join(lines) + "\n", kb)


def test_ambiguous_quantifier_values_and_cut_counts(kb, lex):
    for sentence, value in AMBIGUOUS_VALUES:
        ir = translate(sentence, lex)
        [constraint] = ir.expressions[0]
        assert isinstance(constraint, CardConstraint)
        assert constraint.rhs == IntLit(value), sentence

    sim = Simulator(_tomato_world(6, kb))
    report = run_command(translate("Cut several tomatoes", lex), sim, kb)
    assert report["status"] == "executed"
    cut = [o.constant for o in sim.world.objects if o.has("cut")]
    assert cut == ["Tomato1", "Tomato2", "Tomato3", "Tomato4", "Tomato5"]
    assert not sim.world.find("Tomato6").has("cut")

    small = Simulator(_tomato_world(4, kb))
    before = small.world
    report = run_command(translate("Cut several tomatoes", lex), small, kb)
    assert report["status"] == "rejected"
    assert {"text": "|exists x1 (tomato(x1)).| >= 5", "holds": False} in report[
        "constraints"
    ]
    assert small.world == before


def test_inadmissible_commands_rejected_without_mutation(kb, lex, big_world):
    for sentence in ("Cut a bowl", "Fetch Robot1"):
        sim = Simulator(big_world)
        report = run_command(translate(sentence, lex), sim, kb)
        assert report["status"] == "rejected", sentence
        assert any(r.startswith("blocked by rule") for r in report["reasons"])
        assert report["actions"] == []
        assert sim.world == big_world  # snapshot equality, not just spot checks


EQUIVALENT_PAIR = (
    "{'type':'command','expressions':[['|exists x2 (whisk(x2)).| >= 1']], "
    "'commands':['robot(x0) & bowl(Bowl1) & whisk(x2) -> mix(x0, Bowl1, x2).']}",
    "{'type':'command','expressions':[['|exists x1 (whisk(x1)).| >= 1']], "
    "'commands':['robot(x0) & bowl(Bowl1) & whisk(x1) -> mix(x0, Bowl1, x1).']}",
)
WRONG_PAIR = (
    "{'type':'query','expressions':['all x0 (pepper(x0) -> -redPepper(x0)).']}",
    "{'type':'query','expressions':['all x0 (pepper(x0) -> redPepper(x0)).']}",
)


def test_grading_arithmetic_and_golden_corpus(kb, lex):
    golden, produced = (parse_ir(t) for t in EQUIVALENT_PAIR)
    assert classify(golden, produced, kb) == "equivalent"
    golden, produced = (parse_ir(t) for t in WRONG_PAIR)
    assert classify(golden, produced, kb) == "wrong"

    fixture = load_corpus((FIXTURES / "evaluation_132.jsonl").read_text())
    report = run_corpus(fixture, lex, kb)
    assert (report["identical"], report["equivalent"], report["wrong"]) == (97, 9, 26)
    assert report["practical_accuracy"] == 80.30

    corpus_text = (resources.files("quantkitchen.data") / "golden_corpus.jsonl").read_text()
    pairs = load_corpus(corpus_text)
    assert len(pairs) >= 150
    golden_report = run_corpus(pairs, lex, kb)
    assert golden_report["identical"] == golden_report["total"]
    assert golden_report["practical_accuracy"] == 100.0
    # Every action and every quantifier family is exercised.
    tags = set(golden_report["per_tag"])
    assert {
        "fetch", "cut", "mix", "transfer", "bake", "line", "sprinkle", "shape",
    } <= tags
    assert {
        "forall", "none", "most", "at_least", "at_most", "exactly", "more_than",
        "less_than", "between", "dozen", "half_of", "a_couple", "few", "a_few",
        "some", "several", "many", "times", "count",
    } <= tags


# ---------------------------------------------------------------------------
# Property suites, seeded generators (time-budgeted, so no hypothesis here)

_G_PREDS = ["onion", "box", "robot", "vegetable", "whisk"]
_G_CONSTS = ["Onion1", "Box1", "Robot1", "Tomato2"]
_G_COMPARES = [">=", "<=", "==", ">", "<"]


def _gen_term(rng: random.Random, bound: tuple[str, ...]):
    if bound and rng.random() < 0.5:
        return Var(rng.choice(bound))
    return Const(rng.choice(_G_CONSTS))


def _gen_formula(rng: random.Random, bound: tuple[str, ...], depth: int):
    roll = rng.random()
    if depth == 0 or roll < 0.25:
        return Atom(rng.choice(_G_PREDS), (_gen_term(rng, bound),))
    if roll < 0.4:
        return Not(_gen_formula(rng, bound, depth - 1))
    if roll < 0.55:
        fresh = f"v{depth}"
        quantifier = Forall if rng.random() < 0.5 else Exists
        return quantifier(fresh, _gen_formula(rng, bound + (fresh,), depth - 1))
    build = rng.choice([And, Or, Implies])
    return build(
        _gen_formula(rng, bound, depth - 1), _gen_formula(rng, bound, depth - 1)
    )


def _gen_card_body(rng: random.Random, var: str, depth: int):
    if depth == 0 or rng.random() < 0.4:
        return Atom(rng.choice(_G_PREDS), (Var(var),))
    build = rng.choice([Not, And, Or])
    if build is Not:
        return Not(_gen_card_body(rng, var, depth - 1))
    return build(
        _gen_card_body(rng, var, depth - 1), _gen_card_body(rng, var, depth - 1)
    )


def _gen_query_expr(rng: random.Random):
    roll = rng.random()
    card = Card("x", _gen_card_body(rng, "x", 2))
    if roll < 0.25:
        return CountQuery(card)
    if roll < 0.5:
        return BoolFormula(_gen_formula(rng, (), 2))
    lhs = card
    if rng.random() < 0.3:
        lhs = ScaledCard(rng.randint(1, 9), card)
    rhs = (
        IntLit(rng.randint(0, 20))
        if rng.random() < 0.5
        else Card("y", _gen_card_body(rng, "y", 2))
    )
    return CardConstraint(lhs, rng.choice(_G_COMPARES), rhs)


def _rename_bound(f, suffix: str, env=None):
    env = env or {}
    if isinstance(f, Atom):
        args = tuple(
            Var(env[t.name]) if isinstance(t, Var) and t.name in env else t
            for t in f.args
        )
        return Atom(f.pred, args)
    if isinstance(f, Not):
        return Not(_rename_bound(f.body, suffix, env))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(
            _rename_bound(f.left, suffix, env), _rename_bound(f.right, suffix, env)
        )
    new = f.var + suffix
    return type(f)(new, _rename_bound(f.body, suffix, {**env, f.var: new}))


def test_property_suites_within_time_budget(kb, lex):
    started = time.perf_counter()
    rng = random.Random(1207)

    # Saturation reaches the same fixpoint under any rule order: 20 shuffles.
    sensors = to_sensors(minimal_world())
    baseline = build_interpretation(sensors, kb).extensions
    rules = list(kb.classification)
    for _ in range(20):
        rng.shuffle(rules)
        shuffled = KnowledgeDoc(tuple(rules), kb.distinction, kb.commands)
        assert build_interpretation(sensors, shuffled).extensions == baseline

    # Witness counting agrees with model enumeration: 500 cases, domain <= 8.
    base_types = ["tomato", "onion", "whisk", "cookingKnife", "robot", "box"]
    body_preds = base_types + ["vegetable", "ingredient", "kitchenTool", "object"]
    for _ in range(500):
        n = rng.randint(1, 8)
        names = [f"Obj{i}" for i in range(1, n + 1)]
        facts = tuple(Atom(rng.choice(base_types), (Const(x),)) for x in names)
        world = SensorsDoc(n, tuple(Const(x) for x in names), facts)
        body = _gen_card_body_over(rng, body_preds, "x", 3)
        interp = build_interpretation(world, kb)
        counted = count_witnesses(interp, Card("x", body))
        models = enumerate_models(world, kb, Exists("x", body))
        assert counted == len(models)

    # Parse/serialize identity: 1000 generated ASTs (formulas + query exprs).
    for _ in range(600):
        f = _gen_formula(rng, (), 3)
        assert parse_formula(serialize_formula(f) + ".") == f
    for _ in range(400):
        q = _gen_query_expr(rng)
        assert parse_query_expr(serialize_query_expr(q)) == q

    # Alpha equivalence is an equivalence relation.
    for _ in range(200):
        f = _gen_formula(rng, (), 3)
        a = SentenceIR("query", (BoolFormula(f),))
        b = SentenceIR("query", (BoolFormula(_rename_bound(f, "r")),))
        c = SentenceIR("query", (BoolFormula(_rename_bound(f, "rr")),))
        other = SentenceIR("query", (BoolFormula(_gen_formula(rng, (), 3)),))
        assert alpha_equivalent(a, a)
        assert alpha_equivalent(a, b) and alpha_equivalent(b, a)
        assert alpha_equivalent(b, c) and alpha_equivalent(a, c)
        assert alpha_equivalent(a, other) == alpha_equivalent(other, a)

    assert time.perf_counter() - started < 60.0


def _gen_card_body_over(rng: random.Random, preds, var: str, depth: int):
    if depth == 0 or rng.random() < 0.35:
        return Atom(rng.choice(preds), (Var(var),))
    build = rng.choice([Not, And, Or, Implies])
    if build is Not:
        return Not(_gen_card_body_over(rng, preds, var, depth - 1))
    return build(
        _gen_card_body_over(rng, preds, var, depth - 1),
        _gen_card_body_over(rng, preds, var, depth - 1),
    )
