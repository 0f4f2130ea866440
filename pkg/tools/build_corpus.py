"""Regenerate the shipped corpora.

Writes src/quantkitchen/data/golden_corpus.jsonl (prompt/completion pairs,
completions frozen from the translator) and tests/fixtures/evaluation_132.jsonl
(132 pairs with pre-recorded produced output grading 97 identical,
9 equivalent, 26 wrong). Both files are deterministic; rerunning this script
must be a no-op unless the translator changed, in which case the diff is the
review artifact.

Usage: python3 tools/build_corpus.py
"""

from __future__ import annotations

import json
import pathlib
import sys

from quantkitchen.harness import classify
from quantkitchen.kitchen import default_knowledge
from quantkitchen.logic import ACTIONS, predicates
from quantkitchen.nlu import load_lexicon, translate
from quantkitchen.service import _package_text
from quantkitchen.textio import parse_ir, serialize_ir

ROOT = pathlib.Path(__file__).resolve().parent.parent

# (prompt, category, tag)
SENTENCES: list[tuple[str, str, str]] = [
    # fetch
    ("Fetch 3 tomatoes", "command", "fetch"),
    ("Fetch all green peppers", "command", "fetch"),
    ("Get a whisk", "command", "fetch"),
    ("Bring 2 eggs", "command", "fetch"),
    ("Fetch the bananas", "command", "fetch"),
    ("Fetch Tomato1", "command", "fetch"),
    ("Please fetch 4 onions", "command", "fetch"),
    ("Robot fetch a carrot", "command", "fetch"),
    ("Fetch a dozen eggs", "command", "fetch"),
    ("Fetch several doughnuts", "command", "fetch"),
    ("Fetch a few bananas", "command", "fetch"),
    ("Fetch a couple of carrots", "command", "fetch"),
    ("Fetch many tomatoes", "command", "fetch"),
    ("Fetch at least 2 trays", "command", "fetch"),
    ("Get the box Box1", "command", "fetch"),
    ("Now bring the red onion", "command", "fetch"),
    # cut
    ("Cut 5 onions using a knife", "command", "cut"),
    ("Cut several tomatoes", "command", "cut"),
    ("Chop 2 carrots with a cooking knife", "command", "cut"),
    ("Slice a mango", "command", "cut"),
    ("Next cut 1 mango using cooking knife Knife1", "command", "cut"),
    ("Cut a banana with knife CookingKnife1", "command", "cut"),
    ("Cut the green chili peppers", "command", "cut"),
    ("Cut exactly 3 carrots", "command", "cut"),
    ("First slice 2 red peppers", "command", "cut"),
    # mix
    ("Mix bowl LargeBowl1", "command", "mix"),
    ("Blend the contents of the bowl Bowl1 using a whisk", "command", "mix"),
    ("Stir the bowl MediumBowl1", "command", "mix"),
    ("Mix a bowl", "command", "mix"),
    ("Mix 2 bowls using a whisk", "command", "mix"),
    ("Blend the contents of LargeBowl1", "command", "mix"),
    # transfer
    ("Move contents of MediumBowl1 to MediumBowl2", "command", "transfer"),
    ("Transfer the contents of LargeBowl1 into Box1", "command", "transfer"),
    ("Pour the contents of the bowl LargeBowl1 into the box Box1", "command", "transfer"),
    ("Move the contents of Tray1 to Tray2", "command", "transfer"),
    # bake
    ("Bake 2 trays", "command", "bake"),
    ("Bake the dough", "command", "bake"),
    ("Bake a doughnut using oven Oven1", "command", "bake"),
    ("Bake 3 doughnuts", "command", "bake"),
    ("Bake the tray Tray1", "command", "bake"),
    # line
    ("Line a tray with baking paper", "command", "line"),
    ("Cover 3 trays with paper", "command", "line"),
    ("Line 2 trays using baking paper", "command", "line"),
    ("Cover the tray Tray2 with baking paper", "command", "line"),
    # sprinkle
    ("Sprinkle sugar on 2 doughnuts", "command", "sprinkle"),
    ("Sprinkle sugar onto the doughnuts", "command", "sprinkle"),
    ("Sprinkle 3 doughnuts with sugar", "command", "sprinkle"),
    ("Sprinkle the doughnut Doughnut1 with sugar", "command", "sprinkle"),
    # shape
    ("Shape the dough", "command", "shape"),
    ("Shape 1 dough", "command", "shape"),
    ("Shape the dough Dough1", "command", "shape"),
    # forall
    ("All tomatoes are vegetables", "query", "forall"),
    ("Every onion is a vegetable", "query", "forall"),
    ("All peppers are not red peppers", "query", "forall"),
    ("Every whisk is a kitchen tool", "query", "forall"),
    ("All red onions are onions", "query", "forall"),
    ("All boxes are containers", "query", "forall"),
    ("Every egg is an ingredient", "query", "forall"),
    ("All green peppers are not fruits", "query", "forall"),
    # none
    ("No tomato is a fruit", "query", "none"),
    ("No objects are boxes", "query", "none"),
    ("None of the tomatoes are fruits", "query", "none"),
    ("No carrot is a kitchen tool", "query", "none"),
    ("No banana is a vegetable", "query", "none"),
    # there-is
    ("There is a box", "query", "exists"),
    ("Is there a whisk", "query", "exists"),
    ("There is an oven", "query", "exists"),
    ("Is there a red pepper", "query", "exists"),
    # at_least
    ("There are at least 2 tomatoes", "query", "at_least"),
    ("Are there at least 3 eggs", "query", "at_least"),
    ("There are at least 5 vegetables", "query", "at_least"),
    ("There are at least 1 oven", "query", "at_least"),
    ("There are at least 4 doughnuts", "query", "at_least"),
    # at_most
    ("There are at most 4 onions", "query", "at_most"),
    ("There are at most 2 whisks", "query", "at_most"),
    ("Are there at most 6 eggs", "query", "at_most"),
    ("There are at most 10 vegetables", "query", "at_most"),
    # exactly
    ("There are exactly 4 eggs", "query", "exactly"),
    ("There are exactly 2 bowls", "query", "exactly"),
    ("Are there exactly 6 tomatoes", "query", "exactly"),
    ("There are exactly 1 robot", "query", "exactly"),
    ("There are exactly 5 bananas", "query", "exactly"),
    # bare numeral
    ("There are 3 mangoes", "query", "numeral"),
    ("There are 5 bananas", "query", "numeral"),
    ("There are zero mangoes", "query", "numeral"),
    ("There are 12 eggs", "query", "numeral"),
    ("Are there 2 trays", "query", "numeral"),
    ("There are six eggs", "query", "numeral"),
    # more_than / less_than (numeric)
    ("There are more than 3 onions", "query", "more_than"),
    ("Are there more than 2 trays", "query", "more_than"),
    ("There are more than 1 oven", "query", "more_than"),
    ("There are less than 5 eggs", "query", "less_than"),
    ("There are fewer than 3 boxes", "query", "less_than"),
    ("There are less than 2 robots", "query", "less_than"),
    # predicate comparisons
    ("There are more vegetables than fruits", "query", "more_than_pred"),
    ("Are there more tomatoes than onions", "query", "more_than_pred"),
    ("There are more boxes than trays", "query", "more_than_pred"),
    ("There are fewer carrots than eggs", "query", "less_than_pred"),
    ("There are less bananas than doughnuts", "query", "less_than_pred"),
    ("There are fewer whisks than ovens", "query", "less_than_pred"),
    # most
    ("Most vegetables are red onions", "query", "most"),
    ("Most objects are boxes", "query", "most"),
    ("The majority of vegetables are tomatoes", "query", "most"),
    ("Most fruits are bananas", "query", "most"),
    ("Majority of kitchen tools are whisks", "query", "most"),
    # times
    ("There are twice as many peppers than other vegetables in the kitchen", "query", "times"),
    ("There are twice as many boxes as other objects", "query", "times"),
    ("There are 3 times more eggs than bowls", "query", "times"),
    ("There are 2 times as many tomatoes as mangoes", "query", "times"),
    ("There are twice as many onions as carrots", "query", "times"),
    # between
    ("There are between 2 and 5 onions", "query", "between"),
    ("There are between 1 and 3 whisks", "query", "between"),
    ("Are there between 4 and 8 vegetables", "query", "between"),
    # dozen
    ("There are a dozen doughnuts", "query", "dozen"),
    ("Are there a dozen eggs", "query", "dozen"),
    ("There are half a dozen tomatoes", "query", "dozen"),
    ("There are half a dozen onions", "query", "dozen"),
    # half_of
    ("Half of the vegetables are red onions", "query", "half_of"),
    ("More than half of the vegetables are tomatoes", "query", "half_of"),
    ("Less than half of the fruits are mangoes", "query", "half_of"),
    ("Half of the eggs are ingredients", "query", "half_of"),
    # ambiguous quantifiers
    ("There are a couple of bananas", "query", "a_couple"),
    ("There are a couple trays", "query", "a_couple"),
    ("There are few onions", "query", "few"),
    ("There are few boxes", "query", "few"),
    ("There are a few carrots", "query", "a_few"),
    ("There are a few doughnuts", "query", "a_few"),
    ("There are some eggs", "query", "some"),
    ("There are some vegetables", "query", "some"),
    ("There are several doughnuts", "query", "several"),
    ("There are several onions", "query", "several"),
    ("There are many boxes", "query", "many"),
    ("There are many tomatoes", "query", "many"),
    # count queries
    ("How many onions are there", "query", "count"),
    ("How many vegetables are there", "query", "count"),
    ("How many green chili peppers are there in the kitchen", "query", "count"),
    ("How many doughnuts do we have", "query", "count"),
    ("How many kitchen tools are there", "query", "count"),
    ("How many red onions are there", "query", "count"),
    ("How many containers are there", "query", "count"),
    # invalid / out of scope
    ("I like swimming", "invalid", "out_of_scope"),
    ("What is the meaning of life", "invalid", "out_of_scope"),
    ("Fetch 3 eggs and bake a doughnut", "invalid", "multi_command"),
    ("Dance with the whisk", "invalid", "unknown_verb"),
    ("Cut most onions", "invalid", "bad_quantifier"),
    ("There are at most bananas", "invalid", "missing_number"),
    ("Sing a song", "invalid", "unknown_verb"),
    ("How many are there", "invalid", "missing_noun"),
    ("Fetch", "invalid", "missing_object"),
    ("Open the fridge", "invalid", "unknown_verb"),
    ("Cut the fridge", "invalid", "unknown_noun"),
    ("Is the oven hot", "invalid", "out_of_scope"),
]

# Extra programmatic coverage: every listed noun under three query templates.
_COUNT_NOUNS = ["tomatoes", "eggs", "whisks", "trays", "boxes", "red peppers", "mangoes"]
_AT_LEAST_NOUNS = ["onions", "bananas", "bowls", "green peppers", "carrots"]
_FORALL_PAIRS = [
    ("carrots", "vegetables"),
    ("mangoes", "fruits"),
    ("doughnuts", "ingredients"),
    ("cooking knives", "kitchen tools"),
    ("trays", "containers"),
]


def _expand() -> list[tuple[str, str, str]]:
    rows = list(SENTENCES)
    for noun in _COUNT_NOUNS:
        rows.append((f"How many {noun} are there", "query", "count"))
    for i, noun in enumerate(_AT_LEAST_NOUNS, start=1):
        rows.append((f"There are at least {i} {noun}", "query", "at_least"))
    for a, b in _FORALL_PAIRS:
        rows.append((f"All {a} are {b}", "query", "forall"))
    return rows


def build_lexicon():
    kb = default_knowledge()
    known = set().union(*(predicates(r) for r in kb.all_rules())) - set(ACTIONS)
    return kb, load_lexicon(_package_text("lexicon.txt"), known)


def build_golden() -> list[dict[str, str]]:
    _, lex = build_lexicon()
    records = []
    for prompt, category, tag in _expand():
        ir = translate(prompt, lex)
        if ir.kind != category:
            sys.exit(f"BUG: {prompt!r} translated to {ir.kind}, expected {category}")
        records.append(
            {
                "prompt": prompt,
                "completion": serialize_ir(ir),
                "category": category,
                "tag": tag,
            }
        )
    return records


# ---------------------------------------------------------------------------
# Evaluation fixture: 97 identical / 9 equivalent / 26 wrong

# The equivalent and wrong rows are hand-written (prompt, completion, produced,
# category, tag) so the grading is stable even if the translator changes.
EQUIVALENT_ROWS: list[tuple[str, str, str, str, str]] = [
    (
        "Blend the contents of the bowl Bowl1 using a whisk",
        "{'type':'command','expressions':[['|exists x2 (whisk(x2)).| >= 1']], 'commands':['robot(x0) & bowl(Bowl1) & whisk(x2) -> mix(x0, Bowl1, x2).']}",
        "{'type':'command','expressions':[['|exists x1 (whisk(x1)).| >= 1']], 'commands':['robot(x0) & bowl(Bowl1) & whisk(x1) -> mix(x0, Bowl1, x1).']}",
        "command",
        "mix",
    ),
    (
        "Cut 5 onions using a knife",
        '{"type": "command", "expressions": [["|exists x1 (onion(x1)).| >= 5", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists y (onion(y)).| >= 5", "|exists z (cookingKnife(z)).| >= 1"]], "commands": ["robot(x) & onion(y) & cookingKnife(z) -> cut(x, y, z)."]}',
        "command",
        "cut",
    ),
    (
        "Cut 2 carrots using a knife",
        '{"type": "command", "expressions": [["|exists x1 (carrot(x1)).| >= 2", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & carrot(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x1 (carrot(x1)).| >= 2", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & cookingKnife(x2) & carrot(x1) -> cut(x0, x1, x2)."]}',
        "command",
        "cut",
    ),
    (
        "Cut 3 tomatoes using a knife",
        '{"type": "command", "expressions": [["|exists x1 (tomato(x1)).| >= 3", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & tomato(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x2 (cookingKnife(x2)).| >= 1", "|exists x1 (tomato(x1)).| >= 3"]], "commands": ["robot(x0) & tomato(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        "command",
        "cut",
    ),
    (
        "Most objects are boxes",
        '{"type": "query", "expressions": ["|exists x0 (object(x0) & box(x0)).| > |exists x0 (object(x0) & -box(x0)).|"]}',
        '{"type": "query", "expressions": ["|exists x (box(x) & object(x)).| > |exists y (-box(y) & object(y)).|"]}',
        "query",
        "most",
    ),
    (
        "All tomatoes are vegetables",
        '{"type": "query", "expressions": ["all x0 (tomato(x0) -> vegetable(x0))."]}',
        '{"type": "query", "expressions": ["all y (tomato(y) -> vegetable(y))."]}',
        "query",
        "forall",
    ),
    (
        "No tomato is a fruit",
        '{"type": "query", "expressions": ["-(exists x0 (tomato(x0) & fruit(x0)))."]}',
        '{"type": "query", "expressions": ["-(exists x0 (fruit(x0) & tomato(x0)))."]}',
        "query",
        "none",
    ),
    (
        "There are more vegetables than fruits",
        '{"type": "query", "expressions": ["|exists x0 (vegetable(x0)).| > |exists x1 (fruit(x1)).|"]}',
        '{"type": "query", "expressions": ["|exists a (vegetable(a)).| > |exists b (fruit(b)).|"]}',
        "query",
        "more_than_pred",
    ),
    (
        "Mix bowl LargeBowl1",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & bowl(LargeBowl1) & whisk(x2) -> mix(x0, LargeBowl1, x2)."]}',
        '{"type": "command", "expressions": [[]], "commands": ["whisk(x2) & robot(x0) & bowl(LargeBowl1) -> mix(x0, LargeBowl1, x2)."]}',
        "command",
        "mix",
    ),
]

WRONG_ROWS: list[tuple[str, str, str, str, str]] = [
    (
        "All peppers are not red peppers",
        "{'type':'query','expressions':['all x0 (pepper(x0) -> -redPepper(x0)).']}",
        "{'type':'query','expressions':['all x0 (pepper(x0) -> redPepper(x0)).']}",
        "query",
        "forall",
    ),
    (
        "Cut 5 onions using a knife",
        '{"type": "command", "expressions": [["|exists x1 (onion(x1)).| >= 5", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x1 (onion(x1)).| >= 4", "|exists x2 (cookingKnife(x2)).| >= 1"]], "commands": ["robot(x0) & onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]}',
        "command",
        "cut",
    ),
    (
        "There are at least 2 tomatoes",
        '{"type": "query", "expressions": ["|exists x0 (tomato(x0)).| >= 2"]}',
        '{"type": "query", "expressions": ["|exists x0 (tomato(x0)).| <= 2"]}',
        "query",
        "at_least",
    ),
    (
        "There are exactly 4 eggs",
        '{"type": "query", "expressions": ["|exists x0 (egg(x0)).| == 4"]}',
        '{"type": "query", "expressions": ["|exists x0 (egg(x0)).| >= 4"]}',
        "query",
        "exactly",
    ),
    (
        "Fetch 3 tomatoes",
        '{"type": "command", "expressions": [["|exists x1 (tomato(x1)).| >= 3"]], "commands": ["robot(x0) & tomato(x1) -> fetch(x0, x1)."]}',
        '{"type": "command", "expressions": [["|exists x1 (tomato(x1)).| >= 3"]], "commands": ["robot(x0) & tomato(x1) -> cut(x0, x1)."]}',
        "command",
        "fetch",
    ),
    (
        "How many onions are there",
        '{"type": "query", "expressions": ["|exists x0 (onion(x0)).|"]}',
        '{"type": "query", "expressions": ["|exists x0 (onion(x0)).| >= 1"]}',
        "query",
        "count",
    ),
    (
        "There is a box",
        '{"type": "query", "expressions": ["exists x0 (object(x0) & box(x0))."]}',
        '{"type": "query", "expressions": ["all x0 (object(x0) & box(x0))."]}',
        "query",
        "exists",
    ),
    (
        "No tomato is a fruit",
        '{"type": "query", "expressions": ["-(exists x0 (tomato(x0) & fruit(x0)))."]}',
        '{"type": "query", "expressions": ["exists x0 (tomato(x0) & fruit(x0))."]}',
        "query",
        "none",
    ),
    (
        "Mix bowl LargeBowl1",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & bowl(LargeBowl1) & whisk(x2) -> mix(x0, LargeBowl1, x2)."]}',
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & bowl(LargeBowl1) -> mix(x0, LargeBowl1, x2)."]}',
        "command",
        "mix",
    ),
    (
        "There are several doughnuts",
        '{"type": "query", "expressions": ["|exists x0 (doughnut(x0)).| >= 5"]}',
        '{"type": "query", "expressions": ["|exists x0 (doughnut(x0)).| >= 4"]}',
        "query",
        "several",
    ),
    (
        "There are many boxes",
        '{"type": "query", "expressions": ["|exists x0 (box(x0)).| >= 10"]}',
        '{"type": "query", "expressions": ["|exists x0 (box(x0)).| >= 5"]}',
        "query",
        "many",
    ),
    # Note: a `== 12` vs `== 6` confusion would NOT land here — both sides are
    # false on every world the bounded oracle can build (size <= 5), so it
    # grades equivalent. The oracle is a semi-decision; this row keeps the
    # disagreement inside the decidable range.
    (
        "There are a dozen doughnuts",
        '{"type": "query", "expressions": ["|exists x0 (doughnut(x0)).| == 12"]}',
        '{"type": "query", "expressions": ["|exists x0 (doughnut(x0)).| == 2"]}',
        "query",
        "dozen",
    ),
    (
        "Half of the vegetables are red onions",
        '{"type": "query", "expressions": ["2 * |exists x0 (vegetable(x0) & redOnion(x0)).| == |exists x1 (vegetable(x1)).|"]}',
        '{"type": "query", "expressions": ["2 * |exists x0 (vegetable(x0) & redOnion(x0)).| > |exists x1 (vegetable(x1)).|"]}',
        "query",
        "half_of",
    ),
    (
        "There are between 2 and 5 onions",
        '{"type": "query", "expressions": ["|exists x0 (onion(x0)).| >= 2", "|exists x0 (onion(x0)).| <= 5"]}',
        '{"type": "query", "expressions": ["|exists x0 (onion(x0)).| >= 2"]}',
        "query",
        "between",
    ),
    (
        "There are twice as many boxes as other objects",
        '{"type": "query", "expressions": ["|exists x0 (box(x0)).| == 2 * |exists x1 (-box(x1) & object(x1)).|"]}',
        '{"type": "query", "expressions": ["|exists x0 (box(x0)).| == 2 * |exists x1 (object(x1)).|"]}',
        "query",
        "times",
    ),
    (
        "Most vegetables are red onions",
        '{"type": "query", "expressions": ["|exists x0 (vegetable(x0) & redOnion(x0)).| > |exists x0 (vegetable(x0) & -redOnion(x0)).|"]}',
        '{"type": "query", "expressions": ["|exists x0 (vegetable(x0) & redOnion(x0)).| >= |exists x0 (vegetable(x0) & -redOnion(x0)).|"]}',
        "query",
        "most",
    ),
    (
        "Shape the dough",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & dough(x1) -> shape(x0, x1)."]}',
        '{"type": "invalid"}',
        "command",
        "shape",
    ),
    (
        "I like swimming",
        '{"type": "invalid"}',
        '{"type": "query", "expressions": ["exists x0 (object(x0) & object(x0))."]}',
        "invalid",
        "out_of_scope",
    ),
    (
        "Bake 2 trays",
        '{"type": "command", "expressions": [["|exists x1 (tray(x1)).| >= 2"]], "commands": ["robot(x0) & tray(x1) & oven(x2) -> bake(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x1 (tray(x1)).| >= 2"]], "commands": ["robot(x0) & tray(x1) & whisk(x2) -> bake(x0, x1, x2)."]}',
        "command",
        "bake",
    ),
    (
        "Line a tray with baking paper",
        '{"type": "command", "expressions": [["|exists x1 (tray(x1)).| >= 1", "|exists x2 (bakingPaper(x2)).| >= 1"]], "commands": ["robot(x0) & tray(x1) & bakingPaper(x2) -> line(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x1 (tray(x1)).| >= 1"]], "commands": ["robot(x0) & tray(x1) & bakingPaper(x2) -> line(x0, x1, x2)."]}',
        "command",
        "line",
    ),
    (
        "Sprinkle sugar on 2 doughnuts",
        '{"type": "command", "expressions": [["|exists x1 (doughnut(x1)).| >= 2"]], "commands": ["robot(x0) & doughnut(x1) & sugar(x2) -> sprinkle(x0, x1, x2)."]}',
        '{"type": "command", "expressions": [["|exists x1 (sugar(x1)).| >= 2"]], "commands": ["robot(x0) & sugar(x1) & doughnut(x2) -> sprinkle(x0, x1, x2)."]}',
        "command",
        "sprinkle",
    ),
    (
        "Move contents of MediumBowl1 to MediumBowl2",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) -> transfer(x0, MediumBowl1, MediumBowl2)."]}',
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) -> transfer(x0, MediumBowl2, MediumBowl1)."]}',
        "command",
        "transfer",
    ),
    (
        "There are more vegetables than fruits",
        '{"type": "query", "expressions": ["|exists x0 (vegetable(x0)).| > |exists x1 (fruit(x1)).|"]}',
        '{"type": "query", "expressions": ["|exists x0 (fruit(x0)).| > |exists x1 (vegetable(x1)).|"]}',
        "query",
        "more_than_pred",
    ),
    (
        "Every whisk is a kitchen tool",
        '{"type": "query", "expressions": ["all x0 (whisk(x0) -> kitchenTool(x0))."]}',
        '{"type": "query", "expressions": ["all x0 (kitchenTool(x0) -> whisk(x0))."]}',
        "query",
        "forall",
    ),
    (
        "There are zero mangoes",
        '{"type": "query", "expressions": ["|exists x0 (mango(x0)).| == 0"]}',
        "not even json {",
        "query",
        "numeral",
    ),
    (
        "Fetch all green peppers",
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & greenPepper(x1) -> fetch(x0, x1)."]}',
        '{"type": "command", "expressions": [[]], "commands": ["robot(x0) & greenChiliPepper(x1) -> fetch(x0, x1)."]}',
        "command",
        "fetch",
    ),
]


def build_fixture(golden: list[dict[str, str]]) -> list[dict[str, str]]:
    identical_src = [r for r in golden if r["prompt"] not in _used_prompts()][:97]
    if len(identical_src) < 97:
        sys.exit("BUG: not enough distinct golden rows for the identical block")
    rows = []
    for r in identical_src:
        rows.append({**r, "produced": r["completion"]})
    for prompt, completion, produced, category, tag in EQUIVALENT_ROWS + WRONG_ROWS:
        rows.append(
            {
                "prompt": prompt,
                "completion": completion,
                "produced": produced,
                "category": category,
                "tag": tag,
            }
        )
    return rows


def _used_prompts() -> set[str]:
    return {row[0] for row in EQUIVALENT_ROWS + WRONG_ROWS}


def verify_fixture(rows: list[dict[str, str]]) -> None:
    kb = default_knowledge()
    counts = {"identical": 0, "equivalent": 0, "wrong": 0}
    for row in rows:
        try:
            label = classify(parse_ir(row["completion"]), parse_ir(row["produced"]), kb)
        except Exception:
            label = "wrong"
        counts[label] += 1
    expected = {"identical": 97, "equivalent": 9, "wrong": 26}
    if counts != expected:
        sys.exit(f"BUG: fixture grades {counts}, expected {expected}")


def main() -> None:
    golden = build_golden()
    if len(golden) < 150:
        sys.exit(f"BUG: golden corpus has only {len(golden)} pairs")
    golden_path = ROOT / "src" / "quantkitchen" / "data" / "golden_corpus.jsonl"
    golden_path.write_text("".join(json.dumps(r) + "\n" for r in golden))
    print(f"wrote {golden_path} ({len(golden)} pairs)")

    fixture = build_fixture(golden)
    verify_fixture(fixture)
    fixture_path = ROOT / "tests" / "fixtures" / "evaluation_132.jsonl"
    fixture_path.parent.mkdir(parents=True, exist_ok=True)
    fixture_path.write_text("".join(json.dumps(r) + "\n" for r in fixture))
    print(f"wrote {fixture_path} (132 pairs: 97/9/26)")


if __name__ == "__main__":
    main()
