"""Command validation and execution against the simulator.

World mutation only on the success path is the load-bearing invariant here:
several tests compare full world snapshots before and after rejection.
"""

from __future__ import annotations

import pytest

from quantkitchen.errors import Insufficient
from quantkitchen.executor import (
    PREFETCH_ACTIONS,
    run_command,
    select_objects,
    validate,
)
from quantkitchen.kitchen import Simulator, to_sensors
from quantkitchen.nlu import translate
from quantkitchen.reasoner import build_interpretation
from quantkitchen.textio import parse_ir


@pytest.fixture()
def big_interp(big_world, kb):
    return build_interpretation(to_sensors(big_world), kb)


def _ir(text, lex):
    ir = translate(text, lex)
    assert ir.kind == "command", text
    return ir


class TestSelectObjects:
    def test_domain_order(self, big_interp):
        assert select_objects(big_interp, "tomato", 2) == ["Tomato1", "Tomato2"]

    def test_deterministic(self, big_interp):
        first = select_objects(big_interp, "onion", 3)
        assert first == select_objects(big_interp, "onion", 3)

    def test_zero(self, big_interp):
        assert select_objects(big_interp, "tomato", 0) == []

    def test_insufficient(self, big_interp):
        with pytest.raises(Insufficient) as info:
            select_objects(big_interp, "whisk", 4)
        assert info.value.need == 4

    def test_derived_types_count(self, big_interp):
        # Selection sees the saturated extension, not only base facts.
        vegetables = select_objects(big_interp, "vegetable", 5)
        assert len(vegetables) == 5


class TestValidate:
    def test_satisfiable_command(self, lex, big_interp, kb):
        result = validate(_ir("Cut several tomatoes", lex), big_interp, kb)
        assert result.valid
        assert result.selected == ("Tomato1", "Tomato2", "Tomato3", "Tomato4", "Tomato5")
        assert all(holds for _, holds in result.constraints)
        # One call vector per selected target, same robot and tool throughout.
        assert len(result.grounded_args) == 5
        assert {v[0] for v in result.grounded_args} == {"Robot1"}
        assert {v[2] for v in result.grounded_args} == {"CookingKnife1"}

    def test_constraint_failure_reported(self, lex, big_interp, kb):
        result = validate(_ir("Cut a dozen onions", lex), big_interp, kb)
        assert not result.valid
        [(text, holds)] = [c for c in result.constraints if not c[1]]
        assert text == "|exists x1 (onion(x1)).| >= 12"
        assert not holds
        assert any("not enough onion" in r for r in result.reasons)

    def test_non_command_rejected(self, lex, big_interp, kb):
        result = validate(translate("Is there a whisk?", lex), big_interp, kb)
        assert not result.valid and "not a command" in result.reasons

    def test_ingredient_guard_blocks_cutting_containers(self, lex, big_interp, kb):
        result = validate(_ir("Cut a bowl", lex), big_interp, kb)
        assert not result.valid
        assert any(r.startswith("blocked by rule") for r in result.reasons)

    def test_robot_not_fetchable(self, lex, big_interp, kb):
        result = validate(_ir("Fetch the robot", lex), big_interp, kb)
        assert not result.valid
        assert any(r.startswith("blocked by rule") for r in result.reasons)

    def test_ground_fact_must_hold(self, lex, big_interp, kb):
        # Box1 exists but is not a bowl, so the typed-constant atom fails.
        result = validate(_ir("Mix bowl Box1", lex), big_interp, kb)
        assert not result.valid
        assert any("fact does not hold: bowl(Box1)" in r for r in result.reasons)

    def test_unknown_constant(self, lex, big_interp, kb):
        result = validate(_ir("Mix bowl NoSuchBowl1", lex), big_interp, kb)
        assert not result.valid

    def test_unconstrained_plural_selects_all(self, lex, big_interp, kb):
        result = validate(_ir("Fetch all green peppers", lex), big_interp, kb)
        assert result.valid
        assert result.selected == ("GreenPepper1", "GreenPepper2", "GreenPepper3")


class TestRunCommand:
    def test_cut_several_tomatoes(self, lex, big_world, kb):
        report = run_command(_ir("Cut several tomatoes", lex), big_world, kb)
        assert report["status"] == "executed"
        cuts = [a for a in report["actions"] if a["action"] == "cut"]
        assert len(cuts) == 5
        # Targets start off the CounterTop, so each cut is preceded by a fetch.
        fetches = [a for a in report["actions"] if a["action"] == "fetch"]
        assert len(fetches) == 5
        assert all(a["outcome"] == "ok" for a in report["actions"])

    def test_exact_objects_mutated(self, lex, big_world, kb):
        sim = Simulator(big_world)
        run_command(_ir("Cut several tomatoes", lex), sim, kb)
        cut_names = {
            o.constant for o in sim.world.objects if o.has("cut")
        }
        assert cut_names == {"Tomato1", "Tomato2", "Tomato3", "Tomato4", "Tomato5"}
        assert not sim.world.find("Tomato6").has("cut")

    def test_mix_skips_prefetch_only_when_on_counter(self, lex, big_world, kb):
        sim = Simulator(big_world)
        report = run_command(_ir("Mix bowl LargeBowl1", lex), sim, kb)
        assert report["status"] == "executed"
        names = [a["action"] for a in report["actions"]]
        assert names == ["fetch", "mix"]  # bowl starts on the Shelf

        second = run_command(_ir("Mix bowl LargeBowl1", lex), sim, kb)
        assert [a["action"] for a in second["actions"]] == ["mix"]

    def test_fetch_has_no_prefetch(self, lex, big_world, kb):
        assert "fetch" not in PREFETCH_ACTIONS
        report = run_command(_ir("Fetch 2 eggs", lex), big_world, kb)
        assert [a["action"] for a in report["actions"]] == ["fetch", "fetch"]

    def test_rejected_command_leaves_world_alone(self, lex, big_world, kb):
        sim = Simulator(big_world)
        report = run_command(_ir("Cut a dozen onions", lex), sim, kb)
        assert report["status"] == "rejected"
        assert report["actions"] == []
        assert sim.world == big_world

    def test_blocked_command_leaves_world_alone(self, lex, big_world, kb):
        sim = Simulator(big_world)
        report = run_command(_ir("Cut a bowl", lex), sim, kb)
        assert report["status"] == "rejected"
        assert sim.world == big_world

    def test_query_ir_rejected(self, lex, big_world, kb):
        report = run_command(translate("Is there a whisk?", lex), big_world, kb)
        assert report["status"] == "rejected"
        assert report["reasons"] == ["not a command"]

    def test_transfer_execution(self, lex, big_world, kb):
        sim = Simulator(big_world)
        moved = [o.constant for o in big_world.objects if o.at == "MediumBowl1"]
        report = run_command(
            _ir("Transfer the contents of bowl MediumBowl1 into bowl LargeBowl1", lex),
            sim,
            kb,
        )
        assert report["status"] == "executed"
        for name in moved:
            assert sim.world.find(name).at == "LargeBowl1"

    def test_report_shape(self, lex, big_world, kb):
        report = run_command(_ir("Shape the dough", lex), big_world, kb)
        assert set(report) == {"status", "constraints", "selected", "actions", "reasons"}
        assert report["status"] == "executed"
        for act in report["actions"]:
            assert set(act) == {"action", "args", "outcome"}

    def test_wire_ir_accepted(self, big_world, kb):
        # Straight off the wire, bypassing the translator.
        ir = parse_ir(
            '{"type": "command", "expressions": [["|exists x1 (egg(x1)).| >= 2"]], '
            '"commands": ["robot(x0) & egg(x1) -> fetch(x0, x1)."]}'
        )
        report = run_command(ir, big_world, kb)
        assert report["status"] == "executed"
        assert len(report["actions"]) == 2
