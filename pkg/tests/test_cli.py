"""Command line interface, exercised through click's runner."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from conftest import FIXTURES

from quantkitchen.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestEval:
    def test_query(self, runner):
        result = runner.invoke(
            main, ["eval", "--sentence", "How many tomatoes are there?"]
        )
        assert result.exit_code == 0
        first, second = result.output.strip().splitlines()
        assert first == '{"type": "query", "expressions": ["|exists x0 (tomato(x0)).|"]}'
        assert json.loads(second) == {"answer": 6}

    def test_command(self, runner):
        result = runner.invoke(main, ["eval", "--sentence", "Fetch an egg"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        report = json.loads("\n".join(lines[1:]))
        assert report["status"] == "executed"

    def test_invalid_exits_2(self, runner):
        result = runner.invoke(main, ["eval", "--sentence", "I like swimming"])
        assert result.exit_code == 2
        assert result.output.strip() == '{"type": "invalid"}'

    def test_custom_world(self, runner, tmp_path):
        scenario = tmp_path / "w.scenario"
        scenario.write_text("Robot1 : robot @ Kitchen\nEgg1 : egg @ Fridge\n")
        result = runner.invoke(
            main,
            ["eval", "--world", str(scenario), "--sentence", "How many eggs are there?"],
        )
        assert result.exit_code == 0
        assert '{"answer": 1}' in result.output

    def test_bad_world_file_is_click_error(self, runner, tmp_path):
        scenario = tmp_path / "w.scenario"
        scenario.write_text("Egg1 : egg @ Fridge\n")  # no robot
        result = runner.invoke(
            main, ["eval", "--world", str(scenario), "--sentence", "x"]
        )
        assert result.exit_code == 1
        assert "Error" in result.output


class TestCorpusRun:
    def test_fixture_report(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(
            main,
            ["corpus", "run", str(FIXTURES / "evaluation_132.jsonl"), "--out", str(out)],
        )
        assert result.exit_code == 0
        assert "practical accuracy: 80.30%" in result.output
        report = json.loads(out.read_text())
        assert report["total"] == 132

    def test_missing_file(self, runner):
        result = runner.invoke(main, ["corpus", "run", "/nonexistent.jsonl"])
        assert result.exit_code != 0


class TestHelp:
    def test_group_lists_commands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for name in ("repl", "serve", "eval", "corpus"):
            assert name in result.output
