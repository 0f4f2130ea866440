"""Shared fixtures: packaged knowledge, lexicon, and worlds."""

from __future__ import annotations

import pathlib

import pytest

from quantkitchen.kitchen import default_knowledge, default_world, minimal_world
from quantkitchen.logic import ACTIONS, predicates
from quantkitchen.nlu import load_lexicon
from quantkitchen.service import _package_text

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def kb():
    return default_knowledge()


@pytest.fixture(scope="session")
def lex(kb):
    known = set().union(*(predicates(r) for r in kb.all_rules())) - set(ACTIONS)
    return load_lexicon(_package_text("lexicon.txt"), known)


@pytest.fixture
def small_world():
    return minimal_world()


@pytest.fixture
def big_world():
    return default_world()
