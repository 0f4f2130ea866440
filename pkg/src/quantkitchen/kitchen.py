"""Symbolic kitchen simulator: typed objects, locations, scripted action effects.

Actions mutate nothing: apply_action returns a fresh World, so identical
calls on identical worlds give identical results. The Simulator wrapper owns
the current world and speaks the POST-command/state-query protocol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Any, Optional

from .errors import (
    ArityError,
    DuplicateConstant,
    NoRobot,
    PreconditionFailed,
    UnknownObject,
    UnknownType,
)
from .logic import ACTIONS, Atom, Const, predicates
from .textio import KnowledgeDoc, SensorsDoc, parse_knowledge

ACTION_ARITY = {
    "fetch": 2,
    "cut": 3,
    "mix": 3,
    "transfer": 3,
    "bake": 3,
    "line": 3,
    "sprinkle": 3,
    "shape": 2,
}

# Attribute flag -> predicate exported in sensors.
ATTRIBUTE_PREDICATES = {
    "cut": "cutObject",
    "mixed": "mixedContainer",
    "baked": "bakedObject",
    "lined": "linedContainer",
    "sprinkled": "sprinkledObject",
    "shaped": "shapedObject",
}

BUILTIN_LOCATIONS = frozenset(
    {"Kitchen", "CounterTop", "Fridge", "Drawer", "Shelf", "Pantry", "Oven"}
)


@dataclass(frozen=True)
class WorldObject:
    constant: str
    type_predicate: str
    at: str
    attributes: frozenset[str] = frozenset()  # subset of ATTRIBUTE_PREDICATES keys

    def has(self, flag: str) -> bool:
        return flag in self.attributes

    def with_flag(self, flag: str) -> "WorldObject":
        if flag not in ATTRIBUTE_PREDICATES:
            raise ValueError(f"unknown attribute flag {flag!r}")
        return replace(self, attributes=self.attributes | {flag})


@dataclass(frozen=True)
class World:
    objects: tuple[WorldObject, ...]
    locations: frozenset[str]
    log: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for o in self.objects:
            if o.constant in seen:
                raise DuplicateConstant(f"constant {o.constant!r} appears twice")
            seen.add(o.constant)
        for o in self.objects:
            if o.at not in self.locations and o.at not in seen:
                raise ValueError(f"{o.constant!r} is at unregistered place {o.at!r}")

    def find(self, name: str) -> WorldObject:
        for o in self.objects:
            if o.constant == name:
                return o
        raise UnknownObject(f"no object named {name!r}")

    def has_object(self, name: str) -> bool:
        return any(o.constant == name for o in self.objects)

    def _replaced(self, updated: dict[str, WorldObject]) -> tuple[WorldObject, ...]:
        return tuple(updated.get(o.constant, o) for o in self.objects)


_SCENARIO_LINE = re.compile(
    r"(?P<const>[A-Za-z0-9]+)\s*:\s*(?P<type>[A-Za-z0-9]+)\s*@\s*(?P<at>[A-Za-z0-9]+)"
)


def default_knowledge() -> KnowledgeDoc:
    text = (resources.files("quantkitchen.data") / "background_knowledge.in").read_text()
    return parse_knowledge(text)


def _known_type_predicates(kb: KnowledgeDoc) -> set[str]:
    preds: set[str] = set()
    for rule in kb.all_rules():
        preds |= predicates(rule)
    return preds - set(ACTIONS)


def load_scenario(text: str, kb: Optional[KnowledgeDoc] = None) -> World:
    """Build a World from `<Constant> : <type> @ <location>` lines.

    Types are checked against the knowledge document (the packaged one when
    kb is omitted); `@` targets may name another object, a builtin location,
    or any capitalized place mentioned before first use as a location.
    """
    if kb is None:
        kb = default_knowledge()
    known = _known_type_predicates(kb)

    entries: list[tuple[str, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("%")[0].strip()
        if not line:
            continue
        m = _SCENARIO_LINE.fullmatch(line)
        if m is None:
            raise ValueError(f"scenario line {lineno} is malformed: {line!r}")
        entries.append((m.group("const"), m.group("type"), m.group("at")))

    names = [c for c, _, _ in entries]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise DuplicateConstant(f"constants defined twice: {sorted(dupes)}")
    for const, type_pred, _ in entries:
        if type_pred not in known:
            raise UnknownType(f"{const!r} has type {type_pred!r}, unknown to the knowledge document")
    if not any(t == "robot" for _, t, _ in entries):
        raise NoRobot("scenario defines no robot")

    name_set = set(names)
    locations = set(BUILTIN_LOCATIONS)
    for _, _, at in entries:
        if at not in name_set:
            locations.add(at)
    objects = tuple(WorldObject(c, t, at) for c, t, at in entries)
    return World(objects, frozenset(locations))


# ---------------------------------------------------------------------------
# Action effects


def apply_action(w: World, action: str, args: list[str]) -> World:
    if action not in ACTION_ARITY:
        raise PreconditionFailed(f"unknown action {action!r}")
    if len(args) != ACTION_ARITY[action]:
        raise ArityError(
            f"{action} takes {ACTION_ARITY[action]} arguments, got {len(args)}"
        )
    resolved = [w.find(a) for a in args]
    new_objects = _EFFECTS[action](w, resolved)
    return World(new_objects, w.locations, w.log + ((action, tuple(args)),))


def _effect_fetch(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, target = args
    return w._replaced({target.constant: replace(target, at="CounterTop")})


def _effect_cut(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, target, _tool = args
    if target.at != "CounterTop":
        raise PreconditionFailed(
            f"{target.constant} is at {target.at}, cutting needs it on the CounterTop"
        )
    if target.has("cut"):
        raise PreconditionFailed(f"{target.constant} is already cut")
    return w._replaced({target.constant: target.with_flag("cut")})


def _effect_mix(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, container, _tool = args
    return w._replaced({container.constant: container.with_flag("mixed")})


def _effect_transfer(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, src, dst = args
    moved = {
        o.constant: replace(o, at=dst.constant)
        for o in w.objects
        if o.at == src.constant
    }
    return w._replaced(moved)


def _effect_bake(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, target, oven = args
    return w._replaced(
        {target.constant: replace(target.with_flag("baked"), at=oven.constant)}
    )


def _effect_line(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, tray, paper = args
    return w._replaced(
        {
            tray.constant: tray.with_flag("lined"),
            paper.constant: replace(paper, at=tray.constant),
        }
    )


def _effect_sprinkle(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, target, _topping = args
    return w._replaced({target.constant: target.with_flag("sprinkled")})


def _effect_shape(w: World, args: list[WorldObject]) -> tuple[WorldObject, ...]:
    _, target = args
    return w._replaced({target.constant: target.with_flag("shaped")})


_EFFECTS = {
    "fetch": _effect_fetch,
    "cut": _effect_cut,
    "mix": _effect_mix,
    "transfer": _effect_transfer,
    "bake": _effect_bake,
    "line": _effect_line,
    "sprinkle": _effect_sprinkle,
    "shape": _effect_shape,
}


def to_sensors(w: World) -> SensorsDoc:
    facts: list[Atom] = []
    for o in w.objects:
        facts.append(Atom(o.type_predicate, (Const(o.constant),)))
    for o in w.objects:
        for flag in sorted(o.attributes):
            facts.append(Atom(ATTRIBUTE_PREDICATES[flag], (Const(o.constant),)))
    return SensorsDoc(
        domain_size=len(w.objects),
        distinct=tuple(Const(o.constant) for o in w.objects),
        facts=tuple(facts),
    )


# ---------------------------------------------------------------------------
# HTTP-style protocol

COMMAND_PATH = "/abe-sim-command"
STATE_PATH = "/abe-sim-command/state"


def _state_records(w: World) -> list[dict[str, Any]]:
    return [
        {
            "name": o.constant,
            "type": o.type_predicate,
            "at": o.at,
            "attributes": {flag: o.has(flag) for flag in ATTRIBUTE_PREDICATES},
        }
        for o in w.objects
    ]


@dataclass
class Simulator:
    """Owns the current world; all writes pass through handle_http or step."""

    world: World
    history: list[dict[str, Any]] = field(default_factory=list)

    def step(self, action: str, args: list[str]) -> None:
        self.world = apply_action(self.world, action, args)

    def handle_http(
        self, method: str, path: str, body: Optional[dict[str, Any]] = None
    ) -> tuple[int, dict[str, Any]]:
        if method == "GET" and path == STATE_PATH:
            return 200, {"objects": _state_records(self.world)}
        if method == "POST" and path == COMMAND_PATH:
            return self._handle_command(body)
        return 404, {"status": "error", "reason": f"unknown path {method} {path}"}

    def _handle_command(self, body: Optional[dict[str, Any]]) -> tuple[int, dict[str, Any]]:
        if (
            not isinstance(body, dict)
            or not isinstance(body.get("command"), str)
            or not isinstance(body.get("args"), list)
            or not all(isinstance(a, str) for a in body["args"])
        ):
            return 400, {"status": "error", "reason": "body must be {command, args}"}
        command: str = body["command"]
        if not command.startswith("to-"):
            return 422, {"status": "error", "reason": f"unknown command {command!r}"}
        action = command[len("to-") :]
        if action not in ACTION_ARITY:
            return 422, {"status": "error", "reason": f"unknown command {command!r}"}
        try:
            self.step(action, body["args"])
        except (PreconditionFailed, UnknownObject, ArityError) as e:
            self.history.append({"command": command, "args": body["args"], "ok": False})
            return 422, {"status": "error", "reason": str(e)}
        self.history.append({"command": command, "args": body["args"], "ok": True})
        return 200, {"status": "ok"}


def default_world() -> World:
    text = (resources.files("quantkitchen.data") / "kitchen.scenario").read_text()
    return load_scenario(text)


def minimal_world() -> World:
    text = (resources.files("quantkitchen.data") / "minimal.scenario").read_text()
    return load_scenario(text)
