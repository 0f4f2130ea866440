"""Command execution: constraint checking, admissibility, object selection.

A command IR is validated against the current interpretation (cardinality
constraints plus rule admissibility), concrete objects are picked
deterministically, and the simulator is driven one action per target through
its HTTP-style interface. Rejection is a value; the world is only touched on
the success path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Union

from .errors import Insufficient, UnknownConstant, UnknownObject
from .kitchen import ACTION_ARITY, Simulator, World, to_sensors
from .logic import (
    And,
    Atom,
    Card,
    CardConstraint,
    Const,
    Formula,
    Implies,
    IntLit,
    Not,
    SentenceIR,
    Var,
)
from .reasoner import Interpretation, build_interpretation, eval_formula, eval_query
from .textio import KnowledgeDoc, serialize_formula, serialize_query_expr

# Actions whose target must sit on the CounterTop: the executor fetches it
# there first instead of surfacing the simulator's precondition error.
PREFETCH_ACTIONS = frozenset({"cut", "mix", "line", "sprinkle", "shape"})


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    constraints: tuple[tuple[str, bool], ...]  # (surface text, holds)
    reasons: tuple[str, ...]
    selected: tuple[str, ...] = ()
    grounded_args: tuple[tuple[str, ...], ...] = ()  # one arg vector per action call


def _antecedent_atoms(f: Formula) -> list[Atom]:
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, And):
        return _antecedent_atoms(f.left) + _antecedent_atoms(f.right)
    raise ValueError("command antecedent must be a conjunction of atoms")


def _all_of_type(interp: Interpretation, type_pred: str) -> list[str]:
    return [
        interp.domain[i].name
        for i in range(interp.size())
        if (i,) in interp.extensions.get(type_pred, frozenset())
    ]


def select_objects(interp: Interpretation, type_pred: str, n: int) -> list[str]:
    """First n constants of the given type, in domain order."""
    matches = _all_of_type(interp, type_pred)
    if len(matches) < n:
        raise Insufficient(len(matches), n)
    return matches[:n]


def _constraint_bound(ir: SentenceIR, var: str) -> Optional[int]:
    """The n of a `|exists var (...)| >= n` constraint, if the IR carries one."""
    for c in ir.expressions[0]:
        assert isinstance(c, CardConstraint)
        if isinstance(c.lhs, Card) and c.lhs.var == var and isinstance(c.rhs, IntLit):
            return c.rhs.value
    return None


def _blocking_rules(
    interp: Interpretation, kb: KnowledgeDoc, ground: Atom
) -> list[str]:
    """Command rules that derive the negation of this ground action atom."""
    blocked: list[str] = []
    for rule in kb.commands:
        if not isinstance(rule.right, Not):
            continue
        head = rule.right.body
        if not isinstance(head, Atom) or head.pred != ground.pred:
            continue
        if len(head.args) != len(ground.args):
            continue
        env: dict[str, Union[str, Const]] = {}
        match = True
        for rule_arg, ground_arg in zip(head.args, ground.args):
            if isinstance(rule_arg, Var):
                if rule_arg.name in env and env[rule_arg.name] != ground_arg:
                    match = False
                    break
                env[rule_arg.name] = ground_arg
            elif rule_arg != ground_arg:
                match = False
                break
        if not match:
            continue
        try:
            if eval_formula(interp, rule.left, env):
                blocked.append(serialize_formula(rule) + ".")
        except (UnknownConstant, ValueError):
            continue
    return blocked


def validate(ir: SentenceIR, interp: Interpretation, kb: KnowledgeDoc) -> ValidationResult:
    """Check constraints and admissibility; never raises, rejection is a value."""
    if ir.kind != "command":
        return ValidationResult(False, (), ("not a command",))

    constraints: list[tuple[str, bool]] = []
    reasons: list[str] = []
    for c in ir.expressions[0]:
        text = serialize_query_expr(c)
        holds = bool(eval_query(interp, c))
        constraints.append((text, holds))
        if not holds:
            reasons.append(f"constraint does not hold: {text}")

    command = ir.commands[0]
    assert isinstance(command, Implies)
    consequent = command.right
    assert isinstance(consequent, Atom)
    try:
        atoms = _antecedent_atoms(command.left)
    except ValueError as e:
        return ValidationResult(False, tuple(constraints), tuple(reasons) + (str(e),))

    type_of: dict[str, str] = {}
    for a in atoms:
        if len(a.args) == 1 and isinstance(a.args[0], Var):
            type_of.setdefault(a.args[0].name, a.pred)

    # Ground atoms in the antecedent (typed constants) must already hold.
    for a in atoms:
        if all(isinstance(t, Const) for t in a.args):
            try:
                if not eval_formula(interp, a, {}):
                    reasons.append(f"fact does not hold: {serialize_formula(a)}")
            except (UnknownConstant, KeyError):
                reasons.append(f"unknown constant in {serialize_formula(a)}")

    # Resolve each consequent argument. The slot after the robot is the
    # target and may expand to several objects; every other slot resolves
    # to exactly one constant (lowest domain index).
    resolved: list[Optional[list[str]]] = []
    for position, term in enumerate(consequent.args):
        if isinstance(term, Const):
            if term.name not in interp.index:
                reasons.append(f"unknown constant {term.name}")
                resolved.append(None)
            else:
                resolved.append([term.name])
            continue
        assert isinstance(term, Var)
        pred = type_of.get(term.name)
        if pred is None:
            reasons.append(f"variable {term.name} has no type atom in the antecedent")
            resolved.append(None)
            continue
        bound = _constraint_bound(ir, term.name)
        if position == 1:
            if bound is not None:
                try:
                    resolved.append(select_objects(interp, pred, bound))
                except Insufficient as e:
                    reasons.append(f"not enough {pred}: have {e.have}, need {e.need}")
                    resolved.append(None)
            else:
                # No cardinality constraint on the target: act on every match.
                resolved.append(_all_of_type(interp, pred))
        else:
            try:
                resolved.append(select_objects(interp, pred, 1)[0:1])
            except Insufficient:
                reasons.append(f"no {pred} available")
                resolved.append(None)

    call_vectors: list[tuple[str, ...]] = []
    selected: tuple[str, ...] = ()
    if all(r is not None for r in resolved):
        if len(resolved) >= 2:
            selected = tuple(resolved[1])  # type: ignore[arg-type]
            for t in resolved[1]:  # type: ignore[union-attr]
                call_vectors.append(
                    tuple(t if i == 1 else r[0] for i, r in enumerate(resolved))  # type: ignore[index]
                )
        else:
            call_vectors.append(tuple(r[0] for r in resolved))  # type: ignore[index]

    for vector in call_vectors:
        ground = Atom(consequent.pred, tuple(Const(v) for v in vector))
        blocked = _blocking_rules(interp, kb, ground)
        if blocked:
            reasons.extend(f"blocked by rule: {b}" for b in blocked)
            break

    valid = not reasons
    return ValidationResult(
        valid, tuple(constraints), tuple(reasons), selected, tuple(call_vectors)
    )


def run_command(
    ir: SentenceIR, sim_or_world: Union[Simulator, World], kb: KnowledgeDoc
) -> dict[str, Any]:
    """Validate, select, and drive the simulator; returns the execution report."""
    sim = sim_or_world if isinstance(sim_or_world, Simulator) else Simulator(sim_or_world)
    interp = build_interpretation(to_sensors(sim.world), kb)
    result = validate(ir, interp, kb)
    report: dict[str, Any] = {
        "status": "rejected",
        "constraints": [{"text": t, "holds": h} for t, h in result.constraints],
        "selected": list(result.selected),
        "actions": [],
        "reasons": list(result.reasons),
    }
    if not result.valid:
        return report

    command = ir.commands[0]
    assert isinstance(command, Implies) and isinstance(command.right, Atom)
    action = command.right.pred

    for vector in result.grounded_args:
        args = list(vector)
        if action in PREFETCH_ACTIONS and len(args) >= 2:
            target = sim.world.find(args[1])
            if target.at != "CounterTop":
                code, resp = sim.handle_http(
                    "POST", "/abe-sim-command", {"command": "to-fetch", "args": [args[0], args[1]]}
                )
                report["actions"].append(
                    {"action": "fetch", "args": [args[0], args[1]], "outcome": _outcome(code, resp)}
                )
                if code != 200:
                    report["status"] = "error"
                    report["reasons"].append(resp.get("reason", "fetch failed"))
                    return report
        code, resp = sim.handle_http(
            "POST", "/abe-sim-command", {"command": f"to-{action}", "args": args}
        )
        report["actions"].append({"action": action, "args": args, "outcome": _outcome(code, resp)})
        if code != 200:
            report["status"] = "error"
            report["reasons"].append(resp.get("reason", f"{action} failed"))
            return report

    report["status"] = "executed"
    return report


def _outcome(code: int, resp: dict[str, Any]) -> str:
    return "ok" if code == 200 else resp.get("reason", f"http {code}")
