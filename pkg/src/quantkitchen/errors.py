"""Exception types shared across the parsing, reasoning and execution layers."""

from __future__ import annotations


class QuantKitchenError(Exception):
    """Base class for all package-specific errors."""


class CaptureError(QuantKitchenError):
    """Substitution target occurs both free and bound in the same formula."""


class ParseError(QuantKitchenError):
    """Malformed surface syntax.

    `position` is a 0-based character offset into the parsed text.
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class ShadowingError(ParseError):
    """A quantifier rebinds a variable already bound in an enclosing scope."""


class FreeVariableError(ParseError):
    """A query formula must be closed but has free variables."""


class ArityError(QuantKitchenError):
    """A predicate is used with inconsistent argument counts."""


class DomainMismatch(QuantKitchenError):
    """Declared domain size disagrees with the distinct-constant list."""


class UnknownConstant(QuantKitchenError):
    """A constant is not declared in the distinct list / world domain."""


class UnknownSection(QuantKitchenError):
    """A formulas(...) block has a name outside the recognized set."""


class FormatError(QuantKitchenError):
    """A SentenceIR wire object violates the type/expressions/commands shapes."""


class UnknownPredicate(QuantKitchenError):
    """A predicate appears in a formula but in neither facts nor rules."""


class InconsistentWorld(QuantKitchenError):
    """A distinction rule is violated after saturation."""

    def __init__(self, rule: object, element: str) -> None:
        super().__init__(f"distinction rule violated for {element}: {rule}")
        self.rule = rule
        self.element = element


class ScaleError(QuantKitchenError):
    """Domain too large for exhaustive model enumeration."""


class MissingScope(QuantKitchenError):
    """Quantifier template requires a scope predicate but none was supplied."""


class UnknownQuantifier(QuantKitchenError):
    """Lexeme is not in the quantifier inventory."""


class DuplicateConstant(QuantKitchenError):
    """Two scenario objects share one constant name."""


class NoRobot(QuantKitchenError):
    """A scenario must contain at least one robot."""


class UnknownType(QuantKitchenError):
    """Scenario object type is not declared in the knowledge document."""


class PreconditionFailed(QuantKitchenError):
    """A simulator action's scripted precondition does not hold."""


class UnknownObject(QuantKitchenError):
    """An action argument names no object in the world."""


class Insufficient(QuantKitchenError):
    """Fewer objects satisfy a type than a command needs."""

    def __init__(self, have: int, need: int) -> None:
        super().__init__(f"need {need} objects but only {have} available")
        self.have = have
        self.need = need


class OracleScaleError(QuantKitchenError):
    """Bounded semantic equivalence check exceeds its world cap."""
