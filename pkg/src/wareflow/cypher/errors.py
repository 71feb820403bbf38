"""Query language errors with machine-consumable structure."""

from __future__ import annotations

from wareflow.errors import WareflowError


class CypherSyntaxError(WareflowError):
    """Parse failure; line is 1-based, column 0-based."""

    code = "SYNTAX_ERROR"

    def __init__(self, line: int, column: int, expected: tuple[str, ...], found: str):
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.found = found
        expected_text = ", ".join(expected)
        super().__init__(f"line {line}, column {column}: expected {expected_text}, found {found}")


class QueryTypeError(WareflowError):
    code = "TYPE_ERROR"


class UnboundVariable(WareflowError):
    code = "UNBOUND_VARIABLE"


class UnknownLabelOrType(WareflowError):
    code = "UNKNOWN_LABEL_OR_TYPE"


class UnknownFunction(WareflowError):
    code = "UNKNOWN_FUNCTION"
