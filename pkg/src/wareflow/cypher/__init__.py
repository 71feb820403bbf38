"""Read-only query language subset: parser and evaluator."""

from wareflow.cypher.ast import Query
from wareflow.cypher.errors import (
    CypherSyntaxError,
    QueryTypeError,
    UnboundVariable,
    UnknownFunction,
    UnknownLabelOrType,
)
from wareflow.cypher.evaluator import ResultTable, evaluate_query
from wareflow.cypher.parser import parse_query

__all__ = [
    "CypherSyntaxError",
    "Query",
    "QueryTypeError",
    "ResultTable",
    "UnboundVariable",
    "UnknownFunction",
    "UnknownLabelOrType",
    "evaluate_query",
    "parse_query",
]
