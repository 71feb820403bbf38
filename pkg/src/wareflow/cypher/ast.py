"""Abstract syntax for the query subset."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


# expressions

@dataclass(frozen=True)
class Literal:
    value: object


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Prop:
    var: str
    key: str


@dataclass(frozen=True)
class Unary:
    op: str  # '-', 'NOT'
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / = <> < <= > >= AND OR IN
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class FuncCall:
    name: str  # normalized lowercase
    args: tuple["Expr", ...]
    distinct: bool = False
    star: bool = False


@dataclass(frozen=True)
class CaseWhen:
    whens: tuple[tuple["Expr", "Expr"], ...]
    otherwise: Optional["Expr"]


@dataclass(frozen=True)
class ListLit:
    items: tuple["Expr", ...]


Expr = Union[Literal, Var, Prop, Unary, Binary, FuncCall, CaseWhen, ListLit]


# patterns

@dataclass(frozen=True)
class NodePattern:
    var: Optional[str]
    label: Optional[str]
    props: tuple[tuple[str, object], ...] = ()


@dataclass(frozen=True)
class RelPattern:
    var: Optional[str]
    type: Optional[str]
    props: tuple[tuple[str, object], ...] = ()
    reversed: bool = False  # True for <-[...]-


@dataclass(frozen=True)
class Pattern:
    """Alternating node/rel chain: nodes[0], rels[0], nodes[1], ..."""

    nodes: tuple[NodePattern, ...]
    rels: tuple[RelPattern, ...]


# clauses

@dataclass(frozen=True)
class Projection:
    expr: Expr
    alias: str


@dataclass(frozen=True)
class Match:
    patterns: tuple[Pattern, ...]


@dataclass(frozen=True)
class Where:
    expr: Expr


@dataclass(frozen=True)
class With:
    projections: tuple[Projection, ...]
    distinct: bool = False


@dataclass(frozen=True)
class Unwind:
    expr: Expr
    alias: str


@dataclass(frozen=True)
class CallSub:
    imports: Optional[tuple[str, ...]]
    query: "Query"


@dataclass(frozen=True)
class Return:
    projections: tuple[Projection, ...]
    distinct: bool = False


@dataclass(frozen=True)
class OrderBy:
    keys: tuple[tuple[Expr, bool], ...]  # (expr, ascending)


@dataclass(frozen=True)
class Limit:
    count: int


Clause = Union[Match, Where, With, Unwind, CallSub, Return, OrderBy, Limit]


@dataclass(frozen=True)
class Query:
    clauses: tuple[Clause, ...]

    def pattern_count(self) -> int:
        total = 0
        for clause in self.clauses:
            if isinstance(clause, Match):
                total += len(clause.patterns)
            elif isinstance(clause, CallSub):
                total += clause.query.pattern_count()
        return total
