"""Pipeline evaluation of parsed queries against a PropertyGraph.

Rows are variable bindings flowing through the clause list. Pattern
matching is plain enumeration (no implicit relationship uniqueness),
accelerated by the graph's label/type/adjacency indexes and by applying
WHERE conjuncts as soon as their variables are bound; the observable
semantics stay those of match-everything-then-filter. Default row order is
binding-creation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from wareflow.cypher.ast import (
    Binary,
    CallSub,
    CaseWhen,
    FuncCall,
    Limit,
    ListLit,
    Literal,
    Match,
    NodePattern,
    OrderBy,
    Pattern,
    Projection,
    Prop,
    Query,
    RelPattern,
    Return,
    Unary,
    Unwind,
    Var,
    Where,
    With,
)
from wareflow.cypher.errors import QueryTypeError, UnboundVariable, UnknownFunction, UnknownLabelOrType
from wareflow.graph.store import EDGE_TYPES, EdgeRecord, NODE_LABELS, NodeRecord, PropertyGraph
from wareflow.graph.values import DateTime

AGGREGATES = ("count", "sum", "avg", "min", "max", "collect")
SCALAR_FUNCTIONS = ("tofloat", "abs", "coalesce", "duration_seconds", "floor")


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[tuple]

    def to_dict(self, datetimes: str = "seconds") -> dict:
        def render(value):
            if isinstance(value, DateTime):
                return value.iso() if datetimes == "iso" else value.seconds
            if isinstance(value, (NodeRecord, EdgeRecord)):
                return {k: render(v) for k, v in value.props.items()}
            if isinstance(value, list):
                return [render(v) for v in value]
            return value

        return {"columns": list(self.columns), "rows": [[render(v) for v in row] for row in self.rows]}

    def single_value(self):
        if len(self.rows) == 1 and len(self.columns) == 1:
            return self.rows[0][0]
        raise ValueError("result is not a single value")


def evaluate_query(ast: Query, graph: PropertyGraph) -> ResultTable:
    rows, columns = _run_clauses(ast.clauses, graph, [dict()])
    if columns is None:
        raise QueryTypeError("query produced no RETURN")
    return ResultTable(columns=columns, rows=[tuple(row[c] for c in columns) for row in rows])


# clause pipeline

def _run_clauses(clauses, graph, rows):
    columns = None
    i = 0
    while i < len(clauses):
        clause = clauses[i]
        if isinstance(clause, Match):
            filters = []
            if i + 1 < len(clauses) and isinstance(clauses[i + 1], Where):
                filters = _split_conjuncts(clauses[i + 1].expr)
                i += 1
            rows = _match_clause(graph, rows, clause.patterns, filters)
        elif isinstance(clause, Where):
            rows = [r for r in rows if _eval(clause.expr, r) is True]
        elif isinstance(clause, (With, Return)):
            rows = _project(rows, clause.projections, clause.distinct)
            if isinstance(clause, Return):
                columns = [p.alias for p in clause.projections]
        elif isinstance(clause, Unwind):
            rows = _unwind(rows, clause)
        elif isinstance(clause, CallSub):
            rows = _call_subquery(graph, rows, clause)
        elif isinstance(clause, OrderBy):
            rows = _order_rows(rows, clause)
        elif isinstance(clause, Limit):
            rows = rows[: clause.count]
        else:  # pragma: no cover - parser emits no other clauses
            raise QueryTypeError(f"unsupported clause {clause!r}")
        i += 1
    return rows, columns


def _split_conjuncts(expr):
    if isinstance(expr, Binary) and expr.op == "AND":
        return _split_conjuncts(expr.left) + _split_conjuncts(expr.right)
    return [expr]


def _expr_vars(expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, Prop):
        return {expr.var}
    if isinstance(expr, Unary):
        return _expr_vars(expr.operand)
    if isinstance(expr, Binary):
        return _expr_vars(expr.left) | _expr_vars(expr.right)
    if isinstance(expr, FuncCall):
        out: set[str] = set()
        for arg in expr.args:
            out |= _expr_vars(arg)
        return out
    if isinstance(expr, CaseWhen):
        out = set()
        for cond, result in expr.whens:
            out |= _expr_vars(cond) | _expr_vars(result)
        if expr.otherwise is not None:
            out |= _expr_vars(expr.otherwise)
        return out
    if isinstance(expr, ListLit):
        out = set()
        for item in expr.items:
            out |= _expr_vars(item)
        return out
    return set()


# pattern matching

def _match_clause(graph, rows, patterns, filters):
    if not rows:
        return []
    bound: set[str] = set(rows[0].keys())
    pending = [(frozenset(_expr_vars(f)), f) for f in filters]
    anon_vars: list[str] = []
    state = _MatchState(graph, rows, bound, pending, anon_vars)
    for pattern in patterns:
        state.extend_pattern(pattern)
    for needed, expr in state.pending:
        missing = needed - state.bound
        if missing:
            raise UnboundVariable(f"variable {sorted(missing)[0]!r} is not bound")
        state.rows = [r for r in state.rows if _eval(expr, r) is True]
    rows = state.rows
    if anon_vars:
        for row in rows:
            for var in anon_vars:
                row.pop(var, None)
    return rows


def _node_ok(node, spec: NodePattern) -> bool:
    if not isinstance(node, NodeRecord):
        return False
    if spec.label is not None and node.label != spec.label:
        return False
    for key, value in spec.props:
        if not _eq_values(node.props.get(key), value):
            return False
    return True


def _edge_ok(edge, spec: RelPattern) -> bool:
    if spec.type is not None and edge.type != spec.type:
        return False
    for key, value in spec.props:
        if not _eq_values(edge.props.get(key), value):
            return False
    return True


class _MatchState:
    """Extends binding rows element by element, firing WHERE conjuncts as
    soon as all their variables are bound."""

    def __init__(self, graph, rows, bound, pending, anon_vars):
        self.graph = graph
        self.rows = rows
        self.bound = bound
        self.pending = pending
        self.anon_vars = anon_vars
        self._anon_count = 0

    def _name(self, var):
        if var is not None:
            return var
        self._anon_count += 1
        name = f"#anon{self._anon_count}"
        self.anon_vars.append(name)
        return name

    def _fire_filters(self):
        remaining = []
        for needed, expr in self.pending:
            if needed <= self.bound:
                self.rows = [r for r in self.rows if _eval(expr, r) is True]
            else:
                remaining.append((needed, expr))
        self.pending = remaining

    def extend_pattern(self, pattern: Pattern):
        node_vars = [self._name(n.var) for n in pattern.nodes]
        self.bind_node(node_vars[0], pattern.nodes[0])
        for idx, rel in enumerate(pattern.rels):
            rel_var = self._name(rel.var)
            self.bind_rel(node_vars[idx], rel_var, rel, node_vars[idx + 1], pattern.nodes[idx + 1])

    def bind_node(self, var, spec: NodePattern):
        if spec.label is not None and spec.label not in NODE_LABELS:
            raise UnknownLabelOrType(f"unknown label {spec.label!r}")
        if var in self.bound:
            self.rows = [r for r in self.rows if _node_ok(r[var], spec)]
        else:
            if spec.label is not None:
                candidates = self.graph.nodes_by_label.get(spec.label, [])
            else:
                candidates = self.graph.nodes
            new_rows = []
            for row in self.rows:
                for node in candidates:
                    if _node_ok(node, spec):
                        extended = dict(row)
                        extended[var] = node
                        new_rows.append(extended)
            self.rows = new_rows
            self.bound.add(var)
        self._fire_filters()

    def bind_rel(self, near_var, var, spec: RelPattern, far_var, far_spec: NodePattern):
        if spec.type is not None and spec.type not in EDGE_TYPES:
            raise UnknownLabelOrType(f"unknown relationship type {spec.type!r}")
        if far_spec.label is not None and far_spec.label not in NODE_LABELS:
            raise UnknownLabelOrType(f"unknown label {far_spec.label!r}")
        graph = self.graph
        rel_prebound = var in self.bound
        far_prebound = far_var in self.bound
        new_rows = []
        for row in self.rows:
            near = row[near_var]
            if not isinstance(near, NodeRecord):
                raise QueryTypeError(f"variable {near_var!r} is not a node")
            if not spec.reversed:
                edges = graph.out_edges.get(near.ref, [])
            else:
                edges = graph.in_edges.get(near.ref, [])
            for edge in edges:
                if not _edge_ok(edge, spec):
                    continue
                if rel_prebound and row[var] is not edge:
                    continue
                far_ref = edge.dst if not spec.reversed else edge.src
                far_node = graph.node_by_ref.get(far_ref)
                if far_node is None or not _node_ok(far_node, far_spec):
                    continue
                if far_prebound and row[far_var] is not far_node:
                    continue
                extended = dict(row)
                extended[var] = edge
                extended[far_var] = far_node
                new_rows.append(extended)
        self.rows = new_rows
        self.bound.add(var)
        self.bound.add(far_var)
        self._fire_filters()


# projection and grouping

def _contains_aggregate(expr) -> bool:
    if isinstance(expr, FuncCall):
        if expr.name in AGGREGATES:
            return True
        return any(_contains_aggregate(a) for a in expr.args)
    if isinstance(expr, Unary):
        return _contains_aggregate(expr.operand)
    if isinstance(expr, Binary):
        return _contains_aggregate(expr.left) or _contains_aggregate(expr.right)
    if isinstance(expr, CaseWhen):
        for cond, result in expr.whens:
            if _contains_aggregate(cond) or _contains_aggregate(result):
                return True
        return expr.otherwise is not None and _contains_aggregate(expr.otherwise)
    if isinstance(expr, ListLit):
        return any(_contains_aggregate(i) for i in expr.items)
    return False


def _project(rows, projections, distinct):
    aggregating = any(_contains_aggregate(p.expr) for p in projections)
    if not aggregating:
        out = [{p.alias: _eval(p.expr, row) for p in projections} for row in rows]
    else:
        group_projs = [p for p in projections if not _contains_aggregate(p.expr)]
        groups: dict[tuple, list] = {}
        group_values: dict[tuple, dict] = {}
        order: list[tuple] = []
        for row in rows:
            values = {p.alias: _eval(p.expr, row) for p in group_projs}
            key = tuple(_hashable(values[p.alias]) for p in group_projs)
            if key not in groups:
                groups[key] = []
                group_values[key] = values
                order.append(key)
            groups[key].append(row)
        if not group_projs and not rows:
            groups[()] = []
            group_values[()] = {}
            order.append(())
        out = []
        for key in order:
            group_rows = groups[key]
            sample = group_rows[0] if group_rows else {}
            produced = {}
            for p in projections:
                if _contains_aggregate(p.expr):
                    produced[p.alias] = _eval(p.expr, sample, group=group_rows)
                else:
                    produced[p.alias] = group_values[key][p.alias]
            out.append(produced)
    if distinct:
        seen = set()
        deduped = []
        for row in out:
            key = tuple(_hashable(v) for v in row.values())
            if key not in seen:
                seen.add(key)
                deduped.append(row)
        out = deduped
    return out


def _unwind(rows, clause: Unwind):
    out = []
    for row in rows:
        value = _eval(clause.expr, row)
        if value is None:
            continue
        if not isinstance(value, list):
            raise QueryTypeError("UNWIND expects a list")
        for item in value:
            extended = dict(row)
            extended[clause.alias] = item
            out.append(extended)
    return out


def _call_subquery(graph, rows, clause: CallSub):
    out = []
    for row in rows:
        if clause.imports is None:
            initial = {}
        else:
            initial = {}
            for name in clause.imports:
                if name not in row:
                    raise UnboundVariable(f"imported variable {name!r} is not bound")
                initial[name] = row[name]
        sub_rows, sub_columns = _run_clauses(clause.query.clauses, graph, [initial])
        for sub in sub_rows:
            merged = dict(row)
            for column in sub_columns:
                if column in merged:
                    raise QueryTypeError(f"subquery column {column!r} clashes with an outer variable")
                merged[column] = sub[column]
            out.append(merged)
    return out


def _order_rows(rows, clause: OrderBy):
    ordered = list(rows)
    for expr, ascending in reversed(clause.keys):
        ordered.sort(key=lambda r: _SortKey(_eval(expr, r)), reverse=not ascending)
    return ordered


class _SortKey:
    """Null sorts as the largest value (Cypher convention)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other: "_SortKey") -> bool:
        a, b = self.value, other.value
        if a is None:
            return False
        if b is None:
            return True
        if isinstance(a, DateTime) and isinstance(b, DateTime):
            return a.seconds < b.seconds
        if isinstance(a, bool) or isinstance(b, bool):
            if isinstance(a, bool) and isinstance(b, bool):
                return a < b
            raise QueryTypeError(f"cannot order {type(a).__name__} against {type(b).__name__}")
        if isinstance(a, (int, float)) and isinstance(b, (int, float)):
            return a < b
        if isinstance(a, str) and isinstance(b, str):
            return a < b
        raise QueryTypeError(f"cannot order {type(a).__name__} against {type(b).__name__}")


def _hashable(value):
    if isinstance(value, list):
        return ("list",) + tuple(_hashable(v) for v in value)
    if isinstance(value, NodeRecord):
        return ("node", value.ref)
    if isinstance(value, EdgeRecord):
        return ("edge", value.type, value.src, value.dst, tuple(sorted((k, _hashable(v)) for k, v in value.props.items())))
    if isinstance(value, DateTime):
        return ("dt", value.seconds)
    return value


# expression evaluation

def _eval(expr, row, group=None):
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, Var):
        if expr.name not in row:
            raise UnboundVariable(f"variable {expr.name!r} is not bound")
        return row[expr.name]
    if isinstance(expr, Prop):
        if expr.var not in row:
            raise UnboundVariable(f"variable {expr.var!r} is not bound")
        entity = row[expr.var]
        if entity is None:
            return None
        if isinstance(entity, (NodeRecord, EdgeRecord)):
            return entity.props.get(expr.key)
        raise QueryTypeError(f"{expr.var!r} has no properties")
    if isinstance(expr, Unary):
        if expr.op == "NOT":
            value = _eval(expr.operand, row, group)
            if value is None:
                return None
            if isinstance(value, bool):
                return not value
            raise QueryTypeError("NOT expects a boolean")
        value = _eval(expr.operand, row, group)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise QueryTypeError("unary minus expects a number")
        return -value
    if isinstance(expr, Binary):
        return _eval_binary(expr, row, group)
    if isinstance(expr, FuncCall):
        return _eval_func(expr, row, group)
    if isinstance(expr, CaseWhen):
        for condition, result in expr.whens:
            if _eval(condition, row, group) is True:
                return _eval(result, row, group)
        if expr.otherwise is not None:
            return _eval(expr.otherwise, row, group)
        return None
    if isinstance(expr, ListLit):
        return [_eval(item, row, group) for item in expr.items]
    raise QueryTypeError(f"cannot evaluate {expr!r}")  # pragma: no cover


def _eq_values(a, b) -> bool:
    """Cypher-style equality used by patterns, =, IN, DISTINCT."""
    if isinstance(a, DateTime) and isinstance(b, DateTime):
        return a.seconds == b.seconds
    if isinstance(a, bool) or isinstance(b, bool):
        return isinstance(a, bool) and isinstance(b, bool) and a == b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    if type(a) is type(b):
        return a == b
    return False


def _eval_binary(expr: Binary, row, group):
    op = expr.op
    if op in ("AND", "OR"):
        left = _eval(expr.left, row, group)
        right = _eval(expr.right, row, group)
        for side in (left, right):
            if side is not None and not isinstance(side, bool):
                raise QueryTypeError(f"{op} expects booleans")
        if op == "AND":
            if left is False or right is False:
                return False
            if left is None or right is None:
                return None
            return True
        if left is True or right is True:
            return True
        if left is None or right is None:
            return None
        return False

    left = _eval(expr.left, row, group)
    right = _eval(expr.right, row, group)
    if op == "IN":
        if right is None:
            return None
        if not isinstance(right, list):
            raise QueryTypeError("IN expects a list on the right")
        if left is None:
            return None
        return any(_eq_values(left, item) for item in right)
    if left is None or right is None:
        return None
    if op == "=":
        return _eq_values(left, right)
    if op == "<>":
        return not _eq_values(left, right)
    if op in ("<", "<=", ">", ">="):
        return _compare(op, left, right)
    if op in ("+", "-", "*", "/"):
        return _arith(op, left, right)
    raise QueryTypeError(f"unknown operator {op!r}")  # pragma: no cover


def _compare(op, left, right):
    if isinstance(left, DateTime) and isinstance(right, DateTime):
        left, right = left.seconds, right.seconds
    elif isinstance(left, bool) or isinstance(right, bool):
        raise QueryTypeError("cannot order booleans")
    elif isinstance(left, (int, float)) and isinstance(right, (int, float)):
        pass
    elif isinstance(left, str) and isinstance(right, str):
        pass
    else:
        raise QueryTypeError(f"cannot compare {type(left).__name__} with {type(right).__name__}")
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


def _arith(op, left, right):
    if op == "+" and isinstance(left, str) and isinstance(right, str):
        return left + right
    for side in (left, right):
        if isinstance(side, bool) or not isinstance(side, (int, float)):
            raise QueryTypeError(f"arithmetic expects numbers, got {type(side).__name__}")
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if right == 0:
        raise QueryTypeError("division by zero")
    if isinstance(left, int) and isinstance(right, int):
        return int(left / right)  # truncation toward zero
    return left / right


def _eval_func(expr: FuncCall, row, group):
    name = expr.name
    if name in AGGREGATES:
        if group is None:
            raise QueryTypeError(f"aggregate {name}() is only allowed in WITH/RETURN projections")
        return _eval_aggregate(expr, group)
    if name == "tofloat":
        value = _eval_single_arg(expr, row, group)
        if value is None:
            return None
        if isinstance(value, bool):
            return None
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, DateTime):
            return value.seconds
        if isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                return None
        raise QueryTypeError("toFloat expects a number, string, or datetime")
    if name == "abs":
        value = _eval_single_arg(expr, row, group)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise QueryTypeError("abs expects a number")
        return abs(value)
    if name == "floor":
        value = _eval_single_arg(expr, row, group)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise QueryTypeError("floor expects a number")
        return float(math.floor(value))
    if name == "coalesce":
        for arg in expr.args:
            value = _eval(arg, row, group)
            if value is not None:
                return value
        return None
    if name == "duration_seconds":
        if len(expr.args) != 2:
            raise QueryTypeError("duration_seconds expects two datetimes")
        a = _eval(expr.args[0], row, group)
        b = _eval(expr.args[1], row, group)
        if a is None or b is None:
            return None
        if not isinstance(a, DateTime) or not isinstance(b, DateTime):
            raise QueryTypeError("duration_seconds expects datetimes")
        return b.seconds - a.seconds
    raise UnknownFunction(f"unknown function {name}()")


def _eval_single_arg(expr: FuncCall, row, group):
    if len(expr.args) != 1:
        raise QueryTypeError(f"{expr.name} expects one argument")
    return _eval(expr.args[0], row, group)


def _eval_aggregate(expr: FuncCall, group_rows):
    name = expr.name
    if name == "count" and expr.star:
        return len(group_rows)
    if not expr.args:
        raise QueryTypeError(f"{name} expects an argument")
    if any(_contains_aggregate(a) for a in expr.args):
        raise QueryTypeError("aggregates cannot be nested")
    values = []
    for row in group_rows:
        value = _eval(expr.args[0], row)
        if value is not None:
            values.append(value)
    if expr.distinct:
        seen = set()
        unique = []
        for value in values:
            key = _hashable(value)
            if key not in seen:
                seen.add(key)
                unique.append(value)
        values = unique
    if name == "count":
        return len(values)
    if name == "collect":
        return values
    if name == "sum":
        total = 0
        for value in values:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise QueryTypeError("sum expects numbers")
            total = total + value
        return total
    if name == "avg":
        if not values:
            return None
        total = 0.0
        for value in values:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise QueryTypeError("avg expects numbers")
            total += value
        return total / len(values)
    if name in ("min", "max"):
        if not values:
            return None
        best = values[0]
        for value in values[1:]:
            flipped = _compare("<", value, best) if name == "min" else _compare(">", value, best)
            if flipped:
                best = value
        return best
    raise UnknownFunction(f"unknown aggregate {name}()")  # pragma: no cover
