"""Recursive-descent parser for the query subset.

Reserved words are case-insensitive; identifiers (variables, labels,
relationship types, property names) are case-sensitive. Errors carry the
offending token's position and the expected-token set so a planner can
feed them back verbatim.
"""

from __future__ import annotations

from wareflow.cypher.ast import (
    Binary,
    CallSub,
    CaseWhen,
    Expr,
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
from wareflow.cypher.errors import CypherSyntaxError
from wareflow.cypher.lexer import Token, tokenize

RESERVED = {
    "MATCH", "WHERE", "WITH", "UNWIND", "CALL", "RETURN", "ORDER", "BY", "LIMIT",
    "AS", "DISTINCT", "AND", "OR", "NOT", "CASE", "WHEN", "THEN", "ELSE", "END",
    "IN", "ASC", "DESC", "TRUE", "FALSE", "NULL",
}

CLAUSE_STARTERS = ("MATCH", "WHERE", "WITH", "UNWIND", "CALL", "RETURN", "ORDER", "LIMIT")

MAX_HOPS = 2


def parse_query(text: str) -> Query:
    parser = _Parser(tokenize(text))
    query = parser.parse_query(top_level=True)
    parser.expect_eof()
    return query


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # token plumbing

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def error(self, *expected: str):
        token = self.peek()
        found = "end of input" if token.kind == "EOF" else repr(token.text)
        raise CypherSyntaxError(token.line, token.column, tuple(expected), found)

    def at_punct(self, text: str) -> bool:
        token = self.peek()
        return token.kind == "PUNCT" and token.text == text

    def at_keyword(self, word: str) -> bool:
        return self.peek().keyword() == word

    def eat_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            self.error(f"'{text}'")
        return self.advance()

    def eat_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            self.error(f"'{word}'")
        return self.advance()

    def eat_ident(self, what: str = "identifier") -> Token:
        token = self.peek()
        if token.kind != "IDENT" or token.keyword() in RESERVED:
            self.error(what)
        return self.advance()

    def expect_eof(self) -> None:
        if self.peek().kind != "EOF":
            self.error("end of query")

    # clauses

    def parse_query(self, top_level: bool) -> Query:
        clauses = []
        saw_return = False
        terminators = ("EOF",) if top_level else ("}",)
        while True:
            token = self.peek()
            if token.kind == "EOF" or (not top_level and self.at_punct("}")):
                break
            word = token.keyword()
            if saw_return and word not in ("ORDER", "LIMIT"):
                self.error("'ORDER'", "'LIMIT'", "end of query")
            if word not in CLAUSE_STARTERS:
                self.error(*(f"'{w}'" for w in CLAUSE_STARTERS))
            if word == "MATCH":
                clauses.append(self.parse_match())
            elif word == "WHERE":
                self.advance()
                clauses.append(Where(self.parse_expr()))
            elif word == "WITH":
                self.advance()
                clauses.append(With(*self.parse_projections()))
            elif word == "UNWIND":
                self.advance()
                expr = self.parse_expr()
                self.eat_keyword("AS")
                alias = self.eat_ident("alias").text
                clauses.append(Unwind(expr, alias))
            elif word == "CALL":
                clauses.append(self.parse_call())
            elif word == "RETURN":
                self.advance()
                clauses.append(Return(*self.parse_projections()))
                saw_return = True
            elif word == "ORDER":
                self.advance()
                self.eat_keyword("BY")
                clauses.append(self.parse_order_keys())
            elif word == "LIMIT":
                self.advance()
                token = self.peek()
                if token.kind != "INT":
                    self.error("integer")
                self.advance()
                clauses.append(Limit(int(token.text)))
        if not saw_return:
            self.error("'RETURN'")
        return Query(tuple(clauses))

    def parse_match(self) -> Match:
        self.eat_keyword("MATCH")
        patterns = [self.parse_pattern()]
        while self.at_punct(","):
            self.advance()
            patterns.append(self.parse_pattern())
        return Match(tuple(patterns))

    def parse_pattern(self) -> Pattern:
        nodes = [self.parse_node_pattern()]
        rels = []
        while self.at_punct("-") or self.at_punct("<"):
            if len(rels) >= MAX_HOPS:
                self.error(f"at most {MAX_HOPS} hops per pattern")
            rels.append(self.parse_rel_pattern())
            nodes.append(self.parse_node_pattern())
        return Pattern(tuple(nodes), tuple(rels))

    def parse_node_pattern(self) -> NodePattern:
        self.eat_punct("(")
        var = None
        label = None
        props: tuple = ()
        if self.peek().kind == "IDENT" and self.peek().keyword() not in RESERVED:
            var = self.advance().text
        if self.at_punct(":"):
            self.advance()
            label = self.eat_ident("label").text
        if self.at_punct("{"):
            props = self.parse_prop_map()
        self.eat_punct(")")
        return NodePattern(var, label, props)

    def parse_rel_pattern(self) -> RelPattern:
        reversed_ = False
        if self.at_punct("<"):
            self.advance()
            reversed_ = True
        self.eat_punct("-")
        var = None
        rel_type = None
        props: tuple = ()
        if self.at_punct("["):
            self.advance()
            if self.peek().kind == "IDENT" and self.peek().keyword() not in RESERVED:
                var = self.advance().text
            if self.at_punct(":"):
                self.advance()
                rel_type = self.eat_ident("relationship type").text
            if self.at_punct("{"):
                props = self.parse_prop_map()
            self.eat_punct("]")
        self.eat_punct("-")
        if not reversed_:
            self.eat_punct(">")
        return RelPattern(var, rel_type, props, reversed_)

    def parse_prop_map(self) -> tuple:
        self.eat_punct("{")
        entries = []
        while True:
            key = self.eat_ident("property name").text
            self.eat_punct(":")
            entries.append((key, self.parse_map_literal()))
            if self.at_punct(","):
                self.advance()
                continue
            break
        self.eat_punct("}")
        return tuple(entries)

    def parse_map_literal(self):
        token = self.peek()
        if token.kind == "STRING":
            self.advance()
            return token.text
        if token.kind == "INT":
            self.advance()
            return int(token.text)
        if token.kind == "FLOAT":
            self.advance()
            return float(token.text)
        if self.at_punct("-"):
            self.advance()
            number = self.peek()
            if number.kind == "INT":
                self.advance()
                return -int(number.text)
            if number.kind == "FLOAT":
                self.advance()
                return -float(number.text)
            self.error("number")
        word = token.keyword()
        if word == "TRUE":
            self.advance()
            return True
        if word == "FALSE":
            self.advance()
            return False
        if word == "NULL":
            self.advance()
            return None
        self.error("literal value")

    def parse_call(self) -> CallSub:
        self.eat_keyword("CALL")
        self.eat_punct("{")
        imports = None
        if self.at_keyword("WITH"):
            self.advance()
            names = [self.eat_ident("imported variable").text]
            while self.at_punct(","):
                self.advance()
                names.append(self.eat_ident("imported variable").text)
            imports = tuple(names)
        query = self.parse_query(top_level=False)
        self.eat_punct("}")
        return CallSub(imports, query)

    def parse_projections(self) -> tuple[tuple[Projection, ...], bool]:
        distinct = False
        if self.at_keyword("DISTINCT"):
            self.advance()
            distinct = True
        projections = [self.parse_projection()]
        while self.at_punct(","):
            self.advance()
            projections.append(self.parse_projection())
        return tuple(projections), distinct

    def parse_projection(self) -> Projection:
        start = self.pos
        expr = self.parse_expr()
        if self.at_keyword("AS"):
            self.advance()
            alias = self.eat_ident("alias").text
        else:
            alias = self.render_tokens(start, self.pos)
        return Projection(expr, alias)

    def render_tokens(self, start: int, end: int) -> str:
        """Reconstruct source text for a default column name."""
        words = []
        previous = None
        for token in self.tokens[start:end]:
            text = token.text if token.kind != "STRING" else f"'{token.text}'"
            if previous and previous.kind in ("IDENT", "INT", "FLOAT") and token.kind in ("IDENT", "INT", "FLOAT"):
                words.append(" ")
            words.append(text)
            previous = token
        return "".join(words)

    def parse_order_keys(self) -> OrderBy:
        keys = []
        while True:
            expr = self.parse_expr()
            ascending = True
            if self.at_keyword("ASC"):
                self.advance()
            elif self.at_keyword("DESC"):
                self.advance()
                ascending = False
            keys.append((expr, ascending))
            if self.at_punct(","):
                self.advance()
                continue
            break
        return OrderBy(tuple(keys))

    # expressions, precedence low to high

    def parse_expr(self) -> Expr:
        return self.parse_or()

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.at_keyword("OR"):
            self.advance()
            left = Binary("OR", left, self.parse_and())
        return left

    def parse_and(self) -> Expr:
        left = self.parse_not()
        while self.at_keyword("AND"):
            self.advance()
            left = Binary("AND", left, self.parse_not())
        return left

    def parse_not(self) -> Expr:
        if self.at_keyword("NOT"):
            self.advance()
            return Unary("NOT", self.parse_not())
        return self.parse_comparison()

    def parse_comparison(self) -> Expr:
        left = self.parse_additive()
        token = self.peek()
        if token.kind == "PUNCT" and token.text in ("=", "<>", "<", "<=", ">", ">="):
            self.advance()
            return Binary(token.text, left, self.parse_additive())
        if self.at_keyword("IN"):
            self.advance()
            return Binary("IN", left, self.parse_additive())
        return left

    def parse_additive(self) -> Expr:
        left = self.parse_multiplicative()
        while self.peek().kind == "PUNCT" and self.peek().text in ("+", "-"):
            op = self.advance().text
            left = Binary(op, left, self.parse_multiplicative())
        return left

    def parse_multiplicative(self) -> Expr:
        left = self.parse_unary()
        while self.peek().kind == "PUNCT" and self.peek().text in ("*", "/"):
            op = self.advance().text
            left = Binary(op, left, self.parse_unary())
        return left

    def parse_unary(self) -> Expr:
        if self.at_punct("-"):
            self.advance()
            return Unary("-", self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Expr:
        token = self.peek()
        if token.kind == "STRING":
            self.advance()
            return Literal(token.text)
        if token.kind == "INT":
            self.advance()
            return Literal(int(token.text))
        if token.kind == "FLOAT":
            self.advance()
            return Literal(float(token.text))
        if self.at_punct("("):
            self.advance()
            expr = self.parse_expr()
            self.eat_punct(")")
            return expr
        if self.at_punct("["):
            self.advance()
            items = []
            if not self.at_punct("]"):
                items.append(self.parse_expr())
                while self.at_punct(","):
                    self.advance()
                    items.append(self.parse_expr())
            self.eat_punct("]")
            return ListLit(tuple(items))
        word = token.keyword()
        if word == "TRUE":
            self.advance()
            return Literal(True)
        if word == "FALSE":
            self.advance()
            return Literal(False)
        if word == "NULL":
            self.advance()
            return Literal(None)
        if word == "CASE":
            return self.parse_case()
        if token.kind == "IDENT" and word not in RESERVED:
            if self.peek(1).kind == "PUNCT" and self.peek(1).text == "(":
                return self.parse_func_call()
            self.advance()
            if self.at_punct("."):
                self.advance()
                key = self.eat_ident("property name").text
                return Prop(token.text, key)
            return Var(token.text)
        self.error("expression")

    def parse_case(self) -> Expr:
        self.eat_keyword("CASE")
        whens = []
        while self.at_keyword("WHEN"):
            self.advance()
            condition = self.parse_expr()
            self.eat_keyword("THEN")
            whens.append((condition, self.parse_expr()))
        if not whens:
            self.error("'WHEN'")
        otherwise = None
        if self.at_keyword("ELSE"):
            self.advance()
            otherwise = self.parse_expr()
        self.eat_keyword("END")
        return CaseWhen(tuple(whens), otherwise)

    def parse_func_call(self) -> Expr:
        name = self.advance().text
        self.eat_punct("(")
        distinct = False
        star = False
        args: list[Expr] = []
        if self.at_punct("*"):
            self.advance()
            star = True
        elif not self.at_punct(")"):
            if self.at_keyword("DISTINCT"):
                self.advance()
                distinct = True
            args.append(self.parse_expr())
            while self.at_punct(","):
                self.advance()
                args.append(self.parse_expr())
        self.eat_punct(")")
        return FuncCall(name.lower(), tuple(args), distinct, star)
