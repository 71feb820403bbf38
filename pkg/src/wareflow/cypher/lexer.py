"""Tokenizer with line/column tracking (lines 1-based, columns 0-based)."""

from __future__ import annotations

from dataclasses import dataclass

from wareflow.cypher.errors import CypherSyntaxError

PUNCT_TWO = ("<=", ">=", "<>")
PUNCT_ONE = "()[]{},.:+-*/=<>"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, INT, FLOAT, STRING, PUNCT, EOF
    text: str
    line: int
    column: int

    def keyword(self) -> str:
        """Uppercased text for case-insensitive reserved-word checks."""
        return self.text.upper() if self.kind == "IDENT" else ""


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    col = 0
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            kind = "INT"
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                kind = "FLOAT"
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            tokens.append(Token(kind, source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "'\"":
            quote = ch
            j = i + 1
            parts = []
            while j < n and source[j] != quote:
                if source[j] == "\\" and j + 1 < n:
                    esc = source[j + 1]
                    parts.append({"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"'}.get(esc, esc))
                    j += 2
                else:
                    parts.append(source[j])
                    j += 1
            if j >= n:
                raise CypherSyntaxError(line, start_col, ("closing quote",), "end of input")
            tokens.append(Token("STRING", "".join(parts), line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        two = source[i : i + 2]
        if two in PUNCT_TWO:
            tokens.append(Token("PUNCT", two, line, start_col))
            i += 2
            col += 2
            continue
        if ch in PUNCT_ONE:
            tokens.append(Token("PUNCT", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise CypherSyntaxError(line, start_col, ("a token",), repr(ch))
    tokens.append(Token("EOF", "", line, col))
    return tokens
