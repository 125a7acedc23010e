"""Tokenizer and reader for parenthesised s-expressions (PDDL and SMT-LIB output)."""

from __future__ import annotations

from dataclasses import dataclass


class SExprSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Symbol:
    """An atom of an s-expression with its source position."""

    text: str
    line: int = 0
    column: int = 0

    def __str__(self) -> str:
        return self.text

    def __eq__(self, other):
        if isinstance(other, Symbol):
            return self.text == other.text
        if isinstance(other, str):
            return self.text == other
        return NotImplemented

    def __hash__(self):
        return hash(self.text)


class SList(list):
    """A parenthesised list remembering where it opened."""

    def __init__(self, items=(), line: int = 0, column: int = 0):
        super().__init__(items)
        self.line = line
        self.column = column


def tokenize(text: str, comment: str = ";"):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == comment:
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()":
            yield ch, line, col
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            if j >= n:
                raise SExprSyntaxError("unterminated string", line, col)
            yield text[i : j + 1], line, col
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise SExprSyntaxError("unterminated quoted symbol", line, col)
            yield text[i : j + 1], line, col
            col += j + 1 - i
            i = j + 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "();":
            j += 1
        yield text[i:j], line, col
        col += j - i
        i = j


def parse_all(text: str, lowercase: bool = False) -> list:
    """Parse every top-level expression in ``text``."""
    stack: list[SList] = [SList()]
    for tok, line, col in tokenize(text):
        if tok == "(":
            stack.append(SList(line=line, column=col))
        elif tok == ")":
            if len(stack) == 1:
                raise SExprSyntaxError("unexpected ')'", line, col)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(Symbol(tok.lower() if lowercase else tok, line, col))
    if len(stack) > 1:
        opened = stack[-1]
        raise SExprSyntaxError("unbalanced '('", opened.line, opened.column)
    return list(stack[0])


def parse_one(text: str, lowercase: bool = False):
    exprs = parse_all(text, lowercase=lowercase)
    if len(exprs) != 1:
        raise SExprSyntaxError(f"expected one expression, found {len(exprs)}", 1, 1)
    return exprs[0]


def to_plain(expr):
    """Strip position info: Symbols become str, SLists become tuples."""
    if isinstance(expr, list):
        return tuple(to_plain(e) for e in expr)
    return str(expr)
