"""A tiny expression language for graphs.

Grammar::

    expr  := atom | op "(" expr "," expr ")"
    op    := "join" | "cart"
    atom  := ("K" | "P" | "C" | "E") INT
           | "Kb" "(" INT "," INT ")"
           | "Km" "(" INT ("," INT)+ ")"
           | "file:" PATH

Whitespace between tokens is ignored.  ``PATH`` runs up to the next
whitespace, comma or parenthesis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from . import graph as gr

__all__ = [
    "Atom",
    "Op",
    "ExprSyntaxError",
    "NonPositiveParameter",
    "parse_expr",
    "format_expr",
    "eval_expr",
]

OPERATORS = ("join", "cart")
SIMPLE_ATOMS = ("K", "P", "C", "E")


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        self.offset = offset
        self.expected = expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at offset {offset}{hint}")


class NonPositiveParameter(ExprSyntaxError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str
    params: tuple[int, ...] = ()
    path: Optional[str] = None

    def __str__(self):
        if self.kind == "file":
            return f"file:{self.path}"
        if self.kind in SIMPLE_ATOMS:
            return f"{self.kind}{self.params[0]}"
        return f"{self.kind}({','.join(map(str, self.params))})"


@dataclass(frozen=True)
class Op:
    op: str
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return f"{self.op}({self.left},{self.right})"


Expr = Union[Atom, Op]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<file>file:[^\s,()]*)
  | (?P<int>[+-]?\d+)
  | (?P<name>[A-Za-z_]+)
  | (?P<punct>[(),])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: Optional[str] = None, expected: Optional[str] = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            shown = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ExprSyntaxError(f"unexpected {shown}", tok[2], expected or repr(value or kind))
        self.i += 1
        return tok

    def positive(self):
        _, text, pos = self.take("int", expected="a positive integer")
        value = int(text)
        if value < 1:
            raise NonPositiveParameter(f"parameter {value} is not positive", pos, "a positive integer")
        return value

    def expr(self) -> Expr:
        kind, text, pos = self.peek()
        if kind == "file":
            self.i += 1
            if len(text) == len("file:"):
                raise ExprSyntaxError("empty file path", pos + len(text), "a path")
            return Atom("file", path=text[len("file:"):])
        if kind != "name":
            raise ExprSyntaxError(
                f"unexpected {text!r}" if kind != "end" else "unexpected end of input",
                pos,
                "a graph expression",
            )
        self.i += 1
        if text in OPERATORS:
            self.take("punct", "(")
            left = self.expr()
            self.take("punct", ",")
            right = self.expr()
            self.take("punct", ")")
            return Op(text, left, right)
        if text in ("Kb", "Km"):
            self.take("punct", "(")
            params = [self.positive()]
            while self.peek()[1] == ",":
                self.i += 1
                params.append(self.positive())
            _, close, cpos = self.peek()
            if text == "Kb" and len(params) != 2:
                raise ExprSyntaxError("Kb takes exactly two sizes", cpos, "two sizes")
            if text == "Km" and len(params) < 2:
                raise ExprSyntaxError("Km takes at least two sizes", cpos, "','")
            self.take("punct", ")")
            return Atom(text, tuple(params))
        # simple atoms are written without a separator: K5, P4, ...
        if text in SIMPLE_ATOMS:
            return Atom(text, (self.positive(),))
        raise ExprSyntaxError(f"unknown name {text!r}", pos, "join, cart, K, P, C, E, Kb, Km or file:")


def parse_expr(text: str) -> Expr:
    parser = _Parser(text)
    tree = parser.expr()
    parser.take("end", expected="end of input")
    return tree


def format_expr(e: Expr) -> str:
    return str(e)


def eval_expr(e: Expr) -> gr.Graph:
    if isinstance(e, Op):
        left, right = eval_expr(e.left), eval_expr(e.right)
        return gr.join(left, right) if e.op == "join" else gr.cartesian(left, right)
    if e.kind == "file":
        return gr.read_edge_list(e.path)
    builders = {
        "K": gr.complete,
        "P": gr.path,
        "C": gr.cycle,
        "E": gr.empty_graph,
        "Kb": gr.complete_bipartite,
        "Km": lambda *parts: gr.complete_multipartite(parts),
    }
    return builders[e.kind](*e.params)
