"""Expression grammar for defining functions, frame coefficients and symbols.

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := INT | 'i' | NAME | NAME '(' expr ')' | '(' expr ')'

The only function is ``conj``.  Trees are evaluated in a ring context, so the
same parser feeds jets and symbol entries.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ExpressionSyntaxError, InputError, UnknownVariable
from .gaussian import I
from .jet import Jet

__all__ = ["Node", "tokenize", "parse", "evaluate", "parse_expression", "JetContext"]


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Node:
    kind: str  # 'int', 'imag', 'var', 'neg', 'add', 'sub', 'mul', 'div', 'pow', 'call'
    value: object = None
    children: tuple = ()
    line: int = 1
    column: int = 1


_OPS = set("+-*/^(),")


def tokenize(src):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start = col
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(Token("int", src[i:j], line, start))
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token("name", src[i:j], line, start))
        elif ch in _OPS:
            j = i + 1
            tokens.append(Token("op", ch, line, start))
        else:
            raise ExpressionSyntaxError(line, start, f"an operand or operator, found {ch!r}")
        col += j - i
        i = j
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def advance(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def accept(self, op):
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        return None

    def expect(self, op):
        t = self.accept(op)
        if t is None:
            raise ExpressionSyntaxError(self.tok.line, self.tok.column, repr(op))
        return t

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ExpressionSyntaxError(self.tok.line, self.tok.column, "an operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            rhs = self.term()
            node = Node("add" if t.text == "+" else "sub", children=(node, rhs), line=t.line, column=t.column)
        return node

    def term(self):
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            rhs = self.unary()
            node = Node("mul" if t.text == "*" else "div", children=(node, rhs), line=t.line, column=t.column)
        return node

    def unary(self):
        t = self.accept("-")
        if t:
            return Node("neg", children=(self.unary(),), line=t.line, column=t.column)
        return self.power()

    def power(self):
        base = self.atom()
        t = self.accept("^")
        if t is None:
            return base
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "int":
            raise ExpressionSyntaxError(self.tok.line, self.tok.column, "an integer exponent")
        e = sign * int(self.advance().text)
        return Node("pow", e, (base,), t.line, t.column)

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Node("int", int(t.text), line=t.line, column=t.column)
        if t.kind == "name":
            self.advance()
            if self.accept("("):
                arg = self.expr()
                self.expect(")")
                return Node("call", t.text, (arg,), t.line, t.column)
            if t.text == "i":
                return Node("imag", line=t.line, column=t.column)
            return Node("var", t.text, line=t.line, column=t.column)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionSyntaxError(t.line, t.column, "an operand")


def parse(src):
    """Parse ``src`` into an expression tree."""
    return _Parser(src).parse()


class JetContext:
    """Evaluation of trees into jets over a variable set at order ``K``."""

    def __init__(self, vars, K):
        self.vars = vars
        self.K = K

    def const(self, value):
        return Jet.const(self.vars, value, self.K)

    def var(self, name, node):
        if name not in self.vars.names:
            raise UnknownVariable(name, node.line, node.column)
        return Jet.var(self.vars, name, self.K)

    def conj(self, value):
        return value.conj()


def evaluate(node, ctx):
    kind = node.kind
    if kind == "int":
        return ctx.const(node.value)
    if kind == "imag":
        return ctx.const(I)
    if kind == "var":
        return ctx.var(node.value, node)
    if kind == "neg":
        return -evaluate(node.children[0], ctx)
    if kind == "call":
        if node.value != "conj":
            raise UnknownVariable(node.value + "()", node.line, node.column)
        return ctx.conj(evaluate(node.children[0], ctx))
    if kind == "pow":
        base = evaluate(node.children[0], ctx)
        try:
            return base ** node.value
        except Exception as exc:
            raise InputError(f"cannot raise to power {node.value} at line {node.line}, column {node.column}: {exc}") from exc
    lhs = evaluate(node.children[0], ctx)
    rhs = evaluate(node.children[1], ctx)
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    try:
        return lhs / rhs
    except Exception as exc:
        raise InputError(f"division by a non-unit at line {node.line}, column {node.column}") from exc


def parse_expression(src, vars, K):
    """Parse ``src`` and evaluate it to a jet of order ``K``."""
    return evaluate(parse(src), JetContext(vars, K))
