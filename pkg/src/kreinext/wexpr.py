"""Tiny expression grammar for user-supplied Weyl functions.

Grammar (no eval, recursive descent)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | atom
    atom    := NUMBER | 'i' | 'mu' | 'sqrt' '(' expr ')' | '(' expr ')'

``sqrt`` takes the branch with nonnegative imaginary part, matching the
convention of the built-in model.  Expression-defined functions have no
closed-form inverse and no intrinsic real domain: the real interval must
be supplied by the caller (the CLI wires ``--interval`` through).
"""

from __future__ import annotations

import math
import re

from .errors import DomainError
from .pointint import sqrt_upper
from .spectral import WeylFunction

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>[-+*/()]))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ValueError(f"bad character in expression at position {pos}: {text[pos]!r}")
        tokens.append(match.group(match.lastgroup))
        pos = match.end()
    tokens.append("<end>")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos]

    def take(self) -> str:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r}")

    def parse(self):
        node = self.expr()
        self.expect("<end>")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = (op, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = (op, node, rhs)
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "sqrt":
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return ("sqrt", node)
        if tok == "i":
            return ("const", 1j)
        if tok == "mu":
            return ("var",)
        try:
            return ("const", complex(float(tok)))
        except ValueError:
            raise ValueError(f"unknown token {tok!r} (allowed: numbers, i, mu, sqrt)") from None


def _eval_node(node, mu: complex) -> complex:
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "var":
        return mu
    if kind == "neg":
        return -_eval_node(node[1], mu)
    if kind == "sqrt":
        return sqrt_upper(_eval_node(node[1], mu))
    lhs = _eval_node(node[1], mu)
    rhs = _eval_node(node[2], mu)
    if kind == "+":
        return lhs + rhs
    if kind == "-":
        return lhs - rhs
    if kind == "*":
        return lhs * rhs
    if kind == "/":
        if rhs == 0:
            raise ZeroDivisionError("division by zero in Weyl expression")
        return lhs / rhs
    raise AssertionError(f"unreachable node kind {kind}")


class ExpressionWeyl(WeylFunction):
    """Weyl function defined by an expression string in ``mu``.

    The caller supplies the real interval(s) on which boundary values are
    taken; evaluation there must come out real to within ``imag_tol``
    relative or :class:`DomainError` is raised.
    """

    def __init__(self, text: str, real_intervals=((-math.inf, 0.0),), imag_tol: float = 1e-9):
        self.text = text
        self._ast = _Parser(_tokenize(text)).parse()
        self._intervals = tuple((float(a), float(b)) for a, b in real_intervals)
        self.imag_tol = imag_tol

    @property
    def real_intervals(self):
        return self._intervals

    def eval(self, mu: complex) -> complex:
        return _eval_node(self._ast, complex(mu))

    def boundary_eval(self, r: float) -> float:
        if not self.contains_real(r):
            raise DomainError(f"r={r:.6g} is outside the declared real domain")
        value = self.eval(complex(r, 0.0))
        if abs(value.imag) > self.imag_tol * (1.0 + abs(value)):
            raise DomainError(
                f"expression is not real at r={r:.6g} (value {value:.6g}); "
                "shrink the declared real interval"
            )
        return float(value.real)


def parse_weyl_expression(text: str, real_intervals=((-math.inf, 0.0),)) -> ExpressionWeyl:
    """Compile an expression string into a usable Weyl function."""
    return ExpressionWeyl(text, real_intervals=real_intervals)
