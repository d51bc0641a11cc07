"""Text input for field elements and polynomials.

Grammar: integers, the field generator 'd', the variable 'T', operators
+ - * ^ and parentheses; whitespace is ignored. Elements are the
variable-free case. Examples: "2*d^3+2*d^2+1", "T^2-(d+2)*T", "(d+2)*T+1".
"""

from __future__ import annotations

from .gf import FieldCtx, FieldElement
from .poly import Poly, _ONE


class ParseError(ValueError):
    """Invalid input text; carries the offending token and position."""

    def __init__(self, message: str, text: str, pos: int, token: str = ""):
        self.text = text
        self.pos = pos
        self.token = token
        shown = f" {token!r}" if token else ""
        super().__init__(f"{message}{shown} at position {pos}: {text!r}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch in ("d", "T"):
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError("unexpected character", text, i, ch)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, ctx: FieldCtx, text: str, allow_var: bool):
        self.ctx = ctx
        self.text = text
        self.allow_var = allow_var
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found", self.text, tok[2], tok[1])
        self.i += 1
        return tok

    def parse(self) -> Poly:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected token", self.text, tok[2], tok[1])
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self) -> Poly:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        return self.factor()

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            e = int(tok[1])
            out = Poly._raw(self.ctx, _ONE)
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return Poly(self.ctx, [int(value)])
        if kind == "d":
            if self.ctx.s == 1:
                raise ParseError(
                    "generator 'd' is not defined for a prime field", self.text, pos, value)
            return Poly(self.ctx, [(0, 1)])
        if kind == "T":
            if not self.allow_var:
                raise ParseError(
                    "variable 'T' is not allowed in a field element", self.text, pos, value)
            return Poly(self.ctx, [0, 1])
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError("unexpected token", self.text, pos, value)


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    """Parse a polynomial in T with coefficients over ctx."""
    if not text or not text.strip():
        raise ParseError("empty input", text or "", 0)
    return _Parser(ctx, text, allow_var=True).parse()


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Parse a single field element (no variable T allowed)."""
    if not text or not text.strip():
        raise ParseError("empty input", text or "", 0)
    value = _Parser(ctx, text, allow_var=False).parse()
    if value.degree > 0:  # pragma: no cover - guarded by allow_var
        raise ParseError("expected a constant", text, 0)
    coeffs = value.data[0] if value.data else ()
    return FieldElement(ctx, coeffs)
