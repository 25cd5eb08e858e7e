"""Recursive-descent parser and printer for the polynomial expression grammar.

Grammar (whitespace insignificant):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'

NUMBER is a non-negative integer; `a/b` is a rational literal.  Exponents are
integer literals; system files reject negative exponents at a later semantic
stage, but the raw grammar accepts them so that report strings containing
Laurent monomials (w^-2 and friends) round-trip.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .ext import Ext
from .poly import Poly


class ExprError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def tokenize(text: str, line: int = 1):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r}", line, pos + 1)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), m.start(1) + 1))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2) + 1))
        else:
            tokens.append(("op", m.group(3), m.start(3) + 1))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, vars, line):
        self.tokens = tokens
        self.i = 0
        self.vars = tuple(vars)
        self.line = line

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg):
        kind, val, col = self.peek()
        raise ExprError(msg, self.line, col)

    def expect_op(self, op):
        kind, val, col = self.next()
        if kind != "op" or val != op:
            raise ExprError(f"expected {op!r}", self.line, col)

    def parse(self) -> Poly:
        p = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ExprError(f"trailing input {val!r}", self.line, col)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        kind, val, col = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val, col = self.next()
            if kind == "op" and val == "-":
                sign = -1
                kind, val, col = self.next()
            if kind != "num":
                raise ExprError("exponent must be an integer literal", self.line, col)
            n = sign * val
            if n < 0 and len(p.terms) != 1:
                raise ExprError("negative exponent on a non-monomial", self.line, col)
            p = p**n
        return p

    def atom(self) -> Poly:
        kind, val, col = self.next()
        if kind == "num":
            num = val
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.next()
                k3, v3, col3 = self.next()
                if k3 != "num":
                    raise ExprError("denominator must be an integer", self.line, col3)
                if v3 == 0:
                    raise ExprError("zero denominator", self.line, col3)
                return Poly.const(self.vars, Fraction(num, v3))
            return Poly.const(self.vars, Fraction(num))
        if kind == "name":
            if val not in self.vars:
                raise ExprError(f"unknown variable {val!r}", self.line, col)
            return Poly.var(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ExprError("expected a number, variable or parenthesis", self.line, col)


def parse_expr(text: str, vars, line: int = 1) -> Poly:
    return _Parser(tokenize(text, line), vars, line).parse()


# ---------------------------------------------------------------------------
# printing


def _coeff_to_str(c) -> str:
    if isinstance(c, Ext):
        g = c.field.gen_name
        parts = []
        for i, q in enumerate(c.coeffs):
            if not q:
                continue
            if i == 0:
                parts.append(_coeff_to_str(q))
            else:
                mono = g if i == 1 else f"{g}^{i}"
                if q == 1:
                    parts.append(mono)
                elif q == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{_coeff_to_str(q)}*{mono}")
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"({s})" if len(parts) > 1 else s
    return str(c)


def poly_to_str(p: Poly) -> str:
    """Deterministic expression string, re-parseable by parse_expr.

    Extension-field coefficients print with their generator as a symbol; to
    re-parse, include the generator name among the variables.
    """
    if not p.terms:
        return "0"
    chunks = []
    for exps, c in p.sorted_terms():
        factors = []
        for name, e in zip(p.vars, exps):
            if e == 0:
                continue
            if e == 1:
                factors.append(name)
            elif e < 0:
                factors.append(f"{name}^-{-e}")
            else:
                factors.append(f"{name}^{e}")
        cs = _coeff_to_str(c)
        neg = cs.startswith("-") and not cs.startswith("(")
        if neg:
            cs = cs[1:]
        if factors and cs == "1":
            body = "*".join(factors)
        elif factors:
            body = "*".join([cs] + factors)
        else:
            body = cs
        if not chunks:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(chunks)
