"""Text grammar for polynomials, maps, matrices and points.

Polynomials use variables ``x0..xN`` and ``t``, the operators ``+ - * ^``
(integer exponents), parentheses and rational literals such as ``3/4``.
A map is ``[p0 : p1 : ... : pn]`` optionally followed by
``;; inverse=[q0 : ... : qn]``.  Matrices are written row by row with rows
separated by ``;`` and entries by ``,``.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .polynomials import MultiPoly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|t)|(\^|\*\*)|([-+*/()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:pos + 12]!r}")
        num, name, caret, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        elif caret is not None:
            out.append(("op", "^"))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring: PolyRing):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if (kind, val) != ("op", op):
            raise ParseError(f"expected {op!r}, found {val!r}")

    def parse(self) -> MultiPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.peek()[1]!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            base = base**val
        return base

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.factor()

    def atom(self):
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num":
                    raise ParseError("only numeric denominators are allowed")
                return ring.const(f"{val}/{den}")
            return ring.const(val)
        if kind == "var":
            if val == "t":
                if not ring.param:
                    raise ParseError("t is not allowed here")
                return ring.t()
            idx = int(val[1:])
            if idx >= ring.nvars:
                raise ParseError(f"variable {val} outside x0..x{ring.nvars - 1}")
            return ring.var(idx)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    return _Parser(text, ring).parse()


def split_tuple(text: str):
    """Split ``[a : b : c]`` into its component strings."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"expected a bracketed tuple, got {text!r}")
    parts = [p.strip() for p in s[1:-1].split(":")]
    if any(not p for p in parts):
        raise ParseError("empty tuple component")
    return parts


def split_map_text(text: str):
    """Return (components, inverse components or None) of a map literal."""
    main, sep, rest = text.partition(";;")
    inverse = None
    if sep:
        rest = rest.strip()
        if not rest.startswith("inverse="):
            raise ParseError("expected 'inverse=' after ';;'")
        inverse = split_tuple(rest[len("inverse="):])
    return split_tuple(main), inverse


def parse_matrix_rows(text: str):
    rows = [r for r in text.strip().strip("[]").split(";")]
    out = [[e.strip() for e in r.split(",")] for r in rows]
    if not out or any(not e for r in out for e in r):
        raise ParseError(f"bad matrix {text!r}")
    if len({len(r) for r in out}) != 1:
        raise ParseError("ragged matrix")
    return out


def parse_point_text(text: str):
    s = text.strip()
    if s.startswith("["):
        return split_tuple(s)
    return [p.strip() for p in s.split(",")]
