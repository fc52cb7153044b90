"""Text grammar for noncommutative polynomials.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '[' expr ',' expr ']' | '(' expr ')'

``[A,B]`` expands to ``A*B - B*A`` and ``A^k`` (k >= 1) is a repeated factor.
Example: ``[X1,X2] + [X3,X4]``.
"""

from __future__ import annotations

import re
from typing import Sequence

from ..errors import ParseError
from .poly import HomogeneousPoly

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^\[\](),]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into (kind, value, position) triples, ending with an ('end', '', len) token."""
    out = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", n))
    return out


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op: str) -> bool:
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str):
        kind, val, pos = self.peek()
        if not (kind == "op" and val == op):
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos, self.text)
        self.i += 1

    def error(self, message: str):
        _, _, pos = self.peek()
        return ParseError(message, pos, self.text)

    def signed_int(self) -> int:
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        kind, val, pos = self.next()
        if kind != "int":
            raise ParseError(f"expected an integer, found {val or 'end of input'!r}", pos, self.text)
        return sign * int(val)


def _mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = (out.get(u + v, 0) + x * y) % p
    return {w: c for w, c in out.items() if c}


def _add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for w, c in b.items():
        out[w] = (out.get(w, 0) + sign * c) % p
    return {w: c for w, c in out.items() if c}


class _PolyParser:
    def __init__(self, text: str, names: Sequence[str], p: int):
        self.ts = TokenStream(text)
        self.index = {n: i for i, n in enumerate(names)}
        self.p = p

    def parse(self) -> dict:
        out = self.expr()
        kind, val, pos = self.ts.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos, self.ts.text)
        return out

    def expr(self) -> dict:
        ts, p = self.ts, self.p
        sign = -1 if ts.accept("-") else 1
        if sign == 1:
            ts.accept("+")
        acc = _add({}, self.term(), p, sign)
        while True:
            if ts.accept("+"):
                acc = _add(acc, self.term(), p, 1)
            elif ts.accept("-"):
                acc = _add(acc, self.term(), p, -1)
            else:
                return acc

    def term(self) -> dict:
        acc = self.factor()
        while self.ts.accept("*"):
            acc = _mul(acc, self.factor(), self.p)
        return acc

    def factor(self) -> dict:
        base = self.atom()
        if self.ts.accept("^"):
            kind, val, pos = self.ts.next()
            if kind != "int" or int(val) < 1:
                raise ParseError("exponent must be a positive integer", pos, self.ts.text)
            out = base
            for _ in range(int(val) - 1):
                out = _mul(out, base, self.p)
            return out
        return base

    def atom(self) -> dict:
        ts, p = self.ts, self.p
        kind, val, pos = ts.next()
        if kind == "int":
            c = int(val) % p
            return {(): c} if c else {}
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown generator {val!r}", pos, ts.text)
            return {(self.index[val],): 1}
        if kind == "op" and val == "[":
            a = self.expr()
            ts.expect(",")
            b = self.expr()
            ts.expect("]")
            return _add(_mul(a, b, p), _mul(b, a, p), p, -1)
        if kind == "op" and val == "(":
            a = self.expr()
            ts.expect(")")
            return a
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos, ts.text)


def parse_terms(text: str, names: Sequence[str], p: int) -> dict:
    """Parse into a ``{word: coefficient}`` dict (possibly inhomogeneous)."""
    return _PolyParser(text, names, p).parse()


def parse_polynomial(text: str, names: Sequence[str], p: int,
                     degree: int | None = None) -> HomogeneousPoly:
    """Parse a homogeneous polynomial; ``degree`` (if given) is enforced."""
    terms = parse_terms(text, names, p)
    degrees = {len(w) for w in terms}
    if len(degrees) > 1:
        raise ParseError(f"polynomial {text!r} is not homogeneous (degrees {sorted(degrees)})")
    deg = degrees.pop() if degrees else (degree if degree is not None else 0)
    if degree is not None and deg != degree:
        raise ParseError(f"polynomial {text!r} has degree {deg}, expected {degree}")
    return HomogeneousPoly(p, deg, terms)
