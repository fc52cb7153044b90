"""One-relator presentations and their text format.

    p = 3
    generators = x1 x2 x3
    relator = [x1,x2]*x3^-3

Statements may also be separated by ';'. A word is a '*'-joined list of
factors; a factor is a name, ``[word,word]`` or ``(word)``, optionally raised to
a nonzero integer power ``^k`` / ``^-k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConstructionError, ParseError
from ..fplinalg import check_prime
from ..ncpoly.grammar import TokenStream
from ..quadratic import parse_names, shifted_error, split_statements
from ..words import Commutator, Letter, Power, RelatorWord, format_word, max_index, product


@dataclass(frozen=True)
class GroupPresentation:
    p: int
    names: tuple
    relator: RelatorWord

    def __post_init__(self):
        check_prime(self.p)
        if not self.names:
            raise ConstructionError("a presentation needs at least one generator")
        if max_index(self.relator) >= len(self.names):
            raise ConstructionError("relator uses an undeclared generator")

    @property
    def d(self) -> int:
        return len(self.names)


class _WordParser:
    def __init__(self, text: str, names):
        self.ts = TokenStream(text)
        self.index = {n: i for i, n in enumerate(names)}

    def parse(self) -> RelatorWord:
        w = self.word()
        kind, val, pos = self.ts.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos, self.ts.text)
        return w

    def word(self) -> RelatorWord:
        factors = [self.factor()]
        while self.ts.accept("*"):
            factors.append(self.factor())
        return product(*factors)

    def factor(self) -> RelatorWord:
        ts = self.ts
        kind, val, pos = ts.next()
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown generator {val!r}", pos, ts.text)
            base = Letter(self.index[val])
        elif kind == "op" and val == "[":
            u = self.word()
            ts.expect(",")
            v = self.word()
            ts.expect("]")
            base = Commutator(u, v)
        elif kind == "op" and val == "(":
            base = self.word()
            ts.expect(")")
        else:
            raise ParseError(f"unexpected token {val or 'end of input'!r}", pos, ts.text)
        if ts.accept("^"):
            _, _, epos = ts.peek()
            k = ts.signed_int()
            if k == 0:
                raise ParseError("zero exponent", epos, ts.text)
            if isinstance(base, Letter):
                return Letter(base.index, k)
            return base if k == 1 else Power(base, k)
        return base


def parse_word(text: str, names) -> RelatorWord:
    return _WordParser(text, names).parse()


def parse_presentation(text: str) -> GroupPresentation:
    p = None
    names = None
    rel = None
    for key, val, pos in split_statements(text):
        if key == "p":
            try:
                p = check_prime(int(val))
            except (ValueError, ConstructionError):
                raise ParseError(f"p must be a prime, got {val!r}", pos, text) from None
        elif key == "generators":
            names = parse_names(val, pos, text)
        elif key == "relator":
            if rel is not None:
                raise ParseError("only one relator is supported", pos, text)
            rel = (val, pos)
        else:
            raise ParseError(f"unknown key {key!r}", pos, text)
    if p is None or names is None or rel is None:
        raise ParseError("presentation needs 'p = ...', 'generators = ...' and 'relator = ...'")
    try:
        word = parse_word(rel[0], names)
    except ParseError as e:
        raise shifted_error(e, rel[1], text) from None
    return GroupPresentation(p, tuple(names), word)


def format_presentation(g: GroupPresentation) -> str:
    return (f"p = {g.p}\ngenerators = {' '.join(g.names)}\n"
            f"relator = {format_word(g.relator, g.names)}\n")
