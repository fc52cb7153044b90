"""Homogeneous noncommutative polynomials over F_p.

A monomial is a tuple of generator indices (``()`` is the unit). Monomials are
compared degree-lexicographically: shorter words first, equal lengths by index
sequence.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..errors import ConstructionError
from ..fplinalg import FpMatrix, check_prime

Monomial = tuple


def deglex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    ka, kb = (len(a), tuple(a)), (len(b), tuple(b))
    return (ka > kb) - (ka < kb)


def deglex_key(word: Sequence[int]):
    return (len(word), tuple(word))


def all_words(d: int, n: int) -> list[tuple]:
    """All d**n words of length n in increasing deglex order."""
    words = [()]
    for _ in range(n):
        words = [w + (i,) for w in words for i in range(d)]
    return words


def word_slot(word: Sequence[int], d: int) -> int:
    """Row-major position of ``word`` among the d**len(word) words."""
    s = 0
    for i in word:
        s = s * d + i
    return s


class HomogeneousPoly:
    """A homogeneous element of F_p<X> of a fixed degree.

    ``terms`` maps monomials (all of length ``degree``) to nonzero residues.
    Instances are immutable and hashable.
    """

    __slots__ = ("p", "degree", "terms", "_hash")

    def __init__(self, p: int, degree: int, terms: Mapping[tuple, int] | Iterable = ()):
        check_prime(p)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple, int] = {}
        for w, c in items:
            w = tuple(w)
            if len(w) != degree:
                raise ConstructionError(f"monomial {w} has degree {len(w)}, expected {degree}")
            c = (clean.get(w, 0) + c) % p
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousPoly is immutable")

    @classmethod
    def monomial(cls, p: int, word: Sequence[int], coef: int = 1) -> "HomogeneousPoly":
        return cls(p, len(word), {tuple(word): coef})

    @classmethod
    def zero(cls, p: int, degree: int) -> "HomogeneousPoly":
        return cls(p, degree, {})

    @classmethod
    def commutator(cls, p: int, i: int, j: int) -> "HomogeneousPoly":
        """[X_i, X_j] = X_i X_j - X_j X_i."""
        return cls(p, 2, [((i, j), 1), ((j, i), -1)])

    @classmethod
    def from_vector(cls, p: int, d: int, degree: int, vec: Sequence[int]) -> "HomogeneousPoly":
        words = all_words(d, degree)
        return cls(p, degree, {w: c for w, c in zip(words, vec) if c % p})

    def to_vector(self, d: int) -> list[int]:
        vec = [0] * d ** self.degree
        for w, c in self.terms.items():
            if any(i >= d for i in w):
                raise ConstructionError(f"monomial {w} uses a generator >= {d}")
            vec[word_slot(w, d)] = c
        return vec

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word: Sequence[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def monomials(self) -> list[tuple]:
        return sorted(self.terms, key=deglex_key)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=deglex_key)

    def max_index(self) -> int:
        return max((i for w in self.terms for i in w), default=-1)

    def _check(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if other.p != self.p:
            raise ConstructionError("polynomials over different fields")
        if other.degree != self.degree and self.terms and other.terms:
            raise ConstructionError("cannot add polynomials of different degrees")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        deg = self.degree if self.terms else other.degree
        return HomogeneousPoly(self.p, deg, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c: int) -> "HomogeneousPoly":
        return HomogeneousPoly(self.p, self.degree, {w: a * c for w, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if other.p != self.p:
            raise ConstructionError("polynomials over different fields")
        out: dict[tuple, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u + v] = (out.get(u + v, 0) + a * b) % self.p
        return HomogeneousPoly(self.p, self.degree + other.degree, out)

    __rmul__ = __mul__

    def substitute(self, P: FpMatrix) -> "HomogeneousPoly":
        """Linear change of variables X_i -> sum_j P[i, j] X_j."""
        images = [{(j,): P[i, j] for j in range(P.ncols) if P[i, j]} for i in range(P.nrows)]
        out: dict[tuple, int] = {}
        p = self.p
        for w, c in self.terms.items():
            acc = {(): c}
            for i in w:
                acc = _mul_dicts(acc, images[i], p)
            for u, a in acc.items():
                out[u] = (out.get(u, 0) + a) % p
        return HomogeneousPoly(p, self.degree, out)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.p != other.p:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.p, frozenset(self.terms.items()))))
        return self._hash

    def __repr__(self):
        return f"HomogeneousPoly(p={self.p}, {format_terms(self.terms, self.p)})"


def _mul_dicts(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = (out.get(u + v, 0) + x * y) % p
    return out


def format_coefficient(c: int, p: int) -> tuple[str, int]:
    """Sign and magnitude used for printing; residues above p/2 print as negatives."""
    if p > 2 and c > p // 2:
        return "-", p - c
    return "+", c


def format_terms(terms: Mapping[tuple, int], p: int, names: Sequence[str] | None = None) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=deglex_key):
        sign, mag = format_coefficient(terms[w], p)
        mono = "*".join(names[i] if names else f"X{i + 1}" for i in w) if w else ""
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_poly(poly: HomogeneousPoly, names: Sequence[str] | None = None) -> str:
    return format_terms(poly.terms, poly.p, names)
