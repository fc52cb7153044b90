"""Degree-truncated noncommutative power series and the Magnus expansion.

The Magnus morphism sends x_i to 1 + X_i, so x_i^-1 goes to the alternating
geometric series 1 - X_i + X_i^2 - ... . Everything above the truncation degree
is discarded.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import ConstructionError
from ..fplinalg import check_prime
from ..words import Commutator, Letter, Power, Product, RelatorWord, inverse, max_index
from .poly import HomogeneousPoly


class TruncatedSeries:
    """Element of F_p<<X_1..X_d>> modulo terms of degree > D.

    ``components[n]`` is a ``{word: coef}`` dict of the degree-n part.
    """

    __slots__ = ("p", "d", "D", "components")

    def __init__(self, p: int, d: int, D: int, components: Sequence[dict] | None = None):
        check_prime(p)
        if D < 0:
            raise ConstructionError("truncation degree must be nonnegative")
        comps = [dict() for _ in range(D + 1)]
        for n, comp in enumerate(components or ()):
            if n > D:
                break
            for w, c in comp.items():
                if len(w) != n:
                    raise ConstructionError(f"word {w} filed under degree {n}")
                c %= p
                if c:
                    comps[n][tuple(w)] = c
        self.p, self.d, self.D, self.components = p, d, D, comps

    @classmethod
    def one(cls, p: int, d: int, D: int) -> "TruncatedSeries":
        return cls(p, d, D, [{(): 1}])

    @classmethod
    def generator(cls, p: int, d: int, D: int, i: int, sign: int = 1) -> "TruncatedSeries":
        """Magnus image of x_i (sign=+1) or x_i^-1 (sign=-1)."""
        if not 0 <= i < d:
            raise ConstructionError(f"generator index {i} out of range for d={d}")
        if sign > 0:
            return cls(p, d, D, [{(): 1}, {(i,): 1}])
        return cls(p, d, D, [{(i,) * n: (-1) ** n} for n in range(D + 1)])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.p, self.d, self.D) != (other.p, other.d, other.D):
            raise ConstructionError("series with different parameters")
        p, D = self.p, self.D
        out = [dict() for _ in range(D + 1)]
        a_comps, b_comps = self.components, other.components
        for a in range(D + 1):
            ca = a_comps[a]
            if not ca:
                continue
            for b in range(D + 1 - a):
                cb = b_comps[b]
                if not cb:
                    continue
                target = out[a + b]
                for u, x in ca.items():
                    for v, y in cb.items():
                        w = u + v
                        target[w] = (target.get(w, 0) + x * y) % p
        for comp in out:
            for w in [w for w, c in comp.items() if not c]:
                del comp[w]
        res = TruncatedSeries.__new__(TruncatedSeries)
        res.p, res.d, res.D, res.components = p, self.d, D, out
        return res

    def __pow__(self, k: int) -> "TruncatedSeries":
        """Nonnegative integer powers by binary powering."""
        if k < 0:
            raise ValueError("use the inverse word for negative powers")
        result = TruncatedSeries.one(self.p, self.d, self.D)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def constant(self) -> int:
        return self.components[0].get((), 0)

    def component(self, n: int) -> HomogeneousPoly:
        return HomogeneousPoly(self.p, n, self.components[n])

    def is_one(self) -> bool:
        return self.constant() == 1 and all(not c for c in self.components[1:])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.p, self.d, self.D, self.components) == (other.p, other.d, other.D, other.components)

    def __repr__(self):
        nnz = sum(len(c) for c in self.components)
        return f"TruncatedSeries(p={self.p}, d={self.d}, D={self.D}, terms={nnz})"


def magnus_expand(word: RelatorWord, d: int, D: int, p: int) -> TruncatedSeries:
    """Magnus image of a group word, truncated above degree ``D``."""
    if D < 1:
        raise ConstructionError("truncation degree must be at least 1")
    check_prime(p)
    if max_index(word) >= d:
        raise ConstructionError(f"word uses generator index {max_index(word)} but d={d}")
    return _expand(word, d, D, p)


def _expand(w: RelatorWord, d: int, D: int, p: int) -> TruncatedSeries:
    if isinstance(w, Letter):
        sign = 1 if w.exponent > 0 else -1
        return TruncatedSeries.generator(p, d, D, w.index, sign) ** abs(w.exponent)
    if isinstance(w, Product):
        acc = TruncatedSeries.one(p, d, D)
        for f in w.factors:
            acc = acc * _expand(f, d, D, p)
        return acc
    if isinstance(w, Commutator):
        u, v = w.left, w.right
        return (_expand(inverse(u), d, D, p) * _expand(inverse(v), d, D, p)
                * _expand(u, d, D, p) * _expand(v, d, D, p))
    if isinstance(w, Power):
        base = w.base if w.exponent > 0 else inverse(w.base)
        return _expand(base, d, D, p) ** abs(w.exponent)
    raise TypeError(f"not a relator word: {w!r}")


def series_initial_form(s: TruncatedSeries) -> tuple[int, HomogeneousPoly] | None:
    """Lowest nonzero homogeneous component of ``s - 1``.

    Returns ``(n, component)``, or ``None`` when ``s - 1`` vanishes up to the
    truncation degree (the element is trivial to that depth).
    """
    if s.constant() != 1:
        raise ConstructionError(f"series has constant term {s.constant()}, expected 1")
    for n in range(1, s.D + 1):
        if s.components[n]:
            return n, s.component(n)
    return None
