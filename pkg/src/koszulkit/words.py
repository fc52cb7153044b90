"""Group words in a free pro-p group: letters with exponents, products, commutators.

Commutators follow the convention [u, v] = u^-1 v^-1 u v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ConstructionError


@dataclass(frozen=True)
class Letter:
    index: int
    exponent: int = 1

    def __post_init__(self):
        if self.exponent == 0:
            raise ConstructionError("zero exponent")
        if self.index < 0:
            raise ConstructionError(f"negative generator index {self.index}")


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Commutator:
    left: "RelatorWord"
    right: "RelatorWord"


@dataclass(frozen=True)
class Power:
    """A bracketed subword raised to a nonzero integer power."""
    base: "RelatorWord"
    exponent: int

    def __post_init__(self):
        if self.exponent == 0:
            raise ConstructionError("zero exponent")


RelatorWord = Union[Letter, Product, Commutator, Power]


def product(*factors: RelatorWord) -> RelatorWord:
    flat = []
    for f in factors:
        flat.extend(f.factors if isinstance(f, Product) else (f,))
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


def commutator(u: RelatorWord, v: RelatorWord) -> Commutator:
    return Commutator(u, v)


def inverse(w: RelatorWord) -> RelatorWord:
    if isinstance(w, Letter):
        return Letter(w.index, -w.exponent)
    if isinstance(w, Product):
        return Product(tuple(inverse(f) for f in reversed(w.factors)))
    if isinstance(w, Commutator):
        # [u,v]^-1 = v^-1 u^-1 v u = [v,u]
        return Commutator(w.right, w.left)
    return Power(w.base, -w.exponent)


def power(w: RelatorWord, k: int) -> RelatorWord:
    if isinstance(w, Letter):
        return Letter(w.index, w.exponent * k)
    return Power(w, k)


def max_index(w: RelatorWord) -> int:
    if isinstance(w, Letter):
        return w.index
    if isinstance(w, Product):
        return max((max_index(f) for f in w.factors), default=-1)
    if isinstance(w, Commutator):
        return max(max_index(w.left), max_index(w.right))
    return max_index(w.base)


def exponent_sums(w: RelatorWord, d: int) -> list[int]:
    """Image of the word in the abelianization Z^d; commutators contribute zero."""
    out = [0] * d
    _accumulate_sums(w, 1, out)
    return out


def _accumulate_sums(w, mult, out):
    if isinstance(w, Letter):
        out[w.index] += mult * w.exponent
    elif isinstance(w, Product):
        for f in w.factors:
            _accumulate_sums(f, mult, out)
    elif isinstance(w, Power):
        _accumulate_sums(w.base, mult * w.exponent, out)


def format_word(w: RelatorWord, names: Sequence[str]) -> str:
    if isinstance(w, Letter):
        name = names[w.index]
        return name if w.exponent == 1 else f"{name}^{w.exponent}"
    if isinstance(w, Product):
        if not w.factors:
            return "1"
        return "*".join(format_word(f, names) for f in w.factors)
    if isinstance(w, Commutator):
        return f"[{format_word(w.left, names)},{format_word(w.right, names)}]"
    base = w.base
    inner = format_word(base, names)
    if not isinstance(base, Commutator):
        inner = f"({inner})"
    return f"{inner}^{w.exponent}"


def letters(w: RelatorWord) -> list[tuple[int, int]]:
    """Fully expanded letter sequence as (index, +-1) pairs; exponential in nesting depth."""
    if isinstance(w, Letter):
        s = 1 if w.exponent > 0 else -1
        return [(w.index, s)] * abs(w.exponent)
    if isinstance(w, Product):
        return [x for f in w.factors for x in letters(f)]
    if isinstance(w, Commutator):
        return (letters(inverse(w.left)) + letters(inverse(w.right))
                + letters(w.left) + letters(w.right))
    base = letters(w.base if w.exponent > 0 else inverse(w.base))
    return base * abs(w.exponent)
