"""Degree-truncated two-sided Groebner bases for homogeneous ideals of F_p<X>.

Monomial order: deglex after relabelling the generators by an ``order``
permutation (``order[0]`` is the smallest generator). Rules are stored in the
relabelled ("ranked") coordinates; the public methods translate back.

Completion runs degree by degree. In degree n every overlap ambiguity of total
degree n and every input generator of degree n is reduced to normal form, and
the survivors are row-reduced together with columns in decreasing monomial
order. Their pivots become new leading monomials, so the result is the reduced
Groebner basis truncated at degree N.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import ConstructionError
from ..fplinalg import _rref_rows, check_prime
from .poly import HomogeneousPoly, deglex_key


@dataclass(frozen=True)
class Overlap:
    """A resolved or unresolved overlap ambiguity ``left_lm`` / ``right_lm``."""
    word: tuple            # original labels
    left: tuple
    right: tuple
    resolved: bool


@dataclass
class RewritingSystem:
    p: int
    d: int
    order: tuple
    closure_degree: int
    rules: dict = field(default_factory=dict)      # ranked lm -> {ranked word: coef}
    input_degrees: tuple = ()
    added_degrees: tuple = ()                      # degrees of rules created by completion
    overlaps: list = field(default_factory=list)   # Overlap records, in processing order
    _nf_cache: dict = field(default_factory=dict, repr=False)
    _normal_cache: dict = field(default_factory=dict, repr=False)
    _count_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.rank = [0] * self.d
        for r, g in enumerate(self.order):
            self.rank[g] = r
        self.identity_order = tuple(self.order) == tuple(range(self.d))
        self._lens: list[int] = []
        self._lm2: set = set()

    @property
    def has_higher_rules(self) -> bool:
        """True if completion produced a rule of degree > 2."""
        return any(n > 2 for n in self.added_degrees)

    # coordinate changes -------------------------------------------------
    def to_ranked(self, word: Sequence[int]) -> tuple:
        if self.identity_order:
            return tuple(word)
        rank = self.rank
        return tuple(rank[i] for i in word)

    def from_ranked(self, word: Sequence[int]) -> tuple:
        if self.identity_order:
            return tuple(word)
        order = self.order
        return tuple(order[i] for i in word)

    # rule bookkeeping --------------------------------------------------
    def _add_rule(self, lm: tuple, tail: dict):
        self.rules[lm] = tail
        self._lens = sorted({len(w) for w in self.rules})
        if len(lm) == 2:
            self._lm2.add(lm)
        self._nf_cache.clear()
        self._normal_cache.clear()
        self._count_cache.clear()

    def leading_monomials(self) -> list[tuple]:
        """Leading monomials in original labels, in increasing monomial order."""
        return [self.from_ranked(w) for w in sorted(self.rules, key=deglex_key)]

    def rule_list(self) -> list[tuple[tuple, HomogeneousPoly]]:
        """Rules as (leading monomial, tail) in original labels."""
        out = []
        for lm in sorted(self.rules, key=deglex_key):
            tail = {self.from_ranked(w): c for w, c in self.rules[lm].items()}
            out.append((self.from_ranked(lm), HomogeneousPoly(self.p, len(lm), tail)))
        return out

    def find_redex(self, word: tuple):
        """Leftmost (position, length) of a leading monomial inside ranked ``word``."""
        lm2 = self._lm2
        only2 = self._lens == [2]
        n = len(word)
        for i in range(n - 1):
            if (word[i], word[i + 1]) in lm2:
                return i, 2
            if only2:
                continue
            for L in self._lens:
                if L > 2 and i + L <= n and word[i:i + L] in self.rules:
                    return i, L
        return None

    def is_normal_ranked(self, word: tuple) -> bool:
        return self.find_redex(word) is None

    # normal forms ------------------------------------------------------
    def nf_ranked(self, poly: dict) -> dict:
        """Normal form of a ranked ``{word: coef}`` dict (all words one degree)."""
        p = self.p
        cache = self._nf_cache
        rules = self.rules
        result: dict = {}
        pending: dict = {}
        heap: list = []
        for w, c in poly.items():
            c %= p
            if not c:
                continue
            if w in pending:
                pending[w] = (pending[w] + c) % p
            else:
                pending[w] = c
                heapq.heappush(heap, tuple(-x for x in w))
        while heap:
            key = heapq.heappop(heap)
            w = tuple(-x for x in key)
            c = pending.pop(w, 0)
            if not c:
                continue
            hit = cache.get(w)
            if hit is not None:
                for u, a in hit.items():
                    result[u] = (result.get(u, 0) + c * a) % p
                continue
            red = self.find_redex(w)
            if red is None:
                result[w] = (result.get(w, 0) + c) % p
                continue
            i, L = red
            pre, post = w[:i], w[i + L:]
            for t, a in rules[w[i:i + L]].items():
                u = pre + t + post
                if u in pending:
                    pending[u] = (pending[u] + c * a) % p
                else:
                    pending[u] = c * a % p
                    heapq.heappush(heap, tuple(-x for x in u))
        return {u: c for u, c in result.items() if c}

    def nf_word_ranked(self, word: tuple) -> dict:
        hit = self._nf_cache.get(word)
        if hit is None:
            hit = self.nf_ranked({word: 1})
            self._nf_cache[word] = hit
        return hit

    def _check_degree(self, n: int):
        if n > self.closure_degree:
            raise ConstructionError(
                f"degree {n} is beyond the closure degree {self.closure_degree}; "
                "complete to a higher degree first")

    def normal_form(self, poly: HomogeneousPoly) -> HomogeneousPoly:
        self._check_degree(poly.degree)
        ranked = {self.to_ranked(w): c for w, c in poly.terms.items()}
        red = self.nf_ranked(ranked)
        return HomogeneousPoly(self.p, poly.degree, {self.from_ranked(w): c for w, c in red.items()})

    def normal_form_word(self, word: Sequence[int]) -> dict:
        """Normal form of a monomial as an original-label ``{word: coef}`` dict."""
        self._check_degree(len(word))
        red = self.nf_word_ranked(self.to_ranked(word))
        if self.identity_order:
            return red
        return {self.from_ranked(w): c for w, c in red.items()}

    # normal monomials --------------------------------------------------
    def normal_words_ranked(self, n: int) -> list[tuple]:
        """Ranked normal words of length n, increasing."""
        hit = self._normal_cache.get(n)
        if hit is not None:
            return hit
        if n == 0:
            words = [()]
        else:
            prev = self.normal_words_ranked(n - 1)
            words = []
            lens = [L for L in self._lens if L <= n]
            lm2 = self._lm2
            for w in prev:
                for x in range(self.d):
                    if w and (w[-1], x) in lm2:
                        continue
                    u = w + (x,)
                    bad = False
                    for L in lens:
                        if L > 2 and u[-L:] in self.rules:
                            bad = True
                            break
                    if not bad:
                        words.append(u)
        self._normal_cache[n] = words
        return words

    def normal_monomials(self, n: int) -> list[tuple]:
        self._check_degree(n)
        words = self.normal_words_ranked(n)
        if self.identity_order:
            return list(words)
        return [self.from_ranked(w) for w in words]

    def count_normal(self, n: int) -> int:
        """Number of normal monomials of degree n, by automaton counting."""
        self._check_degree(n)
        if n not in self._count_cache:
            self._count_cache.update(enumerate(count_avoiding(self.d, self.rules, n)))
        return self._count_cache[n]

    def dims(self, N: int | None = None) -> list[int]:
        N = self.closure_degree if N is None else N
        self._check_degree(N)
        return count_avoiding(self.d, self.rules, N)


def count_avoiding(d: int, patterns: Iterable[tuple], N: int) -> list[int]:
    """counts[n] = number of words of length n over d letters with no factor in ``patterns``.

    Aho-Corasick automaton over the patterns, then a DP over its live states.
    """
    goto: list[dict] = [{}]
    dead = [False]
    for pat in patterns:
        s = 0
        for x in pat:
            nxt = goto[s].get(x)
            if nxt is None:
                goto.append({})
                dead.append(False)
                nxt = len(goto) - 1
                goto[s][x] = nxt
            s = nxt
        dead[s] = True
    fail = [0] * len(goto)
    delta = [[0] * d for _ in goto]
    queue = []
    for x in range(d):
        t = goto[0].get(x)
        if t is None:
            delta[0][x] = 0
        else:
            delta[0][x] = t
            fail[t] = 0
            queue.append(t)
    qi = 0
    while qi < len(queue):
        s = queue[qi]
        qi += 1
        dead[s] = dead[s] or dead[fail[s]]
        for x in range(d):
            t = goto[s].get(x)
            if t is None:
                delta[s][x] = delta[fail[s]][x]
            else:
                fail[t] = delta[fail[s]][x]
                delta[s][x] = t
                queue.append(t)
    counts = [1]
    vec = {0: 1}
    for _ in range(N):
        nxt: dict = defaultdict(int)
        for s, c in vec.items():
            row = delta[s]
            for x in range(d):
                t = row[x]
                if not dead[t]:
                    nxt[t] += c
        vec = nxt
        counts.append(sum(vec.values()))
    return counts


def _interreduce(polys: list[dict], p: int) -> list[tuple[tuple, dict]]:
    """Row-reduce same-degree ranked polys with columns in decreasing order.

    Returns (leading monomial, tail) rules with monic leading terms.
    """
    words = sorted({w for f in polys for w in f}, reverse=True)
    if not words:
        return []
    col = {w: i for i, w in enumerate(words)}
    rows = []
    for f in polys:
        r = [0] * len(words)
        for w, c in f.items():
            r[col[w]] = c % p
        rows.append(r)
    nz, pivots = _rref_rows(rows, len(words), p)
    out = []
    for r, c in zip(nz, pivots):
        tail = {words[j]: (-v) % p for j, v in enumerate(r) if v and j != c}
        out.append((words[c], tail))
    return out


def _mul_word_left(word: tuple, f: dict) -> dict:
    return {word + w: c for w, c in f.items()}


def _mul_word_right(f: dict, word: tuple) -> dict:
    return {w + word: c for w, c in f.items()}


def buchberger_to_degree(gens: Sequence[HomogeneousPoly], N: int, order: Sequence[int] | None = None,
                         *, p: int | None = None, d: int | None = None) -> RewritingSystem:
    """Complete ``gens`` to a rewriting system whose overlaps resolve up to degree ``N``.

    ``order`` lists the generators from smallest to largest (default: identity).
    ``p`` and ``d`` are inferred from the generators when omitted.
    """
    gens = list(gens)
    if p is None:
        if not gens:
            raise ConstructionError("p is required when there are no generators")
        p = gens[0].p
    check_prime(p)
    for g in gens:
        if g.p != p:
            raise ConstructionError("generators over different fields")
        if g.terms and g.degree < 2:
            raise ConstructionError("relations must have degree >= 2")
    if d is None:
        d = max((g.max_index() for g in gens), default=-1) + 1
    if any(g.max_index() >= d for g in gens):
        raise ConstructionError("a relation uses a generator index >= d")
    order = tuple(range(d)) if order is None else tuple(order)
    if sorted(order) != list(range(d)):
        raise ConstructionError(f"order {order} is not a permutation of range({d})")
    live = [g for g in gens if g.terms]
    if live and N < max(g.degree for g in live):
        raise ConstructionError("closure degree is below the degree of an input relation")

    rs = RewritingSystem(p=p, d=d, order=order, closure_degree=N,
                         input_degrees=tuple(sorted({g.degree for g in live})))
    by_degree: dict[int, list[dict]] = defaultdict(list)
    for g in live:
        by_degree[g.degree].append({rs.to_ranked(w): c for w, c in g.terms.items()})

    added = []
    for n in range(2, N + 1):
        inputs = [f for f in (rs.nf_ranked(g) for g in by_degree.get(n, ())) if f]
        pending_overlaps = []
        spolys = []
        for word, a, b, s in _overlaps_of_degree(rs, n):
            red = rs.nf_ranked(s)
            pending_overlaps.append((word, a, b, not red))
            if red:
                spolys.append(red)
        new_rules = _interreduce(inputs + spolys, p)
        if spolys and len(new_rules) > len(_interreduce(inputs, p)):
            added.append(n)
        for lm, tail in new_rules:
            rs._add_rule(lm, tail)
        for word, a, b, ok in pending_overlaps:
            rs.overlaps.append(Overlap(rs.from_ranked(word), rs.from_ranked(a), rs.from_ranked(b), ok))
    rs.added_degrees = tuple(added)
    return rs


def _overlaps_of_degree(rs: RewritingSystem, n: int):
    """Yield (overlap word, lm_a, lm_b, S-poly) for every ambiguity of total degree n."""
    rules = rs.rules
    prefix: dict = defaultdict(list)
    for b in rules:
        for k in range(1, len(b)):
            prefix[(len(b), b[:k])].append(b)
    found = []
    for a in rules:
        la = len(a)
        for k in range(1, la):
            lb = n - la + k
            if lb <= k:
                continue
            for b in prefix.get((lb, a[-k:]), ()):
                word = a + b[k:]
                s = dict(_mul_word_right(rules[a], b[k:]))
                for w, c in _mul_word_left(a[:-k], rules[b]).items():
                    s[w] = (s.get(w, 0) - c) % rs.p
                found.append((word, a, b, s))
    found.sort(key=lambda t: (t[0], t[1], t[2]))
    return found


def normal_monomials(rs: RewritingSystem, n: int) -> list[tuple]:
    return rs.normal_monomials(n)


def reduce(rs: RewritingSystem, poly: HomogeneousPoly) -> HomogeneousPoly:
    return rs.normal_form(poly)
