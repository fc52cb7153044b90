"""Reference computations that share no code with the library.

Everything here is deliberately naive: Gaussian elimination written from
scratch, full enumeration of vectors, dense quotient dimensions over all d**n
words, and letter-by-letter series products.
"""

from __future__ import annotations

import itertools


def rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def kernel_by_enumeration(rows, ncols, p):
    """All vectors v in F_p^ncols with rows . v = 0."""
    out = []
    for v in itertools.product(range(p), repeat=ncols):
        if all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows):
            out.append(v)
    return out


def span_by_enumeration(rows, ncols, p):
    vecs = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        v = [0] * ncols
        for c, r in zip(coeffs, rows):
            for i in range(ncols):
                v[i] = (v[i] + c * r[i]) % p
        vecs.add(tuple(v))
    return vecs


def words(d, n):
    return list(itertools.product(range(d), repeat=n))


def quotient_dims(p, d, relations, N):
    """dim of T(V)_n / (two-sided ideal)_n for n <= N by dense ranks.

    ``relations`` are {word: coef} dicts of degree 2.
    """
    dims = [1, d]
    for n in range(2, N + 1):
        index = {w: i for i, w in enumerate(words(d, n))}
        rows = []
        for a in range(n - 1):
            for left in words(d, a):
                for right in words(d, n - 2 - a):
                    for f in relations:
                        row = [0] * len(index)
                        for w, c in f.items():
                            row[index[left + tuple(w) + right]] += c
                        rows.append(row)
        dims.append(d ** n - rank_mod_p(rows, p))
    return dims[:N + 1]


def reciprocal_series(coeffs, N):
    """1/f(t) for integer f with f(0) = 1, by the convolution recursion."""
    inv = [1] + [0] * N
    for n in range(1, N + 1):
        inv[n] = -sum(coeffs[k] * inv[n - k] for k in range(1, min(n, len(coeffs) - 1) + 1))
    return inv


def demushkin_recursion(d, N):
    """a_n = d a_{n-1} - a_{n-2}, a_0 = 1, a_1 = d."""
    a = [1, d]
    while len(a) <= N:
        a.append(d * a[-1] - a[-2])
    return a[:N + 1]


def magnus_naive(letter_seq, d, D, p):
    """Product of 1 + X_i or its inverse series over a flat (index, +-1) letter list."""
    acc = {(): 1}
    for i, s in letter_seq:
        factor = {(): 1, (i,): 1} if s > 0 else {(i,) * k: (-1) ** k for k in range(D + 1)}
        new = {}
        for u, a in acc.items():
            for v, b in factor.items():
                if len(u) + len(v) <= D:
                    new[u + v] = (new.get(u + v, 0) + a * b) % p
        acc = {w: c for w, c in new.items() if c}
    return acc
