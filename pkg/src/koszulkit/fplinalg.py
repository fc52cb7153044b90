"""Exact dense linear algebra over prime fields F_p.

Matrices are small (at most d^2 x d^2 for the generator counts used here), so
everything is plain Python integers; a sparse rank routine is provided for the
large, very sparse maps of Koszul complexes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConstructionError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ConstructionError(f"modulus must be prime, got {p!r}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


class FpMatrix:
    """Immutable dense matrix with entries in [0, p)."""

    __slots__ = ("p", "nrows", "ncols", "entries")

    def __init__(self, p: int, rows: Iterable[Sequence[int]] = (), ncols: int | None = None):
        check_prime(p)
        entries = tuple(tuple(int(x) % p for x in r) for r in rows)
        if ncols is None:
            if not entries:
                raise ConstructionError("ncols is required for a matrix with no rows")
            ncols = len(entries[0])
        for r in entries:
            if len(r) != ncols:
                raise ConstructionError(f"ragged row: expected {ncols} entries, got {len(r)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "nrows", len(entries))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "FpMatrix":
        return cls(p, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def rows(self) -> list[tuple[int, ...]]:
        return list(self.entries)

    def transpose(self) -> "FpMatrix":
        if not self.nrows:
            return FpMatrix(self.p, [[] for _ in range(self.ncols)], 0)
        return FpMatrix(self.p, zip(*self.entries), self.nrows)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p:
            raise ConstructionError("matrices over different fields")
        if self.ncols != other.nrows:
            raise ConstructionError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.p
        cols = list(zip(*other.entries)) if other.nrows else [()] * other.ncols
        out = [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.entries]
        return FpMatrix(p, out, other.ncols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product ``self . vec``."""
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, vec)) % p for r in self.entries)

    def stack(self, other: "FpMatrix") -> "FpMatrix":
        if self.ncols != other.ncols or self.p != other.p:
            raise ConstructionError("cannot stack matrices of different width or field")
        return FpMatrix(self.p, self.entries + other.entries, self.ncols)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (self.p, self.ncols, self.entries) == (other.p, other.ncols, other.entries)

    def __hash__(self):
        return hash((self.p, self.ncols, self.entries))

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.nrows}x{self.ncols}, {[list(r) for r in self.entries]})"


def _rref_rows(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """In-place RREF on a list of mutable rows; returns (nonzero rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inv_mod(rows[r][c], p)
        pr = rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int], int]:
    """Reduced row-echelon form, pivot columns (increasing) and rank.

    The returned matrix keeps the input shape; zero rows sit at the bottom.
    """
    rows = [list(r) for r in m.entries]
    nz, pivots = _rref_rows(rows, m.ncols, m.p)
    full = nz + [[0] * m.ncols for _ in range(m.nrows - len(nz))]
    return FpMatrix(m.p, full, m.ncols), pivots, len(pivots)


def rank(m: FpMatrix) -> int:
    return rref(m)[2]


def row_basis(m: FpMatrix) -> FpMatrix:
    """Canonical basis of the row space: the nonzero rows of the RREF."""
    rows = [list(r) for r in m.entries]
    nz, _ = _rref_rows(rows, m.ncols, m.p)
    return FpMatrix(m.p, nz, m.ncols)


def nullspace(m: FpMatrix) -> FpMatrix:
    """Basis (as rows) of the right kernel {v : m v = 0}, in canonical RREF form."""
    p, n = m.p, m.ncols
    rows = [list(r) for r in m.entries]
    nz, pivots = _rref_rows(rows, n, p)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in zip(nz, pivots):
            v[c] = (-r[f]) % p
        basis.append(v)
    return row_basis(FpMatrix(p, basis, n))


def annihilator(subspace: FpMatrix, ambient_dim: int) -> FpMatrix:
    """Basis of the annihilator of the row space under the standard dot-product pairing."""
    if subspace.ncols != ambient_dim:
        raise ConstructionError(
            f"subspace rows have length {subspace.ncols}, ambient dimension is {ambient_dim}")
    return nullspace(subspace)


def same_row_space(a: FpMatrix, b: FpMatrix) -> bool:
    return a.p == b.p and a.ncols == b.ncols and row_basis(a) == row_basis(b)


def inverse(m: FpMatrix) -> FpMatrix:
    if m.nrows != m.ncols:
        raise ConstructionError("only square matrices are invertible")
    n, p = m.nrows, m.p
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m.entries)]
    nz, pivots = _rref_rows(aug, 2 * n, p)
    if pivots[:n] != list(range(n)) or len(nz) < n:
        raise ConstructionError("matrix is singular")
    return FpMatrix(p, [r[n:] for r in nz], n)


def is_invertible(m: FpMatrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def sparse_rank(rows: Iterable[dict], p: int, limit: int | None = None) -> int:
    """Rank of a sparse matrix given as ``{col: value}`` row dicts.

    Rows are eliminated in order of increasing weight; each stored pivot row is
    reduced against all earlier pivots, so elimination against pivots in
    registration order terminates. ``limit`` stops early once the rank reaches it
    (e.g. min(rows, cols)).
    """
    pivots: dict = {}          # col -> (order, row dict with row[col] == 1)
    order = 0
    work = sorted((r for r in rows if r), key=len)
    for row in work:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            hits = [(pivots[c][0], c) for c in row if c in pivots]
            if not hits:
                break
            _, c = min(hits)
            f = row[c]
            for cc, vv in pivots[c][1].items():
                nv = (row.get(cc, 0) - f * vv) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        if not row:
            continue
        c = min(row)
        inv = inv_mod(row[c], p)
        pivots[c] = (order, {cc: (vv * inv) % p for cc, vv in row.items()})
        order += 1
        if limit is not None and order >= limit:
            break
    return order
