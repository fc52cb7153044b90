"""Quadratic presentations T(V)/<Omega> over F_p.

Omega is a subspace of V (x) V stored as the RREF basis of coefficient vectors;
the coefficient of X_i X_j sits at slot ``i*d + j``. Two presentations are equal
when p, d and the RREF of Omega agree (labels are cosmetic). Isomorphism of
algebras is never tested; callers exhibit an explicit basis change instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConstructionError, ParseError
from .fplinalg import FpMatrix, annihilator, check_prime, is_invertible, row_basis
from .ncpoly import HomogeneousPoly, RewritingSystem, buchberger_to_degree, format_poly, parse_polynomial

DEFAULT_DEGREE = 8


def default_labels(d: int, prefix: str = "X") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(d))


def dual_label(name: str) -> str:
    """Label of the dual basis vector: the case of the first letter is swapped (X1 <-> x1)."""
    return name[:1].swapcase() + name[1:] if name[:1].isalpha() else name


class QuadraticPresentation:
    """T(V)/<Omega> with dim V = d over F_p."""

    __slots__ = ("p", "d", "omega", "labels")

    def __init__(self, p: int, d: int, omega: FpMatrix | Iterable[Sequence[int]] = (),
                 labels: Sequence[str] | None = None):
        check_prime(p)
        if d < 0:
            raise ConstructionError("generator count must be nonnegative")
        if not isinstance(omega, FpMatrix):
            omega = FpMatrix(p, list(omega), d * d)
        if omega.p != p or omega.ncols != d * d:
            raise ConstructionError(f"Omega must have {d * d} columns over F_{p}")
        labels = default_labels(d) if labels is None else tuple(labels)
        if len(labels) != d:
            raise ConstructionError(f"expected {d} labels, got {len(labels)}")
        if len(set(labels)) != d:
            raise ConstructionError(f"duplicate generator labels {labels}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "omega", row_basis(omega))
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticPresentation is immutable")

    @classmethod
    def from_relations(cls, p: int, d: int, relations: Iterable[HomogeneousPoly],
                       labels: Sequence[str] | None = None) -> "QuadraticPresentation":
        rows = []
        for f in relations:
            if f.terms and f.degree != 2:
                raise ConstructionError(f"relation {f} is not quadratic")
            rows.append(f.to_vector(d) if f.terms else [0] * (d * d))
        return cls(p, d, FpMatrix(p, rows, d * d), labels)

    @property
    def dim_omega(self) -> int:
        return self.omega.nrows

    def relations(self) -> list[HomogeneousPoly]:
        return [HomogeneousPoly.from_vector(self.p, self.d, 2, r) for r in self.omega.entries]

    def relabel(self, labels: Sequence[str]) -> "QuadraticPresentation":
        return QuadraticPresentation(self.p, self.d, self.omega, labels)

    def __eq__(self, other):
        if not isinstance(other, QuadraticPresentation):
            return NotImplemented
        return equal_presentations(self, other)

    def __hash__(self):
        return hash((self.p, self.d, self.omega))

    def __repr__(self):
        rels = ", ".join(format_poly(f, self.labels) for f in self.relations())
        return f"QuadraticPresentation(p={self.p}, generators={' '.join(self.labels)}, relations=[{rels}])"


@dataclass(frozen=True)
class GradedDims:
    dims: tuple

    def __post_init__(self):
        if self.dims and self.dims[0] != 1:
            raise ConstructionError("dims[0] must be 1")

    def __getitem__(self, n):
        return self.dims[n]

    def __len__(self):
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)


def equal_presentations(a: QuadraticPresentation, b: QuadraticPresentation) -> bool:
    return a.p == b.p and a.d == b.d and a.omega == b.omega


def _same_field(a, b):
    if a.p != b.p:
        raise ConstructionError(f"presentations over different fields F_{a.p} and F_{b.p}")


def _joined_labels(a, b) -> tuple[str, ...] | None:
    labels = a.labels + b.labels
    return labels if len(set(labels)) == len(labels) else None


def _embed(a: QuadraticPresentation, d: int, shift: int) -> list[list[int]]:
    rows = []
    for r in a.omega.entries:
        v = [0] * (d * d)
        for slot, c in enumerate(r):
            if c:
                i, j = divmod(slot, a.d)
                v[(i + shift) * d + (j + shift)] = c
        rows.append(v)
    return rows


def _mixed(a_dim: int, b_dim: int, d: int, sign: int | None) -> list[list[int]]:
    """Mixed relations between generators [0, a_dim) and [a_dim, d).

    ``sign is None`` kills both products; otherwise ab + sign*ba.
    """
    rows = []
    for i in range(a_dim):
        for j in range(a_dim, a_dim + b_dim):
            if sign is None:
                for slot in (i * d + j, j * d + i):
                    v = [0] * (d * d)
                    v[slot] = 1
                    rows.append(v)
            else:
                v = [0] * (d * d)
                v[i * d + j] = 1
                v[j * d + i] = sign
                rows.append(v)
    return rows


def _combine(a, b, sign, kill_mixed: bool) -> QuadraticPresentation:
    _same_field(a, b)
    d = a.d + b.d
    rows = _embed(a, d, 0) + _embed(b, d, a.d)
    if kill_mixed:
        rows += _mixed(a.d, b.d, d, None)
    elif sign is not None:
        rows += _mixed(a.d, b.d, d, sign)
    return QuadraticPresentation(a.p, d, FpMatrix(a.p, rows, d * d), _joined_labels(a, b))


def free_product(a: QuadraticPresentation, b: QuadraticPresentation) -> QuadraticPresentation:
    """A ⊔ B: no relations between the two generator sets."""
    return _combine(a, b, None, False)


def direct_product(a: QuadraticPresentation, b: QuadraticPresentation) -> QuadraticPresentation:
    """A ⊓ B: all mixed products vanish."""
    return _combine(a, b, None, True)


def tensor1(a: QuadraticPresentation, b: QuadraticPresentation) -> QuadraticPresentation:
    """Commutative tensor product: adds ab - ba for a in A_1, b in B_1."""
    return _combine(a, b, -1, False)


def tensor_minus1(a: QuadraticPresentation, b: QuadraticPresentation) -> QuadraticPresentation:
    """Skew-commutative tensor product: adds ab + ba for a in A_1, b in B_1."""
    return _combine(a, b, 1, False)


def quadratic_dual(a: QuadraticPresentation) -> QuadraticPresentation:
    """T(V*)/<Omega^perp> for the pairing (a_i a_j)(X_k X_l) = delta_ik delta_jl."""
    perp = annihilator(a.omega, a.d * a.d)
    if perp.nrows + a.dim_omega != a.d * a.d:
        raise AssertionError("dim Omega + dim Omega^perp != d^2")
    return QuadraticPresentation(a.p, a.d, perp, tuple(dual_label(x) for x in a.labels))


def apply_basis_change(a: QuadraticPresentation, P: FpMatrix) -> QuadraticPresentation:
    """Substitute X_i -> sum_j P[i, j] X_j in every relation.

    A relation with coefficient matrix C becomes P^T C P, so
    ``apply_basis_change(apply_basis_change(a, P), Q) == apply_basis_change(a, P @ Q)``.
    """
    d, p = a.d, a.p
    if P.shape != (d, d) or P.p != p:
        raise ConstructionError(f"basis change must be a {d}x{d} matrix over F_{p}")
    if not is_invertible(P):
        raise ConstructionError("basis change matrix is singular")
    rows = []
    for r in a.omega.entries:
        C = FpMatrix(p, [r[i * d:(i + 1) * d] for i in range(d)], d)
        Cp = P.transpose() @ C @ P
        rows.append([x for row in Cp.entries for x in row])
    return QuadraticPresentation(p, d, FpMatrix(p, rows, d * d), a.labels)


def permutation_matrix(p: int, perm: Sequence[int]) -> FpMatrix:
    """Matrix sending X_i to X_perm[i]."""
    d = len(perm)
    return FpMatrix(p, [[int(perm[i] == j) for j in range(d)] for i in range(d)], d)


# constructors -------------------------------------------------------------

def free(p: int, d: int, labels=None) -> QuadraticPresentation:
    return QuadraticPresentation(p, d, FpMatrix(p, [], d * d), labels)


def trivial(p: int, d: int, labels=None) -> QuadraticPresentation:
    return QuadraticPresentation(p, d, FpMatrix.identity(p, d * d), labels)


def symmetric(p: int, d: int, labels=None) -> QuadraticPresentation:
    rels = [HomogeneousPoly.commutator(p, i, j) for i in range(d) for j in range(i + 1, d)]
    return QuadraticPresentation.from_relations(p, d, rels, labels)


def exterior(p: int, d: int, labels=None) -> QuadraticPresentation:
    rels = [HomogeneousPoly.monomial(p, (i, i)) for i in range(d)]
    rels += [HomogeneousPoly(p, 2, {(i, j): 1, (j, i): 1})
             for i in range(d) for j in range(i + 1, d)]
    return QuadraticPresentation.from_relations(p, d, rels, labels)


DEMUSHKIN_CASES = ("a", "b", "c")


def demushkin_relation(p: int, d: int, case: str) -> HomogeneousPoly:
    """Normal-form Demushkin relation on X_1..X_d.

    (a) [X1,X2]+...+[X_{d-1},X_d], d even (and X1^2 when p=2, d=1);
    (b) X1^2+[X1,X2]+[X3,X4]+..., p=2, d even;
    (c) X1^2+[X2,X3]+[X4,X5]+..., p=2, d odd.
    """
    check_prime(p)
    if case not in DEMUSHKIN_CASES:
        raise ConstructionError(f"unknown Demushkin case {case!r}")
    if d < 1:
        raise ConstructionError("a Demushkin relation needs d >= 1")
    if p == 2 and d == 1 and case in ("a", "c"):
        return HomogeneousPoly.monomial(2, (0, 0))
    if case == "a":
        if d % 2:
            raise ConstructionError(f"case (a) requires d even, got d={d}")
        start = 0
        f = HomogeneousPoly.zero(p, 2)
    elif case == "b":
        if p != 2 or d % 2:
            raise ConstructionError(f"case (b) requires p=2 and d even, got p={p}, d={d}")
        start = 0
        f = HomogeneousPoly.monomial(p, (0, 0))
    else:
        if p != 2 or d % 2 == 0:
            raise ConstructionError(f"case (c) requires p=2 and d odd, got p={p}, d={d}")
        start = 1
        f = HomogeneousPoly.monomial(p, (0, 0))
    for i in range(start, d - 1, 2):
        f = f + HomogeneousPoly.commutator(p, i, i + 1)
    return f


def demushkin_normal(p: int, d: int, case: str = "a", labels=None) -> QuadraticPresentation:
    return QuadraticPresentation.from_relations(p, d, [demushkin_relation(p, d, case)], labels)


# graded dimensions --------------------------------------------------------

@lru_cache(maxsize=256)
def _rewriting_cached(p: int, d: int, omega: FpMatrix, N: int, order: tuple) -> RewritingSystem:
    a = QuadraticPresentation(p, d, omega)
    return buchberger_to_degree(a.relations(), N, order, p=p, d=d)


def rewriting_system(a: QuadraticPresentation, N: int = DEFAULT_DEGREE,
                     order: Sequence[int] | None = None) -> RewritingSystem:
    """Completed rewriting system of the relations (shared cache; treat as read-only)."""
    order = tuple(range(a.d)) if order is None else tuple(order)
    return _rewriting_cached(a.p, a.d, a.omega, max(N, 2), order)


def graded_dims(a: QuadraticPresentation, N: int = DEFAULT_DEGREE,
                order: Sequence[int] | None = None) -> GradedDims:
    if N < 2:
        raise ConstructionError("graded_dims needs N >= 2")
    return GradedDims(tuple(rewriting_system(a, N, order).dims(N)))


def series_reciprocal(coeffs: Sequence[int], N: int) -> list[int]:
    """Integer coefficients of 1/f(t) up to t^N, for f with constant term 1."""
    if not coeffs or coeffs[0] != 1:
        raise ValueError("series must have constant term 1")
    out = [1]
    for n in range(1, N + 1):
        out.append(-sum(coeffs[k] * out[n - k] for k in range(1, min(n, len(coeffs) - 1) + 1)))
    return out


def degree_two_table(a: QuadraticPresentation) -> tuple[list[int], dict]:
    """Products X_i X_j in A_2 = V(x)V / Omega, by linear algebra only.

    Returns (basis slots of A_2, table) with ``table[i, j]`` the coordinate tuple
    of X_i X_j on that basis.
    """
    d, p = a.d, a.p
    rows = a.omega.entries
    pivots = [next(c for c, x in enumerate(r) if x) for r in rows]
    pivset = set(pivots)
    basis = [s for s in range(d * d) if s not in pivset]
    where = {s: k for k, s in enumerate(basis)}
    table = {}
    for i in range(d):
        for j in range(d):
            s = i * d + j
            v = [0] * len(basis)
            if s in where:
                v[where[s]] = 1
            else:
                r = rows[pivots.index(s)]
                for t, c in enumerate(r):
                    if c and t in where:
                        v[where[t]] = (-c) % p
            table[i, j] = tuple(v)
    return basis, table


# file format --------------------------------------------------------------

def format_algebra(a: QuadraticPresentation) -> str:
    lines = [f"p = {a.p}", f"generators = {' '.join(a.labels)}"]
    lines += [f"relation = {format_poly(f, a.labels)}" for f in a.relations()]
    return "\n".join(lines) + "\n"


def split_statements(text: str) -> list[tuple[str, str, int]]:
    """``key = value`` statements separated by newlines or ';'; '#' starts a comment.

    Yields (key, value, offset of value in ``text``).
    """
    out = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        pos = offset
        for stmt in body.split(";"):
            if stmt.strip():
                if "=" not in stmt:
                    raise ParseError(f"expected 'key = value', got {stmt.strip()!r}", pos, text)
                key, val = stmt.split("=", 1)
                vpos = pos + len(key) + 1 + len(val) - len(val.lstrip())
                out.append((key.strip().lower(), val.strip(), vpos))
            pos += len(stmt) + 1
        offset += len(line)
    return out


def parse_names(value: str, pos: int, text: str) -> list[str]:
    names = value.replace(",", " ").split()
    for n in names:
        if not (n[0].isalpha() or n[0] == "_") or not n.replace("_", "a").isalnum():
            raise ParseError(f"invalid generator name {n!r}", pos, text)
    if len(set(names)) != len(names):
        raise ParseError("duplicate generator names", pos, text)
    return names


def shifted_error(e: ParseError, offset: int, text: str) -> ParseError:
    """Re-anchor an error raised on a substring at ``offset`` of ``text``."""
    return ParseError(e.message, offset + (e.pos or 0), text)


def parse_algebra(text: str) -> QuadraticPresentation:
    p = None
    names = None
    rel_texts = []
    for key, val, pos in split_statements(text):
        if key == "p":
            try:
                p = int(val)
            except ValueError:
                raise ParseError(f"p must be an integer, got {val!r}", pos, text) from None
            try:
                check_prime(p)
            except ConstructionError as e:
                raise ParseError(str(e), pos, text) from None
        elif key == "generators":
            names = parse_names(val, pos, text)
        elif key == "relation":
            rel_texts.append((val, pos))
        else:
            raise ParseError(f"unknown key {key!r}", pos, text)
    if p is None or names is None:
        raise ParseError("algebra file needs 'p = ...' and 'generators = ...'")
    rels = []
    for val, pos in rel_texts:
        try:
            rels.append(parse_polynomial(val, names, p, degree=2))
        except ParseError as e:
            raise shifted_error(e, pos, text) from None
    return QuadraticPresentation.from_relations(p, len(names), rels, names)
