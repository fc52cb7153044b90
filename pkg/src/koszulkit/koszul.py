"""Koszulity evidence for quadratic presentations.

Three tests, in decreasing strength:

* PBW certificate: under some generator order the relations already form a
  Groebner basis (every degree-3 overlap resolves), which implies Koszulity.
* Koszul complex exactness: the complex A (x) (A^!)^* is exact in every internal
  degree 1..N. Bounded evidence only.
* Hilbert duality: h_A(t) h_{A^!}(-t) = 1 up to t^N. Necessary only, but a
  failure disproves Koszulity.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .fplinalg import sparse_rank
from .ncpoly import buchberger_to_degree, format_poly
from .quadratic import QuadraticPresentation, graded_dims, quadratic_dual, rewriting_system


class Status(str, enum.Enum):
    CERTIFIED = "certified-koszul"
    CONSISTENT = "consistent-to-degree-N"
    INCONSISTENT = "inconsistent"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CriticalMonomial:
    """A degree-3 overlap and whether its two reductions agree."""
    word: tuple
    left_lm: tuple
    right_lm: tuple
    resolved: bool


@dataclass(frozen=True)
class PbwCertificate:
    order: tuple
    rules: tuple            # ((leading monomial, tail poly), ...) in original labels
    critical: tuple         # CriticalMonomial records

    def leading_monomials(self) -> list[tuple]:
        return [lm for lm, _ in self.rules]


@dataclass(frozen=True)
class TestOutcome:
    passed: bool | None     # None: not decided (size guard)
    degree: int
    witness: object = None  # first failing degree, or (i, j) bidegree
    detail: str = ""


@dataclass(frozen=True)
class KoszulConfig:
    degree: int = 8             # Hilbert duality bound
    complex_degree: int = 6     # Koszul complex bound
    orders: int = 10            # random orders tried after identity and reversal
    seed: int = 0
    max_strand: int = 250_000   # largest strand (sum of dim K_i) the complex test builds
    run_all: bool = False       # run the bounded tests even when PBW certifies


@dataclass(frozen=True)
class KoszulVerdict:
    status: Status
    certificate: PbwCertificate | None
    orders_tried: tuple
    hilbert: TestOutcome | None = None
    complex: TestOutcome | None = None
    justification: str = ""
    config: KoszulConfig = field(default_factory=KoszulConfig)

    @property
    def witness(self):
        for t in (self.hilbert, self.complex):
            if t is not None and t.passed is False:
                return t.witness
        return None


def _order_text(order) -> str:
    return " < ".join(f"X{i + 1}" for i in order)


def candidate_orders(d: int, k: int = 10, seed: int = 0) -> list[tuple]:
    """Identity, reversal, then up to ``k`` seeded random permutations (no repeats)."""
    out = [tuple(range(d))]
    rev = tuple(reversed(range(d)))
    if rev not in out:
        out.append(rev)
    rng = random.Random(seed)
    perm = list(range(d))
    for _ in range(k):
        rng.shuffle(perm)
        t = tuple(perm)
        if t not in out:
            out.append(t)
    return out


def pbw_certificate(a: QuadraticPresentation, orders: Sequence[Sequence[int]] | None = None
                    ) -> PbwCertificate | None:
    """First order under which the relations are a quadratic Groebner basis, or None."""
    if orders is None:
        orders = candidate_orders(a.d, 0)
    rels = a.relations()
    for order in orders:
        rs = buchberger_to_degree(rels, 3, tuple(order), p=a.p, d=a.d)
        if 3 in rs.added_degrees:
            continue
        critical = tuple(CriticalMonomial(o.word, o.left, o.right, o.resolved)
                         for o in rs.overlaps if len(o.word) == 3)
        return PbwCertificate(tuple(order), tuple(rs.rule_list()), critical)
    return None


def hilbert_duality_test(a: QuadraticPresentation, N: int = 8) -> TestOutcome:
    """Check sum_k (-1)^k dim A^!_k dim A_{n-k} = 0 for 1 <= n <= N."""
    if N < 2:
        raise ValueError("hilbert_duality_test needs N >= 2")
    h = graded_dims(a, N).dims
    g = graded_dims(quadratic_dual(a), N).dims
    for n in range(1, N + 1):
        s = sum((-1) ** k * g[k] * h[n - k] for k in range(n + 1))
        if s:
            return TestOutcome(False, N, n, f"alternating convolution at degree {n} is {s}")
    return TestOutcome(True, N)


def _dual_transfer(rs_dual, i: int, d: int) -> dict:
    """For each normal dual word w of degree i: [(k, w', c)] with c = w*(xi_k w').

    Then the dual functional w* composed with left multiplication by xi_k is
    sum over (k, w', c) of c w'*.
    """
    out: dict = {w: [] for w in rs_dual.normal_monomials(i)}
    for w1 in rs_dual.normal_monomials(i - 1):
        for k in range(d):
            for w, c in rs_dual.normal_form_word((k,) + w1).items():
                out[w].append((k, w1, c))
    return out


def koszul_complex_exactness(a: QuadraticPresentation, N: int = 6, *,
                             max_strand: int | None = None) -> TestOutcome:
    """Exactness of K_i = A_{j-i} (x) (A^!_i)^* for every internal degree 1 <= j <= N.

    d(u (x) w*) = sum_k NF(u x_k) (x) (w* o L_{xi_k}); d^2 = 0 is verified on
    every strand. The witness of a failure is the bidegree (i, j).
    """
    if N < 2:
        raise ValueError("koszul_complex_exactness needs N >= 2")
    d = a.d
    rs = rewriting_system(a, N)
    rs_dual = rewriting_system(quadratic_dual(a), N)
    A = [rs.normal_monomials(n) for n in range(N + 1)]
    B = [rs_dual.normal_monomials(n) for n in range(N + 1)]
    transfers = {i: _dual_transfer(rs_dual, i, d) for i in range(1, N + 1)}

    def differential(u, w, i):
        row: dict = {}
        for k, w1, c in transfers[i][w]:
            for v, e in rs.normal_form_word(u + (k,)).items():
                key = (v, w1)
                row[key] = (row.get(key, 0) + c * e) % a.p
        return {key: x for key, x in row.items() if x}

    for j in range(1, N + 1):
        dims = [len(A[j - i]) * len(B[i]) for i in range(j + 1)]
        if max_strand is not None and sum(dims) > max_strand:
            return TestOutcome(None, N, (None, j),
                               f"strand j={j} has total dimension {sum(dims)} > {max_strand}")
        maps = {}
        for i in range(1, j + 1):
            maps[i] = {(u, w): differential(u, w, i) for u in A[j - i] for w in B[i]}
        for i in range(2, j + 1):
            for row in maps[i].values():
                img: dict = {}
                for (v, w1), c in row.items():
                    for key, e in maps[i - 1][v, w1].items():
                        img[key] = (img.get(key, 0) + c * e) % a.p
                if any(img.values()):
                    return TestOutcome(False, N, (i, j), "d^2 != 0")
        ranks = [0] * (j + 2)
        for i in range(1, j + 1):
            ranks[i] = sparse_rank(maps[i].values(), a.p, limit=min(dims[i], dims[i - 1]))
        for i in range(j + 1):
            if ranks[i] + ranks[i + 1] != dims[i]:
                return TestOutcome(False, N, (i, j),
                                   f"homology of dimension {dims[i] - ranks[i] - ranks[i + 1]}")
    return TestOutcome(True, N)


def koszul_verdict(a: QuadraticPresentation, config: KoszulConfig | None = None) -> KoszulVerdict:
    config = config or KoszulConfig()
    orders = candidate_orders(a.d, config.orders, config.seed)
    cert = None
    tried = []
    for order in orders:
        tried.append(order)
        cert = pbw_certificate(a, [order])
        if cert is not None:
            break
    if cert is not None and not config.run_all:
        return KoszulVerdict(Status.CERTIFIED, cert, tuple(tried),
                             justification=f"quadratic Groebner basis under generator order {_order_text(cert.order)}",
                             config=config)

    hil = hilbert_duality_test(a, config.degree)
    cx = koszul_complex_exactness(a, config.complex_degree, max_strand=config.max_strand)
    if cert is not None:
        if hil.passed is False or cx.passed is False:
            raise AssertionError(f"PBW-certified algebra failed a bounded test: {hil} {cx}")
        return KoszulVerdict(Status.CERTIFIED, cert, tuple(tried), hil, cx,
                             f"quadratic Groebner basis under generator order {_order_text(cert.order)}", config)
    if hil.passed is False or cx.passed is False:
        why = hil.detail if hil.passed is False else cx.detail
        return KoszulVerdict(Status.INCONSISTENT, None, tuple(tried), hil, cx, why, config)
    if hil.passed and cx.passed:
        return KoszulVerdict(Status.CONSISTENT, None, tuple(tried), hil, cx,
                             f"no PBW order found; bounded tests pass to degrees "
                             f"{config.degree}/{config.complex_degree}", config)
    return KoszulVerdict(Status.INCONCLUSIVE, None, tuple(tried), hil, cx, cx.detail, config)


def format_verdict(v: KoszulVerdict) -> str:
    s = v.status.value
    if v.status is Status.CONSISTENT:
        s = f"consistent-to-degree-{v.config.complex_degree}"
    return s


def rules_text(cert: PbwCertificate, labels: Sequence[str]) -> list[str]:
    return [f"{'*'.join(labels[i] for i in lm)} -> {format_poly(tail, labels)}"
            for lm, tail in cert.rules]
