"""Zassenhaus analysis and Demushkin normalization of one-relator pro-p groups.

Pipeline: exponent sums give q; the Magnus expansion gives the initial form
rho in degree 2; the coefficient matrix C of rho (rho = sum C_ij X_i X_j) is a
bilinear form whose radical is V2 and whose nondegenerate part V1 is brought
to one of the Demushkin normal forms by an explicit basis change P. From
there gr = F_p<X>/(rho) and the cohomology model are built, and the duality
between them is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ConstructionError, HypothesisError
from ..fplinalg import FpMatrix, inv_mod, is_invertible, nullspace, rank, row_basis, rref
from ..koszul import KoszulConfig, KoszulVerdict, koszul_verdict
from ..ncpoly import HomogeneousPoly, format_poly, magnus_expand, series_initial_form
from ..quadratic import (QuadraticPresentation, apply_basis_change, demushkin_normal,
                         demushkin_relation, direct_product, equal_presentations, free,
                         free_product, graded_dims, quadratic_dual, series_reciprocal, trivial)
from ..words import exponent_sums
from .parse import GroupPresentation

CASE_ALTERNATING = "q≠2"
CASE_EVEN = "q=2-n-even"
CASE_ODD = "q=2-n-odd"
CASE_P2_N1 = "p2-n1"

MILD = "mild"
NOT_MILD = "not-mild-hypothesis"

HYP_MINIMAL = "minimal presentation: every exponent sum divisible by p (r in F_(2))"
HYP_DEPTH = "one-relator analysis requires r in F_(2) but not in F_(3)"
HYP_GALOIS = "initial form of a relator word: C + C^T = 0 mod p"
HYP_Q = "q = 2 exactly when the square part Q of rho is nonzero"
HYP_MILD = "gr is described only for mild relators or the p = 2, n = 1 case"


@dataclass(frozen=True)
class AnalysisConfig:
    depth: int = 3          # Magnus truncation degree D
    degree: int = 8         # graded-dimension bound N
    koszul: KoszulConfig = field(default_factory=KoszulConfig)


@dataclass(frozen=True)
class Normalization:
    n: int
    m: int
    case_tag: str
    demushkin_case: str     # a, b or c (p2-n1 uses c: the relation X1^2)
    P: FpMatrix             # columns are the new basis vectors in old coordinates
    normal_rho: HomogeneousPoly


# q and the initial form ----------------------------------------------------

def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def abelianization_q(g: GroupPresentation) -> int:
    """q with G^ab = Z_p/q x Z_p^(d-1): 0 if the exponent sums vanish, else p^min v_p."""
    e = exponent_sums(g.relator, g.d)
    nonzero = [x for x in e if x]
    if not nonzero:
        return 0
    v = min(_valuation(x, g.p) for x in nonzero)
    if v == 0:
        raise HypothesisError(f"exponent sums {e} include a unit mod {g.p}: presentation not minimal",
                              HYP_MINIMAL)
    return g.p ** v


def initial_form(g: GroupPresentation, D: int = 3) -> tuple[int, HomogeneousPoly]:
    """(Zassenhaus depth, initial form) of the relator."""
    if D < 2:
        raise ConstructionError("truncation depth must be at least 2")
    found = series_initial_form(magnus_expand(g.relator, g.d, D, g.p))
    if found is None:
        raise HypothesisError(f"relator is trivial to depth {D}; raise the truncation depth", HYP_DEPTH)
    depth, rho = found
    if depth == 1:
        raise HypothesisError("relator has depth 1: presentation not minimal", HYP_MINIMAL)
    return depth, rho


def mildness_check(rho: HomogeneousPoly) -> str:
    """Mild iff rho contains a monomial X_i X_j with i != j."""
    if rho.degree != 2:
        raise ConstructionError(f"mildness check needs a quadratic polynomial, got degree {rho.degree}")
    return MILD if any(w[0] != w[1] for w in rho.terms) else NOT_MILD


# normalization --------------------------------------------------------------

def coefficient_matrix(rho: HomogeneousPoly, d: int) -> FpMatrix:
    rows = [[0] * d for _ in range(d)]
    for (i, j), c in rho.terms.items():
        rows[i][j] = c
    return FpMatrix(rho.p, rows, d)


def _form(C: FpMatrix, u, v) -> int:
    p, d = C.p, C.nrows
    return sum(u[i] * C[i, j] * v[j] for i in range(d) if u[i] for j in range(d) if v[j]) % p


def _orthogonal(C: FpMatrix, W: list, against: list) -> list:
    """Basis (RREF) of {x in span W : form(a, x) = 0 for a in against}."""
    if not W:
        return []
    p = C.p
    M = FpMatrix(p, [[_form(C, a, w) for w in W] for a in against], len(W))
    combos = nullspace(M).entries
    d = len(W[0])
    vecs = [[sum(y[k] * W[k][i] for k in range(len(W))) % p for i in range(d)] for y in combos]
    return [list(r) for r in row_basis(FpMatrix(p, vecs, d)).entries]


def _scale(v, c, p):
    return [(x * c) % p for x in v]


def _hyperbolic_pairs(C: FpMatrix, W: list) -> list:
    """Greedy symplectic basis of span W for an alternating nondegenerate form."""
    p = C.p
    out = []
    while W:
        v = W[0]
        u = next((u for u in W[1:] if _form(C, v, u)), None)
        if u is None:
            raise AssertionError("form is degenerate on the complement of its radical")
        w = _scale(u, inv_mod(_form(C, v, u), p), p)
        out += [v, w]
        W = _orthogonal(C, W, [v, w])
    return out


def _complement(radical: list, d: int, p: int) -> list:
    """Standard basis vectors completing the radical to a basis, chosen greedily."""
    chosen = []
    current = [list(r) for r in radical]
    for i in range(d):
        e = [int(i == j) for j in range(d)]
        if rank(FpMatrix(p, current + [e], d)) > len(current):
            current.append(e)
            chosen.append(e)
    return chosen


def _characteristic_vector(C: FpMatrix, W: list) -> list:
    """c in span W with form(c, x) = form(x, x) for every x in W (p = 2)."""
    p = C.p
    G = FpMatrix(p, [[_form(C, a, b) for b in W] for a in W], len(W))
    diag = [G[i, i] for i in range(len(W))]
    # G is symmetric and invertible: solve G y = diag
    aug = FpMatrix(p, [list(G.row(i)) + [diag[i]] for i in range(len(W))], len(W) + 1)
    R, piv, _ = rref(aug)
    y = [0] * len(W)
    for r, c in enumerate(piv):
        y[c] = R[r, len(W)]
    d = len(W[0])
    return [sum(y[k] * W[k][i] for k in range(len(W))) % p for i in range(d)]


def demushkin_normalize(rho: HomogeneousPoly, p: int, q: int, d: int | None = None) -> Normalization:
    """Basis change P with rho.substitute(P) equal to a Demushkin normal form on X1..Xn."""
    if rho.degree != 2 or rho.is_zero():
        raise ConstructionError("normalization needs a nonzero quadratic polynomial")
    if rho.p != p:
        raise ConstructionError("rho is over a different field")
    d = rho.max_index() + 1 if d is None else d
    C = coefficient_matrix(rho, d)
    if any((C[i, j] + C[j, i]) % p for i in range(d) for j in range(d)):
        raise HypothesisError("relation not of Galois type: C + C^T is nonzero mod p", HYP_GALOIS)
    square_part = any(C[i, i] for i in range(d))
    if p == 2 and q == 2 and not square_part:
        raise HypothesisError("q = 2 but rho has no square terms", HYP_Q)
    if q != 2 and square_part:
        raise HypothesisError(f"q = {q} but rho has square terms", HYP_Q)

    radical = [list(r) for r in nullspace(C).entries]
    W = _complement(radical, d, p)
    n = len(W)
    if not square_part:
        V1 = _hyperbolic_pairs(C, W)
        tag, case = CASE_ALTERNATING, "a"
    else:
        c = _characteristic_vector(C, W)
        if n % 2:
            head = [c]
            tag, case = (CASE_P2_N1, "c") if n == 1 else (CASE_ODD, "c")
        else:
            x1 = next(w for w in W if _form(C, w, w))
            head = [x1, c]
            tag, case = CASE_EVEN, "b"
        V1 = head + _hyperbolic_pairs(C, _orthogonal(C, W, head))
    cols = V1 + radical
    P = FpMatrix(p, [[cols[a][i] for a in range(d)] for i in range(d)], d)
    if not is_invertible(P):
        raise AssertionError("normalizing basis change is singular")
    target = demushkin_relation(p, n, case)
    if rho.substitute(P) != target:
        raise AssertionError(f"normalization failed: {rho.substitute(P)} != {target}")
    return Normalization(n, d - n, tag, case, P, target)


# models ---------------------------------------------------------------------

def gr_normal_form(p: int, norm: Normalization) -> QuadraticPresentation:
    return free_product(demushkin_normal(p, norm.n, norm.demushkin_case), free(p, norm.m)).relabel(
        [f"X{i + 1}" for i in range(norm.n + norm.m)])


def build_gr(p: int, d: int, rho: HomogeneousPoly, norm: Normalization
             ) -> tuple[QuadraticPresentation, QuadraticPresentation]:
    """(F_p<X>/(rho), its image under P), the latter equal to D_n ⊔ F_p<X'>."""
    if mildness_check(norm.normal_rho) != MILD and norm.case_tag != CASE_P2_N1:
        raise HypothesisError("initial form is not mild", HYP_MILD)
    gr = QuadraticPresentation.from_relations(p, d, [rho])
    normal = apply_basis_change(gr, norm.P)
    if not equal_presentations(normal, gr_normal_form(p, norm)):
        raise AssertionError("basis change does not carry gr to the free-product normal form")
    return gr, normal


def _cup_relations(p: int, n: int, tag: str) -> list[HomogeneousPoly]:
    """Kernel of the cup product V1* (x) V1* -> H^2 for each case."""
    if tag == CASE_P2_N1:
        return []
    if tag == CASE_ALTERNATING:
        pairs = {(2 * h, 2 * h + 1): 1 for h in range(n // 2)}
        pairs.update({(2 * h + 1, 2 * h): -1 for h in range(n // 2)})
    elif tag == CASE_ODD:
        pairs = {(0, 0): 1}
        for h in range(1, n - 1, 2):
            pairs[h, h + 1] = pairs[h + 1, h] = 1
    else:
        pairs = {(0, 0): 1, (0, 1): 1, (1, 0): 1}
        for h in range(2, n - 1, 2):
            pairs[h, h + 1] = pairs[h + 1, h] = 1
    rels = [HomogeneousPoly.monomial(p, (i, j)) for i in range(n) for j in range(n) if (i, j) not in pairs]
    # cup(w) = s * omega, so s_base * w - s * base lies in the kernel
    base = min(pairs)
    for w, s in sorted(pairs.items()):
        if w != base:
            rels.append(HomogeneousPoly(p, 2, {w: pairs[base], base: -s}))
    return rels


def build_cohomology(p: int, norm: Normalization) -> QuadraticPresentation:
    """A ⊓ trivial(m), A the cup-product algebra on V1 (F_2[chi1] in case p2-n1)."""
    A = QuadraticPresentation.from_relations(p, norm.n, _cup_relations(p, norm.n, norm.case_tag))
    h = direct_product(A, trivial(p, norm.m))
    return h.relabel([f"chi{i + 1}" for i in range(h.d)])


def predicted_gr_dims(norm: Normalization, N: int) -> list[int]:
    """Series of D_n ⊔ F<X'>: 1/h = 1 - dt + t^2, or 1/(1+t) - mt in case p2-n1."""
    d = norm.n + norm.m
    if norm.case_tag == CASE_P2_N1:
        inv = [(-1) ** k for k in range(N + 1)]
        inv[1] -= norm.m
    else:
        inv = [1, -d, 1] + [0] * max(0, N - 2)
    return series_reciprocal(inv[:N + 1], N)


def decomposition_labels(p: int, norm: Normalization) -> tuple[str, str]:
    n, m, d = norm.n, norm.m, norm.n + norm.m
    if norm.case_tag == CASE_P2_N1:
        dem = "F_2[X1]/(X1^2)"
    elif norm.case_tag == CASE_ALTERNATING and n == 2:
        dem = f"F_{p}[X1,X2]"
    else:
        gens = ",".join(f"X{i + 1}" for i in range(n))
        dem = f"F_{p}<{gens}>/({_format_relation(norm)})"
    parts = [dem]
    if m == 1:
        parts.append(f"F_{p}[X{d}]")
    elif m > 1:
        parts.append(f"F_{p}<{','.join(f'X{i + 1}' for i in range(n, d))}>")
    gr_label = " ⊔ ".join(parts)
    if norm.case_tag == CASE_P2_N1:
        h = f"F_{p}[chi1]"
    else:
        h = f"(F_{p} + V1 + H2)"
    if m:
        h += f" ⊓ (F_{p} + V2)"
    return gr_label, h


def _format_relation(norm: Normalization) -> str:
    return format_poly(norm.normal_rho, [f"X{i + 1}" for i in range(norm.n + norm.m)])


# full pipeline --------------------------------------------------------------

@dataclass(frozen=True)
class CaseReport:
    presentation: GroupPresentation
    config: AnalysisConfig
    q: int
    depth: int
    rho: HomogeneousPoly
    ambiguous: bool                 # p = 2 with nonzero even exponent sums
    mild_literal: str               # mixed-monomial test on rho as given
    mild: str                       # the same test on the normalized rho
    normalization: Normalization
    gr: QuadraticPresentation
    gr_normal: QuadraticPresentation
    h_model: QuadraticPresentation
    gr_label: str
    h_label: str
    gr_dims: tuple
    predicted_dims: tuple
    h_dims: tuple
    dual_equals_h: bool
    decomposition_ok: bool
    dims_ok: bool
    gr_verdict: KoszulVerdict
    h_verdict: KoszulVerdict

    @property
    def d(self) -> int:
        return self.presentation.d

    @property
    def n(self) -> int:
        return self.normalization.n

    @property
    def m(self) -> int:
        return self.normalization.m

    @property
    def case_tag(self) -> str:
        return self.normalization.case_tag

    @property
    def duality_verified(self) -> bool:
        return self.dual_equals_h and self.decomposition_ok and self.dims_ok


def verify_duality(g: GroupPresentation, config: AnalysisConfig | None = None) -> CaseReport:
    config = config or AnalysisConfig()
    p, d = g.p, g.d
    q = abelianization_q(g)
    depth, rho = initial_form(g, config.depth)
    if depth != 2:
        raise HypothesisError(f"relator has depth {depth}", HYP_DEPTH)
    ambiguous = p == 2 and q != 0
    norm = demushkin_normalize(rho, p, q, d)
    gr, gr_normal = build_gr(p, d, rho, norm)
    h = build_cohomology(p, norm)
    dual_ok = equal_presentations(quadratic_dual(gr_normal), h)
    decomposition_ok = equal_presentations(gr_normal, gr_normal_form(p, norm))
    N = config.degree
    dims = graded_dims(gr, N).dims
    predicted = tuple(predicted_gr_dims(norm, N))
    gr_label, h_label = decomposition_labels(p, norm)
    return CaseReport(
        presentation=g, config=config, q=q, depth=depth, rho=rho, ambiguous=ambiguous,
        mild_literal=mildness_check(rho), mild=mildness_check(norm.normal_rho),
        normalization=norm, gr=gr, gr_normal=gr_normal, h_model=h,
        gr_label=gr_label, h_label=h_label, gr_dims=dims, predicted_dims=predicted,
        h_dims=graded_dims(h, N).dims, dual_equals_h=dual_ok, decomposition_ok=decomposition_ok,
        dims_ok=dims == predicted,
        gr_verdict=koszul_verdict(gr_normal, config.koszul),
        h_verdict=koszul_verdict(h, config.koszul),
    )
