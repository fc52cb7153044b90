import pytest

from conftest import random_presentation
from koszulkit.koszul import (KoszulConfig, Status, candidate_orders, format_verdict,
                              hilbert_duality_test, koszul_complex_exactness, koszul_verdict,
                              pbw_certificate, rules_text)
from koszulkit.ncpoly import parse_polynomial
from koszulkit.quadratic import (QuadraticPresentation, demushkin_normal, exterior, free,
                                 graded_dims, quadratic_dual, symmetric, trivial)
from oracles import quotient_dims


def pres(p, d, *texts):
    names = [f"X{i + 1}" for i in range(d)]
    return QuadraticPresentation.from_relations(p, d, [parse_polynomial(t, names, p, degree=2) for t in texts])


# Two quadratic algebras that are not Koszul. Their dimensions are pinned
# by dense linear algebra below, so the failure is not an artefact of the
# rewriting code.
NON_KOSZUL_F2 = ("X1*X2 + X2*X2", "X2*X1")
NON_KOSZUL_F3 = ("X1*X1 - X3*X2", "X1*X2", "X1*X3 + X3*X1 - X3*X2", "X2*X2 + X3*X2",
                 "X2*X3 + X3*X2")


def test_pbw_on_symmetric_algebra():
    cert = pbw_certificate(symmetric(3, 2))
    assert cert is not None and cert.order == (0, 1)
    assert rules_text(cert, ["X1", "X2"]) == ["X2*X1 -> X1*X2"]
    assert len(cert.critical) == 0


def test_pbw_on_demushkin_d4():
    cert = pbw_certificate(demushkin_normal(3, 4))
    assert cert is not None
    assert cert.leading_monomials() == [(3, 2)]
    assert graded_dims(demushkin_normal(3, 4), 4).dims == (1, 4, 15, 56, 209)


def test_pbw_exterior_has_resolved_overlaps():
    cert = pbw_certificate(exterior(3, 3))
    assert cert is not None and len(cert.rules) == 6
    assert cert.critical and all(c.resolved for c in cert.critical)


def test_hilbert_examples():
    assert hilbert_duality_test(free(3, 2), 8).passed
    assert hilbert_duality_test(demushkin_normal(3, 4), 8).passed
    out = hilbert_duality_test(pres(2, 2, *NON_KOSZUL_F2), 8)
    assert out.passed is False and out.witness == 4


def test_complex_examples():
    assert koszul_complex_exactness(symmetric(5, 2), 6).passed
    assert koszul_complex_exactness(trivial(3, 3), 4).passed
    assert koszul_complex_exactness(demushkin_normal(2, 3, "c"), 5).passed
    out = koszul_complex_exactness(pres(2, 2, *NON_KOSZUL_F2), 6)
    assert out.passed is False and out.witness == (2, 4)


def test_non_koszul_f2_dims_pinned():
    a = pres(2, 2, *NON_KOSZUL_F2)
    dense = quotient_dims(2, 2, [f.terms for f in a.relations()], 6)
    assert dense == [1, 2, 2, 1, 1, 1, 1]
    assert list(graded_dims(a, 6).dims) == dense
    dual = quadratic_dual(a)
    assert quotient_dims(2, 2, [f.terms for f in dual.relations()], 4) == [1, 2, 2, 1, 0]
    assert list(graded_dims(dual, 4).dims) == [1, 2, 2, 1, 0]
    v = koszul_verdict(a)
    assert v.status is Status.INCONSISTENT and v.witness == 4
    assert v.certificate is None and len(v.orders_tried) == 2


def test_non_koszul_f3_dims_pinned():
    a = pres(3, 3, *NON_KOSZUL_F3)
    dense = quotient_dims(3, 3, [f.terms for f in a.relations()], 4)
    assert dense == [1, 3, 4, 2, 2]
    assert list(graded_dims(a, 6).dims) == [1, 3, 4, 2, 2, 2, 2]
    assert list(graded_dims(quadratic_dual(a), 6).dims) == [1, 3, 5, 5, 3, 1, 0]
    out = hilbert_duality_test(a, 8)
    assert out.passed is False and out.witness == 4
    assert "is 4" in out.detail
    v = koszul_verdict(a)
    assert v.status is Status.INCONSISTENT
    assert v.complex.witness == (2, 4)


def test_sum_of_squares_over_f2_is_only_consistent():
    # (X1 + X2)^2 over F_2: Koszul after a basis change, but no coordinate
    # order of the given generators yields a quadratic Groebner basis
    a = pres(2, 2, "X1^2 + X2^2")
    v = koszul_verdict(a)
    assert v.status is Status.CONSISTENT
    assert format_verdict(v) == "consistent-to-degree-6"
    assert v.hilbert.passed and v.complex.passed
    assert list(graded_dims(a, 6).dims) == [1, 2, 3, 4, 5, 6, 7]


def test_verdict_certified_statement():
    v = koszul_verdict(demushkin_normal(5, 2))
    assert v.status is Status.CERTIFIED
    assert v.justification == "quadratic Groebner basis under generator order X1 < X2"
    assert v.hilbert is None and v.complex is None
    v = koszul_verdict(demushkin_normal(5, 2), KoszulConfig(run_all=True))
    assert v.status is Status.CERTIFIED and v.hilbert.passed and v.complex.passed


def test_candidate_orders():
    orders = candidate_orders(3, 10, seed=0)
    assert orders[:2] == [(0, 1, 2), (2, 1, 0)]
    assert len(orders) == len(set(orders)) <= 6
    assert candidate_orders(1, 10) == [(0,)]
    assert candidate_orders(4, 10, seed=7) == candidate_orders(4, 10, seed=7)


def test_size_guard_gives_inconclusive_outcome():
    out = koszul_complex_exactness(free(3, 3), 6, max_strand=10)
    assert out.passed is None


def test_pbw_soundness_against_dense_dims(rng):
    checked = 0
    for _ in range(80):
        p = rng.choice((2, 3))
        d = rng.randint(1, 3)
        a = random_presentation(rng, p=p, d=d)
        cert = pbw_certificate(a, candidate_orders(d, 4, seed=1))
        if cert is None:
            continue
        checked += 1
        N = 4 if d < 3 else 3
        dense = quotient_dims(p, d, [f.terms for f in a.relations()], N)
        assert list(graded_dims(a, N, order=cert.order).dims) == dense
        # everything PBW certifies must pass the bounded tests too
        assert hilbert_duality_test(a, 6).passed
        assert koszul_complex_exactness(a, 4).passed
    assert checked >= 20


def test_d_squared_vanishes_on_random_inputs(rng):
    for _ in range(25):
        a = random_presentation(rng, d=rng.randint(1, 3))
        out = koszul_complex_exactness(a, 4, max_strand=20_000)
        assert out.detail != "d^2 != 0"


def test_certified_algebra_duals_are_certified():
    for a in (symmetric(3, 3), demushkin_normal(3, 4), demushkin_normal(2, 5, "c"), exterior(5, 2)):
        assert koszul_verdict(a).status is Status.CERTIFIED
        assert koszul_verdict(quadratic_dual(a)).status is Status.CERTIFIED


def test_bounds_validated():
    with pytest.raises(ValueError):
        hilbert_duality_test(free(2, 1), 1)
    with pytest.raises(ValueError):
        koszul_complex_exactness(free(2, 1), 1)
