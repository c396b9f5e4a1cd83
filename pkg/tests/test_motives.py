"""Poincare polynomial arithmetic, Lucas binomials, decomposition reports."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motchow.chowprod import GeometrySpec
from motchow.motives import (
    DecompositionReport,
    ExactDivisionError,
    PoincarePoly,
    corollary_conditions,
    decompose,
    divide_exact,
    lucas_binom,
    poincare_grassmannian,
    shift_candidates,
    vp,
)
from motchow.schur import partitions_in_box

polys = st.lists(st.integers(-5, 5), max_size=8).map(
    lambda c: PoincarePoly(tuple(c))
)


def test_poly_normalization_and_basics():
    q = PoincarePoly((1, 0, 2, 0, 0))
    assert q.coeffs == (1, 0, 2)
    assert q.degree == 2 and q.coeff(1) == 0 and q.coeff(9) == 0
    assert PoincarePoly.zero().is_zero()
    assert str(PoincarePoly((0, 1, 3))) == "t + 3*t^2"
    assert str(PoincarePoly.zero()) == "0"
    assert PoincarePoly.all_ones(3).coeffs == (1, 1, 1, 1)
    assert PoincarePoly.monomial(2, 5).coeffs == (0, 0, 5)


@settings(max_examples=60)
@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == PoincarePoly.zero()
    assert a(2) + b(2) == (a + b)(2)
    assert a(3) * b(3) == (a * b)(3)
    assert a.shift(2) == a * PoincarePoly.monomial(2)


@settings(max_examples=40)
@given(polys, polys)
def test_divide_exact_round_trip(a, b):
    if b.is_zero():
        with pytest.raises(ZeroDivisionError):
            divide_exact(a, b)
        return
    assert divide_exact(a * b, b) == a


def test_divide_exact_remainder():
    with pytest.raises(ExactDivisionError) as err:
        divide_exact(PoincarePoly((1, 1, 1)), PoincarePoly((0, 1)))
    assert err.value.remainder == PoincarePoly((1,))


def test_vp():
    assert vp(12, 2) == 2
    assert vp(27, 3) == 3
    assert vp(7, 2) == 0
    with pytest.raises(ValueError):
        vp(0, 2)


def test_lucas_against_exact_binomials():
    for p in (2, 3, 5):
        for a in range(201):
            for b in range(a + 1):
                assert lucas_binom(a, b, p) == math.comb(a, b) % p
    assert lucas_binom(3, 5, 7) == 0
    assert lucas_binom(3, -1, 7) == 0


def test_poincare_grassmannian():
    for k, n in ((0, 4), (1, 4), (2, 4), (2, 5), (3, 9), (4, 8)):
        q = poincare_grassmannian(k, n)
        assert q.is_palindromic()
        assert q(1) == math.comb(n, k)
        # coefficient of t^j counts partitions of j in the k x (n-k) box
        for j in range(q.degree + 1):
            assert q.coeff(j) == len(partitions_in_box(k, n - k, j))
    with pytest.raises(ValueError):
        poincare_grassmannian(5, 4)


def test_corollary_conditions_sweep():
    for p in (2, 3, 5):
        for n in range(1, 5):
            if p**n > 125:
                continue
            for m in range(0, n):
                ok = (p == 2 and 1 < m < n) or (p > 2 and 0 < m < n)
                spec = GeometrySpec(p, n, m)
                if m == 0:
                    with pytest.raises(ValueError):
                        corollary_conditions(spec)
                elif ok:
                    assert corollary_conditions(spec) == (True, True, True), spec


def test_shift_candidates():
    q = PoincarePoly((1, 0, 1, 1, 1))
    assert shift_candidates(q, [0]) == [0, 2, 3, 4]
    assert shift_candidates(q, [0, 1]) == [2, 3]
    assert shift_candidates(q, [0, 2]) == [0, 2]
    with pytest.raises(ValueError):
        shift_candidates(q, [])


def test_decompose_m_zero():
    report = decompose(GeometrySpec(3, 1, 0))
    assert report.multiplicities == [1]
    assert report.residual.is_zero()
    assert report.residual_rank == 0
    assert all(report.diagnostics.values())


def test_decompose_small_indecomposable():
    report = decompose(GeometrySpec(2, 2, 1))
    assert report.multiplicities == [0, 0]
    assert report.residual == poincare_grassmannian(2, 4)
    assert all(report.diagnostics.values())


def test_decompose_known_table():
    report = decompose(GeometrySpec(3, 2, 1))
    assert report.multiplicities == [0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0]
    assert report.residual_rank == 21
    # the residual is 1 + ... + t^18 with extra copies at t^6 and t^12
    assert list(report.residual.coeffs) == [
        1, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1,
    ]
    assert all(report.diagnostics.values())
    assert isinstance(report, DecompositionReport)
    assert report.computed_half == range(0, 6)


def test_decompose_respects_k_max():
    # computing fewer shifts directly and completing by duality must agree
    spec = GeometrySpec(2, 3, 2)
    full = decompose(spec, k_max=spec.shift_range)
    half = decompose(spec)
    assert full.multiplicities == half.multiplicities
    assert full.residual == half.residual
