"""Rational-cycle subring generation and the pushforward image spaces."""

import numpy as np
import pytest

from motchow.chowprod import GeometrySpec, ProdClass, pushforward, special_class
from motchow.schur import GrassClass, schur_multiply
from motchow.subring import (
    AmbientIndex,
    beta_certificate,
    graded_spans,
    v_basis_and_membership,
    v_dims,
    v_space,
)

# specs satisfying the decomposability hypotheses (p=2 with 1<m<n, or p odd
# with 0<m<n) and p^n <= 16
CERT_SPECS = [
    GeometrySpec(3, 2, 1),
    GeometrySpec(2, 3, 2),
    GeometrySpec(2, 4, 2),
    GeometrySpec(2, 4, 3),
]

# full shift range computable quickly: D <= 12
DUALITY_SPECS = [
    GeometrySpec(2, 2, 1),
    GeometrySpec(2, 3, 1),
    GeometrySpec(2, 3, 2),
    GeometrySpec(3, 2, 1),
]


def _power_of_c1(spec, k):
    out = GrassClass(0, {(): 1})
    base = special_class(1, spec)
    for _ in range(k):
        out = schur_multiply(out, base, spec.ring)
    return out


def test_ambient_index_round_trip():
    spec = GeometrySpec(3, 2, 1)
    for codeg in (0, 3, 9, 12):
        index = AmbientIndex(spec, codeg)
        # pairs are sorted by h-exponent, then partition
        assert index.pairs == sorted(index.pairs)
        for i, key in enumerate(index.pairs):
            assert index.pos[key] == i
        cls = ProdClass(codeg, {index.pairs[0]: 1, index.pairs[-1]: 2})
        assert index.prod_class(index.vector(cls)) == cls
    bad = ProdClass(5, {(5, ()): 1})
    with pytest.raises(ValueError):
        AmbientIndex(spec, 4).vector(bad)


def test_graded_spans_low_degrees():
    spec = GeometrySpec(2, 3, 2)
    gspan = graded_spans(spec, 6)
    assert gspan.rank(0) == 1
    # degree 1 is spanned by the single generator c_1(T)
    assert gspan.rank(1) == 1
    # ranks never exceed the ambient dimension
    for j in range(7):
        assert 0 <= gspan.rank(j) <= len(gspan.indexes[j])
    # every degree-j generator lies in R^j
    from motchow.chowprod import chern_T

    for i in range(1, min(6, spec.w) + 1):
        vec = gspan.indexes[i].vector(chern_T(i, spec))
        assert gspan.spans[i].contains(vec)


def test_graded_spans_threaded_identical():
    spec = GeometrySpec(2, 3, 2)
    serial = graded_spans(spec, spec.d + 5)
    threaded = graded_spans(spec, spec.d + 5, threads=4)
    for j in range(spec.d + 6):
        assert serial.rank(j) == threaded.rank(j)
        assert np.array_equal(serial.spans[j].rows, threaded.spans[j].rows)


def test_m_zero_degeneration():
    # Y = X: one copy at shift zero and nothing else
    for p, n in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)):
        spec = GeometrySpec(p, n, 0)
        assert spec.shift_range == 0
        assert v_dims(spec, 0) == [1]


def test_beta_certificates_sweep():
    for spec in CERT_SPECS:
        gspan = graded_spans(spec, spec.d + spec.w)
        for k in range(2, spec.w + 1):
            beta = beta_certificate(spec, k)
            assert beta.codegree == spec.d + k
            index = gspan.indexes[spec.d + k]
            assert gspan.spans[spec.d + k].contains(index.vector(beta)), (
                f"{spec}, k={k}: certificate not in the subring"
            )
            push = pushforward(beta, spec)
            assert push == _power_of_c1(spec, k) and not push.is_zero()
            assert v_space(gspan, k).dim >= 1
    with pytest.raises(ValueError):
        beta_certificate(CERT_SPECS[0], 1)


def test_duality_symmetry_full_range():
    for spec in DUALITY_SPECS:
        dims = v_dims(spec, spec.shift_range)
        assert dims == dims[::-1], f"{spec}: {dims}"


def test_multiplicative_stability():
    # x * c1 stays in the image spaces one shift up
    spec = GeometrySpec(2, 3, 2)
    k_top = spec.shift_range
    gspan = graded_spans(spec, spec.d + k_top)
    for j in range(0, k_top):
        upper = v_space(gspan, j + 1)
        for x in v_space(gspan, j).basis():
            prod = schur_multiply(x, special_class(1, spec), spec.ring)
            assert upper.contains(prod), f"shift {j}: {x} * c1 escapes"


def test_v_dims_matches_decom2_table():
    spec = GeometrySpec(2, 3, 2)
    assert v_dims(spec, spec.shift_range) == [0, 0, 1, 1, 1, 1, 1, 1, 0, 0]


def test_v_basis_and_membership():
    spec = GeometrySpec(2, 3, 2)
    k = 2
    inside = _power_of_c1(spec, k)
    outside = GrassClass(k, {(1, 1): 1})
    basis, member = v_basis_and_membership(spec, k, [inside, outside])
    assert len(basis) == 1
    assert member == [True, False]
    for g in basis:
        assert g.degree == k and not g.is_zero()
    with pytest.raises(ValueError):
        v_basis_and_membership(spec, spec.shift_range + 1, [])
    with pytest.raises(ValueError):
        v_basis_and_membership(spec, 2, [GrassClass(3, {(3,): 1})])


def test_v_space_requires_computed_degrees():
    spec = GeometrySpec(2, 3, 2)
    gspan = graded_spans(spec, spec.d + 1)
    with pytest.raises(ValueError):
        v_space(gspan, 2)
