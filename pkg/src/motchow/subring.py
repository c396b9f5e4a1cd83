"""Degree-by-degree generation of the rational-cycle subring of the product
Chow ring and the pushforward image spaces with their dimensions.

Each graded piece R^j is spanned by generator-times-basis products of the
lower pieces, accumulated into a reduced echelon span.  The heavy lifting is
done with dense numpy matrices: per (degree, generator) pair the generator
acts as a sparse linear map between ambient coordinate spaces, so all
candidate vectors of one batch come from a single matrix product.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .chowprod import GeometrySpec, ProdClass, chern_T, pushforward
from .gflin import DenseSpan
from .schur import GrassClass, Partition, _row_strips, partitions_in_box


class AmbientIndex:
    """Deterministic bijection (hyperplane exponent a, partition) <-> 0..N-1
    for one codegree: a ascending, then partitions lexicographic."""

    def __init__(self, spec: GeometrySpec, codegree: int):
        self.codegree = codegree
        pairs: list[tuple[int, Partition]] = []
        for a in range(0, min(codegree, spec.d) + 1):
            for lam in partitions_in_box(spec.k, spec.w, codegree - a):
                pairs.append((a, lam))
        self.pairs = pairs
        self.pos = {key: i for i, key in enumerate(pairs)}

    def __len__(self):
        return len(self.pairs)

    def vector(self, u: ProdClass) -> np.ndarray:
        if u.codegree != self.codegree and not u.is_zero():
            raise ValueError(
                f"codegree {u.codegree} != index codegree {self.codegree}"
            )
        v = np.zeros(len(self.pairs), dtype=np.int64)
        for key, c in u.terms.items():
            v[self.pos[key]] = c
        return v

    def prod_class(self, vec: np.ndarray) -> ProdClass:
        terms = {
            self.pairs[i]: int(c) for i, c in enumerate(vec) if c
        }
        return ProdClass(self.codegree, terms)


@dataclass
class GradedSpan:
    """Echelon spans of the rational subring, one per codegree."""

    spec: GeometrySpec
    max_codeg: int
    spans: dict[int, DenseSpan]
    indexes: dict[int, AmbientIndex]

    def rank(self, j: int) -> int:
        return self.spans[j].rank


@dataclass
class VSpace:
    """Pushforward image in one Grassmannian degree: V_k with its basis."""

    k: int
    span: DenseSpan
    partitions: tuple[Partition, ...]

    @property
    def dim(self) -> int:
        return self.span.rank

    def basis(self) -> list[GrassClass]:
        out = []
        for row in self.span.rows:
            terms = {
                self.partitions[i]: int(c) for i, c in enumerate(row) if c
            }
            out.append(GrassClass(self.k, terms))
        return out

    def vector(self, g: GrassClass) -> np.ndarray:
        if g.degree != self.k and not g.is_zero():
            raise ValueError(f"class degree {g.degree} != {self.k}")
        pos = {lam: i for i, lam in enumerate(self.partitions)}
        v = np.zeros(len(self.partitions), dtype=np.int64)
        for lam, c in g.terms.items():
            v[pos[lam]] = c
        return v

    def contains(self, g: GrassClass) -> bool:
        return self.span.contains(self.vector(g))


def _generator_terms(spec: GeometrySpec) -> list[list[tuple[int, int, int]]]:
    """Per generator i = 1..r, the (h-exponent, row-length, coefficient)
    triples of its terms; every Grassmannian factor is a single-row class."""
    gens = []
    for i in range(1, spec.w + 1):
        terms = []
        for (a, lam), c in chern_T(i, spec).terms.items():
            terms.append((a, lam[0] if lam else 0, c))
        gens.append(terms)
    return gens


def _operator_matrix(
    spec: GeometrySpec,
    gen_terms: list[tuple[int, int, int]],
    src: AmbientIndex,
    dst: AmbientIndex,
) -> np.ndarray:
    """Matrix of multiplication by one generator, src codegree -> dst."""
    mat = np.zeros((len(src), len(dst)), dtype=np.int64)
    d = spec.d
    rows, cols = spec.k, spec.w
    for t, (a, lam) in enumerate(src.pairs):
        for b, l, coeff in gen_terms:
            a2 = a + b
            if a2 > d:
                continue
            if l == 0:
                mat[t, dst.pos[(a2, lam)]] += coeff
                continue
            for mu in _row_strips(lam, l, rows, cols):
                mat[t, dst.pos[(a2, mu)]] += coeff
    return mat % spec.p


def graded_spans(spec: GeometrySpec, max_codeg: int, threads: int = 1) -> GradedSpan:
    """Spans of R^0..R^max_codeg.

    R^0 is the unit line; every higher R^j is the span of all products
    (generator i) * (basis row of R^{j-i}), inserted in generator order then
    basis-row order for a reproducible echelon basis.  With threads > 1 the
    candidate blocks of one degree are produced in parallel; insertion stays
    serial and in generator order, so the result is identical.
    """
    if max_codeg < 0:
        raise ValueError("max_codeg must be >= 0")
    p = spec.p
    gens = _generator_terms(spec)
    indexes = {j: AmbientIndex(spec, j) for j in range(max_codeg + 1)}
    spans: dict[int, DenseSpan] = {}
    unit = DenseSpan(p, 1)
    unit.insert(np.array([1], dtype=np.int64))
    spans[0] = unit

    def candidates(j: int, i: int) -> np.ndarray | None:
        src_span = spans[j - i]
        if src_span.rank == 0:
            return None
        op = _operator_matrix(spec, gens[i - 1], indexes[j - i], indexes[j])
        # exact in float64: entries < p, inner dimension a few thousand
        block = (src_span.rows.astype(np.float64) @ op.astype(np.float64)) % p
        return block.astype(np.int64)

    pool = None
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        pool = ThreadPoolExecutor(max_workers=threads)
    try:
        for j in range(1, max_codeg + 1):
            span = DenseSpan(p, len(indexes[j]))
            gen_range = range(1, min(j, spec.w) + 1)
            if pool is not None:
                blocks = list(pool.map(lambda i: candidates(j, i), gen_range))
            else:
                blocks = [candidates(j, i) for i in gen_range]
            for block in blocks:
                if block is not None:
                    span.insert_block(block)
            spans[j] = span
    finally:
        if pool is not None:
            pool.shutdown()
    return GradedSpan(spec, max_codeg, spans, indexes)


def v_space(gspan: GradedSpan, k: int) -> VSpace:
    """Pushforward of R^{d+k} into the degree-k part of the Grassmannian ring."""
    spec = gspan.spec
    j = spec.d + k
    if j > gspan.max_codeg:
        raise ValueError(f"graded spans only reach codegree {gspan.max_codeg}")
    parts = partitions_in_box(spec.k, spec.w, k)
    index = gspan.indexes[j]
    span = DenseSpan(spec.p, len(parts))
    src = gspan.spans[j]
    if src.rank and parts:
        cols = [index.pos[(spec.d, lam)] for lam in parts]
        # pushforward sign (-1)^d is 1 mod p for every valid spec
        assert (-1) ** spec.d % spec.p == 1 % spec.p
        span.insert_block(src.rows[:, cols])
    return VSpace(k, span, parts)


def v_dims(spec: GeometrySpec, k_max: int, gspan: GradedSpan | None = None,
           threads: int = 1) -> list[int]:
    """dim V_k for k = 0..k_max: the multiplicities of the shifted
    projective-space motive in the complete decomposition."""
    if not 0 <= k_max <= spec.shift_range:
        raise ValueError(f"k_max must lie in [0, {spec.shift_range}]")
    if gspan is None:
        gspan = graded_spans(spec, spec.d + k_max, threads=threads)
    return [v_space(gspan, k).dim for k in range(k_max + 1)]


def v_basis_and_membership(
    spec: GeometrySpec,
    k: int,
    candidates: list[GrassClass],
    gspan: GradedSpan | None = None,
) -> tuple[list[GrassClass], list[bool]]:
    """Echelon basis of V_k plus, per candidate, whether it lies in V_k."""
    if not 0 <= k <= spec.shift_range:
        raise ValueError(f"k must lie in [0, {spec.shift_range}]")
    for g in candidates:
        if g.degree != k and not g.is_zero():
            raise ValueError(f"candidate degree {g.degree} != {k}")
    if gspan is None:
        gspan = graded_spans(spec, spec.d + k)
    space = v_space(gspan, k)
    return space.basis(), [space.contains(g) for g in candidates]


@functools.lru_cache(maxsize=None)
def beta_certificate(spec: GeometrySpec, k: int) -> ProdClass:
    """The rational certificate cycle of codegree d + k whose pushforward is
    the k-th power of the first special class; defined for k >= 2."""
    if k < 2:
        raise ValueError("certificate cycles need k >= 2")
    from .chowprod import prod_multiply

    beta = prod_multiply(chern_T(spec.w, spec), chern_T(spec.k - 1, spec), spec)
    beta = prod_multiply(beta, chern_T(2, spec), spec)
    for _ in range(k - 2):
        beta = prod_multiply(beta, chern_T(1, spec), spec)
    return beta


__all__ = [
    "AmbientIndex",
    "GradedSpan",
    "VSpace",
    "graded_spans",
    "v_space",
    "v_dims",
    "v_basis_and_membership",
    "beta_certificate",
    "pushforward",
]
