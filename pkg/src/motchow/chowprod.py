"""The Chow ring of P^d x G(k, n) mod p and the Chern calculus of the
rank-r bundle generating the rational-cycle subring.

Elements are sparse maps (hyperplane exponent a, partition in the k x w box)
-> scalar, homogeneous of total codimension a + |partition|.  The sign
convention takes h to be the first Chern class of the tautological line
bundle, so the hyperplane class is -h and the point class is (-h)^d.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass

from .gflin import PrimeField, is_prime
from .motives import lucas_binom
from .schur import Box, GrassClass, Partition, RingSpec, _lr_product

ProdKey = tuple[int, Partition]


@dataclass(frozen=True)
class GeometrySpec:
    """Parameter triple (p, n, m) with its derived geometry constants."""

    p: int
    n: int
    m: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not 0 <= self.m < self.n:
            raise ValueError(f"need 0 <= m < n, got m={self.m}, n={self.n}")

    @property
    def d(self) -> int:
        """Dimension of the projective-space factor: p^n - 1."""
        return self.p**self.n - 1

    @property
    def k(self) -> int:
        """Row count of the partition box: p^m."""
        return self.p**self.m

    @property
    def w(self) -> int:
        """Box width = rank of the generating bundle: p^n - p^m."""
        return self.p**self.n - self.p**self.m

    r = w  # the two names are used interchangeably

    @property
    def dim_y(self) -> int:
        return self.k * self.w

    @property
    def shift_range(self) -> int:
        """Largest shift that can occur: dim Y - d."""
        return self.dim_y - self.d

    @property
    def box(self) -> Box:
        return Box(self.k, self.w)

    @property
    def ring(self) -> RingSpec:
        return RingSpec(PrimeField(self.p), self.box)


@dataclass
class ProdClass:
    """Homogeneous element of Ch(P^d x G(k,n); F_p)."""

    codegree: int
    terms: dict[ProdKey, int]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, ProdClass):
            return NotImplemented
        if self.terms or other.terms:
            return self.codegree == other.codegree and self.terms == other.terms
        return True

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for a, lam in sorted(self.terms):
            c = self.terms[(a, lam)]
            bits.append(f"{c}*H^{a}*sigma[{','.join(map(str, lam))}]")
        return " + ".join(bits)


def prod_unit() -> ProdClass:
    return ProdClass(0, {(0, ()): 1})


def lift_grass(g: GrassClass) -> ProdClass:
    """A Grassmannian class pulled back through the second projection."""
    return ProdClass(g.degree, {(0, lam): c for lam, c in g.terms.items()})


def _validate(u: ProdClass, spec: GeometrySpec):
    for (a, lam), _ in u.terms.items():
        if not 0 <= a <= spec.d or not spec.box.contains(lam):
            raise ValueError(f"term (H^{a}, {lam}) invalid for {spec}")
        if a + sum(lam) != u.codegree:
            raise ValueError("inhomogeneous ProdClass")


def special_class(i: int, spec: GeometrySpec) -> GrassClass:
    """The i-th Chern class of the dual of the opposite tautological bundle,
    in the Schur basis: (-1)^i sigma_(i); zero above the box width."""
    if i < 0:
        raise ValueError("negative Chern index")
    if i == 0:
        return GrassClass(0, {(): 1})
    if i > spec.w:
        return GrassClass(i, {})
    return GrassClass(i, {(i,): (-1) ** i % spec.p})


def chern_T(j: int, spec: GeometrySpec) -> ProdClass:
    """The j-th Chern class of the generating rank-r bundle on the product."""
    if not 0 <= j <= spec.w:
        raise ValueError(f"Chern index {j} outside [0, {spec.w}]")
    p = spec.p
    terms: dict[ProdKey, int] = {}
    for i in range(0, j + 1):
        a = j - i
        if a > spec.d:
            continue
        coeff = lucas_binom(spec.w - i, j - i, p) * (-1) ** i % p
        if coeff == 0:
            continue
        lam: Partition = (i,) if i else ()
        terms[(a, lam)] = coeff
    return ProdClass(j, terms)


def prod_multiply(u: ProdClass, v: ProdClass, spec: GeometrySpec) -> ProdClass:
    """Ring product: h-exponents add (h^{>d} = 0), Grassmannian factors
    multiply by Littlewood-Richardson expansion in the box."""
    _validate(u, spec)
    _validate(v, spec)
    p = spec.p
    box = spec.box
    out: dict[ProdKey, int] = defaultdict(int)
    for (a2, mu), c2 in v.terms.items():
        for (a1, lam), c1 in u.terms.items():
            a = a1 + a2
            if a > spec.d:
                continue
            for nu, c in _lr_product(lam, mu, box):
                out[(a, nu)] += c1 * c2 * c
    terms = {key: c % p for key, c in out.items() if c % p}
    return ProdClass(u.codegree + v.codegree, terms)


@functools.lru_cache(maxsize=None)
def _inverse_prefix(spec: GeometrySpec, j_max: int) -> tuple[ProdClass, ...]:
    if j_max == 0:
        return (prod_unit(),)
    prefix = _inverse_prefix(spec, j_max - 1)
    p = spec.p
    acc: dict[ProdKey, int] = defaultdict(int)
    for i in range(1, min(j_max, spec.w) + 1):
        part = prod_multiply(chern_T(i, spec), prefix[j_max - i], spec)
        for key, c in part.terms.items():
            acc[key] -= c
    terms = {key: c % p for key, c in acc.items() if c % p}
    return prefix + (ProdClass(j_max, terms),)


def inverse_chern_T(spec: GeometrySpec, j_max: int) -> list[ProdClass]:
    """Chern classes s_0..s_{j_max} of the negated bundle, by power-series
    inversion of the total Chern class in the truncated ring."""
    if j_max < 0:
        raise ValueError("j_max must be >= 0")
    return list(_inverse_prefix(spec, j_max))


def pushforward(u: ProdClass, spec: GeometrySpec) -> GrassClass:
    """Proper pushforward along the projection to the Grassmannian factor:
    the h^d slice, with the point-class sign (-1)^d (always 1 mod p here)."""
    _validate(u, spec)
    sign = (-1) ** spec.d % spec.p
    assert sign == 1 % spec.p, "point-class sign must be trivial mod p"
    terms = {
        lam: c * sign % spec.p
        for (a, lam), c in u.terms.items()
        if a == spec.d
    }
    return GrassClass(u.codegree - spec.d, {k: v for k, v in terms.items() if v})
