"""Partition combinatorics and the Chow ring of a Grassmannian mod p.

Classes are kept in the Schur/Schubert basis: a homogeneous element is a
sparse map from partitions inside the k x w box to scalars in [1, p).
Products go through the h-type Jacobi-Trudi determinant (the box has few
rows, so the determinant stays tiny) followed by iterated row-strip Pieri
steps; single-row and single-column factors skip the determinant.
"""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .gflin import PrimeField

Partition = tuple[int, ...]


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(x, int) and x > 0 for x in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def conjugate(parts: Partition) -> Partition:
    """Transpose of the Young diagram."""
    parts = tuple(parts)
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > i) for i in range(parts[0]))


@dataclass(frozen=True)
class Box:
    """The k x w rectangle bounding partitions: at most `rows` parts, each <= `cols`."""

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 0:
            raise ValueError(f"invalid box {self.rows}x{self.cols}")

    def contains(self, parts: Partition) -> bool:
        return len(parts) <= self.rows and (not parts or parts[0] <= self.cols)


@dataclass(frozen=True)
class RingSpec:
    """Coefficient field and bounding box for a Grassmannian Chow ring."""

    field: PrimeField
    box: Box


@functools.lru_cache(maxsize=None)
def partitions_in_box(rows: int, cols: int, size: int) -> tuple[Partition, ...]:
    """All partitions of `size` with <= rows parts, each <= cols, in lex order."""
    if size < 0 or size > rows * cols:
        return ()
    out: list[Partition] = []

    def rec(prefix: list[int], remaining: int, bound: int, slots: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if slots == 0:
            return
        hi = min(bound, remaining)
        lo = -(-remaining // slots)  # ceil: smallest feasible first part
        for part in range(lo, hi + 1):
            prefix.append(part)
            rec(prefix, remaining - part, part, slots - 1)
            prefix.pop()

    rec([], size, cols, rows)
    return tuple(sorted(out))


@dataclass
class GrassClass:
    """Homogeneous element of Ch(G(k,n); F_p) in the Schur basis."""

    degree: int
    terms: dict[Partition, int] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, GrassClass):
            return NotImplemented
        if self.terms or other.terms:
            return self.degree == other.degree and self.terms == other.terms
        return True  # all zero classes are equal regardless of degree tag

    def scaled(self, c: int, p: int) -> "GrassClass":
        return GrassClass(
            self.degree,
            {lam: v * c % p for lam, v in self.terms.items() if v * c % p},
        )

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for lam in sorted(self.terms):
            c = self.terms[lam]
            bits.append(f"{c}*sigma[{','.join(map(str, lam))}]")
        return " + ".join(bits)


def schur_basis(parts: Partition, coeff: int = 1) -> GrassClass:
    parts = tuple(parts)
    return GrassClass(sum(parts), {parts: coeff} if coeff else {})


def unit_class() -> GrassClass:
    return schur_basis(())


def _normalized(terms: dict[Partition, int], p: int) -> dict[Partition, int]:
    return {lam: c % p for lam, c in terms.items() if c % p}


@functools.lru_cache(maxsize=None)
def _row_strips(lam: Partition, i: int, rows: int, cols: int) -> tuple[Partition, ...]:
    """All mu in the box with mu/lam a horizontal strip of size i."""
    lam_full = lam + (0,) * (rows - len(lam))
    out: list[Partition] = []

    def rec(idx: int, rem: int, mu: list[int]):
        if idx == rows:
            if rem == 0:
                out.append(tuple(x for x in mu if x > 0))
            return
        lo = lam_full[idx]
        hi = min(cols if idx == 0 else lam_full[idx - 1], lo + rem)
        for val in range(lo, hi + 1):
            mu.append(val)
            rec(idx + 1, rem - (val - lo), mu)
            mu.pop()

    rec(0, i, [])
    return tuple(sorted(out))


def pieri(lam: Partition, i: int, kind: str, box: Box) -> list[Partition]:
    """Multiply sigma_lam by the complete class h_i (row-strip) or the
    elementary class e_i (column-strip); results outside the box are dropped.
    """
    lam = tuple(lam)
    if not box.contains(lam) or not (is_partition(lam) or lam == ()):
        raise ValueError(f"partition {lam} does not fit box {box}")
    if i < 1:
        raise ValueError("strip size must be >= 1")
    if kind == "row-strip":
        return list(_row_strips(lam, i, box.rows, box.cols))
    if kind == "column-strip":
        conj = _row_strips(conjugate(lam), i, box.cols, box.rows) if box.cols else ()
        return sorted(conjugate(mu) for mu in conj)
    raise ValueError(f"unknown Pieri kind {kind!r}")


def _pieri_step(terms: dict[Partition, int], i: int, box: Box,
                kind: str = "row-strip") -> dict[Partition, int]:
    """One strip multiplication applied to a term dict (no mod reduction)."""
    if i == 0:
        return dict(terms)
    out: dict[Partition, int] = defaultdict(int)
    for lam, c in terms.items():
        if kind == "row-strip":
            strips = _row_strips(lam, i, box.rows, box.cols)
        else:
            strips = pieri(lam, i, "column-strip", box)
        for mu in strips:
            out[mu] += c
    return out


@functools.lru_cache(maxsize=None)
def _jt_h_monomials(mu: Partition) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Expansion of s_mu as a signed sum of h-monomials (Jacobi-Trudi).

    Returns (sign, sorted tuple of h-indices >= 1) pairs; the determinant has
    size len(mu), which is bounded by the box row count.
    """
    ell = len(mu)
    if ell == 0:
        return ((1, ()),)
    monos: list[tuple[int, tuple[int, ...]]] = []
    for perm in itertools.permutations(range(ell)):
        indices = []
        ok = True
        for i in range(ell):
            t = mu[i] - (i + 1) + (perm[i] + 1)
            if t < 0:
                ok = False
                break
            if t > 0:
                indices.append(t)
        if not ok:
            continue
        sign = 1
        seen = list(perm)
        # permutation sign by counting inversions
        inv = sum(
            1
            for a in range(ell)
            for b in range(a + 1, ell)
            if seen[a] > seen[b]
        )
        sign = -1 if inv % 2 else 1
        monos.append((sign, tuple(sorted(indices, reverse=True))))
    return tuple(monos)


@functools.lru_cache(maxsize=None)
def _lr_product(lam: Partition, mu: Partition, box: Box) -> tuple[tuple[Partition, int], ...]:
    """sigma_lam * sigma_mu inside the box, with exact integer coefficients."""
    acc: dict[Partition, int] = defaultdict(int)
    for sign, hs in _jt_h_monomials(mu):
        cur: dict[Partition, int] = {lam: sign}
        for i in hs:
            cur = _pieri_step(cur, i, box)
            if not cur:
                break
        for nu, c in cur.items():
            acc[nu] += c
    return tuple(sorted((nu, c) for nu, c in acc.items() if c))


def schur_multiply(a: GrassClass, b: GrassClass, spec: RingSpec) -> GrassClass:
    """Product in Ch(G(k,n); F_p): Littlewood-Richardson expansion truncated
    to the box, coefficients mod p."""
    p = spec.field.p
    box = spec.box
    for cls in (a, b):
        for lam in cls.terms:
            if not box.contains(lam):
                raise ValueError(f"partition {lam} does not fit box {box}")
    out: dict[Partition, int] = defaultdict(int)
    for mu, cb in b.terms.items():
        for lam, ca in a.terms.items():
            for nu, c in _lr_product(lam, mu, box):
                out[nu] += ca * cb * c
    return GrassClass(a.degree + b.degree, _normalized(out, p))


def expand_in_schur(terms, spec: RingSpec) -> dict[int, GrassClass]:
    """Evaluate a formal integer polynomial in e_i / h_i symbols.

    `terms` is an iterable of (coeff, factors) with factors an iterable of
    ("e", i) or ("h", i) symbols (repeat a symbol for powers).  e_i with
    i > rows and h_i with i > cols evaluate to 0.  Returns the graded
    components keyed by degree, fully reduced mod p and the box.
    """
    p = spec.field.p
    box = spec.box
    graded: dict[int, dict[Partition, int]] = defaultdict(lambda: defaultdict(int))
    for coeff, factors in terms:
        cur: dict[Partition, int] = {(): coeff}
        degree = 0
        for sym, i in factors:
            if sym not in ("e", "h"):
                raise ValueError(f"unknown symbol {sym!r}")
            if i < 1:
                raise ValueError(f"symbol index must be >= 1, got {i}")
            limit = box.rows if sym == "e" else box.cols
            if i > limit:
                cur = {}
                break
            kind = "column-strip" if sym == "e" else "row-strip"
            cur = _pieri_step(cur, i, box, kind)
            degree += i
            if not cur:
                break
        bucket = graded[degree]
        for lam, c in cur.items():
            bucket[lam] += c
    out: dict[int, GrassClass] = {}
    for degree in sorted(graded):
        reduced = _normalized(graded[degree], p)
        if reduced:
            out[degree] = GrassClass(degree, reduced)
    return out


def expand_homogeneous(terms, spec: RingSpec) -> GrassClass:
    """Like expand_in_schur, for expressions expected to be homogeneous."""
    graded = expand_in_schur(terms, spec)
    if not graded:
        return GrassClass(0, {})
    if len(graded) > 1:
        raise ValueError(f"expression is inhomogeneous: degrees {sorted(graded)}")
    return next(iter(graded.values()))
