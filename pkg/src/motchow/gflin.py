"""Exact linear algebra over a prime field F_p.

Sparse vectors and incremental reduced row-echelon spans, plus a dense
numpy-backed variant of the same span structure for the large runs.
All scalars are canonical representatives in [0, p).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DimensionMismatch(ValueError):
    """Raised when a vector's ambient dimension does not match the span's."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; p must be prime."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)


class FpVector:
    """Sparse vector over F_p: only nonzero coordinates are stored."""

    __slots__ = ("coords", "dim")

    def __init__(self, coords: dict[int, int], dim: int, p: int | None = None):
        if p is not None:
            coords = {i: c % p for i, c in coords.items()}
        self.coords = {i: c for i, c in coords.items() if c != 0}
        self.dim = dim
        for i in self.coords:
            if not 0 <= i < dim:
                raise IndexError(f"coordinate index {i} outside dimension {dim}")

    @classmethod
    def from_dense(cls, values, p: int) -> "FpVector":
        return cls({i: v % p for i, v in enumerate(values)}, len(values))

    def is_zero(self) -> bool:
        return not self.coords

    def leading_index(self) -> int:
        return min(self.coords)

    def to_dense(self) -> list[int]:
        out = [0] * self.dim
        for i, c in self.coords.items():
            out[i] = c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FpVector)
            and self.dim == other.dim
            and self.coords == other.coords
        )

    def __repr__(self):
        return f"FpVector({self.coords!r}, dim={self.dim})"


class EchelonSpan:
    """Reduced row-echelon spanning set over F_p, built incrementally.

    Pivot choice is the lowest nonzero index, so the basis is deterministic
    in the insertion order.  Single writer; `reduce` is read-only.
    """

    def __init__(self, field: PrimeField, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[FpVector] = []
        self.pivots: dict[int, int] = {}  # pivot index -> row position

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _check(self, v: FpVector):
        if v.dim != self.dim:
            raise DimensionMismatch(f"vector dim {v.dim} != span dim {self.dim}")

    def reduce(self, v: FpVector) -> FpVector:
        """Residual of v after elimination against all pivots."""
        self._check(v)
        p = self.field.p
        coords = dict(v.coords)
        for piv, rowpos in self.pivots.items():
            c = coords.get(piv, 0)
            if c == 0:
                continue
            for j, rj in self.rows[rowpos].coords.items():
                coords[j] = (coords.get(j, 0) - c * rj) % p
        return FpVector(coords, self.dim)

    def insert(self, v: FpVector) -> bool:
        """Insert v; returns True iff the rank increased."""
        residual = self.reduce(v)
        if residual.is_zero():
            return False
        p = self.field.p
        piv = residual.leading_index()
        scale = self.field.inv(residual.coords[piv])
        new_row = FpVector({i: c * scale % p for i, c in residual.coords.items()},
                           self.dim)
        # clear the new pivot column in the existing rows
        for pos, row in enumerate(self.rows):
            c = row.coords.get(piv, 0)
            if c == 0:
                continue
            coords = dict(row.coords)
            for j, rj in new_row.coords.items():
                coords[j] = (coords.get(j, 0) - c * rj) % p
            self.rows[pos] = FpVector(coords, self.dim)
        self.pivots[piv] = len(self.rows)
        self.rows.append(new_row)
        return True

    def contains(self, v: FpVector) -> bool:
        return self.reduce(v).is_zero()


def span_insert(span: EchelonSpan, v: FpVector) -> tuple[EchelonSpan, bool]:
    """Functional-style wrapper over EchelonSpan.insert."""
    return span, span.insert(v)


def reduce(span: EchelonSpan, v: FpVector) -> FpVector:
    return span.reduce(v)


def rank(span: EchelonSpan) -> int:
    return span.rank


@dataclass
class DenseSpan:
    """Dense numpy-backed reduced row-echelon span over F_p.

    Same invariants as EchelonSpan; used where the ambient dimension is a
    few thousand and row reduction dominates runtime.  Rows are kept as a
    (rank x dim) int64 matrix in insertion-refined RREF.
    """

    p: int
    dim: int
    rows: np.ndarray = field(default=None)  # type: ignore[assignment]
    pivots: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.rows is None:
            self.rows = np.zeros((0, self.dim), dtype=np.int64)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"vector shape {v.shape} != ({self.dim},)")
        if self.rank:
            v = (v - v[self.pivots] @ self.rows) % self.p
        return v

    def insert(self, v: np.ndarray, *, _reduced: bool = False) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p if _reduced else self.reduce(v)
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        piv = int(nz[0])
        v = v * pow(int(v[piv]), self.p - 2, self.p) % self.p
        if self.rank:
            col = self.rows[:, piv].copy()
            if col.any():
                self.rows = (self.rows - np.outer(col, v)) % self.p
        self.rows = np.vstack([self.rows, v[None, :]])
        self.pivots.append(piv)
        return True

    def insert_block(self, block: np.ndarray) -> int:
        """Insert all rows of block; returns the number of rank increases."""
        block = np.asarray(block, dtype=np.int64) % self.p
        if block.size == 0:
            return 0
        if block.shape[1] != self.dim:
            raise DimensionMismatch(f"block width {block.shape[1]} != {self.dim}")
        if self.rank:
            block = (block - block[:, self.pivots] @ self.rows) % self.p
        added = 0
        base = self.rank
        for row in block:
            # already reduced against the pre-block rows; the rows added
            # during this block have zeros in the old pivot columns, so a
            # partial re-reduction suffices
            if self.rank > base:
                newpivs = self.pivots[base:]
                row = (row - row[newpivs] @ self.rows[base:]) % self.p
            if self.insert(row, _reduced=True):
                added += 1
        return added

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()
