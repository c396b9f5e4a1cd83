"""Poincare-polynomial bookkeeping and decomposition reports.

Multiplicities of the shifted projective-space motives come from the
rational-cycle subring; this module completes them by duality, computes the
residual (upper-motive) Poincare polynomial with integer coefficients, and
provides the binomial-congruence certificates and the divisibility/shift
analysis used on the big degree-27 case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .chowprod import GeometrySpec


class ExactDivisionError(ArithmeticError):
    """Polynomial division left a remainder; the remainder is attached."""

    def __init__(self, remainder: "PoincarePoly"):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


@dataclass(frozen=True)
class PoincarePoly:
    """Integer-coefficient polynomial in t; index = exponent."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> "PoincarePoly":
        return cls(())

    @classmethod
    def one(cls) -> "PoincarePoly":
        return cls((1,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "PoincarePoly":
        return cls((0,) * k + (c,))

    @classmethod
    def all_ones(cls, top: int) -> "PoincarePoly":
        """1 + t + ... + t^top."""
        return cls((1,) * (top + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: "PoincarePoly") -> "PoincarePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return PoincarePoly(
            tuple(self.coeff(i) + other.coeff(i) for i in range(n))
        )

    def __sub__(self, other: "PoincarePoly") -> "PoincarePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return PoincarePoly(
            tuple(self.coeff(i) - other.coeff(i) for i in range(n))
        )

    def __mul__(self, other: "PoincarePoly") -> "PoincarePoly":
        if self.is_zero() or other.is_zero():
            return PoincarePoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PoincarePoly(tuple(out))

    def scale(self, c: int) -> "PoincarePoly":
        return PoincarePoly(tuple(c * a for a in self.coeffs))

    def shift(self, k: int) -> "PoincarePoly":
        return PoincarePoly((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, t: int) -> int:
        return sum(a * t**i for i, a in enumerate(self.coeffs))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def nonnegative(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                bits.append(str(a))
            else:
                term = f"t^{i}" if i > 1 else "t"
                bits.append(term if a == 1 else f"{a}*{term}")
        return " + ".join(bits)


def divide_exact(num: PoincarePoly, den: PoincarePoly) -> PoincarePoly:
    """Exact quotient of integer polynomials; raises ExactDivisionError
    (with the remainder attached) if the division is not exact."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(num.coeffs)
    dc = den.coeffs
    lead = dc[-1]
    qdeg = len(rem) - len(dc)
    quot = [0] * (qdeg + 1) if qdeg >= 0 else []
    for i in range(qdeg, -1, -1):
        top = rem[i + len(dc) - 1]
        if top % lead:
            raise ExactDivisionError(PoincarePoly(tuple(rem)))
        q = top // lead
        quot[i] = q
        if q:
            for j, b in enumerate(dc):
                rem[i + j] -= q * b
    remainder = PoincarePoly(tuple(rem))
    if not remainder.is_zero():
        raise ExactDivisionError(remainder)
    return PoincarePoly(tuple(quot))


def vp(l: int, p: int) -> int:
    """p-adic valuation of a positive integer."""
    if l <= 0:
        raise ValueError("valuation of a non-positive integer")
    v = 0
    while l % p == 0:
        l //= p
        v += 1
    return v


def lucas_binom(a: int, b: int, p: int) -> int:
    """Binomial coefficient C(a, b) mod p by base-p digit products."""
    if b < 0 or b > a:
        return 0
    out = 1
    while a or b:
        da, db = a % p, b % p
        if db > da:
            return 0
        out = out * (math.comb(da, db) % p) % p
        a //= p
        b //= p
    return out


def poincare_grassmannian(k: int, n: int) -> PoincarePoly:
    """Gaussian binomial [n choose k]_t: the Poincare polynomial of the
    split Grassmannian G(k, n)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = PoincarePoly.one()
    den = PoincarePoly.one()
    for i in range(1, k + 1):
        num = num * (PoincarePoly.monomial(n - k + i, -1) + PoincarePoly.one())
        den = den * (PoincarePoly.monomial(i, -1) + PoincarePoly.one())
    return divide_exact(num, den)


def corollary_conditions(spec: "GeometrySpec") -> tuple[bool, bool, bool]:
    """The three binomial congruences certifying the decomposability cycles:
    C(r,2) = 0, C(r, p^m - 1) = 0, C(r-1, p^m - 2) = (-1)^(p^m - 2), mod p."""
    if spec.m == 0:
        raise ValueError("conditions are only meaningful for m >= 1")
    p, r, km = spec.p, spec.w, spec.k
    return (
        lucas_binom(r, 2, p) == 0,
        lucas_binom(r, km - 1, p) == 0,
        lucas_binom(r - 1, km - 2, p) == (-1) ** (km - 2) % p,
    )


@dataclass
class DecompositionReport:
    """Complete decomposition data for one geometry.

    multiplicities[k] is the number of copies of the shifted projective-space
    motive at shift k; the residual polynomial is what remains of the
    Grassmannian Poincare polynomial after removing those copies.
    """

    spec: "GeometrySpec"
    multiplicities: list[int]
    residual: PoincarePoly
    computed_half: range
    diagnostics: dict[str, bool] = field(default_factory=dict)

    @property
    def residual_rank(self) -> int:
        return self.residual(1)


def shift_candidates(q: PoincarePoly, offsets) -> list[int]:
    """All k >= 0 such that subtracting one copy of sum_o t^{k+o} from q
    leaves nonnegative coefficients."""
    offsets = list(offsets)
    if not offsets:
        raise ValueError("offsets must be nonempty")
    out = []
    top = q.degree - min(offsets)
    for k in range(0, max(top + 1, 0)):
        if all(q.coeff(k + o) >= 1 for o in offsets):
            out.append(k)
    return out


def decompose(spec: "GeometrySpec", k_max: int | None = None,
              gspan=None, threads: int = 1) -> DecompositionReport:
    """Run the rational-cycle computation (lower half, by default) and
    assemble the full multiplicity table by duality, plus the residual.

    A precomputed GradedSpan may be passed to share the heavy subring run
    between callers.
    """
    from . import subring  # deferred: subring depends on chowprod

    p, d, big_d = spec.p, spec.d, spec.shift_range
    poincare_y = poincare_grassmannian(spec.k, p**spec.n)

    if spec.m == 0:
        mults = [1]
        computed = range(0, 1)
        dims = [1]
    else:
        if k_max is None:
            k_max = -(-big_d // 2)  # ceil(D/2)
        k_max = min(k_max, big_d)
        dims = subring.v_dims(spec, k_max, gspan=gspan, threads=threads)
        mults = [0] * (big_d + 1)
        for k in range(k_max + 1):
            mults[k] = dims[k]
        for k in range(k_max + 1, big_d + 1):
            mults[k] = mults[big_d - k]
        computed = range(0, k_max + 1)

    proj_poly = PoincarePoly.all_ones(d)
    removed = PoincarePoly.zero()
    for k, a in enumerate(mults):
        if a:
            removed = removed + proj_poly.shift(k).scale(a)
    residual = poincare_y - removed

    duality_ok = all(
        dims[k] == dims[big_d - k]
        for k in computed
        if big_d - k in computed
    )
    diagnostics = {
        "residual_nonnegative": residual.nonnegative(),
        "residual_palindromic": residual.is_palindromic(),
        "residual_unit_ends": residual.is_zero()
        or (residual.coeff(0) == 1 and residual.coeff(spec.dim_y) == 1),
        "duality_consistent": duality_ok,
    }
    total = sum(mults) * (d + 1) + residual(1)
    if total != math.comb(p**spec.n, spec.k):
        raise AssertionError("rank identity violated in decomposition report")
    return DecompositionReport(spec, mults, residual, computed, diagnostics)
