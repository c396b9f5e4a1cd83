"""Independent brute-force oracles for the test suite.

Kept deliberately naive: Schur polynomials are expanded monomial-by-monomial
from semistandard tableaux, and ranks come from plain dense Gaussian
elimination.  Nothing here shares code with the package under test.
"""

from __future__ import annotations

import functools
from collections import defaultdict


# ---------------------------------------------------------------- F_p rank

def naive_rank(rows: list[list[int]], p: int) -> int:
    """Rank of a dense integer matrix over F_p by textbook elimination."""
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(a - c * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


# ------------------------------------------------- Schur polynomial oracle

Monomials = dict[tuple[int, ...], int]


@functools.lru_cache(maxsize=None)
def schur_monomials(lam: tuple[int, ...], k: int) -> Monomials:
    """The Schur polynomial s_lam(x_1..x_k) as exponent-vector -> coefficient,
    by direct enumeration of semistandard Young tableaux with entries <= k."""
    lam = tuple(lam)
    if len(lam) > k:
        return {}
    out: Monomials = defaultdict(int)

    def fill(row: int, tableau: list[list[int]]):
        if row == len(lam):
            weight = [0] * k
            for r in tableau:
                for entry in r:
                    weight[entry - 1] += 1
            out[tuple(weight)] += 1
            return
        width = lam[row]

        def fill_row(col: int, current: list[int]):
            if col == width:
                tableau.append(current[:])
                fill(row + 1, tableau)
                tableau.pop()
                return
            lo = current[col - 1] if col else 1
            if row:
                lo = max(lo, tableau[row - 1][col] + 1)
            for val in range(lo, k + 1):
                current.append(val)
                fill_row(col + 1, current)
                current.pop()

        fill_row(0, [])

    fill(0, [])
    return dict(out)


def poly_multiply(a: Monomials, b: Monomials) -> Monomials:
    out: Monomials = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] += ca * cb
    return {e: c for e, c in out.items() if c}


def monomials_to_schur(poly: Monomials, k: int) -> dict[tuple[int, ...], int]:
    """Express a symmetric polynomial in x_1..x_k as an integer combination
    of Schur polynomials, by greedy subtraction of the lex-leading term."""
    poly = {e: c for e, c in poly.items() if c}
    out: dict[tuple[int, ...], int] = {}
    while poly:
        lead = max(poly)
        assert all(lead[i] >= lead[i + 1] for i in range(k - 1)), (
            f"non-symmetric residue, leading exponent {lead}"
        )
        lam = tuple(x for x in lead if x)
        coeff = poly[lead]
        out[lam] = coeff
        for e, c in schur_monomials(lam, k).items():
            poly[e] = poly.get(e, 0) - coeff * c
        poly = {e: c for e, c in poly.items() if c}
    return out


def oracle_schur_product(
    lam: tuple[int, ...], mu: tuple[int, ...], rows: int, cols: int, p: int
) -> dict[tuple[int, ...], int]:
    """sigma_lam * sigma_mu in the rows x cols box over F_p, via polynomial
    multiplication in `rows` variables followed by box truncation."""
    prod = poly_multiply(schur_monomials(tuple(lam), rows),
                         schur_monomials(tuple(mu), rows))
    combo = monomials_to_schur(prod, rows)
    return {
        nu: c % p
        for nu, c in combo.items()
        if (not nu or nu[0] <= cols) and c % p
    }
