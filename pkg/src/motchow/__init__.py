"""Motivic decomposition data for generalized Severi-Brauer varieties,
computed from the rational-cycle subring of a product Chow ring mod p."""

from .chowprod import (
    GeometrySpec,
    ProdClass,
    chern_T,
    inverse_chern_T,
    prod_multiply,
    pushforward,
    special_class,
)
from .gflin import DenseSpan, EchelonSpan, FpVector, PrimeField
from .motives import (
    DecompositionReport,
    PoincarePoly,
    decompose,
    divide_exact,
    lucas_binom,
    poincare_grassmannian,
    shift_candidates,
    vp,
)
from .schur import (
    Box,
    GrassClass,
    RingSpec,
    conjugate,
    expand_in_schur,
    pieri,
    schur_multiply,
)
from .subring import graded_spans, v_basis_and_membership, v_dims

__version__ = "0.1.0"

__all__ = [
    "Box",
    "DecompositionReport",
    "DenseSpan",
    "EchelonSpan",
    "FpVector",
    "GeometrySpec",
    "GrassClass",
    "PoincarePoly",
    "PrimeField",
    "ProdClass",
    "RingSpec",
    "chern_T",
    "conjugate",
    "decompose",
    "divide_exact",
    "expand_in_schur",
    "graded_spans",
    "inverse_chern_T",
    "lucas_binom",
    "pieri",
    "poincare_grassmannian",
    "prod_multiply",
    "pushforward",
    "schur_multiply",
    "shift_candidates",
    "special_class",
    "v_basis_and_membership",
    "v_dims",
    "vp",
]
