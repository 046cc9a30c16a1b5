"""Exact arithmetic: residues, F_p polynomials, cyclotomic fields, matrices and Hasse calculus."""

from .cyclotomic import CycloNumber, CycloPoly, cyclotomic_poly, interpolation_modulus, psi_number, psi_poly
from .fp_poly import FpQuotient, x_power_minus_one
from .hasse import MultiPoly, composition_coeffs, eval_vector, hermite_coeffs
from .linalg import (
    MatrixFamily,
    RingKind,
    RingMatrix,
    coeff_matrix,
    crank,
    kronecker,
    matmul,
    psi_matrix,
    quotient_rank_pair,
    rank,
    rank_fp_quot,
)

__all__ = [
    "CycloNumber",
    "CycloPoly",
    "FpQuotient",
    "MatrixFamily",
    "MultiPoly",
    "RingKind",
    "RingMatrix",
    "coeff_matrix",
    "composition_coeffs",
    "crank",
    "cyclotomic_poly",
    "eval_vector",
    "hermite_coeffs",
    "interpolation_modulus",
    "kronecker",
    "matmul",
    "psi_matrix",
    "psi_number",
    "psi_poly",
    "quotient_rank_pair",
    "rank",
    "rank_fp_quot",
    "x_power_minus_one",
]
