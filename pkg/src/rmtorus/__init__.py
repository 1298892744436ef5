"""Exact periodic continued fractions for noncommutative tori with real
multiplication attached to elliptic surfaces over Q(t)."""

__version__ = "0.1.0"

from .cf import (
    IntMatrix,
    PeriodicCF,
    QuadCoeffs,
    UnimodularMatrix,
    convergents,
    equivalent,
    evaluate,
    expand,
    matrix_word,
    parse_cf,
    pell_check,
    quad_coeffs,
    unroll,
)
from .exact import (
    IntPolynomial,
    QuadraticSurd,
    mobius_apply,
    parse_surd,
    poly_eval,
    surd_conjugate,
    surd_floor,
    surd_is_reduced,
    surd_make,
)
