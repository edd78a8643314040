"""Exact order and Ehrhart polynomials of zigzag posets, with certified checks
of the related Hilbert-Kunz inequality."""

from .alt import (
    alt_constant,
    alt_of_polynomial,
    b_polynomial,
    h_polynomial,
    positivity_certificate,
    residual_identity_check,
    zeta_odd,
)
from .errors import CapacityError, IntegrityError
from .exactmath import Poly, binomial_poly, interpolate, poly_det
from .hilbert_kunz import e_hk, efib_ehrhart, euler_numbers, fib_ehrhart, verify_wy
from .interval import RationalInterval, pi_enclosure
from .orderpoly import (
    c1_zigzag,
    decomposition_coefficients,
    order_poly,
    order_poly_brute,
    order_poly_kreweras,
    order_poly_minor_recursion,
    shifted_coefficients,
)
from .posets import (
    Poset,
    block_poset_extensions,
    crown,
    ideal_chains,
    linear_extension_count,
    odd_decompositions,
    zigzag,
)
from .series import (
    block_weight,
    crown_coefficients,
    g_row,
    hadamard_check,
    series_coeff,
    weighted_sum_f,
)

__version__ = "0.1.0"
