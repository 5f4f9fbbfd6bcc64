from .scalars import EXACT, FLOAT, Backend, parse_rational, value_of
from .poly import (BiPoly, Poly, divide_by_x_minus_y, divided_difference_kernel,
                   monomial_kernels, poly_divexact, poly_divmod, poly_gcd)
from .mpoly import MPoly
from .dual import DualScalar, gradient_of
from .polymat import (PolyMat, char_poly, char_poly_const, commutator_kernel,
                      trace_power)
from . import linalg

__all__ = [
    "EXACT", "FLOAT", "Backend", "parse_rational", "value_of",
    "BiPoly", "Poly", "divide_by_x_minus_y", "divided_difference_kernel",
    "monomial_kernels", "poly_divexact", "poly_divmod", "poly_gcd",
    "MPoly", "DualScalar", "gradient_of",
    "PolyMat", "char_poly", "char_poly_const", "commutator_kernel",
    "trace_power", "linalg",
]
