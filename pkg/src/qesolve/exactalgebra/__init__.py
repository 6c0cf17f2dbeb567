"""Exact arithmetic substrate: arbitrary-precision polynomials, resultants,
Sturm isolation, algebraic reals, quadratic surds and Groebner bases."""

from .polynomials import (
    ExactDivisionError,
    MultiPoly,
    UniPoly,
    format_terms,
    parse_multipoly,
    parse_unipoly,
)
from .euclidean import (
    DegenerateElimination,
    bareiss_det_int,
    det_exact,
    gcd_unipoly,
    resultant_multipoly,
    resultant_unipoly,
    squarefree_decomposition,
    squarefree_part,
    sylvester_resultant_lists,
)
from .realroots import (
    AlgebraicReal,
    algebraic_is_root,
    cauchy_root_bound,
    count_real_roots,
    isolate_real_roots,
    rational_roots,
    sturm_isolate,
)
from .quadfield import Surd, parse_surd
from .groebner import (
    GuardExceeded,
    NotZeroDimensional,
    buchberger,
    minimal_polynomial_of_var,
)

__all__ = [
    "AlgebraicReal", "DegenerateElimination", "ExactDivisionError",
    "GuardExceeded", "MultiPoly", "NotZeroDimensional", "Surd", "UniPoly",
    "algebraic_is_root", "bareiss_det_int", "buchberger", "cauchy_root_bound",
    "count_real_roots", "det_exact", "format_terms", "gcd_unipoly",
    "isolate_real_roots", "minimal_polynomial_of_var", "parse_multipoly",
    "parse_surd", "parse_unipoly", "rational_roots", "resultant_multipoly",
    "resultant_unipoly", "squarefree_decomposition", "squarefree_part",
    "sturm_isolate", "sylvester_resultant_lists",
]
