"""Graded dimensions of the quadratic algebras E_n, Nichols algebras of transpositions and t-number products."""

__version__ = "0.1.0"

from .ncpoly import QQ, GF, Field, MonomialOrder, NCPolynomial, compare, leading_term, multiply
from .presentations import (
    Presentation, Transposition, fk_presentation, load_presentation, relation_count,
    save_presentation,
)
from .groebner import (
    Budget, BudgetExceeded, HilbertSeries, Inconclusive, TruncatedGroebnerBasis,
    dimension, hilbert_coefficients, normal_form, truncated_groebner,
)
from .braided import BraidedSpace, SignedPermMatrix, braid_matrix, braid_on_basis, check_yang_baxter, chi
from .nichols import (
    NicholsDims, Permutation, lex_reduced_word, matsumoto_lift, nichols_dimension,
    nichols_dims, quadratic_kernel_compare, quantum_symmetrizer,
)
from .hilbert import expand_t_product, factor_t_numbers, numerology_report, prefix_consistency
