"""functal: exact-arithmetic study of pairs (associative algebra, functional)."""

from .algebra import (
    Algebra,
    AlgebraElement,
    direct_sum,
    mat,
    multiply,
    nilpotent_pair,
    opposite,
    parse_algebra,
    seaweed,
    serialize_algebra,
    tensor_product,
    unital_extension,
    ut,
    validate,
)
from .functional import (
    ALPHA_INF,
    Alpha,
    Functional,
    Subspace,
    b_form,
    conjugate_functional,
    gram,
    is_multiplicative,
    is_nondegenerate,
    nil,
    q_form,
    rank_gram,
    restrict_form,
    stab,
    subspace_product,
    trace_functional,
    vanishes_on,
)
from .linalg import RatMatrix, ff_det, kernel
from .poly import (
    BivariatePoly,
    MultivariatePoly,
    UnivariatePoly,
    generalized_resultant,
    pencil_det,
    uni_roots,
)
from .sampling import SamplerConfig
from .scalars import ComplexApprox, Rational
from .spectrum import (
    ClassificationReport,
    IndexReport,
    JordanFiltration,
    SpectrumReport,
    char_poly,
    char_poly_raw,
    char_poly_symbolic,
    classify,
    find_regular,
    index,
    jordan_spaces,
    pencil_poly,
    quotient_by_nil,
    regularity_corollary_suite,
    spectrum,
)
from .tensor import (
    IdentityReport,
    conjecture_probe,
    extended_cayley_check,
    kronecker,
    kronecker_swap_matrix,
    mat_tensor_index_experiment,
    tensor_char_check,
    tensor_functional,
    tensor_stab_suite,
)

__version__ = "0.1.0"
