"""Fast term extraction for q-holonomic sequences.

Square-root-of-N evaluation of matrix q-factorials over prime fields
(baby steps build a polynomial matrix, giant steps evaluate it along a
geometric progression with one chirp convolution), exact rational values
by balanced binary splitting, and the applications layered on top:
q-factorials and Pochhammer symbols, Gaussian binomials, partial theta
sums, truncated q-exponentials, q-Hermite values, sparse pentagonal and
triangular-number series, and curvature heuristics for q-difference
systems.
"""

from .curvature import (
    CurvatureReport,
    CyclotomicCurvature,
    CyclotomicRing,
    PrimeVerdict,
    QDifferenceSystem,
    curvature_cyclotomic,
    curvature_mod_p,
    curvature_scan,
    naive_curvature_mod_p,
    primes_up_to,
)
from .errors import (
    ArityMismatch,
    BadPrime,
    ComputeError,
    CompositeN,
    ContextMismatch,
    DegenerateLeading,
    DimensionMismatch,
    IndexOutOfRange,
    InputError,
    NonInvertibleBracket,
    NonInvertibleDenominator,
    ParameterDomain,
    ParseError,
    PoleHit,
    QHolonomicError,
    SingularLeading,
    TooManyIndices,
    UnsortedIndices,
    ZeroInversion,
    ZeroLeadingCoefficient,
    ZeroRatio,
)
from .exact import RingMatrix, binary_split_product, exact_nth_term
from .field import PrimeField, is_prime
from .geom import (
    ChirpEvaluator,
    chirp_eval,
    linear_qshift_product,
    locate_zero_on_progression,
)
from .holonomic import (
    QRecurrence,
    SpecializedCompanion,
    from_recurrence,
    nth_term,
    q_exp_trunc,
    q_hermite_eval,
    specialize,
    terms_multi,
    theta_sum,
    theta_sum_recurrence,
)
from .matrix import (
    PolyMatrix,
    ScalarMatrix,
    baby_step_product,
    mat_eval,
    mat_mul,
    matrix_q_factorial,
    transport_to_prefixes,
)
from .oracles import naive_geom_product, naive_matrix_fold, naive_nth_term
from .poly import (
    DensePoly,
    SubproductTree,
    eval_horner,
    mul,
    prod_of_evals,
    scale_arg,
    tree_multipoint_eval,
)
from .qspecial import (
    alg1_product,
    binomial_theorem_coeff,
    cube_eta_eval,
    euler_pentagonal_eval,
    geometric_point_product,
    q_binomial,
    q_factorial,
    q_pochhammer,
    scalar_q_product,
    vandermonde_sum,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "BadPrime",
    "ChirpEvaluator",
    "ComputeError",
    "CompositeN",
    "ContextMismatch",
    "CurvatureReport",
    "CyclotomicCurvature",
    "CyclotomicRing",
    "DegenerateLeading",
    "DensePoly",
    "DimensionMismatch",
    "IndexOutOfRange",
    "InputError",
    "NonInvertibleBracket",
    "NonInvertibleDenominator",
    "ParameterDomain",
    "ParseError",
    "PoleHit",
    "PolyMatrix",
    "PrimeField",
    "PrimeVerdict",
    "QDifferenceSystem",
    "QHolonomicError",
    "QRecurrence",
    "RingMatrix",
    "ScalarMatrix",
    "SingularLeading",
    "SpecializedCompanion",
    "SubproductTree",
    "TooManyIndices",
    "UnsortedIndices",
    "ZeroInversion",
    "ZeroLeadingCoefficient",
    "ZeroRatio",
    "alg1_product",
    "baby_step_product",
    "binary_split_product",
    "binomial_theorem_coeff",
    "chirp_eval",
    "cube_eta_eval",
    "curvature_cyclotomic",
    "curvature_mod_p",
    "curvature_scan",
    "euler_pentagonal_eval",
    "eval_horner",
    "exact_nth_term",
    "from_recurrence",
    "geometric_point_product",
    "is_prime",
    "linear_qshift_product",
    "locate_zero_on_progression",
    "mat_eval",
    "mat_mul",
    "matrix_q_factorial",
    "mul",
    "naive_curvature_mod_p",
    "naive_geom_product",
    "naive_matrix_fold",
    "naive_nth_term",
    "nth_term",
    "primes_up_to",
    "prod_of_evals",
    "q_binomial",
    "q_exp_trunc",
    "q_factorial",
    "q_hermite_eval",
    "q_pochhammer",
    "scalar_q_product",
    "scale_arg",
    "specialize",
    "terms_multi",
    "theta_sum",
    "theta_sum_recurrence",
    "transport_to_prefixes",
    "tree_multipoint_eval",
    "vandermonde_sum",
]
