"""Exact-arithmetic toolkit for Kakeya sets over Z/NZ (square-free N and
prime powers): constructions, incidence-matrix ranks over F_p, cyclotomic
rank transfer, and machine-checkable lower-bound certificates."""

from .bounds import (
    BoundReport,
    certify_prime,
    certify_prime_power,
    certify_squarefree,
    certify_two_primes,
    fq_bound,
    squarefree_bound,
)
from .cyclo import (
    CycloElement,
    CycloMatrix,
    cyclo_rank,
    dft_matrix,
    minimal_polynomial,
    rank_transfer_check,
    zero_pattern,
)
from .errors import GuardExceeded, RowFactorError
from .gfp import (
    GFpMatrix,
    crank,
    kron,
    nullspace,
    rank,
    rank_rational,
    solve_row_factor,
    stack,
    tensor_family_rank_check,
)
from .incidence import (
    MVFamily,
    incidence_matrix,
    incidence_matrix_pk,
    line_action_check,
    mv_rank_bound,
    mv_search,
    mv_verify,
    rank_formula,
    rank_formula_check,
)
from .kakeya import (
    KakeyaSet,
    crt_product,
    full_set,
    greedy_independent_lines,
    line_matrix,
    min_kakeya_search,
    power_product,
    tangent_construction,
    verify,
)
from .polys import (
    DecodingMatrix,
    EvalMapSpec,
    GFpPoly,
    decoding_matrix,
    dim_homog,
    dim_leq,
    eval_matrix,
    hasse_derivative,
    multiplicity,
    sz_mult_check,
)
from .rings import (
    Direction,
    Line,
    RingSpec,
    crt_combine,
    crt_point_index,
    crt_split,
    enumerate_directions,
    enumerate_points,
    index_point,
    indicator_vector,
    line_points,
    line_split,
    point_index,
)

__version__ = "0.1.0"
