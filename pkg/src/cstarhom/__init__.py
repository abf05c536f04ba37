"""Finite-dimensional C*-algebra numerics and homomorphism detection.

The package represents algebras (direct sums of matrix blocks), their
elements, states, and linear maps between them, and decides whether a
unital completely positive map is a *-homomorphism by three independent,
cross-validating criteria: direct multiplicativity on the basis, the
adjusted-Choi projection test, and the adjusted-entropy gap.
"""

from .algebra import (
    Algebra,
    Element,
    adjusted_trace,
    block_inclusion,
    conditional_expectation_center,
    dimension_operator,
    direct_sum,
    direct_sum_elements,
    is_hermitian,
    is_positive,
    is_projection,
    matrix_unit,
    one,
    op_transpose,
    spectral,
    tensor,
    tensor_elements,
    trace,
    zero,
)
from .choi import (
    adjusted_choi,
    choi_matrix,
    cj_dual_check,
    diagonal_projection,
    diagonal_projection_raw,
    map_from_adjusted_choi,
    projection_criterion,
    projection_variants,
    swap_factors,
    transpose_second_factor,
)
from .entropy import (
    Counterexample,
    State,
    adjusted_density,
    adjusted_entropy,
    entropy,
    entropy_criterion,
    entropy_relation_check,
    evaluate,
    monotonicity_refuter,
    pullback,
    state_from_density,
    uniform_state,
    uniform_state_on_projection,
)
from .linmap import (
    LinMap,
    apply_left,
    apply_right,
    compose,
    dagger_adjoint,
    ddagger_adjoint,
    depolarizing,
    is_completely_positive,
    is_trace_preserving,
    is_unital,
    mult_defect,
    multiplicativity_defects,
    tensor_maps,
    tensor_with_identity,
)
from .randgen import (
    perturb_toward_scrambling,
    random_element,
    random_homomorphism,
    random_projection,
    random_state,
    random_ucp,
    random_unitary,
    ucp_from_stinespring,
)
from .report import analyze_map

__version__ = "0.1.0"
