"""Numerical laboratory for quantum Sobolev spaces of Schatten-class operators.

Everything lives on finite models: the phase-space group ``Z_N x Z_N`` acts
on ``C^N`` through a Weyl system, operators transform to functions on the
N^2-point dual, and every norm, inequality, and counterexample becomes a
finite computation with measured constants.
"""

from .groups import (
    FiniteAbelianGroup,
    HaarConvention,
    PhaseFunction,
    character,
    group_neg,
    group_sum,
    l_q_norm,
    lq_table_norm,
    make_group,
)
from .linalg import (
    JacobiConvergenceError,
    add,
    adjoint,
    as_operator,
    matmul,
    scale,
    schatten_norm,
    singular_values,
    trace_pairing,
)
from .weyl import (
    AxiomCheck,
    AxiomReport,
    MultiplierTable,
    RepresentationError,
    WeylSystem,
    check_axioms,
    extract_multiplier,
    make_weyl_system,
    multiplier_table,
    phase_space_convention,
    weyl_operator,
)
from .qft import (
    HausdorffYoungReport,
    conjugate_exponent,
    qft_forward,
    qft_inverse,
    random_operator,
    random_phase_function,
    random_unitary,
    trial_rng,
    verify_hausdorff_young,
    verify_plancherel,
    verify_roundtrips,
)
from .sobolev import (
    NondegeneracyReport,
    NormAxiomReport,
    PairingBoundReport,
    SobolevSpec,
    TestFamilyElement,
    Weight,
    export_weight_csv,
    import_weight_csv,
    make_test_element,
    make_weight_constant,
    make_weight_euclidean,
    nondegeneracy_check,
    pairing_analytic_bound,
    pairing_bound_estimate,
    phi_isometry_check,
    phi_map,
    recover_generator,
    sobolev_norm,
    verify_norm_axioms,
)
from .embedding import (
    CounterexamplePoint,
    CounterexampleReport,
    EmbeddingRunReport,
    ExponentReport,
    PreconditionError,
    SET_SELECTORS,
    compute_exponents,
    counterexample_run,
    multiplier_norm,
    verify_embedding_chain,
)

__version__ = "0.1.0"
