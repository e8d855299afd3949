"""Exact cycle statistics of commutators [σ,τ] of random permutations:
closed-form generating functions, Bernoulli decompositions, a brute-force
enumeration oracle, and a Monte-Carlo random-matrix cross-check harness.
"""

from .genfun import (
    BernoulliDecomposition,
    BernoulliTerm,
    CyclePGF,
    PgfValidation,
    RootFindError,
    alternating_pgf,
    bernoulli_decomposition,
    one_cycle_pgf,
    one_cycle_pgf_roots,
    transpositions_pgf,
    transpositions_rising_form,
    two_cycles_pgf,
    uniform_cycles_pgf,
    validate_pgf,
)
from .oracle import (
    DEFAULT_ENUMERATION_CAP,
    HARD_ENUMERATION_CAP,
    CycleDistribution,
    EnumerationCapError,
    distribution_to_pgf,
    exact_class_product_distribution,
    exact_commutator_distribution,
    exact_uniform_cycle_distribution,
    hultman_count,
    hultman_table_rows,
)
from .perm import (
    CycleType,
    Permutation,
    commutator,
    compose,
    cycle_count,
    disjoint_transpositions,
    format_cycles,
    from_cycle_type,
    inverse,
    one_cycle,
    parse_cycles,
    sample_uniform,
    sign_parity,
    two_disjoint_cycles,
)
from .polys import (
    RationalPoly,
    connection_expand,
    discrete_difference,
    falling_factorial,
    rising_factorial,
    rising_product,
    rising_square_sum,
)
from .rmt import (
    MatrixSampleConfig,
    MomentReport,
    mc_gamma_shortcut_moment,
    mc_real_trace_law,
    mc_tr_g1g2_law,
    mc_tr_g_squared_law,
    mc_trace_power_moment,
    mixed_trace_vanishing,
)

__version__ = "0.1.0"
