"""Parametrized Lagrangians of non-uniform hypergraphs: combinatorics,
solvers, closed-form checks, and extremal scans."""

from .hypergraph import (
    Hypergraph,
    HypergraphFormatError,
    LinkSets,
    colex_first_m,
    colex_key,
    colex_less,
    complete,
    compress_edge,
    compress_set,
    format_hypergraph,
    greedy_maximal_cliques,
    induced,
    is_left_compressed,
    isolated_vertices,
    left_compress_fixpoint,
    link_sets,
    max_clique,
    max_clique_order,
    parse_hypergraph,
    read_hypergraph,
    validate_types,
    write_hypergraph,
)
from .lagrangian import (
    AlphaParams,
    KKTReport,
    Optimum,
    SolverConfig,
    characteristic_vector,
    compression_monotonicity_check,
    evaluate,
    exact_oracle,
    gradient,
    kkt_check,
    link_value,
    optimize,
    project_to_simplex,
    reduction_sum,
    resolve_coeffs,
    support_minimize,
    support_of,
)
from .theorems import (
    THEOREM_IDS,
    TheoremVerdict,
    colex_range_equal,
    complete_uniform_value,
    connection_compose,
    connection_window,
    infer_connection_order,
    level1_reduction_hypothesis,
    ms_value,
    reduce_level1,
    th123_hypothesis,
    th123_threshold,
    th123_value,
    th1r_hypothesis,
    th1r_threshold,
    th1r_value,
    th2_hypothesis,
    th2_value,
    verify_theorem,
)
from .conjecture import (
    ScanReport,
    enumerate_left_compressed,
    scan,
    talbot_range,
    verify_connection,
)

__version__ = "0.1.0"
