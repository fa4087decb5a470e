"""melonlab: colored melonic trees, their depth geometry, and random walks."""

from .core import (
    BallSkeleton,
    ColoredWord,
    FormatError,
    InvalidDimensionError,
    MelonGraph,
    MelonTree,
    NoSuchNodeError,
    SlotOccupiedError,
    build_ball_skeleton,
    build_melon_graph,
    contour_to_shape,
    count_colored_trees,
    count_simple_melons,
    defoliate_and_contour,
    defoliated_shape,
    elementary_tree,
    enumerate_simple_melons,
    enumerate_trees,
    export_graph,
    grow_at,
    lex_order,
    parse_graph,
    parse_tree,
    serialize_tree,
    word_of,
)
from .coverage import (
    MCEstimate,
    ScalingFit,
    coverage_probability,
    fit_loglog,
    lambda_delta,
    mc_depth_samples,
    mc_depth_scaling,
    mc_lambda_ratio,
    pascal_inverse_check,
    s_multinomial,
    s_multinomial_direct,
)
from .depth import (
    DistanceArray,
    SubwordDivision,
    bfs_depths,
    depth_via_array,
    depth_via_subwords,
    initial_distance_array,
    pair_distance_bracket,
    stack_depth,
    tree_depth,
    update_distance_array,
)
from .sampler import (
    GWSample,
    make_rng,
    offspring_law,
    sample_gw_tree,
    sample_simple_melon,
    sample_uniform_tree,
)
from .series import (
    ExponentFit,
    TruncatedSeries,
    fit_singularity,
    per_tree_h_derivatives,
    q_pole_series,
    ratio_radius_estimate,
    resummed_H,
    singular_point,
    solve_H1,
    solve_H_empty,
    weighted_H,
)
from .walks import (
    ProbMatrix2,
    ReturnCurve,
    SpectralFit,
    auto_window,
    elementary_return_matrix,
    estimate_spectral_dimension,
    exact_walk_distribution,
    first_return_matrix,
    h_value,
    lambda_simple,
    return_matrix,
    simulate_return_curve,
)

__version__ = "0.1.0"
