"""Exact all-terminal reliability polynomials of multigraphs and their zeros.

The pipeline: build a multigraph, enumerate its connected-spanning-subgraph
polynomial exactly, expand the named families by exact substitution, then
locate complex zeros at configurable precision and test them against the
forbidden discs |lambda + v| < lambda.
"""

from .multigraph import (
    GraphParseError,
    MinorOracleLimitError,
    Multigraph,
    complete_graph,
    cycle_graph,
    format_graph,
    has_k4_topological_minor,
    is_connected,
    is_series_parallel,
    k4_two_class,
    k6_disjoint_triangles,
    parallel_bundle_graph,
    parallel_expand,
    parse_graph,
    subdivide,
)
from .polycore import (
    MIN_PRECISION,
    ComplexPoint,
    ExactBiPoly,
    ExactUniPoly,
    as_complex_point,
    bipoly_as_poly_in_a,
    eval_complex,
    poly_add,
    poly_mul,
    shifted_power,
)
from .reliability import (
    ClassCountError,
    DisconnectedGraphError,
    EnumerationLimitError,
    NotSeriesParallelError,
    ScaledUniPoly,
    SeriesCancellationError,
    SeriesReductionResult,
    ZeroEdgeWeightError,
    C_from_reliability,
    connected_subgraph_poly,
    parallel_reduce,
    reduce_sp_value,
    reliability_from_C,
    series_reduce,
    series_reduce_potts,
    subdivided_univariate,
    two_class_specialize,
)
from .roots import (
    BranchExpansion,
    BranchFitError,
    LocusCurve,
    NonconvergenceError,
    NoViolationRegionError,
    RegionEndpoint,
    RootSet,
    UndecidableDiscError,
    ZeroPolynomialError,
    analytic_disc_margin,
    bc_lambda_holds_univariate,
    disc_verdict,
    estimate_branch_coefficients,
    find_minimal_k,
    find_roots,
    kth_root_branch,
    lambda_star_univariate,
    min_disc_distance,
    min_disc_root,
    multivariate_bc_property,
    region_endpoint_angle,
    trace_locus,
)

__version__ = "0.1.0"
