"""Certified extraction of induced monotone paths, ordered matchings and
bi-cliques from ordered graphs and x-monotone curve families."""

__version__ = "0.1.0"

from .core import (
    Biclique,
    Embedding,
    OrderedGraph,
    complement,
    contains_induced,
    find_induced_embedding,
    induced_subgraph,
    interval_partition,
    is_biclique,
    m1_pattern,
    max_biclique_oracle,
    max_degree,
    monotone_path,
    neighborhood,
    ordered_matching,
)
from .outcomes import (
    CoBicliqueFound,
    FarVertex,
    InducedPatternFound,
    PathOutcome,
    PreconditionViolation,
    ReachSet,
)
from .paths import (
    find_path_or_cobiclique,
    minimum_n,
    monotone_reach,
    reach_or_cobiclique,
)
from .matchings import (
    EdgeSystem,
    build_edge_systems,
    cross_density,
    disjoint_edges_or_cobiclique,
    find_matching_or_cobiclique,
    trial_success_count,
)
from .curves import (
    CurveFamily,
    CurvesConfig,
    CurvesResult,
    PolylineCurve,
    curves_intersect,
    curves_ramsey,
    greedy_cobiclique,
    grounded_family,
    grounded_ordering_properties,
    intersection_graph,
    intersection_graph_of,
    right_ordered_family,
    segments_intersect,
    sparse_or_dense_subgraph,
    split_at_line,
    union_biclique,
)
from .magical import (
    ForcingClaimReport,
    OrderType,
    ThresholdResult,
    TripleOrderedGraph,
    double_magical_witness,
    extract_biclique_dense,
    is_forcing,
    is_ihole,
    is_magical,
    order_type,
    threshold_pipeline,
    verify_forcing_claim,
)
from .generators import (
    GenSpec,
    gen_crossing_curves,
    gen_four_clique,
    gen_grounded_curves,
    gen_random_ordered,
    gen_two_clique,
    generate,
)
from .rng import SplitMix64, derive_seed
