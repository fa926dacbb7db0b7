"""Bounds on the rate-distance tradeoff for codes living in
distance-truncated strong powers of a graph, validated against exact
brute-force computation at small lengths."""

from graphcap.graphs import (
    INF,
    Graph,
    clique_sum,
    complete,
    cycle,
    from_edge_list,
    graph_from_edges,
    kneser,
    power_graph,
    semimetric,
    seq_distance,
    strong_power,
)
from graphcap.automorphisms import (
    find_homomorphism,
    is_edge_transitive,
    is_homomorphism,
    is_vertex_transitive,
)
from graphcap.invariants import (
    caro_wei,
    chromatic_number,
    clique_number,
    exact_alpha_power,
    fractional_chromatic,
    gv_sphere_count,
    independence_number,
    max_independent_set,
    theta_star_fractional,
    vt_counting_bound,
)
from graphcap.greedy import GreedyRun, randomized_greedy_code
from graphcap.spectral import (
    SpectralData,
    adjacency_spectrum,
    eigenspace_constants,
    lovasz_matrix,
    lovasz_theta_edge_transitive,
)
from graphcap.rates import (
    RateCurve,
    RatePoint,
    best_envelope,
    clique_cover_rate,
    entropy_hq,
    fractional_coloring_bound,
    hom_lift_bound,
    lower_bound_vt,
    power_sandwich,
    r_gv,
    r_lp1,
    sum_of_cliques_rate,
    upper_bound_lp,
)
from graphcap.delsarte import LPSolution, a_lp1, finite_alpha_upper, krawtchouk, lp_rate
from graphcap.errors import (
    CapExceeded,
    GraphSpecError,
    GraphcapError,
    NonConstantC,
    SearchCapExceeded,
    SolveTimeout,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
