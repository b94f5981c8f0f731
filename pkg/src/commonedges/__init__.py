"""Common edges of independent uniform random spanning trees."""

from .counting import (
    InfeasibleError,
    cayley_forest_count,
    count_spanning_trees,
    count_trees_containing,
    edge_pair_probability,
    edge_probabilities,
    edge_probability,
    enumerate_spanning_trees,
    lcy_forest_count,
    moon_pair_count,
)
from .distribution import (
    Pmf,
    bell_moment,
    binomial_pmf,
    chen_stein_bound,
    exact_mean_complete,
    exact_pmf_complete,
    exact_pmf_complete_k,
    exact_pmf_general,
    exact_variance_complete,
    k_tree_bounds,
    limiting_mean_multipartite,
    pmf_moment,
    poisson_pmf,
    stirling2,
    tv_distance,
)
from .graph import (
    Forest,
    Graph,
    GraphError,
    Partition,
    bridges,
    contract_forest,
    is_connected,
    make_complete,
    make_cycle,
    make_double_clique,
    make_multipartite,
    make_path,
)
from .montecarlo import (
    GnpSpec,
    SampleReport,
    scenario_presets,
    simulate_common_edges,
    simulate_gnp,
    simulate_k_trees,
)
from .sampler import SpanningTree, aldous_broder_sample, common_edges, wilson_sample

__version__ = "0.1.0"
