"""Low-congestion routing trees for multicommodity demand graphs."""

from .errors import (
    BudgetExceeded,
    InputError,
    InvariantError,
    NoBalancedCut,
    ParseError,
    TreeweaveError,
)
from .graph import (
    Cut,
    DemandGraph,
    VertexWeights,
    cut_weight,
    induced_subgraph,
    outside_demand_weights,
    random_demand_graph,
    vertex_load,
)
from .network import (
    CongestionInstance,
    EdpInstance,
    GomoryHuTree,
    gomory_hu,
    min_cut_st,
    optimal_complete_tree,
    reduce_edp,
    verify_congestion_tree,
)
from .oracle import (
    brute_opt_congestion,
    brute_opt_spanning_congestion,
    enum_balanced_cuts,
    enum_routing_trees,
    enum_spanning_trees,
)
from .routing import (
    CongestionReport,
    RoutingTree,
    congestion,
    congestion_report,
    edge_load,
    lower_bounds,
    route_tree,
    shortcut_degree_two,
)
from .separator import (
    SeparatorKind,
    SeparatorStrategy,
    empirical_lambda,
    exact_min_balanced_cut,
    heuristic_balanced_cut,
    is_balanced,
)

__version__ = "0.1.0"
