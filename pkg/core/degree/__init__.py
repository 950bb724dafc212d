from .distribution import DegreeDistribution, RsdParams, resized_robust_soliton, robust_soliton, sample_degree
from .layered import (
    LayerConfig,
    LayeredReducedDist,
    TwoLayerReducedDist,
    layered_degree_mass,
    n_layer_reduced_dist,
    redundancy_surface,
    split_matrix,
    two_layer_reduced_dist,
)
from .reduced import (
    adaptive_degree_dist,
    redundancy_prob_acked,
    reduced_degree_dist,
    reduced_degree_dist_acked,
)
