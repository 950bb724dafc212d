from .binomial import log_binomial, hypergeom_pmf
from .sampling import weighted_sample_without_replacement
from .wallenius import WalleniusParams, wallenius_pmf, wallenius_pmf_many, wallenius_two_group_pmf
