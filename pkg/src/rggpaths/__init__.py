"""k-hop path counts in 1d hard random geometric graphs via lattice path volumes."""

from .algebra import QPolynomial, UQSeries, q_binomial, restricted_partition_gf
from .distribution import (ExactDistribution, HopConfig, degeneracy, distribution_moments,
                           pgf_theorem2, pmf_k3_closed_form, pmf_theorem1, poisson_mixture,
                           sigma2_distribution)
from .errors import BudgetExceededError, ConfigError
from .lattice import (IntegerPartition, LatticePath, brute_force_volume_distribution, dot,
                      enumerate_paths, multiplicities, projection_partition, s_sequence, volume)
from .sim import (GeometryConfig, Histogram, RggInstance, count_k_hop_paths,
                  count_k_hop_paths_exhaustive, lens_interval, run_trials, sample_instance)

__version__ = "0.1.0"
